"""Categorical and mixed-data clustering with cluster-customized adaptive
distances, k-modes/k-prototypes iteration and accuracy evaluation."""
from .cluster import (Centers, ClusteringResult, assign, bootstrap_assign,
                      init_centers, objective, run, update_centers)
from .data import (AttributeSpec, Dataset, GlobalCounts, Schema, from_codes,
                   global_counts, load_dataset, parse_schema, read_schema)
from .evaluation import (RunSummary, clustering_accuracy, contingency, hungarian,
                         summarize)
from .metric import (CADM, DM1, DM2, HDM, ClusterStats, MetricConfig, RivalRole,
                     attr_importance, attr_value_distance, build_cluster_stats, cai,
                     cvd, cvi, distance_matrix, hamming_distance,
                     object_center_distance, preset, rival_factor)
from .synthetic import SyntheticSpec, generate_synthetic

__version__ = "0.1.0"
