import json
import os

import jsonschema
import numpy as np
import pytest

from cadm import bench, cli, datasets
from cadm.cluster import run
from cadm.evaluation import clustering_accuracy
from cadm.metric import CADM, DM1, DM2, HDM, preset
from cadm.synthetic import SyntheticSpec, generate_synthetic


def zoo_config(data_dir, **kw):
    return bench.ExperimentConfig(data=os.path.join(data_dir, "zoo.csv"),
                                  schema=os.path.join(data_dir, "zoo.schema"), k=7, **kw)


def test_zoo_two_variant_report(data_dir):
    report = bench.run_experiment(zoo_config(data_dir, variants=("hdm", "cadm")))
    jsonschema.validate(report, bench.REPORT_SCHEMA)
    assert [v["name"] for v in report["variants"]] == ["hdm", "cadm"]
    assert report["dataset"]["n"] == 101
    for v in report["variants"]:
        assert v["summary"]["runs"] == 10
        assert 0 < v["summary"]["mean_ca"] <= 1
        assert len(v["runs"]) == 10
    text = bench.format_table(report)
    assert "hdm" in text and "cadm" in text and "±" in text


def test_single_seed_single_variant_std_zero(data_dir):
    report = bench.run_experiment(zoo_config(data_dir, seeds=(3,), variants=("cadm",)))
    assert report["variants"][0]["summary"]["std_ca"] == 0.0


def test_report_body_is_deterministic(data_dir, tmp_path):
    a = bench.run_experiment(zoo_config(data_dir, seeds=(0, 1, 2), out=str(tmp_path / "a.json")))
    b = bench.run_experiment(zoo_config(data_dir, seeds=(0, 1, 2), out=str(tmp_path / "b.json")))
    ja = json.dumps(bench.strip_timing(json.load(open(tmp_path / "a.json"))), sort_keys=True)
    jb = json.dumps(bench.strip_timing(json.load(open(tmp_path / "b.json"))), sort_keys=True)
    assert ja == jb
    assert bench.strip_timing(a) == bench.strip_timing(b)


def test_variant_order_does_not_change_runs(data_dir):
    a = bench.run_experiment(zoo_config(data_dir, seeds=(0, 1), variants=("hdm", "cadm")))
    b = bench.run_experiment(zoo_config(data_dir, seeds=(0, 1), variants=("cadm", "hdm")))
    by_name = lambda r: {v["name"]: bench.strip_timing(v) for v in r["variants"]}
    assert by_name(a) == by_name(b)


def test_cai_override_spares_hamming():
    assert bench.resolve_variant("hdm", "additive") == HDM
    assert bench.resolve_variant("cadm", "multiplicative").cai_mode == "multiplicative"
    assert bench.resolve_variant(DM2.to_dict()) == DM2


def test_config_validation():
    with pytest.raises(ValueError):
        bench.ExperimentConfig(data="x", schema="y", k=0)
    with pytest.raises(ValueError):
        bench.ExperimentConfig(data="x", schema="y", k=2, seeds=())
    with pytest.raises(ValueError):
        preset("nope")


def test_failed_runs_are_reported_not_raised():
    ds = generate_synthetic(SyntheticSpec(6, [("nominal", 2)], 2, 1.0, 0))
    report = bench.run_variants(ds, 5, [("cadm", CADM)], seeds=(0, 1))
    jsonschema.validate(report, bench.REPORT_SCHEMA)
    assert all(r["error"] for r in report["variants"][0]["runs"])
    assert bench.all_runs_failed(report)


def test_ablation_k1_all_equal():
    ds = generate_synthetic(SyntheticSpec(40, [("nominal", 3), ("ordinal", 4)], 2, 0.8, 1))
    report = bench.ablation_suite(ds, 1, seeds=(0, 1, 2))
    means = [v["summary"]["mean_ca"] for v in report["variants"]]
    assert [v["name"] for v in report["variants"]] == ["dm1", "dm2", "cadm"]
    assert means[0] == means[1] == means[2]


def test_ablation_shares_initial_centers():
    ds = generate_synthetic(SyntheticSpec(60, [("nominal", 4), ("ordinal", 5)], 3, 0.6, 2))
    for seed in range(3):
        inits = [run(ds, 3, seed, cfg).init_indices.tolist() for cfg in (DM1, DM2, CADM)]
        assert inits[0] == inits[1] == inits[2]


@pytest.mark.xfail(strict=True, reason=(
    "measured: DM2 trails DM1 on every planted configuration tried (about 0.61 vs 0.90 "
    "here); the count-based rival factor favours large clusters and locks in poor "
    "bootstrap partitions"))
def test_ablation_ladder_on_skewed_planted_data():
    spec_attrs = [("ordinal", 6)] * 4 + [("nominal", 4)] * 2
    dm1, dm2 = [], []
    for rep in range(3):
        ds = generate_synthetic(SyntheticSpec(150, spec_attrs, 3, 0.6, 100 + rep))
        report = bench.ablation_suite(ds, 3, seeds=range(10))
        means = {v["name"]: v["summary"]["mean_ca"] for v in report["variants"]}
        dm1.append(means["dm1"])
        dm2.append(means["dm2"])
    assert np.mean(dm2) >= np.mean(dm1)


def test_synthetic_skew_one_is_constant_per_group():
    ds = generate_synthetic(SyntheticSpec(60, [("nominal", 3), ("ordinal", 4), ("numeric", 0)], 4, 1.0, 5))
    for g in range(4):
        rows = ds.codes[ds.labels_true == g]
        assert (rows == rows[0]).all()
    assert len({tuple(ds.codes[ds.labels_true == g][0]) for g in range(4)}) == 4
    for cfg in (HDM, CADM):
        res = run(ds, 4, 0, cfg)
        assert clustering_accuracy(res.labels, ds.labels_true) == 1.0


def test_synthetic_skew_zero_near_chance():
    cas, base = [], []
    for seed in range(10):
        ds = generate_synthetic(SyntheticSpec(120, [("nominal", 4)] * 3, 3, 0.0, seed))
        res = run(ds, 3, seed, CADM)
        cas.append(clustering_accuracy(res.labels, ds.labels_true))
        base.append(np.bincount(ds.labels_true).max() / ds.n)
    # balanced groups: largest class is 1/3; random partitions score a bit above
    assert np.mean(cas) < np.mean(base) + 0.2


def test_synthetic_is_seeded():
    spec = SyntheticSpec(30, [("nominal", 3), ("numeric", 0)], 2, 0.5, 9)
    a, b = generate_synthetic(spec), generate_synthetic(spec)
    assert np.array_equal(a.codes, b.codes) and np.array_equal(a.numerics, b.numerics)
    assert np.array_equal(a.labels_true, b.labels_true)


@pytest.mark.parametrize("kwargs", [
    dict(n=10, attributes=[("nominal", 1)], k=2, skew=0.5),
    dict(n=10, attributes=[("nominal", 3)], k=2, skew=1.5),
    dict(n=10, attributes=[("numeric", 0)], k=2, skew=0.5),
    dict(n=2, attributes=[("nominal", 3)], k=3, skew=0.5),
])
def test_synthetic_spec_validation(kwargs):
    with pytest.raises(ValueError):
        SyntheticSpec(**kwargs)


# command line

def test_cli_run_writes_report(data_dir, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = cli.main(["run", "--data", os.path.join(data_dir, "zoo.csv"),
                     "--schema", os.path.join(data_dir, "zoo.schema"), "--k", "7",
                     "--variant", "hdm", "--variant", "cadm", "--cai", "additive",
                     "--seeds", "0..2", "--max-iter", "50", "--out", str(out)])
    assert code == cli.EXIT_OK
    report = json.loads(out.read_text())
    jsonschema.validate(report, bench.REPORT_SCHEMA)
    assert report["seeds"] == [0, 1, 2] and report["max_iter"] == 50
    assert "cadm" in capsys.readouterr().out


def test_cli_input_error(tmp_path, capsys):
    code = cli.main(["run", "--data", str(tmp_path / "missing.csv"),
                     "--schema", str(tmp_path / "missing.schema"), "--k", "2"])
    assert code == cli.EXIT_INPUT


def test_cli_bad_schema(tmp_path):
    (tmp_path / "d.csv").write_text("a\nb\n")
    (tmp_path / "d.schema").write_text("c: ordinal\n")
    code = cli.main(["run", "--data", str(tmp_path / "d.csv"),
                     "--schema", str(tmp_path / "d.schema"), "--k", "2"])
    assert code == cli.EXIT_INPUT


def test_cli_all_runs_fail(tmp_path):
    (tmp_path / "d.csv").write_text("a\na\nb\n")
    (tmp_path / "d.schema").write_text("c: nominal\n")
    code = cli.main(["run", "--data", str(tmp_path / "d.csv"),
                     "--schema", str(tmp_path / "d.schema"), "--k", "3", "--seeds", "0"])
    assert code == cli.EXIT_RUNTIME


def test_cli_synth_round_trip(tmp_path, capsys):
    spec = {"n": 50, "k": 2, "skew": 1.0, "seed": 3,
            "attributes": [{"kind": "nominal", "cardinality": 3},
                           {"kind": "ordinal", "cardinality": 4},
                           {"kind": "numeric"}]}
    (tmp_path / "spec.json").write_text(json.dumps(spec))
    assert cli.main(["synth", "--spec", str(tmp_path / "spec.json"),
                     "--out", str(tmp_path / "s.csv")]) == cli.EXIT_OK
    capsys.readouterr()
    code = cli.main(["run", "--data", str(tmp_path / "s.csv"), "--schema", str(tmp_path / "s.schema"),
                     "--k", "2", "--variant", "cadm", "--seeds", "0,1", "--out", str(tmp_path / "r.json")])
    assert code == cli.EXIT_OK
    report = json.loads((tmp_path / "r.json").read_text())
    assert report["variants"][0]["summary"]["mean_ca"] == 1.0


def test_cli_synth_bad_spec(tmp_path):
    (tmp_path / "spec.json").write_text("{}")
    assert cli.main(["synth", "--spec", str(tmp_path / "spec.json"),
                     "--out", str(tmp_path / "s.csv")]) == cli.EXIT_INPUT


@pytest.mark.parametrize("text, seeds", [("0..9", tuple(range(10))), ("4", (4,)), ("1,5,2", (1, 5, 2))])
def test_parse_seeds(text, seeds):
    assert cli.parse_seeds(text) == seeds
