from fractions import Fraction

import pytest

from emso_lab import experiments as ex
from emso_lab.cliques import decide_phi_C
from emso_lab.experiments import ExperimentConfig
from emso_lab.graph import sample_gnp

from conftest import all_graphs


def test_sample_i_uses_substream_i():
    cfg = ExperimentConfig(n=12, p=0.4, seed=9)
    assert ex.sample_graph(cfg, 3) == sample_gnp(12, 0.4, 9, stream=3)


def test_rerun_and_thread_count_give_identical_csv():
    cfg = ExperimentConfig(target="phiC1", n=25, p=0.3, samples=40, seed=4, n_grid=(10, 25), p_grid=(0.2, 0.6))
    one = ex.run_sweep(cfg)
    assert one == ex.run_sweep(cfg)
    assert one == ex.run_sweep(ExperimentConfig(**{**cfg.key(), "n_grid": (10, 25), "p_grid": (0.2, 0.6),
                                                   "threads": 3}))


def test_threads_do_not_enter_the_header():
    cfg = ExperimentConfig(threads=4, out="x.csv")
    assert "threads" not in cfg.key() and "out" not in cfg.key()
    assert cfg == ExperimentConfig()


def test_empty_grid_gives_header_only():
    text = ex.run_sweep(ExperimentConfig(n_grid=()))
    meta, rows = ex.read_csv(text)
    assert rows == [] and meta["n_grid"] == []
    assert text.splitlines()[1] == ",".join(ex.default_columns(ExperimentConfig()))


def test_csv_round_trip():
    cfg = ExperimentConfig(target="classify-clique", n=15, samples=20, seed=2)
    meta, rows = ex.read_csv(ex.run_sweep(cfg))
    assert meta == cfg.key()
    assert len(rows) == 1
    assert sum(float(rows[0][c]) for c in ex.CLASSES) == pytest.approx(1.0)


def test_json_output():
    import json
    cfg = ExperimentConfig(n=8, samples=5, format="json")
    doc = json.loads(ex.run_sweep(cfg))
    assert doc["schema"] == ex.SCHEMA and doc["config"] == cfg.key() and len(doc["rows"]) == 1


def test_common_random_numbers_make_fractions_monotone():
    # phiI1 fails as soon as some independent set is undominated; more edges only help it hold
    cfg = ExperimentConfig(target="mso:exists x. exists y. x ~ y", n=6, samples=60, seed=1,
                           p_grid=(0.02, 0.05, 0.1, 0.2))
    fr = [r["fraction"] for r in ex.sweep(cfg)]
    assert fr == sorted(fr)


def test_p_one_never_satisfies_phiC1():
    row = ex.monte_carlo(ExperimentConfig(target="phiC1", n=20, p=1.0, samples=10))
    assert row["successes"] == 0 and row["fraction"] == 0.0


def test_targets():
    assert ex.target_kind("phiI2") == "decider"
    assert ex.target_kind("classify-independent") == "classifier"
    assert ex.target_kind("mso:phiC1") == "sentence"
    for bad in ("nope", "mso:cl", "mso:exists x."):
        with pytest.raises(ValueError):
            ExperimentConfig(target=bad)
    g = sample_gnp(7, 0.5, 3)
    cfg = ExperimentConfig(target="mso:phiC2")
    assert ex.evaluate_target(cfg, g) == decide_phi_C(g, 2)


def test_config_validation():
    for kw in ({"model": "gnm"}, {"samples": 0}, {"p": 1.5}, {"format": "xml"}):
        with pytest.raises(ValueError):
            ExperimentConfig(**kw)


def test_wilson_interval_examples():
    low, high = ex.wilson_interval(0, 10)
    assert low == 0.0 and 0.25 < high < 0.35
    low, high = ex.wilson_interval(50, 100)
    assert low == pytest.approx(0.4038, abs=1e-3) and high == pytest.approx(0.5962, abs=1e-3)


def _exact_probability(n, p, target):
    cfg = ExperimentConfig(target=target)
    pairs = n * (n - 1) // 2
    return sum(p ** g.m * (1 - p) ** (pairs - g.m) for g in all_graphs(n) if ex.evaluate_target(cfg, g))


def _coverage(target, n, p, seeds):
    truth = float(_exact_probability(n, p, target))
    covered = 0
    for seed in seeds:
        row = ex.monte_carlo(ExperimentConfig(target=target, n=n, p=float(p), samples=60, seed=seed))
        covered += row["ci_low"] <= truth <= row["ci_high"]
    return covered


@pytest.mark.parametrize("target,n,p", [
    ("phiC1", 4, Fraction(1, 2)),
    pytest.param("phiI3", 5, Fraction(3, 10), marks=pytest.mark.xfail(
        strict=True, reason="seeds 0..99 cover in 88 runs; long-run coverage is 0.946")),
    ("ext1", 5, Fraction(1, 2)),
])
def test_wilson_coverage_in_100_experiments(target, n, p):
    assert _coverage(target, n, p, range(100)) >= 93


@pytest.mark.slow
def test_wilson_coverage_in_2000_experiments():
    # exact coverage for 60 samples at this truth is 0.9504; 0.93 sits four standard errors below
    assert _coverage("phiI3", 5, Fraction(3, 10), range(2000)) >= 1860


def test_classify_batch_rows(tmp_graph_file):
    cfg = ExperimentConfig(n=9, p=0.5, samples=6, seed=3)
    rows = ex.classify_batch(cfg)
    assert [r["graph"] for r in rows] == [f"sample{i}" for i in range(6)]
    assert rows == ex.classify_batch(cfg, threads=2)
    path = tmp_graph_file(ex.sample_graph(cfg, 0))
    (row,) = ex.classify_batch([path])
    assert {k: v for k, v in row.items() if k != "graph"} == {k: v for k, v in rows[0].items() if k != "graph"}


@pytest.mark.parametrize("model,kind", [("block1", 1), ("block2", 2), ("block3", 3)])
def test_block_models_sample(model, kind):
    from emso_lab.constructions import build_block_graph
    cfg = ExperimentConfig(model=model, ell=3, n_block=4, p=0.5, seed=7)
    assert ex.sample_graph(cfg, 2) == build_block_graph(kind, 3, 4, 0.5, 7, stream=2)


def test_default_threads_reads_environment(monkeypatch):
    monkeypatch.setenv(ex.THREADS_ENV, "3")
    assert ex.default_threads() == 3
    monkeypatch.delenv(ex.THREADS_ENV)
    assert ex.default_threads() == 1
