import json
import math
import os

import pytest

from graphcensus import experiments as E
from graphcensus import graphs as G
from graphcensus.experiments import ExperimentConfig
from graphcensus.models import derive_rng, sample_uniform_multigraph, sample_uniform_simple
from graphcensus.specialfuncs import poisson_pmf


def test_counters_match_generic_engine():
    rng = derive_rng(11, 0)
    for _ in range(80):
        n = int(rng.integers(2, 6))
        m = int(rng.integers(0, 7))
        g = sample_uniform_multigraph(n, m, rng)
        expected = tuple(
            G.subgraph_count(g, f)
            for f in (
                G.loop(),
                G.edge_multi(),
                G.double_edge(),
                G.path_multi(3),
                G.star_multi(3),
                G.cycle_multi(3),
                G.cycle_multi(4),
                G.cycle_multi(5),
            )
        )
        got = E.count_patterns(g, ["loop", "edge", "double-edge", "p3", "k13", "c3", "c4", "c5"])
        assert got == expected, g


def test_simple_counters_match_engine():
    rng = derive_rng(13, 0)
    for _ in range(50):
        n = int(rng.integers(3, 8))
        m = int(rng.integers(0, math.comb(n, 2) + 1))
        g = sample_uniform_simple(n, m, rng)
        assert E.count_pattern(g, "c3") == G.subgraph_count(g, G.cycle_simple(3))
        assert E.count_pattern(g, "p3") == G.subgraph_count(g, G.path_simple(3))
        assert E.count_pattern(g, "k13") == G.subgraph_count(g, G.star_simple(3))
        assert E.count_pattern(g, "edge") == g.m


def test_tv_distance():
    assert E.tv_distance({0: 1.0}, {0: 1.0}) == 0
    assert E.tv_distance({0: 1.0}, {1: 1.0}) == 1
    p = {t: poisson_pmf(1.0, t) for t in range(21)}
    assert E.tv_distance(p, ("poisson", 1.0)) < 1e-9
    assert 0 <= E.tv_distance({0: 0.5, 1: 0.5}, ("poisson", 0.3)) <= 1


def test_scaling_fit():
    slope, se = E.scaling_fit([1000, 10000], [5.0 * 1000, 5.0 * 10000])
    assert abs(slope - 1.0) < 1e-12 and se == 0.0
    slope, _ = E.scaling_fit([10, 100, 1000], [7.0, 7.0, 7.0])
    assert abs(slope) < 1e-12
    slope, _ = E.scaling_fit([10, 100], [2 * 10 ** (4 / 3), 2 * 100 ** (4 / 3)])
    assert abs(slope - 4 / 3) < 1e-12
    slope, se = E.scaling_fit([10, 100], [1.0, -1.0])
    assert math.isnan(slope)
    with pytest.raises(ValueError):
        E.scaling_fit([10], [1.0])


def test_median_of_means():
    assert E.median_of_means([1, 2, 3, 4], 2) == 2.5
    assert E.median_of_means(list(range(16)), 16) == 7.5


def test_trivial_pmf():
    cfg = ExperimentConfig(model="uniform-multi", n=1, m=2, pattern="loop", replicates=50, seed=5)
    rep = E.run(cfg)
    assert rep.empirical_pmf == {2: 1.0}
    assert rep.empirical_mean == 2.0


def test_law_of_large_numbers_smoke():
    cfg = ExperimentConfig(
        model="uniform-multi", n=2, m=1, pattern="edge", replicates=100_000, seed=77, workers=1
    )
    rep = E.run(cfg)
    assert abs(rep.empirical_mean - 0.5) <= 3 * rep.stderr


def test_determinism_across_workers():
    cfg = ExperimentConfig(
        model="uniform-multi", n=30, m=20, pattern="c3", replicates=64, seed=9, workers=1
    )
    first = E.run(cfg)
    os.environ["WORKERS"] = "2"
    try:
        second = E.run(cfg)
    finally:
        del os.environ["WORKERS"]
    assert json.dumps(first.to_json(include_runtime=False), sort_keys=True) == json.dumps(
        second.to_json(include_runtime=False), sort_keys=True
    )


def test_m_rule_rounding():
    cfg = ExperimentConfig(
        model="uniform-multi", n=100, m_rule={"c": 0.5, "alpha": 1.0},
        pattern="loop", replicates=1, seed=1,
    )
    assert cfg.resolved_m() == 50
    cfg = ExperimentConfig(
        model="uniform-multi", n=10, m_rule={"c": 0.25, "alpha": 1.5},
        pattern="loop", replicates=1, seed=1,
    )
    assert cfg.resolved_m() == round(0.25 * 10**1.5)


def test_predictor_wiring_and_report_fields():
    cfg = ExperimentConfig(
        model="delta", n=40, m=30, pattern="c3", replicates=64, seed=3,
        delta={"kind": "finite", "coeffs": ["1", "1", "1", "1"]},
        predictor={"theorem": "cycles-finite", "l": 3, "n": 40, "m": 30},
    )
    rep = E.run(cfg)
    assert rep.predicted_mean is not None
    assert rep.tv_distance is not None and 0 <= rep.tv_distance <= 1
    data = rep.to_json()
    assert data["config"]["resolved_m"] == 30
    assert "runtime_seconds" in data


def test_sweep_and_csv():
    cfg = ExperimentConfig(
        model="uniform-multi", n=10, m_rule={"c": 0.5, "alpha": 1.0},
        pattern="loop", replicates=200, seed=4, workers=1,
    )
    reports = E.sweep(cfg, [10, 20])
    csv_text = E.sweep_csv(reports)
    lines = csv_text.strip().split("\n")
    assert lines[0].startswith("n,m,replicates")
    assert len(lines) == 3
    assert lines[1].split(",")[0] == "10"
    with pytest.raises(ValueError):
        E.sweep(ExperimentConfig(model="uniform-multi", n=10, m=5, pattern="loop", replicates=1, seed=1), [10])


def test_two_sample_chi_square_null():
    rng = derive_rng(1, 1)
    a = {i: int(x) for i, x in enumerate(rng.multinomial(20000, [0.2, 0.3, 0.5]))}
    b = {i: int(x) for i, x in enumerate(rng.multinomial(20000, [0.2, 0.3, 0.5]))}
    stat, df, pvalue = E.two_sample_chi_square(a, b)
    assert df == 2 and pvalue > 0.001
    c = {i: int(x) for i, x in enumerate(rng.multinomial(20000, [0.5, 0.3, 0.2]))}
    _, _, pvalue = E.two_sample_chi_square(a, c)
    assert pvalue < 1e-6


def test_config_round_trip():
    cfg = ExperimentConfig(
        model="delta", n=50, m=40, pattern="c3", replicates=10, seed=2,
        delta={"kind": "exp"},
    )
    again = ExperimentConfig.from_json(cfg.to_json())
    assert again.n == 50 and again.delta.kind == "exp"
    assert again.resolved_m() == 40
