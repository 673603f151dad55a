"""Shared fixtures: the heavy Monte Carlo runs are sampled once per session
and reused by the acceptance criteria that read different statistics off the
same hosts."""

from collections import Counter
from fractions import Fraction

import pytest

from graphcensus import experiments as E
from graphcensus import models as M
from graphcensus import oracle as O
from graphcensus.experiments import ExperimentConfig
from graphcensus.models import (
    DegreeDistribution,
    WeightSpec,
    derive_rng,
    solve_tuning,
)
from graphcensus.specialfuncs import zeta

SEED = 20260809

CUBIC = WeightSpec.finite([1, 1, 1, 1])  # 1 + x + x^2/2 + x^3/6
QUADRATIC = WeightSpec.finite([1, 1, 1])  # 1 + x + x^2/2


@pytest.fixture(scope="session")
def simple_triangle_run():
    """Uniform simple graphs at the triangle threshold (n=2000, m=1000)."""
    cfg = ExperimentConfig(
        model="uniform-simple", n=2000, m=1000, pattern="c3",
        replicates=20000, seed=SEED,
    )
    return E.run(cfg)


@pytest.fixture(scope="session")
def multi_loops_run():
    """Uniform multigraphs (n=1000, m=500): loop and parallel-pair counts."""
    cfg = ExperimentConfig(
        model="uniform-multi", n=1000, m=500, pattern=["loop", "double-edge"],
        replicates=20000, seed=SEED,
    )
    return E.run_many(cfg, ["loop", "double-edge"])


@pytest.fixture(scope="session")
def cubic_weight_run():
    """Degree-weighted multigraphs (cubic weights, n=3000, 2m/n=3/2)."""
    cfg = ExperimentConfig(
        model="delta", n=3000, m=2250, pattern=["c3", "p3", "k13"],
        replicates=10000, seed=SEED, delta=CUBIC,
    )
    return E.run_many(cfg, ["c3", "p3", "k13"])


@pytest.fixture(scope="session")
def powerlaw_runs():
    """Power-law configuration model at n = 1e3 and 1e4, conditioned m."""
    ratio = zeta(1.5) / (2 * zeta(2.5))
    out = {}
    for n in (1000, 10000):
        cfg = ExperimentConfig(
            model="configuration", n=n, m=round(n * ratio), pattern="c3",
            replicates=320, seed=SEED,
            delta={"kind": "powerlaw", "beta": 2.5}, mom_buckets=16,
        )
        out[n] = E.run(cfg)
    return out


@pytest.fixture(scope="session")
def sampler_equivalence_counts():
    """Host frequencies at (3,2), quadratic weights: Boltzmann-conditioned
    versus configuration-conditioned, 1e5 draws each, plus the exact law."""
    n, m, reps = 3, 2, 100000
    counts_b: Counter = Counter()
    rng = derive_rng(202, 0)
    for _ in range(reps):
        counts_b[M.sample_delta_multigraph(n, m, QUADRATIC, rng).edge_seq] += 1
    chi = solve_tuning(QUADRATIC, Fraction(2 * m, n))
    pi = DegreeDistribution.from_weight_spec(QUADRATIC, chi)
    counts_c: Counter = Counter()
    rng = derive_rng(202, 1)
    for _ in range(reps):
        counts_c[M.sample_configuration(n, pi, rng, m=m).edge_seq] += 1
    total = Fraction(0)
    law = {}
    for host in O.enumerate_multigraphs(n, m):
        w = Fraction(1)
        for d in host.degrees():
            w *= QUADRATIC.delta(d)
        if w:
            law[host.edge_seq] = w
            total += w
    law = {k: v / total for k, v in law.items()}
    return {"boltzmann": counts_b, "configuration": counts_c, "law": law, "reps": reps}
