"""Monte Carlo experiment runner: sample hosts, count copies, compare with
predictions, and emit machine-readable reports.

Replicates are independent; replicate r derives its RNG stream from
(seed, r), so a report is bit-for-bit reproducible for a given (config,
seed) regardless of the worker count (the wall-clock runtime field is the
one exception and is excluded from comparisons).

Copy counting in sampled hosts uses specialized counters (degree scans for
loops, pair-multiplicity binomials for parallel edges, neighbor merges for
triangles and short cycles); the generic backtracking engine is the
fallback for exotic patterns and dominates runtime on large hosts.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import predictors
from .graphs import Graph, Multigraph, SimpleGraph, shape, subgraph_count
from .models import (
    DegreeDistribution,
    WeightSpec,
    derive_rng,
    sample_configuration,
    sample_delta_multigraph,
    sample_uniform_multigraph,
    sample_uniform_simple,
    solve_tuning,
)
from .specialfuncs import chi_square_survival, poisson_pmf


# ---------------------------------------------------------------------------
# fast copy counters
#
# All multigraph counters run off one shared per-host structure: the unique
# non-loop endpoint pairs with their parallel multiplicities (numpy arrays)
# plus per-vertex multiplicity power sums.  Power sums stay below 2^53, so
# the float bincounts are exact.


class _HostStats:
    __slots__ = ("n", "n_loops", "pu", "pv", "pk", "s1", "s2", "s3", "_adj")

    def __init__(self, g: Multigraph):
        n = g.n
        seq = np.array(g.edge_seq, dtype=np.int64)
        u = seq[0::2]
        v = seq[1::2]
        loops = u == v
        self.n = n
        self.n_loops = int(loops.sum())
        lo = np.minimum(u[~loops], v[~loops])
        hi = np.maximum(u[~loops], v[~loops])
        codes, k = np.unique(lo * (n + 1) + hi, return_counts=True)
        self.pu = (codes // (n + 1)).astype(np.int64)
        self.pv = (codes % (n + 1)).astype(np.int64)
        self.pk = k.astype(np.int64)
        kf = k.astype(float)
        self.s1 = np.bincount(self.pu, weights=kf, minlength=n + 1)
        self.s1 += np.bincount(self.pv, weights=kf, minlength=n + 1)
        self.s2 = np.bincount(self.pu, weights=kf**2, minlength=n + 1)
        self.s2 += np.bincount(self.pv, weights=kf**2, minlength=n + 1)
        self.s3 = np.bincount(self.pu, weights=kf**3, minlength=n + 1)
        self.s3 += np.bincount(self.pv, weights=kf**3, minlength=n + 1)
        self._adj = None

    @property
    def adj(self) -> dict[int, dict[int, int]]:
        if self._adj is None:
            adj: dict[int, dict[int, int]] = {}
            for u, v, k in zip(self.pu.tolist(), self.pv.tolist(), self.pk.tolist()):
                adj.setdefault(u, {})[v] = k
                adj.setdefault(v, {})[u] = k
            self._adj = adj
        return self._adj


def _stats(g: Multigraph) -> _HostStats:
    return _HostStats(g)


def count_loops(g: Multigraph) -> int:
    seq = g.edge_seq
    return sum(1 for j in range(0, len(seq), 2) if seq[j] == seq[j + 1])


def count_parallel_pairs(g: Multigraph, stats: _HostStats | None = None) -> int:
    """Copies of the double edge: unordered pairs of parallel non-loop edges."""
    st = stats or _stats(g)
    k = st.pk
    return int((k * (k - 1) // 2).sum())


def count_paths3_multi(g: Multigraph, stats: _HostStats | None = None) -> int:
    """Copies of the 3-vertex path: a center with two distinct neighbors."""
    st = stats or _stats(g)
    return int(round(float((st.s1**2 - st.s2).sum()) / 2))


def count_stars3_multi(g: Multigraph, stats: _HostStats | None = None) -> int:
    """Copies of the 3-leaf star via the elementary symmetric e3 per vertex."""
    st = stats or _stats(g)
    e3 = st.s1**3 - 3 * st.s1 * st.s2 + 2 * st.s3
    return int(round(float(e3.sum()) / 6))


def count_triangles_multi(g: Multigraph, stats: _HostStats | None = None) -> int:
    """Copies of the 3-cycle: sum over triples of the multiplicity product.

    Each unordered triangle is seen from its three edges, iterating the
    shorter endpoint neighborhood, so the total is divided by 3.
    """
    st = stats or _stats(g)
    adj = st.adj
    acc = 0
    for u, v, k in zip(st.pu.tolist(), st.pv.tolist(), st.pk.tolist()):
        nu, nv = adj[u], adj[v]
        if len(nv) < len(nu):
            nu, nv = nv, nu
            u, v = v, u
        for w, kw in nu.items():
            if w == v or w == u:
                continue
            other = nv.get(w)
            if other:
                acc += k * kw * other
    assert acc % 3 == 0
    return acc // 3


def count_cycles_multi(g: Multigraph, length: int, stats: _HostStats | None = None) -> int:
    """Copies of the length-l cycle (l <= 8) by DFS from the smallest vertex."""
    if length == 1:
        return count_loops(g)
    if length == 2:
        return count_parallel_pairs(g, stats)
    if length == 3:
        return count_triangles_multi(g, stats)
    if length > 8:
        raise ValueError("cycle counter capped at length 8")
    adj = (stats or _stats(g)).adj
    total = 0

    def dfs(start: int, current: int, depth: int, weight: int, visited: set):
        nonlocal total
        if depth == length - 1:
            k = adj[current].get(start, 0)
            if k:
                total += weight * k
            return
        for nxt, k in adj[current].items():
            if nxt > start and nxt not in visited:
                visited.add(nxt)
                dfs(start, nxt, depth + 1, weight * k, visited)
                visited.remove(nxt)

    for start in adj:
        dfs(start, start, 0, 1, {start})
    return total // 2


def count_triangles_simple(g: SimpleGraph) -> int:
    adj: dict[int, set[int]] = {}
    for u, v in g.edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    total = 0
    for u, v in g.edges:
        a, b = adj[u], adj[v]
        if len(b) < len(a):
            a, b = b, a
        for w in a:
            if w > v and w > u and w in b:
                total += 1
    return total


def _count_with_stats(g: Graph, pattern, stats: _HostStats | None) -> int:
    if not isinstance(pattern, str):
        return subgraph_count(g, pattern)
    if isinstance(g, Multigraph):
        if pattern == "loop":
            return count_loops(g)
        if pattern == "edge":
            return g.m - count_loops(g)
        if pattern == "double-edge":
            return count_parallel_pairs(g, stats)
        if pattern == "p3":
            return count_paths3_multi(g, stats)
        if pattern == "k13":
            return count_stars3_multi(g, stats)
        if pattern.startswith("c") and pattern[1:].isdigit():
            return count_cycles_multi(g, int(pattern[1:]), stats)
        return subgraph_count(g, shape(pattern, "multigraph"))
    if pattern == "edge":
        return g.m
    if pattern == "p3":
        return sum(math.comb(d, 2) for d in g.degrees())
    if pattern == "k13":
        return sum(math.comb(d, 3) for d in g.degrees())
    if pattern == "c3":
        return count_triangles_simple(g)
    return subgraph_count(g, shape(pattern, "simple"))


_STATS_PATTERNS = {"double-edge", "p3", "k13"}


def count_pattern(g: Graph, pattern) -> int:
    """Copy count with fast paths; falls back to the generic engine."""
    return _count_with_stats(g, pattern, None)


def count_patterns(g: Graph, patterns: list) -> tuple[int, ...]:
    """Count several patterns on one host, sharing the host structure."""
    stats = None
    if isinstance(g, Multigraph) and any(
        isinstance(p, str) and (p in _STATS_PATTERNS or (p.startswith("c") and p[1:].isdigit()))
        for p in patterns
    ):
        stats = _stats(g)
    return tuple(_count_with_stats(g, p, stats) for p in patterns)


# ---------------------------------------------------------------------------
# statistics


def tv_distance(p: dict[int, float], q) -> float:
    """Total variation (1/2) sum |p_t - q_t|.

    ``q`` is either a pmf dict or ("poisson", lam); the Poisson tail past the
    empirical support is summed analytically (as its own mass).
    """
    if isinstance(q, tuple) and q[0] == "poisson":
        lam = float(q[1])
        support = max(p) if p else 0
        acc = 0.0
        qcum = 0.0
        for t in range(0, support + 1):
            qt = poisson_pmf(lam, t)
            qcum += qt
            acc += abs(p.get(t, 0.0) - qt)
        acc += 1.0 - qcum  # q's tail where p is zero
        return 0.5 * acc
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(t, 0.0) - q.get(t, 0.0)) for t in keys)


def scaling_fit(sizes, means) -> tuple[float, float]:
    """Least-squares slope of log(mean) against log(n), with its stderr.

    Returns (nan, nan) when some mean is nonpositive (undefined fit).
    """
    sizes = list(sizes)
    means = list(means)
    if len(sizes) < 2:
        raise ValueError("need at least two sizes")
    if any(mu <= 0 for mu in means):
        return (math.nan, math.nan)
    xs = np.log(np.array(sizes, dtype=float))
    ys = np.log(np.array(means, dtype=float))
    xbar = xs.mean()
    sxx = float(((xs - xbar) ** 2).sum())
    slope = float(((xs - xbar) * (ys - ys.mean())).sum()) / sxx
    intercept = float(ys.mean() - slope * xbar)
    if len(sizes) == 2:
        return slope, 0.0
    resid = ys - (intercept + slope * xs)
    se = math.sqrt(float((resid**2).sum()) / (len(sizes) - 2) / sxx)
    return slope, se


def two_sample_chi_square(counts_a: dict, counts_b: dict) -> tuple[float, int, float]:
    """Two-sample chi-square over shared cells: (statistic, df, p-value)."""
    cells = sorted(set(counts_a) | set(counts_b))
    na = sum(counts_a.values())
    nb = sum(counts_b.values())
    ka = math.sqrt(nb / na)
    kb = math.sqrt(na / nb)
    stat = 0.0
    used = 0
    for c in cells:
        a = counts_a.get(c, 0)
        b = counts_b.get(c, 0)
        if a + b == 0:
            continue
        stat += (ka * a - kb * b) ** 2 / (a + b)
        used += 1
    df = used - 1
    return stat, df, chi_square_survival(stat, df)


def median_of_means(values, buckets: int) -> float:
    """Median of bucket means over a replicate-ordered value list."""
    values = list(values)
    if buckets < 1 or len(values) < buckets:
        raise ValueError("need at least one value per bucket")
    size = len(values) // buckets
    ms = sorted(
        sum(values[i * size : (i + 1) * size]) / size for i in range(buckets)
    )
    mid = buckets // 2
    return ms[mid] if buckets % 2 == 1 else 0.5 * (ms[mid - 1] + ms[mid])


# ---------------------------------------------------------------------------
# configuration and reports


@dataclass
class ExperimentConfig:
    """One Monte Carlo experiment: a model, a size, patterns, replicates."""

    model: str  # uniform-multi | uniform-simple | delta | configuration
    n: int
    pattern: str | list[str]
    replicates: int
    seed: int
    m: int | None = None
    m_rule: dict | None = None  # {"c": float, "alpha": float}: m = round(c n^alpha)
    delta: WeightSpec | dict | str | None = None
    statistic: str = "mean"
    predictor: dict | None = None
    mom_buckets: int | None = None
    workers: int | None = None

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("need at least one replicate")
        if self.m is None and self.m_rule is None and self.model != "configuration":
            raise ValueError("either m or m_rule is required")
        if isinstance(self.delta, (dict, str)):
            self.delta = WeightSpec.from_json(self.delta)

    def resolved_m(self) -> int | None:
        if self.m is not None:
            return self.m
        if self.m_rule is None:
            return None
        c, alpha = float(self.m_rule["c"]), float(self.m_rule["alpha"])
        return round(c * self.n ** alpha)  # nearest-integer rounding

    def kind(self) -> str:
        return "simple" if self.model == "uniform-simple" else "multigraph"

    def to_json(self) -> dict:
        out = dataclasses.asdict(self)
        if isinstance(self.delta, WeightSpec):
            out["delta"] = self.delta.to_json()
        out["resolved_m"] = self.resolved_m()
        return out

    @staticmethod
    def from_json(data: dict) -> "ExperimentConfig":
        fields = {f.name for f in dataclasses.fields(ExperimentConfig)}
        return ExperimentConfig(**{k: v for k, v in data.items() if k in fields})


@dataclass
class ExperimentReport:
    """Empirical copy-count statistics with optional predicted comparisons."""

    config: dict
    pattern: str
    replicates: int
    empirical_pmf: dict[int, float]
    empirical_mean: float
    empirical_variance: float
    stderr: float
    predicted_mean: float | None = None
    tv_distance: float | None = None
    median_of_means: float | None = None
    runtime_seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    def to_json(self, include_runtime: bool = True) -> dict:
        out = {
            "config": self.config,
            "pattern": self.pattern,
            "replicates": self.replicates,
            "empirical_pmf": {str(t): f for t, f in sorted(self.empirical_pmf.items())},
            "empirical_mean": self.empirical_mean,
            "empirical_variance": self.empirical_variance,
            "stderr": self.stderr,
            "predicted_mean": self.predicted_mean,
            "tv_distance": self.tv_distance,
            "median_of_means": self.median_of_means,
            "notes": self.notes,
        }
        if include_runtime:
            out["runtime_seconds"] = self.runtime_seconds
        return out


def _sample_host(config: ExperimentConfig, m: int | None, rng) -> Graph:
    if config.model == "uniform-multi":
        return sample_uniform_multigraph(config.n, m, rng)
    if config.model == "uniform-simple":
        return sample_uniform_simple(config.n, m, rng)
    if config.model == "delta":
        return sample_delta_multigraph(config.n, m, config.delta, rng)
    if config.model == "configuration":
        pi = DegreeDistribution.from_weight_spec(config.delta, _config_x(config))
        return sample_configuration(config.n, pi, rng, m=m)
    raise ValueError(f"unknown model {config.model!r}")


def _config_x(config: ExperimentConfig) -> float:
    m = config.resolved_m()
    if m is None:
        return 1.0
    if config.delta.kind == "powerlaw":
        return 1.0
    return solve_tuning(config.delta, Fraction(2 * m, config.n))


def _replicate_counts(config: ExperimentConfig, patterns, r: int, pi=None) -> tuple:
    rng = derive_rng(config.seed, r)
    m = config.resolved_m()
    if config.model == "configuration" and pi is not None:
        host = sample_configuration(config.n, pi, rng, m=m)
    else:
        host = _sample_host(config, m, rng)
    return count_patterns(host, patterns)


def _worker_chunk(payload) -> list[tuple]:
    config_json, patterns, start, stop = payload
    config = ExperimentConfig.from_json(config_json)
    pi = None
    if config.model == "configuration":
        pi = DegreeDistribution.from_weight_spec(config.delta, _config_x(config))
    return [_replicate_counts(config, patterns, r, pi=pi) for r in range(start, stop)]


def _resolve_workers(config: ExperimentConfig) -> int:
    env = os.environ.get("WORKERS")
    if env:
        return max(1, int(env))
    if config.workers:
        return max(1, int(config.workers))
    return max(1, os.cpu_count() or 1)


def run_many(config: ExperimentConfig, patterns: list[str]) -> dict[str, ExperimentReport]:
    """Run one experiment and count several patterns on the shared hosts."""
    start_time = time.monotonic()
    workers = _resolve_workers(config)
    r_total = config.replicates
    config_json = config.to_json()
    if workers == 1 or r_total < 4 * workers:
        rows = _worker_chunk((config_json, patterns, 0, r_total))
    else:
        chunk = max(1, math.ceil(r_total / (4 * workers)))
        payloads = [
            (config_json, patterns, lo, min(lo + chunk, r_total))
            for lo in range(0, r_total, chunk)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_worker_chunk, payloads))
        rows = [row for chunk_rows in chunks for row in chunk_rows]
    runtime = time.monotonic() - start_time
    reports = {}
    for i, pat in enumerate(patterns):
        counts = [row[i] for row in rows]
        reports[pat] = _build_report(config, pat, counts, runtime)
    return reports


def run(config: ExperimentConfig) -> ExperimentReport:
    """Run the experiment for the configured pattern (single-pattern form)."""
    pattern = config.pattern if isinstance(config.pattern, str) else config.pattern[0]
    return run_many(config, [pattern])[pattern]


def _build_report(config, pattern, counts, runtime) -> ExperimentReport:
    r_total = len(counts)
    mean = sum(counts) / r_total
    var = sum((c - mean) ** 2 for c in counts) / (r_total - 1) if r_total > 1 else 0.0
    pmf: dict[int, float] = {}
    for c in counts:
        pmf[c] = pmf.get(c, 0) + 1
    pmf = {t: cnt / r_total for t, cnt in pmf.items()}
    report = ExperimentReport(
        config=config.to_json(),
        pattern=pattern,
        replicates=r_total,
        empirical_pmf=pmf,
        empirical_mean=mean,
        empirical_variance=var,
        stderr=math.sqrt(var / r_total) if r_total > 1 else 0.0,
        runtime_seconds=runtime,
    )
    if config.mom_buckets:
        report.median_of_means = median_of_means(counts, config.mom_buckets)
    if config.predictor:
        params = dict(config.predictor)
        theorem = params.pop("theorem")
        if "delta" not in params and config.delta is not None:
            params["delta"] = config.delta
        prediction = predictors.predict(theorem, **params)
        if prediction.value is not None:
            report.predicted_mean = float(prediction.value)
            report.tv_distance = tv_distance(pmf, ("poisson", report.predicted_mean))
            report.notes["formula_id"] = prediction.formula_id
            if prediction.convention:
                report.notes["convention"] = prediction.convention
    return report


def sweep(config: ExperimentConfig, sizes: list[int]) -> list[ExperimentReport]:
    """Re-run the experiment across sizes (m from m_rule), for scaling fits."""
    if config.m_rule is None:
        raise ValueError("sweep needs an m_rule so m scales with n")
    return [run(dataclasses.replace(config, n=n)) for n in sizes]


def sweep_csv(reports: list[ExperimentReport]) -> str:
    header = "n,m,replicates,empirical_mean,stderr,predicted_mean,tv_distance,seed"
    lines = [header]
    for rep in reports:
        cfg = rep.config
        lines.append(
            ",".join(
                str(x)
                for x in [
                    cfg["n"],
                    cfg["resolved_m"],
                    rep.replicates,
                    rep.empirical_mean,
                    rep.stderr,
                    rep.predicted_mean if rep.predicted_mean is not None else "",
                    rep.tv_distance if rep.tv_distance is not None else "",
                    cfg["seed"],
                ]
            )
        )
    return "\n".join(lines) + "\n"
