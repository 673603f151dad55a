"""Degree-weight specifications and random (multi)graph samplers.

The weighted model puts weight prod_v delta_{deg v} on a multigraph; the
weight generating function is Delta(x) = sum_d delta_d x^d / d!.  Builtin
specs: finite vectors, all-ones (Delta = e^x), even degrees (cosh), odd
degrees plus isolated vertices (sinh + 1), and the power law with
delta_d = d^{-beta} d! so that a Boltzmann vertex at x = 1 has degree d with
probability d^{-beta}/zeta(beta).

Samplers use numpy generators.  Replicate r of an experiment derives its
stream from (seed, r) so results do not depend on worker scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .graphs import Multigraph, SimpleGraph
from .series import TruncatedSeries
from .specialfuncs import polylog, stirling1_signed, zeta

REJECTION_CAP = 10**7  # vertex-batch attempts before giving up


class WeightSpec:
    """Degree-weight sequence with exact and float evaluation of Delta.

    Exact coefficient access (``delta``) is available for every builtin
    except the power law, whose weights are irrational; the power law is
    evaluated in floats only and only at x <= 1 (radius of convergence 1).
    """

    def __init__(self, kind: str, coeffs: Sequence[Fraction] | None = None, beta: float | None = None):
        self.kind = kind
        self.coeffs = tuple(Fraction(c) for c in coeffs) if coeffs is not None else None
        self.beta = beta
        if kind == "finite":
            if not self.coeffs or all(c == 0 for c in self.coeffs):
                raise ValueError("finite weight vector needs a nonzero entry")
            if any(c < 0 for c in self.coeffs):
                raise ValueError("weights must be nonnegative")
        elif kind == "powerlaw":
            if beta is None or beta <= 1:
                raise ValueError("power law requires beta > 1")
        elif kind not in ("exp", "cosh", "sinh1"):
            raise ValueError(f"unknown weight kind {kind!r}")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def finite(coeffs: Iterable[Fraction | int | str]) -> "WeightSpec":
        return WeightSpec("finite", coeffs=[Fraction(c) for c in coeffs])

    @staticmethod
    def exponential() -> "WeightSpec":
        return WeightSpec("exp")

    @staticmethod
    def cosh() -> "WeightSpec":
        return WeightSpec("cosh")

    @staticmethod
    def sinh_plus_one() -> "WeightSpec":
        return WeightSpec("sinh1")

    @staticmethod
    def power_law(beta: float) -> "WeightSpec":
        return WeightSpec("powerlaw", beta=beta)

    @staticmethod
    def from_json(data) -> "WeightSpec":
        if isinstance(data, str):
            if data == "exp":
                return WeightSpec.exponential()
            if data == "cosh":
                return WeightSpec.cosh()
            if data == "sinh1":
                return WeightSpec.sinh_plus_one()
            if data.startswith("powerlaw:"):
                return WeightSpec.power_law(float(data.split(":", 1)[1]))
            if data.startswith("finite:"):
                return WeightSpec.finite(data.split(":", 1)[1].split(","))
            raise ValueError(f"unknown weight spec {data!r}")
        kind = data["kind"]
        if kind == "finite":
            return WeightSpec.finite(data["coeffs"])
        if kind == "powerlaw":
            return WeightSpec.power_law(float(data["beta"]))
        return WeightSpec.from_json(kind)

    def to_json(self):
        if self.kind == "finite":
            return {"kind": "finite", "coeffs": [str(c) for c in self.coeffs]}
        if self.kind == "powerlaw":
            return {"kind": "powerlaw", "beta": self.beta}
        return {"kind": self.kind}

    # -- exact views ---------------------------------------------------------

    def delta(self, d: int) -> Fraction:
        """Exact weight delta_d (rational kinds only)."""
        if self.kind == "finite":
            return self.coeffs[d] if d < len(self.coeffs) else Fraction(0)
        if self.kind == "exp":
            return Fraction(1)
        if self.kind == "cosh":
            return Fraction(1) if d % 2 == 0 else Fraction(0)
        if self.kind == "sinh1":
            return Fraction(1) if (d == 0 or d % 2 == 1) else Fraction(0)
        raise ValueError("power-law weights are not rational")

    def is_polynomial(self) -> bool:
        return self.kind == "finite"

    def egf_poly(self, cap: int) -> TruncatedSeries:
        """Delta(x) truncated at x^cap, exact (coefficient of x^d is delta_d/d!)."""
        coeffs = {}
        for d in range(cap + 1):
            c = self.delta(d)
            if c:
                coeffs[(d,)] = Fraction(c, math.factorial(d))
        return TruncatedSeries(("x",), (cap,), coeffs)

    def support_min(self) -> int:
        if self.kind == "finite":
            return next(d for d, c in enumerate(self.coeffs) if c != 0)
        if self.kind == "powerlaw":
            return 1
        return 0

    def support_max(self) -> float:
        if self.kind == "finite":
            return max(d for d, c in enumerate(self.coeffs) if c != 0)
        return math.inf

    def support(self, cap: int) -> list[int]:
        return [d for d in range(cap + 1) if self.delta_float(d) > 0]

    def delta_float(self, d: int) -> float:
        if self.kind == "powerlaw":
            return 0.0 if d == 0 else d ** (-self.beta) * math.factorial(d)
        return float(self.delta(d))

    # -- float evaluation -----------------------------------------------------

    def value(self, x: float, order: int = 0) -> float:
        """Delta^(order)(x) as a float."""
        if x < 0:
            raise ValueError("evaluation requires x >= 0")
        if self.kind == "finite":
            # differentiate coefficients of sum delta_d x^d / d!
            acc = 0.0
            for d in range(len(self.coeffs) - 1, order - 1, -1):
                acc = acc * x + float(self.coeffs[d]) / math.factorial(d - order)
            return acc
        if self.kind == "exp":
            return math.exp(x)
        if self.kind == "cosh":
            return math.cosh(x) if order % 2 == 0 else math.sinh(x)
        if self.kind == "sinh1":
            base = math.sinh(x) if order % 2 == 0 else math.cosh(x)
            return base + (1.0 if order == 0 else 0.0)
        # power law: Delta = Li_beta(x); d^k/dx^k via Euler operators,
        # d^k/dx^k = x^{-k} sum_j s(k,j) (x d/dx)^j and (x d/dx) Li_s = Li_{s-1}
        if x > 1:
            raise ValueError("power-law weights are only evaluated at x <= 1")
        if order == 0:
            return polylog(self.beta, x)
        if x == 0:
            return self.delta_float(order)  # Delta^(k)(0) = delta_k
        s1 = stirling1_signed(order)
        acc = 0.0
        for j in range(1, order + 1):
            acc += s1[j] * polylog(self.beta - j, x)
        return acc / x**order

    def mean_ratio(self, x: float) -> float:
        """x Delta'(x) / Delta(x), the tuned mean degree."""
        return x * self.value(x, 1) / self.value(x, 0)


def solve_tuning(delta: WeightSpec, target: float | Fraction, rel_tol: float = 1e-12) -> float:
    """Unique positive root of x Delta'(x)/Delta(x) = target.

    The map is increasing (its derivative is a variance over a positive
    factor), so bisection converges; the bracket is grown geometrically for
    entire weights.  For the power law the root is 1 exactly when the target
    is zeta(beta-1)/zeta(beta), and otherwise lies in (0, 1).
    """
    target = float(target)
    lo_support = delta.support_min()
    hi_support = delta.support_max()
    if not lo_support < target < hi_support:
        raise ValueError(
            f"target {target} outside the open support interval ({lo_support}, {hi_support})"
        )
    if delta.kind == "exp":
        return target  # x Delta'/Delta = x
    if delta.kind == "powerlaw":
        if delta.beta <= 2:
            hi_value = math.inf
        else:
            hi_value = zeta(delta.beta - 1) / zeta(delta.beta)
        if hi_value < math.inf and abs(target - hi_value) <= 1e-9 * hi_value:
            return 1.0
        if target >= hi_value:
            raise ValueError("power-law mean degree cannot exceed zeta(beta-1)/zeta(beta)")
        lo, hi = 1e-12, 1.0 - 1e-13
    else:
        lo, hi = 1e-12, 1.0
        while delta.mean_ratio(hi) < target:
            hi *= 2.0
            if hi > 1e12:
                raise ValueError("tuning bracket blew up")
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if delta.mean_ratio(mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rel_tol * max(hi, 1e-30):
            break
    x = 0.5 * (lo + hi)
    return x


# ---------------------------------------------------------------------------
# degree distributions


@dataclass
class DegreeDistribution:
    """pmf pi(d) with a table sampler and (for power laws) an exact tail.

    pi_x(d) = delta_d x^d / (Delta(x) d!).
    """

    probs: np.ndarray  # pi(0..D) table
    tail_beta: float | None = None  # power-law tail exponent past the table
    tail_mass: float = 0.0

    def __post_init__(self):
        total = float(self.probs.sum()) + self.tail_mass
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"pmf does not sum to 1 (got {total})")
        self.cum = np.cumsum(self.probs)
        # two-level lookup: a short head table resolves almost every draw
        head = int(np.searchsorted(self.cum, 1.0 - 2e-3, side="left")) + 1
        self.head_len = min(max(head, 1), min(256, len(self.cum)))
        self.head_cum = self.cum[: self.head_len]

    @staticmethod
    def from_weight_spec(delta: WeightSpec, x: float, table_cap: int = 1 << 16) -> "DegreeDistribution":
        if delta.kind == "finite":
            top = len(delta.coeffs) - 1
            z = delta.value(x, 0)
            probs = np.array(
                [float(delta.coeffs[d]) * x**d / (z * math.factorial(d)) for d in range(top + 1)]
            )
            return DegreeDistribution(probs / probs.sum())
        if delta.kind in ("exp", "cosh", "sinh1"):
            z = delta.value(x, 0)
            probs = []
            d = 0
            prev = 1.0
            while True:
                p = delta.delta_float(d) * x**d / (z * math.factorial(d))
                probs.append(p)
                if d > max(6 * x, 30) and max(p, prev) < 1e-17:
                    break
                prev = p
                d += 1
                if d > 100_000:
                    break
            arr = np.array(probs)
            return DegreeDistribution(arr / arr.sum())
        # power law: table plus an exact Pareto-style tail sampler
        beta = delta.beta
        z = polylog(beta, x)
        d_range = np.arange(1, table_cap + 1, dtype=float)
        probs = d_range ** (-beta) * x**d_range / z
        probs = np.concatenate(([0.0], probs))
        if x == 1.0:
            # tail mass sum_{d > cap} d^-beta / zeta(beta), Euler-Maclaurin head
            tail = (
                table_cap ** (1 - beta) / (beta - 1)
                - 0.5 * table_cap ** (-beta)
                + beta / 12 * table_cap ** (-beta - 1)
            ) / z
            return DegreeDistribution(probs, tail_beta=beta, tail_mass=tail)
        # x < 1: geometric suppression makes the tail negligible past the cap
        return DegreeDistribution(probs / probs.sum())

    @staticmethod
    def from_pmf(probs: Sequence[float]) -> "DegreeDistribution":
        arr = np.asarray(probs, dtype=float)
        if (arr < 0).any():
            raise ValueError("probabilities must be nonnegative")
        if abs(arr.sum() - 1.0) > 1e-12:
            raise ValueError("pmf must sum to 1")
        return DegreeDistribution(arr / arr.sum())

    def mean(self) -> float:
        head = float((np.arange(len(self.probs)) * self.probs).sum())
        if self.tail_mass and self.tail_beta is not None:
            beta = self.tail_beta
            if beta <= 2:
                return math.inf
            cap = len(self.probs) - 1
            head += cap ** (2 - beta) / ((beta - 2) * polylog(beta, 1.0))
        return head

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        u = rng.random(size)
        out = np.searchsorted(self.head_cum, u, side="right")
        top = len(self.probs)
        if self.head_len < top:
            miss = np.nonzero(out >= self.head_len)[0]
            if miss.size:
                out[miss] = np.searchsorted(self.cum, u[miss], side="right")
        if self.tail_mass:
            for i in np.nonzero(out >= top)[0]:
                out[i] = self._sample_tail(rng)
        elif out.size:
            np.minimum(out, top - 1, out=out)  # guard the last float ulp
        return out

    def _sample_tail(self, rng: np.random.Generator) -> int:
        """Exact draw of d > table cap with P(d) proportional to d^-beta.

        Proposes y from the continuous Pareto density on [cap+1/2, inf) and
        rounds to the nearest integer k; the proposal weight of k is
        (beta-1) * integral of y^-beta over [k-1/2, k+1/2], which dominates
        k^-beta by convexity, so the acceptance ratio is always <= 1.
        """
        beta = self.tail_beta
        cap = len(self.probs) - 1
        a = cap + 0.5
        while True:
            y = a * (1.0 - rng.random()) ** (-1.0 / (beta - 1.0))
            k = int(math.floor(y + 0.5))
            integral = ((k - 0.5) ** (1.0 - beta) - (k + 0.5) ** (1.0 - beta)) / (beta - 1.0)
            if rng.random() * integral <= k ** (-beta):
                return k


def derive_rng(seed: int, replicate: int) -> np.random.Generator:
    """Independent, scheduling-insensitive stream for one replicate."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(replicate)]))


# ---------------------------------------------------------------------------
# samplers


def sample_uniform_multigraph(n: int, m: int, rng: np.random.Generator) -> Multigraph:
    """Uniform canonical (n,m)-multigraph: 2m independent uniform labels."""
    if n < 1:
        raise ValueError("need n >= 1")
    seq = rng.integers(1, n + 1, size=2 * m)
    return Multigraph(n, seq.tolist())


def sample_uniform_simple(n: int, m: int, rng: np.random.Generator) -> SimpleGraph:
    """Uniform m-subset of vertex pairs via sequential distinct draws."""
    total_pairs = n * (n - 1) // 2
    if m > total_pairs:
        raise ValueError("too many edges for a simple graph")
    chosen: dict[int, None] = {}
    need = m
    while need > 0:
        batch = max(2 * need, 16)
        us = rng.integers(1, n + 1, size=batch)
        vs = rng.integers(1, n + 1, size=batch)
        for u, v in zip(us.tolist(), vs.tolist()):
            if u == v:
                continue
            code = (u - 1) * n + (v - 1) if u < v else (v - 1) * n + (u - 1)
            if code not in chosen:
                chosen[code] = None
                need -= 1
                if need == 0:
                    break
    edges = [(code // n + 1, code % n + 1) for code in chosen]
    return SimpleGraph(n, edges)


def boltzmann_degree(delta: WeightSpec, x: float, rng: np.random.Generator) -> int:
    """One draw with P(d) = delta_d x^d / (Delta(x) d!)."""
    dist = _cached_distribution(delta, x)
    return int(dist.sample(rng, 1)[0])


def _assemble_multigraph(n: int, degrees: np.ndarray, rng: np.random.Generator) -> Multigraph:
    """Pair half-edges uniformly: edge j joins half-edges 2j-1 and 2j.

    Assigning the 2m half-edge labels uniformly and reading stubs in label
    order is the same as applying a uniform permutation to the stub vector.
    """
    stubs = np.repeat(np.arange(1, n + 1), degrees)
    perm = rng.permutation(stubs.shape[0])
    return Multigraph(n, stubs[perm].tolist())


_FEASIBILITY_MEMO: dict[tuple, bool] = {}


def feasible_degree_sum(delta: WeightSpec, n: int, total: int) -> bool:
    """Can ``total`` be written as a sum of n support elements of Delta?

    Exact bitmask dynamic program over (sum, number of positive parts); a
    zero in the support lets any part count up to n be padded.  Memoized:
    samplers re-check the same (spec, n, 2m) triple for every replicate.
    """
    key = (delta.kind, delta.coeffs, delta.beta, n, total)
    cached = _FEASIBILITY_MEMO.get(key)
    if cached is not None:
        return cached
    result = _feasible_degree_sum(delta, n, total)
    if len(_FEASIBILITY_MEMO) < 4096:
        _FEASIBILITY_MEMO[key] = result
    return result


def _feasible_degree_sum(delta: WeightSpec, n: int, total: int) -> bool:
    if total < 0:
        return False
    if delta.kind == "exp":
        return True
    if delta.kind == "cosh":
        return total % 2 == 0
    if delta.kind == "sinh1":
        # j vertices of odd degree, j <= n, j == total (mod 2), j <= total
        if total == 0:
            return True
        return n >= 1 if total % 2 == 1 else n >= 2
    if delta.kind == "powerlaw":
        return total >= n
    support = [d for d, c in enumerate(delta.coeffs) if c != 0]
    has_zero = 0 in support
    positive = [d for d in support if d > 0]
    if not positive:
        return total == 0
    limit = (1 << (n + 1)) - 1
    masks = [0] * (total + 1)
    masks[0] = 1  # zero sum with zero positive parts
    for s in range(1, total + 1):
        acc = 0
        for d in positive:
            if d <= s:
                acc |= masks[s - d] << 1
        masks[s] = acc & limit
    if has_zero:
        return masks[total] != 0  # pad the remaining vertices with degree 0
    return bool(masks[total] >> n & 1)


_TUNING_MEMO: dict[tuple, float] = {}
_DIST_MEMO: dict[tuple, "DegreeDistribution"] = {}


def _spec_key(delta: WeightSpec) -> tuple:
    return (delta.kind, delta.coeffs, delta.beta)


def _cached_distribution(delta: WeightSpec, x: float) -> DegreeDistribution:
    key = (_spec_key(delta), x)
    dist = _DIST_MEMO.get(key)
    if dist is None:
        dist = DegreeDistribution.from_weight_spec(delta, x)
        if len(_DIST_MEMO) < 64:
            _DIST_MEMO[key] = dist
    return dist


def _tuning_for_sampler(delta: WeightSpec, n: int, m: int) -> float:
    """Tuning point for the conditioned sampler (memoized per (spec, n, m)).

    Conditioned on the degree sum, the law does not depend on x (the tilt
    x^2m factors out), so x only drives the acceptance rate.  When 2m/n sits
    on the boundary of a finite support the tuning equation has no root and
    any interior surrogate works.
    """
    key = (_spec_key(delta), n, m)
    cached = _TUNING_MEMO.get(key)
    if cached is not None:
        return cached
    x = _tuning_for_sampler_uncached(delta, n, m)
    if len(_TUNING_MEMO) < 4096:
        _TUNING_MEMO[key] = x
    return x


def _tuning_for_sampler_uncached(delta: WeightSpec, n: int, m: int) -> float:
    lo, hi = delta.support_min(), delta.support_max()
    target = Fraction(2 * m, n)
    if lo < target < hi:
        return solve_tuning(delta, target)
    if hi == lo:
        return 1.0  # monomial: regular multigraphs, law is x-free
    margin = min(Fraction(1, 4), Fraction(1, 2 * n), Fraction(hi - lo if hi != math.inf else 1, 4))
    surrogate = target + margin if target == lo else Fraction(hi) - margin
    return solve_tuning(delta, surrogate)


def sample_delta_multigraph(
    n: int,
    m: int,
    delta: WeightSpec,
    rng: np.random.Generator,
    x: float | None = None,
    max_batches: int = REJECTION_CAP,
) -> Multigraph:
    """Conditioned degree-weighted sampler: P(G) = weight(G)/total on (n,m).

    Draws n Boltzmann degrees and rejects until their sum is exactly 2m,
    then pairs half-edges uniformly.  Degree vectors are drawn through their
    sufficient statistic: counts per degree value are multinomial, and given
    the counts the arrangement over vertices is a uniform shuffle, which is
    exactly the law of n iid draws.
    """
    if not feasible_degree_sum(delta, n, 2 * m):
        raise ValueError(f"2m = {2*m} is not a sum of {n} support elements")
    if x is None:
        x = _tuning_for_sampler(delta, n, m)
    dist = _cached_distribution(delta, x)
    if delta.kind == "finite" or not dist.tail_mass:
        values = np.arange(len(dist.probs))
        pvals = dist.probs
        batch = 64
        attempts = 0
        while attempts < max_batches:
            counts = rng.multinomial(n, pvals, size=batch)
            sums = counts @ values
            hits = np.nonzero(sums == 2 * m)[0]
            if hits.size:
                chosen = counts[hits[0]]
                degree_vector = np.repeat(values, chosen)
                rng.shuffle(degree_vector)
                return _assemble_multigraph(n, degree_vector, rng)
            attempts += batch
            batch = min(2 * batch, 8192)
        raise RuntimeError("rejection cap exceeded in delta sampler")
    # heavy-tailed table: draw the vector directly
    return _conditioned_from_distribution(n, m, dist, rng, max_batches)


def _conditioned_from_distribution(
    n: int, m: int, dist: DegreeDistribution, rng: np.random.Generator, max_batches: int
) -> Multigraph:
    batch = 16
    attempts = 0
    while attempts < max_batches:
        draws = dist.sample(rng, batch * n).reshape(batch, n)
        sums = draws.sum(axis=1)
        hits = np.nonzero(sums == 2 * m)[0]
        if hits.size:
            return _assemble_multigraph(n, draws[hits[0]], rng)
        attempts += batch
        batch = min(2 * batch, 256)
    raise RuntimeError("rejection cap exceeded in conditioned sampler")


def sample_configuration(
    n: int,
    pi: DegreeDistribution,
    rng: np.random.Generator,
    m: int | None = None,
    max_batches: int = REJECTION_CAP,
) -> Multigraph:
    """Configuration-model sampler with degree distribution pi.

    Free-m variant rejects odd degree sums; the m-conditioned variant rejects
    until the sum is exactly 2m.  Half-edge pairing is uniform, so with
    pi = pi_x the output law equals the Boltzmann sampler's law.
    """
    if m is None:
        for _ in range(max_batches):
            degrees = pi.sample(rng, n)
            total = int(degrees.sum())
            if total % 2 == 0:
                return _assemble_multigraph(n, degrees, rng)
        raise RuntimeError("rejection cap exceeded (odd sums)")
    return _conditioned_from_distribution(n, m, pi, rng, max_batches)
