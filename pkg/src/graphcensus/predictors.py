"""Closed-form asymptotic predictions: thresholds, Poisson parameters,
tuned weighted expectations, sparse-tree exponents, power-law cycle
constants, and periodic-weight adjustments.

Two printed-constant discrepancies are resolved empirically and kept behind
convention flags:

* ``lambda_convention``: the Poisson parameter for a strictly balanced
  multigraph F at m ~ c n^(2-1/d).  The isomorphism-closed family EGF gives
  (2c)^m(F)/aut(F) (default, "iso-closed"); the alternative printed value
  c^m(F)/(m(F)! n(F)!) is available as "single-shape".  Monte Carlo data
  rejects the alternative wherever the two differ.

* ``cycle_norm``: the finite-weight cycle Poisson mean uses n/(2m) by
  default ("half"), which is the value consistent with the tree formula and
  with the uniform-weight limit; the alternative "double" uses n/m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from .graphs import (
    BalanceClass,
    Graph,
    Multigraph,
    aut_count,
    balance_class,
    density,
    essential_density,
    shape,
)
from .models import WeightSpec, solve_tuning
from .specialfuncs import gamma, zeta


@dataclass
class Prediction:
    """A predicted value with its growth exponent and provenance tag."""

    value: Fraction | float | None
    exponent: Fraction | float | None = None
    formula_id: str = ""
    convention: str | None = None
    extras: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def conv(x):
            if isinstance(x, Fraction):
                return {"numerator": x.numerator, "denominator": x.denominator}
            return x

        return {
            "value": conv(self.value),
            "exponent": conv(self.exponent),
            "formula_id": self.formula_id,
            "convention": self.convention,
            "extras": {k: conv(v) for k, v in self.extras.items()},
        }


def threshold_exponent(f: Graph) -> Fraction:
    """Growth exponent 2 - 1/d*(F) below which copies of F vanish."""
    d_star, _ = essential_density(f)
    return 2 - 1 / d_star


def poisson_lambda_simple(f: Graph, c) -> Prediction:
    """Poisson parameter (2c)^m(F)/aut(F) at m ~ c n^(2-1/d(F)), simple model."""
    if balance_class(f) != BalanceClass.STRICTLY_BALANCED:
        raise ValueError("Poisson parameter requires a strictly balanced pattern")
    exact = isinstance(c, (int, Fraction))
    value = (2 * (Fraction(c) if exact else float(c))) ** f.m / aut_count(f)
    return Prediction(
        value,
        exponent=threshold_exponent(f),
        formula_id="poisson-strictly-balanced-simple",
    )


def poisson_lambda_multi(f: Multigraph, c, convention: str = "iso-closed") -> Prediction:
    """Poisson parameter for a strictly balanced multigraph at its threshold.

    Default: the limit of the isomorphism-closed family EGF at (n, 2m/n^2),
    which is (2c)^m(F)/aut(F).  The "single-shape" convention returns
    c^m(F)/(m(F)! n(F)!) instead (the one-canonical-element normalization).
    """
    if balance_class(f) != BalanceClass.STRICTLY_BALANCED:
        raise ValueError("Poisson parameter requires a strictly balanced pattern")
    exact = isinstance(c, (int, Fraction))
    cval = Fraction(c) if exact else float(c)
    if convention == "iso-closed":
        value = (2 * cval) ** f.m / aut_count(f)
    elif convention == "single-shape":
        value = cval**f.m / (math.factorial(f.m) * math.factorial(f.n))
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return Prediction(
        value,
        exponent=threshold_exponent(f),
        formula_id="poisson-strictly-balanced-multi",
        convention=convention,
    )


def weighted_expectation_predictor(
    f: Graph,
    n: int,
    m: int,
    delta: WeightSpec,
    chi: float | None = None,
    falling_vertex_factor: bool = True,
) -> Prediction:
    """Tuned expectation of F-copies in the degree-weighted model.

    (1/aut F) n^n(F) (2m)^-m(F) prod_v chi^deg(v) Delta^(deg v)(chi)/Delta(chi)
    with chi the root of chi Delta'(chi)/Delta(chi) = 2m/n.

    By default the vertex factor n^n(F) is replaced by the falling factorial
    n (n-1) ... (n - n(F) + 1), which is the exact formula's leading
    finite-size behavior (the two agree asymptotically; the plain power is
    kept behind the flag for the algebraic limit identities).
    """
    if chi is None:
        chi = _tuned_chi(delta, n, m)
    prod = 1.0
    for d in f.degrees():
        prod *= _degree_ratio(delta, chi, d)
    vertex_factor = float(math.perm(n, f.n)) if falling_vertex_factor else float(n) ** f.n
    value = vertex_factor / float(2 * m) ** f.m * prod / aut_count(f)
    return Prediction(
        value,
        formula_id="weighted-expectation-tuned",
        convention="falling-vertex" if falling_vertex_factor else "plain-power",
        extras={"chi": chi, "mean_degree": 2 * m / n},
    )


def _tuned_chi(delta: WeightSpec, n: int, m: int) -> float | None:
    """Tuning point, or None for one-point support (ratios are chi-free)."""
    if delta.kind == "finite" and delta.support_min() == delta.support_max():
        if 2 * m != n * delta.support_min():
            raise ValueError("monomial weights force 2m = n * degree")
        return None
    return solve_tuning(delta, Fraction(2 * m, n))


def _degree_ratio(delta: WeightSpec, chi: float | None, d: int) -> float:
    """chi^d Delta^(d)(chi) / Delta(chi); falling factorial for monomials."""
    if chi is None:
        p = delta.support_min()
        return float(math.perm(p, d)) if d <= p else 0.0
    return chi**d * delta.value(chi, d) / delta.value(chi, 0)


def cycle_poisson_mean_finite(
    length: int, n: int, m: int, delta: WeightSpec, norm: str = "half"
) -> Prediction:
    """Poisson mean of length-l cycle counts under polynomial weights.

    (1/2l) * (base * chi^2 Delta''(chi)/Delta(chi))^l with base = n/(2m)
    under the default normalization ("half"); "double" uses base = n/m.
    The default is the one consistent with the tree expectation and with
    the uniform-weight reduction Delta = e^x.
    """
    if length < 1:
        raise ValueError("cycle length must be >= 1")
    chi = _tuned_chi(delta, n, m)
    ratio = _degree_ratio(delta, chi, 2)
    if norm == "half":
        base = n / (2.0 * m)
    elif norm == "double":
        base = n / float(m)
    else:
        raise ValueError(f"unknown normalization {norm!r}")
    value = (base * ratio) ** length / (2 * length)
    return Prediction(
        value,
        formula_id="cycle-poisson-finite-weights",
        convention=norm,
        extras={"chi": chi},
    )


def regular_expectation(f: Graph, n: int, p: int) -> Prediction:
    """Expected F-copies in a random p-regular multigraph.

    (1/aut F) n^n(F) (np)^-m(F) prod_v p(p-1)...(p-deg(v)+1); exactly 0 when
    some degree exceeds p.
    """
    mu = 1
    for d in f.degrees():
        if d > p:
            return Prediction(Fraction(0), formula_id="regular-expectation")
        mu *= math.perm(p, d)
    value = Fraction(mu * n**f.n, (n * p) ** f.m * aut_count(f))
    return Prediction(value, formula_id="regular-expectation")


def _mu(delta: WeightSpec, j: int) -> int:
    """Smallest allowed degree >= j."""
    if delta.kind == "exp":
        return j
    if delta.kind == "cosh":
        return j if j % 2 == 0 else j + 1
    if delta.kind == "sinh1":
        return j if (j == 0 or j % 2 == 1) else j + 1
    if delta.kind == "powerlaw":
        return max(j, 1)
    for d in range(j, len(delta.coeffs)):
        if delta.coeffs[d] != 0:
            return d
    raise ValueError(f"no allowed degree >= {j}")


def sparse_tree_exponent(tree: Graph, delta: WeightSpec) -> Prediction:
    """Sparse-regime tree expectation exponents for m = Theta(n eps_n).

    E(G[T]) = Theta(n * eps_n^e) with e = -(k-1) + gamma/mu(1) and
    gamma = sum_v mu(deg v); the threshold eps_n = Theta(n^lambda) has
    lambda = mu(1)/((k-1) mu(1) - gamma) (None when the denominator is 0).
    Exponents are returned signed, exactly as the formulas give them.
    """
    if delta.delta_float(0) <= 0:
        raise ValueError("sparse regime requires isolated vertices (delta_0 > 0)")
    k = tree.n
    if tree.m != k - 1:
        raise ValueError("pattern must be a tree")
    mu1 = _mu(delta, 1)
    gam = sum(_mu(delta, d) for d in tree.degrees())
    eps_exp = Fraction(-(k - 1)) + Fraction(gam, mu1)
    denom = (k - 1) * mu1 - gam
    lam = Fraction(mu1, denom) if denom != 0 else None
    return Prediction(
        None,
        exponent=eps_exp,
        formula_id="sparse-tree-threshold",
        extras={"threshold_exponent": lam, "gamma": gam, "mu1": mu1},
    )


def power_law_cycle_prediction(beta: float, length: int, n: int) -> Prediction:
    """Expected l-cycle count kappa * n^((3-beta)/(beta-1) * l), 2 < beta < 3.

    kappa = 1/(l!^2 2^l) * (zeta(beta)/Gamma(1-beta))^((beta-3)l/(beta-1))
          * Gamma((beta-2)/(beta-1)) / Gamma(((3-beta)l + beta-2)/(beta-1))
          * (Gamma(3-beta)/zeta(beta-1))^l.
    """
    if not 2 < beta < 3:
        raise ValueError("requires 2 < beta < 3")
    if length < 3:
        raise ValueError("cycle length must be >= 3")
    ell = length
    tau = (zeta(beta - 1) - zeta(beta)) / gamma(1 - beta)
    kappa = (
        1.0
        / (math.factorial(ell) ** 2 * 2**ell)
        * (zeta(beta) / gamma(1 - beta)) ** ((beta - 3) / (beta - 1) * ell)
        * gamma((beta - 2) / (beta - 1))
        / gamma(((3 - beta) * ell + beta - 2) / (beta - 1))
        * (gamma(3 - beta) / zeta(beta - 1)) ** ell
    )
    exponent = Fraction(ell) * (3 - Fraction(beta).limit_denominator(10**6)) / (
        Fraction(beta).limit_denominator(10**6) - 1
    )
    mean_degree = zeta(beta - 1) / zeta(beta)
    # The assembled constant normalizes the cycle class as a single canonical
    # element; renormalizing to the isomorphism-closed class EGF (the
    # convention every exact formula here is validated under) multiplies by
    # l!^2 2^l / (2l).  Monte Carlo runs sit near the renormalized value, so
    # it is exposed alongside the printed one.
    iso_factor = math.factorial(ell) ** 2 * 2**ell / (2 * ell)
    return Prediction(
        kappa * n ** float(exponent),
        exponent=exponent,
        formula_id="powerlaw-cycle-expectation",
        convention="printed-constant",
        extras={
            "kappa": kappa,
            "kappa_iso_closed": kappa * iso_factor,
            "tau": tau,
            "mean_degree": mean_degree,
        },
    )


# ---------------------------------------------------------------------------
# periodic weights


@dataclass
class PeriodicDecomposition:
    """Delta(x) = x^r Omega(x^p) with p the gcd of support differences.

    ``omega_coeff(k)`` is the exact coefficient of y^k in Omega (rational
    weight kinds), and ``omega_d_coeff(d, k)`` the coefficient of y^k in the
    transfer series Omega_d with x^d Delta^(d)(x) = x^r Omega_d(x^p).
    """

    delta: WeightSpec
    r: int
    p: int

    def omega_coeff(self, k: int) -> Fraction:
        e = self.r + self.p * k
        return Fraction(self.delta.delta(e), math.factorial(e))

    def omega_d_coeff(self, d: int, k: int) -> Fraction:
        e = self.r + self.p * k
        if e < d:
            return Fraction(0)
        return Fraction(self.delta.delta(e), math.factorial(e - d))

    def omega_ratio(self, d: int, chi: float) -> float:
        """Omega_d(chi^p) / Omega(chi^p) evaluated through Delta."""
        return chi**d * self.delta.value(chi, d) / self.delta.value(chi, 0)


def periodic_decompose(delta: WeightSpec) -> PeriodicDecomposition:
    """Support residue r and period p of the weight sequence.

    For a one-point support {d} the degenerate answer is r = d, p = 1.
    """
    if delta.kind == "exp":
        return PeriodicDecomposition(delta, 0, 1)
    if delta.kind == "cosh":
        return PeriodicDecomposition(delta, 0, 2)
    if delta.kind == "sinh1":
        return PeriodicDecomposition(delta, 0, 1)  # gcd(1, 2) = 1: aperiodic
    if delta.kind == "powerlaw":
        return PeriodicDecomposition(delta, 1, 1)
    support = [d for d, c in enumerate(delta.coeffs) if c != 0]
    r = support[0]
    if len(support) == 1:
        return PeriodicDecomposition(delta, r, 1)
    p = 0
    for d in support[1:]:
        p = math.gcd(p, d - r)
    return PeriodicDecomposition(delta, r, p)


def periodic_expectation(
    f: Graph, n: int, m: int, delta: WeightSpec
) -> Prediction:
    """Expected F-copies under periodic weights.

    Exactly 0 (with a diagnostic) when p does not divide 2m - n r; otherwise
    the tuned formula with the transfer ratios Omega_d(chi^p)/Omega(chi^p),
    which coincide with chi^d Delta^(d)(chi)/Delta(chi) at the Delta-tuned
    chi.
    """
    dec = periodic_decompose(delta)
    if (2 * m - n * dec.r) % dec.p != 0:
        return Prediction(
            Fraction(0),
            formula_id="periodic-expectation",
            extras={
                "r": dec.r,
                "p": dec.p,
                "reason": f"p = {dec.p} does not divide 2m - n r = {2*m - n*dec.r}",
            },
        )
    if dec.p == 1 and delta.support_min() == delta.support_max():
        # one-point support: p-regular multigraphs
        pred = regular_expectation(f, n, dec.r)
        pred.extras.update({"r": dec.r, "p": dec.p})
        return pred
    chi = solve_tuning(delta, Fraction(2 * m, n))
    z = delta.value(chi, 0)
    prod = 1.0
    for d in f.degrees():
        prod *= dec.omega_ratio(d, chi)
    value = float(n) ** f.n / float(2 * m) ** f.m * prod / aut_count(f)
    return Prediction(
        value,
        formula_id="periodic-expectation",
        extras={"r": dec.r, "p": dec.p, "chi": chi},
    )


# ---------------------------------------------------------------------------
# dispatcher (shared by the CLI and experiment configs)


def predict(theorem: str, **params) -> Prediction:
    """Name-based dispatcher over the predictor formulas."""
    def get_shape(kind_default="multigraph") -> Graph:
        kind = params.get("kind", kind_default)
        pat = params["shape"]
        return shape(pat, kind) if isinstance(pat, str) else pat

    def get_delta() -> WeightSpec:
        d = params["delta"]
        return d if isinstance(d, WeightSpec) else WeightSpec.from_json(d)

    if theorem == "threshold":
        f = get_shape()
        return Prediction(None, exponent=threshold_exponent(f), formula_id="threshold-essential-density")
    if theorem == "lambda-simple":
        return poisson_lambda_simple(get_shape("simple"), _num(params["c"]))
    if theorem == "lambda-multi":
        return poisson_lambda_multi(
            get_shape(), _num(params["c"]), params.get("convention", "iso-closed")
        )
    if theorem == "weighted":
        return weighted_expectation_predictor(
            get_shape(), int(params["n"]), int(params["m"]), get_delta()
        )
    if theorem == "cycles-finite":
        return cycle_poisson_mean_finite(
            int(params["l"]), int(params["n"]), int(params["m"]),
            get_delta(), params.get("norm", "half"),
        )
    if theorem == "regular":
        return regular_expectation(get_shape(), int(params["n"]), int(params["p"]))
    if theorem == "sparse-tree":
        return sparse_tree_exponent(get_shape(), get_delta())
    if theorem == "powerlaw-cycles":
        return power_law_cycle_prediction(float(params["beta"]), int(params["l"]), int(params["n"]))
    if theorem == "periodic":
        return periodic_expectation(
            get_shape(), int(params["n"]), int(params["m"]), get_delta()
        )
    raise ValueError(f"unknown theorem {theorem!r}")


def _num(x):
    if isinstance(x, str):
        return Fraction(x)
    return x
