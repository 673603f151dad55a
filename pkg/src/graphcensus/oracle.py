"""Ground truth at tiny sizes by exhaustive enumeration.

Enumerates every canonical (multi)graph of a given size, tallies exact copy
count distributions (optionally degree-weighted), and computes the patchwork
generating function straight from its definition.  Everything here is a test
instrument: exact, loud on caps, and deliberately unoptimized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Iterator

from .graphs import (
    Graph,
    Multigraph,
    SimpleGraph,
    SizeCapError,
    Subgraph,
    is_isomorphic,
    subgraph_copies,
    subgraph_count,
    subgraph_count_family,
)
from .series import TruncatedSeries

ENUMERATION_CAP = 10**8


@dataclass
class CountDistribution:
    """Exact copy-count distribution over all hosts of one size."""

    total: Fraction
    by_t: dict[int, Fraction] = field(default_factory=dict)

    @property
    def distinguished_total(self) -> Fraction:
        return sum((t * w for t, w in self.by_t.items()), Fraction(0))

    def check(self) -> None:
        assert sum(self.by_t.values(), Fraction(0)) == self.total

    def to_json(self) -> dict:
        return {
            "total": str(self.total),
            "by_t": {str(t): str(w) for t, w in sorted(self.by_t.items())},
            "distinguished_total": str(self.distinguished_total),
        }


def enumerate_multigraphs(n: int, m: int) -> Iterator[Multigraph]:
    """All n^(2m) canonical (n,m)-multigraph sequences, each exactly once."""
    if n**(2 * m) > ENUMERATION_CAP:
        raise SizeCapError(f"{n}^(2*{m}) exceeds the enumeration cap")
    for seq in product(range(1, n + 1), repeat=2 * m):
        yield Multigraph(n, seq)


def enumerate_simple(n: int, m: int) -> Iterator[SimpleGraph]:
    """All binom(binom(n,2), m) canonical simple (n,m)-graphs."""
    pairs = list(combinations(range(1, n + 1), 2))
    if math.comb(len(pairs), m) > ENUMERATION_CAP:
        raise SizeCapError("simple-graph enumeration cap exceeded")
    for chosen in combinations(pairs, m):
        yield SimpleGraph(n, chosen)


def _weight(g: Graph, delta) -> Fraction:
    if delta is None:
        return Fraction(1)
    w = Fraction(1)
    for d in g.degrees():
        w *= delta.delta(d)
        if w == 0:
            return w
    return w


def _host_chunks(n: int, m: int, kind: str) -> list:
    """Split the enumeration by a prefix so workers can share it."""
    if kind == "multigraph":
        if m == 0:
            return [None]
        return [("multi-prefix", n, m, v) for v in range(1, n + 1)]
    pairs = list(combinations(range(1, n + 1), 2))
    if m == 0:
        return [None]
    return [("simple-prefix", n, m, i) for i in range(len(pairs) - m + 1)]


def _enumerate_chunk(chunk, n: int, m: int, kind: str) -> Iterator[Graph]:
    if chunk is None:
        yield from (enumerate_multigraphs if kind == "multigraph" else enumerate_simple)(n, m)
        return
    tag, n, m, head = chunk
    if tag == "multi-prefix":
        for rest in product(range(1, n + 1), repeat=2 * m - 1):
            yield Multigraph(n, (head,) + rest)
    else:
        pairs = list(combinations(range(1, n + 1), 2))
        for rest in combinations(pairs[head + 1 :], m - 1):
            yield SimpleGraph(n, (pairs[head],) + rest)


def _oracle_chunk(args) -> CountDistribution:
    chunk, n, m, shapes, delta, kind = args
    dist = CountDistribution(total=Fraction(0))
    for g in _enumerate_chunk(chunk, n, m, kind):
        w = _weight(g, delta)
        t = subgraph_count_family(g, shapes) if len(shapes) > 1 else subgraph_count(g, shapes[0])
        dist.total += w
        dist.by_t[t] = dist.by_t.get(t, Fraction(0)) + w
    dist.check()
    return dist


def oracle_distribution(
    n: int,
    m: int,
    family: Graph | Iterable[Graph],
    delta=None,
    kind: str = "multigraph",
    workers: int = 1,
) -> CountDistribution:
    """Exact distribution of G[family] over all (n,m) hosts, delta-weighted.

    ``delta`` is a WeightSpec with exact rational coefficients (or None for
    the uniform model).  With ``workers > 1`` the enumeration is chunked by
    a sequence prefix and the partial distributions are merged; the merge is
    associative over exact rationals, so the result is identical to the
    serial one.
    """
    shapes = [family] if isinstance(family, (Multigraph, SimpleGraph)) else list(family)
    if workers <= 1:
        return _oracle_chunk((None, n, m, shapes, delta, kind))
    from concurrent.futures import ProcessPoolExecutor

    chunks = _host_chunks(n, m, kind)
    payloads = [(chunk, n, m, shapes, delta, kind) for chunk in chunks]
    dist = CountDistribution(total=Fraction(0))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_oracle_chunk, payloads):
            dist.total += part.total
            for t, w in part.by_t.items():
                dist.by_t[t] = dist.by_t.get(t, Fraction(0)) + w
    dist.check()
    return dist


def naive_subgraph_count(g: Graph, f: Graph) -> int:
    """Copy count by enumerating every (vertex subset, edge subset) pair.

    The most literal oracle there is; used to anchor the backtracking
    counter.  Exponential in host size, so keep hosts tiny.
    """
    if g.kind != f.kind:
        raise TypeError("host and pattern must share a kind")
    count = 0
    vertices = range(1, g.n + 1)
    if isinstance(g, Multigraph):
        edges = [(j,) + g.endpoints(j) for j in range(1, g.m + 1)]
        for subset in combinations(vertices, f.n):
            sub = set(subset)
            inside = [e for e in edges if e[1] in sub and e[2] in sub]
            for chosen in combinations(inside, f.m):
                relabel = {v: i + 1 for i, v in enumerate(sorted(sub))}
                seq: list[int] = []
                for _, u, v in chosen:
                    seq.extend((relabel[u], relabel[v]))
                if is_isomorphic(Multigraph(f.n, seq), f):
                    count += 1
        return count
    for subset in combinations(vertices, f.n):
        sub = set(subset)
        inside = [e for e in g.edges if e[0] in sub and e[1] in sub]
        for chosen in combinations(inside, f.m):
            relabel = {v: i + 1 for i, v in enumerate(sorted(sub))}
            cand = SimpleGraph(f.n, [(relabel[u], relabel[v]) for u, v in chosen])
            if is_isomorphic(cand, f):
                count += 1
    return count


# ---------------------------------------------------------------------------
# patchworks

PATCHWORK_HOST_CAP = (5, 4)  # n_max, m_max hard limits
PATCHWORK_COPIES_CAP = 20


@dataclass
class PatchworkSeries:
    """Truncated generating function of canonically labeled patchworks.

    ``series`` is a TruncatedSeries in (u, w, z); the coefficient of
    u^k z^n w^m times n! 2^m m! (multigraph) or n! (simple) counts patchworks
    with k pieces whose underlying graph has n vertices and m edges.
    """

    series: TruncatedSeries
    kind: str
    n_max: int
    m_max: int
    k_max: int


def _piece_sets_with_full_union(
    host: Graph, copies: list[Subgraph], k_limit: int | None
) -> Iterator[int]:
    """Yield sizes of copy subsets whose union covers all of the host."""
    all_vertices = frozenset(range(1, host.n + 1))
    if isinstance(host, Multigraph):
        all_edges = frozenset(range(1, host.m + 1))
    else:
        all_edges = frozenset(host.edges)
    top = len(copies) if k_limit is None else min(len(copies), k_limit)
    for k in range(0 if host.n == 0 else 1, top + 1):
        for chosen in combinations(copies, k):
            verts = frozenset().union(*(c.vertices for c in chosen)) if chosen else frozenset()
            edges = frozenset().union(*(c.edge_part for c in chosen)) if chosen else frozenset()
            if verts == all_vertices and edges == all_edges:
                yield k


_PATCHWORK_MEMO: dict[tuple, PatchworkSeries] = {}


def patchwork_series(
    f: Graph,
    n_max: int,
    m_max: int,
    k_max: int | None = None,
    kind: str | None = None,
    disjoint_only: bool = False,
) -> PatchworkSeries:
    """Patchwork generating function computed by definition.

    For every canonical host within the caps, every set of distinct copies
    of f whose union is exactly the host is one canonically labeled
    patchwork.  ``disjoint_only`` keeps only sets of pairwise vertex-disjoint
    copies.  ``k_max=None`` enumerates all piece counts (needed for exact
    inclusion-exclusion); the number of copies per host is capped to keep the
    subset lattice small.  Results are memoized (the t-slice extraction asks
    for the same series once per t).
    """
    kind = kind or f.kind
    f_key = f.edge_seq if isinstance(f, Multigraph) else tuple(sorted(f.edges))
    memo_key = (kind, f.n, f_key, n_max, m_max, k_max, disjoint_only)
    cached = _PATCHWORK_MEMO.get(memo_key)
    if cached is not None:
        return cached
    if kind != f.kind:
        raise ValueError("pattern kind must match the requested kind")
    if n_max > PATCHWORK_HOST_CAP[0] or m_max > PATCHWORK_HOST_CAP[1]:
        raise SizeCapError(f"patchwork caps are {PATCHWORK_HOST_CAP}")
    multigraph = kind == "multigraph"
    k_cap_estimate = k_max if k_max is not None else PATCHWORK_COPIES_CAP
    coeffs: dict[tuple[int, int, int], Fraction] = {(0, 0, 0): Fraction(1)}
    for n in range(0, n_max + 1):
        for m in range(0, m_max + 1):
            if n == 0:
                continue
            hosts = enumerate_multigraphs(n, m) if multigraph else enumerate_simple(n, m)
            if multigraph:
                norm = Fraction(1, math.factorial(n) * 2**m * math.factorial(m))
            else:
                norm = Fraction(1, math.factorial(n))
            for host in hosts:
                copies = sorted(
                    subgraph_copies(host, f),
                    key=lambda s: (sorted(s.vertices), sorted(map(str, s.edge_part))),
                )
                if not copies:
                    continue
                if len(copies) > PATCHWORK_COPIES_CAP:
                    raise SizeCapError("too many copies in one host for patchworks")
                if disjoint_only:
                    copies_iter = _disjoint_union_sizes(host, copies, k_max)
                else:
                    copies_iter = _piece_sets_with_full_union(host, copies, k_max)
                for k in copies_iter:
                    key = (k, m, n)
                    coeffs[key] = coeffs.get(key, Fraction(0)) + norm
    max_k = max((k for k, _, _ in coeffs), default=0)
    series = TruncatedSeries(
        ("u", "w", "z"),
        (max(k_cap_estimate, max_k), m_max, n_max),
        coeffs,
    )
    result = PatchworkSeries(series, kind, n_max, m_max, max_k)
    if len(_PATCHWORK_MEMO) < 256:
        _PATCHWORK_MEMO[memo_key] = result
    return result


def _disjoint_union_sizes(
    host: Graph, copies: list[Subgraph], k_limit: int | None
) -> Iterator[int]:
    all_vertices = frozenset(range(1, host.n + 1))
    if isinstance(host, Multigraph):
        all_edges = frozenset(range(1, host.m + 1))
    else:
        all_edges = frozenset(host.edges)
    top = len(copies) if k_limit is None else min(len(copies), k_limit)
    for k in range(0 if host.n == 0 else 1, top + 1):
        for chosen in combinations(copies, k):
            verts: set = set()
            ok = True
            for c in chosen:
                if verts & c.vertices:
                    ok = False
                    break
                verts |= c.vertices
            if not ok:
                continue
            edges = frozenset().union(*(c.edge_part for c in chosen)) if chosen else frozenset()
            if frozenset(verts) == all_vertices and edges == all_edges:
                yield k
