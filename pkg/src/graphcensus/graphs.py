"""Core (multi)graph data model and exact structural analysis.

A multigraph is vertex-labeled (1..n) with labeled, oriented edges: edge j is
stored as the pair (edge_seq[2j-2], edge_seq[2j-1]), so the whole object is
the flat sequence (v_1, ..., v_2m).  Loops and parallel edges are allowed.
A simple graph is vertex-labeled with an unordered edge set, no loops, no
parallel edges.

Isomorphism for multigraphs is taken modulo vertex relabeling, edge
relabeling, and per-edge orientation flips (flips act trivially on loops).
Concretely, two multigraphs are isomorphic iff some vertex bijection matches
their multisets of unordered endpoint pairs.  This is the reading under which
there are exactly n^(2m) canonical (n,m)-multigraphs and a single non-loop
edge has 2 canonical representatives.

Everything in this module is exact (Fraction / int) and pure; graph values
are immutable after construction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Union


class SizeCapError(ValueError):
    """A brute-force size cap was exceeded (hard error, never silent)."""


class Multigraph:
    """Canonical vertex-labeled, edge-labeled, edge-oriented multigraph."""

    kind = "multigraph"
    __slots__ = ("n", "edge_seq")

    def __init__(self, n: int, edge_seq: Iterable[int] = ()):
        seq = tuple(map(int, edge_seq))
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(seq) % 2 != 0:
            raise ValueError("edge_seq must have even length")
        if seq and not (1 <= min(seq) and max(seq) <= n):
            raise ValueError(f"vertex labels must lie in 1..{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edge_seq", seq)

    def __setattr__(self, name, value):
        raise AttributeError("Multigraph is immutable")

    def __reduce__(self):
        return (Multigraph, (self.n, self.edge_seq))

    @property
    def m(self) -> int:
        return len(self.edge_seq) // 2

    def endpoints(self, j: int) -> tuple[int, int]:
        """Oriented endpoints of edge j (labels are 1-based)."""
        return self.edge_seq[2 * j - 2], self.edge_seq[2 * j - 1]

    def degrees(self) -> tuple[int, ...]:
        """Degree of each vertex 1..n; a loop contributes 2."""
        deg = [0] * (self.n + 1)
        for v in self.edge_seq:
            deg[v] += 1
        return tuple(deg[1:])

    def pair_multiplicities(self) -> dict[tuple[int, int], int]:
        """Unordered endpoint pair -> number of parallel edges (loops as (v,v))."""
        mult: dict[tuple[int, int], int] = {}
        seq = self.edge_seq
        for j in range(0, len(seq), 2):
            key = (seq[j], seq[j + 1]) if seq[j] <= seq[j + 1] else (seq[j + 1], seq[j])
            mult[key] = mult.get(key, 0) + 1
        return mult

    def loop_count(self) -> int:
        seq = self.edge_seq
        return sum(1 for j in range(0, len(seq), 2) if seq[j] == seq[j + 1])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Multigraph)
            and self.n == other.n
            and self.edge_seq == other.edge_seq
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edge_seq))

    def __repr__(self) -> str:
        edges = [self.endpoints(j) for j in range(1, self.m + 1)]
        return f"Multigraph(n={self.n}, edges={edges})"


class SimpleGraph:
    """Canonical vertex-labeled graph; unordered edges, no loops/parallels."""

    kind = "simple"
    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError("loops are not allowed in a simple graph")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u},{v}) outside 1..{n}")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))

    def __setattr__(self, name, value):
        raise AttributeError("SimpleGraph is immutable")

    def __reduce__(self):
        return (SimpleGraph, (self.n, tuple(self.edges)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> tuple[int, ...]:
        deg = [0] * (self.n + 1)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg[1:])

    def pair_multiplicities(self) -> dict[tuple[int, int], int]:
        return {e: 1 for e in self.edges}

    def loop_count(self) -> int:
        return 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimpleGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={sorted(self.edges)})"


Graph = Union[Multigraph, SimpleGraph]


@dataclass(frozen=True)
class Subgraph:
    """A concrete subgraph of a host: chosen vertices plus chosen edges.

    For a multigraph host, ``edge_part`` is a frozenset of edge labels; for a
    simple host it is a frozenset of unordered endpoint pairs.
    """

    vertices: frozenset
    edge_part: frozenset


class BalanceClass(Enum):
    STRICTLY_BALANCED = "strictly-balanced"
    BARELY_BALANCED = "barely-balanced"
    UNBALANCED = "unbalanced"


# ---------------------------------------------------------------------------
# density and balance


def density(g: Graph) -> Fraction:
    """Edge/vertex ratio m(G)/n(G); the empty graph has density 0."""
    if g.n == 0:
        return Fraction(0)
    return Fraction(g.m, g.n)


def _induced_edge_count(g: Graph, subset: frozenset) -> int:
    if isinstance(g, Multigraph):
        seq = g.edge_seq
        return sum(
            1
            for j in range(0, len(seq), 2)
            if seq[j] in subset and seq[j + 1] in subset
        )
    return sum(1 for u, v in g.edges if u in subset and v in subset)


def essential_density(g: Graph) -> tuple[Fraction, Subgraph]:
    """Maximum density over nonempty vertex subsets with all induced edges.

    Taking every induced edge is optimal for a fixed vertex set, so scanning
    vertex subsets suffices.  Returns a smallest witness subset.
    """
    if g.n == 0:
        raise ValueError("essential density of the empty graph is undefined")
    best = Fraction(-1)
    witness: frozenset = frozenset()
    vertices = range(1, g.n + 1)
    for size in range(1, g.n + 1):
        for subset in combinations(vertices, size):
            fs = frozenset(subset)
            d = Fraction(_induced_edge_count(g, fs), size)
            if d > best:
                best = d
                witness = fs
    return best, Subgraph(witness, _induced_edge_part(g, witness))


def _induced_edge_part(g: Graph, subset: frozenset) -> frozenset:
    if isinstance(g, Multigraph):
        seq = g.edge_seq
        return frozenset(
            j // 2 + 1
            for j in range(0, len(seq), 2)
            if seq[j] in subset and seq[j + 1] in subset
        )
    return frozenset(e for e in g.edges if e[0] in subset and e[1] in subset)


def balance_class(g: Graph) -> BalanceClass:
    """Classify by comparing d(G) against all strict subgraphs' densities.

    The maximum density over strict subgraphs is attained either on a proper
    vertex subset with all induced edges, or (same vertex set) by dropping a
    single edge; the empty subgraph contributes density 0.
    """
    if g.n == 0:
        raise ValueError("balance class of the empty graph is undefined")
    d = density(g)
    max_strict = Fraction(0)  # the empty subgraph
    vertices = range(1, g.n + 1)
    for size in range(1, g.n):
        for subset in combinations(vertices, size):
            fs = frozenset(subset)
            cand = Fraction(_induced_edge_count(g, fs), size)
            if cand > max_strict:
                max_strict = cand
    if g.m >= 1:
        max_strict = max(max_strict, Fraction(g.m - 1, g.n))
    if d > max_strict:
        return BalanceClass.STRICTLY_BALANCED
    if d == max_strict:
        return BalanceClass.BARELY_BALANCED
    return BalanceClass.UNBALANCED


# ---------------------------------------------------------------------------
# isomorphism


def _adjacency(g: Graph):
    """(non-loop multiplicity map by vertex, loop multiplicity by vertex)."""
    adj: dict[int, dict[int, int]] = {v: {} for v in range(1, g.n + 1)}
    loops: dict[int, int] = {v: 0 for v in range(1, g.n + 1)}
    for (u, v), k in g.pair_multiplicities().items():
        if u == v:
            loops[u] = k
        else:
            adj[u][v] = k
            adj[v][u] = k
    return adj, loops


def _wl_colors_pair(g_adj, g_loops, gn, h_adj, h_loops, hn):
    """Joint neighborhood refinement of two graphs over one shared palette.

    Color ids are therefore comparable across the two graphs: isomorphic
    vertices always receive the same id.
    """
    palette: dict = {}

    def canon(value):
        if value not in palette:
            palette[value] = len(palette)
        return palette[value]

    g_col = {
        v: canon((sum(g_adj[v].values()) + 2 * g_loops[v], g_loops[v]))
        for v in range(1, gn + 1)
    }
    h_col = {
        v: canon((sum(h_adj[v].values()) + 2 * h_loops[v], h_loops[v]))
        for v in range(1, hn + 1)
    }
    for _ in range(max(gn, hn)):
        before = len(set(g_col.values()) | set(h_col.values()))
        g_col = {
            v: canon(
                (g_col[v], tuple(sorted((g_col[u], k) for u, k in g_adj[v].items())))
            )
            for v in range(1, gn + 1)
        }
        h_col = {
            v: canon(
                (h_col[v], tuple(sorted((h_col[u], k) for u, k in h_adj[v].items())))
            )
            for v in range(1, hn + 1)
        }
        if len(set(g_col.values()) | set(h_col.values())) == before:
            break
    return g_col, h_col


def _match(g: Graph, h: Graph, count_all: bool) -> int:
    """Backtracking vertex-bijection search between g and h.

    Returns the number of structure-preserving bijections found (stopping at
    the first one unless ``count_all``).  Multiplicities and loops must match
    exactly, which is the flip-insensitive multigraph isomorphism.
    """
    if g.n != h.n or g.m != h.m:
        return 0
    g_adj, g_loops = _adjacency(g)
    h_adj, h_loops = _adjacency(h)
    g_col, h_col = _wl_colors_pair(g_adj, g_loops, g.n, h_adj, h_loops, h.n)
    g_hist = sorted(g_col.values())
    if g_hist != sorted(h_col.values()):
        return 0

    # order g's vertices: smallest color class first, then stay connected
    class_size: dict[int, int] = {}
    for c in g_col.values():
        class_size[c] = class_size.get(c, 0) + 1
    order: list[int] = []
    remaining = set(range(1, g.n + 1))
    while remaining:
        anchored = [v for v in remaining if any(u in order for u in g_adj[v])]
        pool = anchored if anchored else remaining
        v = min(pool, key=lambda v: (class_size[g_col[v]], v))
        order.append(v)
        remaining.remove(v)

    by_color: dict[int, list[int]] = {}
    for v in range(1, h.n + 1):
        by_color.setdefault(h_col[v], []).append(v)

    mapping: dict[int, int] = {}
    used: set[int] = set()
    found = 0

    def backtrack(i: int) -> bool:
        nonlocal found
        if i == len(order):
            found += 1
            return not count_all
        gv = order[i]
        for hv in by_color.get(g_col[gv], ()):
            if hv in used:
                continue
            if g_loops[gv] != h_loops[hv]:
                continue
            if len(g_adj[gv]) != len(h_adj[hv]):
                continue
            ok = True
            for nb, k in g_adj[gv].items():
                if nb in mapping and h_adj[hv].get(mapping[nb], 0) != k:
                    ok = False
                    break
            if not ok:
                continue
            mapping[gv] = hv
            used.add(hv)
            if backtrack(i + 1):
                return True
            del mapping[gv]
            used.remove(hv)
        return False

    backtrack(0)
    return found


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Label-independent isomorphism; kinds must match.

    For multigraphs a vertex swap may reverse a stored orientation, so the
    test compares unordered endpoint-pair multisets under vertex bijections.
    """
    if g.kind != h.kind:
        raise TypeError("cannot compare a multigraph with a simple graph")
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    if sorted(g.pair_multiplicities().values()) != sorted(
        h.pair_multiplicities().values()
    ):
        return False
    return _match(g, h, count_all=False) > 0


def vertex_automorphisms(g: Graph) -> int:
    """Number of vertex bijections preserving the unordered multiplicity map."""
    return _match(g, g, count_all=True)


def aut_count(g: Graph) -> int:
    """Size of the stabilizer of g in the full relabeling group.

    Multigraphs: vertex relabelings x edge relabelings x orientation flips,
    flips acting trivially on loops.  Each parallel class of size k can be
    permuted internally (k! ways, with the flip of every non-loop edge then
    forced) and each loop's flip fixes the object, so

        aut = (#vertex automorphisms) * prod k! * prod_over_loop_classes 2^k.

    Simple graphs: the usual vertex automorphism count.  In both cases
    canonical_copies(g) * aut_count(g) equals the order of the acting group.
    """
    if isinstance(g, SimpleGraph):
        return vertex_automorphisms(g)
    result = vertex_automorphisms(g)
    for (u, v), mult in g.pair_multiplicities().items():
        result *= math.factorial(mult)
        if u == v:
            result *= 2**mult
    return result


def canonical_copies(g: Graph) -> int:
    """Number of canonical objects on the same support isomorphic to g.

    Brute-force orbit enumeration: all n^(2m) sequences for multigraphs, all
    m-subsets of pairs for simple graphs.  Capped at n <= 6 and m <= 6.
    """
    if g.n > 6 or g.m > 6:
        raise SizeCapError("canonical_copies is capped at n <= 6, m <= 6")
    count = 0
    if isinstance(g, Multigraph):
        deg_sig = sorted(g.degrees())
        mult_sig = sorted(g.pair_multiplicities().values())
        for seq in product(range(1, g.n + 1), repeat=2 * g.m):
            cand = Multigraph(g.n, seq)
            if sorted(cand.degrees()) != deg_sig:
                continue
            if sorted(cand.pair_multiplicities().values()) != mult_sig:
                continue
            if is_isomorphic(cand, g):
                count += 1
        return count
    pairs = list(combinations(range(1, g.n + 1), 2))
    for chosen in combinations(pairs, g.m):
        cand = SimpleGraph(g.n, chosen)
        if is_isomorphic(cand, g):
            count += 1
    return count


def group_order(g: Graph) -> int:
    """Order of the relabeling group acting on canonical objects of g's size."""
    if isinstance(g, Multigraph):
        return math.factorial(g.n) * 2**g.m * math.factorial(g.m)
    return math.factorial(g.n)


# ---------------------------------------------------------------------------
# subgraph copy counting

PATTERN_CAP = 8


def _pattern_structure(f: Graph):
    """Adjacency of the pattern as multiplicity maps keyed by vertex."""
    mult = f.pair_multiplicities()
    adj: dict[int, dict[int, int]] = {v: {} for v in range(1, f.n + 1)}
    loops: dict[int, int] = {v: 0 for v in range(1, f.n + 1)}
    for (u, v), k in mult.items():
        if u == v:
            loops[u] = k
        else:
            adj[u][v] = k
            adj[v][u] = k
    return adj, loops


def _search_order(f: Graph) -> list[int]:
    """Pattern vertices ordered so each new vertex touches placed ones if possible."""
    adj, _ = _pattern_structure(f)
    degs = f.degrees()
    remaining = set(range(1, f.n + 1))
    order: list[int] = []
    while remaining:
        anchored = [v for v in remaining if any(u in order for u in adj[v])]
        pool = anchored if anchored else list(remaining)
        v = max(pool, key=lambda v: (degs[v - 1], -v))
        order.append(v)
        remaining.remove(v)
    return order


def subgraph_count(g: Graph, f: Graph) -> int:
    """Number of distinct subgraphs of g isomorphic to f (g[f]).

    Backtracks over injective vertex maps with multiplicity pruning; for a
    complete map the parallel edges of each required pair are chosen by
    binomial selection, and the total is divided by the pattern's vertex
    automorphism count so each subgraph is counted exactly once.
    """
    if g.kind != f.kind:
        raise TypeError("host and pattern must have the same kind")
    if f.n > PATTERN_CAP:
        raise SizeCapError(f"pattern size capped at n <= {PATTERN_CAP}")
    if f.n > g.n or f.m > g.m:
        return 0
    total = _embedding_weight_sum(g, f, collect=None)
    auts = vertex_automorphisms(f)
    assert total % auts == 0
    return total // auts


def subgraph_count_family(g: Graph, family: Iterable[Graph]) -> int:
    """g[family] for pairwise non-isomorphic shapes (validated)."""
    shapes = list(family)
    for a, b in combinations(shapes, 2):
        if a.kind == b.kind and is_isomorphic(a, b):
            raise ValueError("family members must be pairwise non-isomorphic")
    return sum(subgraph_count(g, f) for f in shapes)


def _host_structure(g: Graph):
    mult = g.pair_multiplicities()
    adj: dict[int, dict[int, int]] = {v: {} for v in range(1, g.n + 1)}
    loops: dict[int, int] = {v: 0 for v in range(1, g.n + 1)}
    for (u, v), k in mult.items():
        if u == v:
            loops[u] = k
        else:
            adj[u][v] = k
            adj[v][u] = k
    return adj, loops


def _embedding_weight_sum(g: Graph, f: Graph, collect) -> int:
    """Sum over injective vertex maps of the per-map edge-choice count.

    With ``collect`` a set, instead accumulates every concrete copy
    (vertices, edge choice) into it and the return value is meaningless.
    """
    f_adj, f_loops = _pattern_structure(f)
    g_adj, g_loops = _host_structure(g)
    g_degs = g.degrees()
    f_degs = f.degrees()
    order = _search_order(f)
    placed: dict[int, int] = {}
    used: set[int] = set()
    total = 0

    multigraph = isinstance(g, Multigraph)
    if collect is not None and multigraph:
        host_labels: dict[tuple[int, int], list[int]] = {}
        for j in range(1, g.m + 1):
            u, v = g.endpoints(j)
            key = (u, v) if u <= v else (v, u)
            host_labels.setdefault(key, []).append(j)

    def ways_for_map() -> int:
        w = 1
        for (a, b), k in f.pair_multiplicities().items():
            u, v = placed[a], placed[b]
            if a == b:
                avail = g_loops[u]
            else:
                avail = g_adj[u].get(v, 0)
            w *= math.comb(avail, k)
            if w == 0:
                return 0
        return w

    def emit_copies():
        verts = frozenset(placed.values())
        pair_reqs = []
        for (a, b), k in f.pair_multiplicities().items():
            u, v = placed[a], placed[b]
            key = (u, v) if u <= v else (v, u)
            if multigraph:
                pool = host_labels.get(key, [])
            else:
                pool = [key] if key in g.edges else []
            pair_reqs.append((pool, k))
        choices = [list(combinations(pool, k)) for pool, k in pair_reqs]
        for combo in product(*choices):
            part = frozenset(x for chunk in combo for x in chunk)
            collect.add(Subgraph(verts, part))

    def feasible(fv: int, gv: int) -> bool:
        if g_degs[gv - 1] < f_degs[fv - 1]:
            return False
        if g_loops[gv] < f_loops[fv]:
            return False
        for nb, k in f_adj[fv].items():
            if nb in placed and g_adj[gv].get(placed[nb], 0) < k:
                return False
        return True

    def backtrack(i: int):
        nonlocal total
        if i == len(order):
            if collect is None:
                total += ways_for_map()
            else:
                if ways_for_map() > 0:
                    emit_copies()
            return
        fv = order[i]
        anchors = [nb for nb in f_adj[fv] if nb in placed]
        if anchors:
            candidates = set(g_adj[placed[anchors[0]]])
            for nb in anchors[1:]:
                candidates &= set(g_adj[placed[nb]])
        else:
            candidates = set(range(1, g.n + 1))
        for gv in candidates:
            if gv in used or not feasible(fv, gv):
                continue
            placed[fv] = gv
            used.add(gv)
            backtrack(i + 1)
            del placed[fv]
            used.remove(gv)

    backtrack(0)
    return total


def subgraph_copies(g: Graph, f: Graph) -> set[Subgraph]:
    """All distinct subgraph copies of f inside g as explicit Subgraph values."""
    if g.kind != f.kind:
        raise TypeError("host and pattern must have the same kind")
    if f.n > PATTERN_CAP:
        raise SizeCapError(f"pattern size capped at n <= {PATTERN_CAP}")
    found: set[Subgraph] = set()
    if f.n <= g.n and f.m <= g.m:
        _embedding_weight_sum(g, f, collect=found)
    return found


# ---------------------------------------------------------------------------
# pair family (unions of two overlapping copies)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    adj, loops = _host_structure(g)
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.n


def pair_family(f: Multigraph) -> list[Multigraph]:
    """Isomorphism classes of unions of two distinct overlapping copies of f.

    The first copy is f itself; the second is glued along every partial
    vertex identification (at least one shared vertex), with every consistent
    choice of how many of its edges merge onto parallel classes of the first
    copy.  Unions where the two copies coincide are excluded.
    """
    if not isinstance(f, Multigraph):
        raise TypeError("pair_family expects a multigraph pattern")
    if not is_connected(f):
        raise ValueError("pair_family requires a connected pattern")
    k = f.n
    base_mult = f.pair_multiplicities()
    f_pairs = list(base_mult.items())
    reps: list[Multigraph] = []

    def add_class(g: Multigraph):
        for rep in reps:
            if rep.n == g.n and rep.m == g.m and is_isomorphic(rep, g):
                return
        reps.append(g)

    for s in range(1, k + 1):
        for dom in combinations(range(1, k + 1), s):
            for img in permutations(range(1, k + 1), s):
                sigma = dict(zip(dom, img))
                # classify second-copy pairs: shared pairs may merge edges
                shared: list[tuple[tuple[int, int], int, int]] = []
                fresh_pairs: list[tuple[tuple[int, int], int]] = []
                fresh_vertex: dict[int, int] = {}
                next_label = k + 1
                for v in range(1, k + 1):
                    if v not in sigma:
                        fresh_vertex[v] = next_label
                        next_label += 1
                for (a, b), mult in f_pairs:
                    if a in sigma and b in sigma:
                        u, v = sigma[a], sigma[b]
                        key = (u, v) if u <= v else (v, u)
                        cap = base_mult.get(key, 0)
                        shared.append((key, mult, min(cap, mult)))
                    else:
                        u = sigma.get(a, fresh_vertex.get(a))
                        v = sigma.get(b, fresh_vertex.get(b))
                        key = (u, v) if u <= v else (v, u)
                        fresh_pairs.append((key, mult))
                ranges = [range(cap + 1) for (_, _, cap) in shared]
                for merges in product(*ranges):
                    total_second = f.m
                    merged = sum(merges)
                    if s == k and merged == total_second:
                        continue  # second copy identical to the first
                    mult_union: dict[tuple[int, int], int] = dict(base_mult)
                    for (key, mult, _), r in zip(shared, merges):
                        mult_union[key] = mult_union.get(key, 0) + (mult - r)
                    for key, mult in fresh_pairs:
                        mult_union[key] = mult_union.get(key, 0) + mult
                    n_union = next_label - 1
                    seq: list[int] = []
                    for (u, v), c in sorted(mult_union.items()):
                        for _ in range(c):
                            seq.extend((u, v))
                    add_class(Multigraph(n_union, seq))
    return reps


# ---------------------------------------------------------------------------
# conversions and JSON


def strip_orientation_labels(g: Multigraph) -> SimpleGraph:
    """Forget edge labels/orientations; rejects loops and parallel edges."""
    if not isinstance(g, Multigraph):
        raise TypeError("expected a multigraph")
    edges = []
    seen = set()
    seq = g.edge_seq
    for j in range(0, len(seq), 2):
        u, v = seq[j], seq[j + 1]
        if u == v:
            raise ValueError("multigraph has a loop")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ValueError("multigraph has parallel edges")
        seen.add(key)
        edges.append(key)
    return SimpleGraph(g.n, edges)


def graph_to_json(g: Graph) -> str:
    if isinstance(g, Multigraph):
        edges = [list(g.endpoints(j)) for j in range(1, g.m + 1)]
        return json.dumps({"kind": "multigraph", "n": g.n, "edges": edges})
    return json.dumps({"kind": "simple", "n": g.n, "edges": sorted(map(list, g.edges))})


def graph_from_json(text: str | dict) -> Graph:
    data = json.loads(text) if isinstance(text, str) else text
    kind = data["kind"]
    if kind == "multigraph":
        seq: list[int] = []
        for u, v in data["edges"]:
            seq.extend((u, v))
        return Multigraph(data["n"], seq)
    if kind == "simple":
        return SimpleGraph(data["n"], [tuple(e) for e in data["edges"]])
    raise ValueError(f"unknown graph kind {kind!r}")


# ---------------------------------------------------------------------------
# builtin shapes

def loop() -> Multigraph:
    return Multigraph(1, (1, 1))


def edge_multi() -> Multigraph:
    return Multigraph(2, (1, 2))


def double_edge() -> Multigraph:
    return Multigraph(2, (1, 2, 1, 2))


def cycle_multi(length: int) -> Multigraph:
    """Cycle as a multigraph: length 1 is the loop, 2 the double edge."""
    if length < 1:
        raise ValueError("cycle length must be >= 1")
    if length == 1:
        return loop()
    if length == 2:
        return double_edge()
    seq: list[int] = []
    for i in range(1, length):
        seq.extend((i, i + 1))
    seq.extend((length, 1))
    return Multigraph(length, seq)


def path_multi(k: int) -> Multigraph:
    """Path on k vertices (k-1 edges)."""
    if k < 1:
        raise ValueError("path needs at least one vertex")
    seq: list[int] = []
    for i in range(1, k):
        seq.extend((i, i + 1))
    return Multigraph(k, seq)


def star_multi(leaves: int) -> Multigraph:
    seq: list[int] = []
    for i in range(2, leaves + 2):
        seq.extend((1, i))
    return Multigraph(leaves + 1, seq)


def edge_simple() -> SimpleGraph:
    return SimpleGraph(2, [(1, 2)])


def cycle_simple(length: int) -> SimpleGraph:
    if length < 3:
        raise ValueError("simple cycles need length >= 3")
    edges = [(i, i + 1) for i in range(1, length)] + [(1, length)]
    return SimpleGraph(length, edges)


def path_simple(k: int) -> SimpleGraph:
    return SimpleGraph(k, [(i, i + 1) for i in range(1, k)])


def star_simple(leaves: int) -> SimpleGraph:
    return SimpleGraph(leaves + 1, [(1, i) for i in range(2, leaves + 2)])


def complete_simple(k: int) -> SimpleGraph:
    return SimpleGraph(k, list(combinations(range(1, k + 1), 2)))


_MULTI_SHAPES = {
    "loop": loop,
    "edge": edge_multi,
    "double-edge": double_edge,
    "p3": lambda: path_multi(3),
    "p4": lambda: path_multi(4),
    "c3": lambda: cycle_multi(3),
    "c4": lambda: cycle_multi(4),
    "c5": lambda: cycle_multi(5),
    "k13": lambda: star_multi(3),
}

_SIMPLE_SHAPES = {
    "edge": edge_simple,
    "p3": lambda: path_simple(3),
    "p4": lambda: path_simple(4),
    "c3": lambda: cycle_simple(3),
    "c4": lambda: cycle_simple(4),
    "c5": lambda: cycle_simple(5),
    "k4": lambda: complete_simple(4),
    "k13": lambda: star_simple(3),
}


def shape(name: str, kind: str = "multigraph") -> Graph:
    """Look up a builtin pattern by name ('c3', 'p3', 'loop', ...)."""
    table = _MULTI_SHAPES if kind == "multigraph" else _SIMPLE_SHAPES
    try:
        return table[name]()
    except KeyError:
        raise ValueError(f"unknown {kind} shape {name!r}") from None
