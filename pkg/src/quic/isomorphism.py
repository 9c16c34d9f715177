"""Exact isomorphism testing, color refinement, and isomorph-free enumeration.

The decision procedure is a backtracking search over vertex bijections
with color-refinement and exact-neighborhood pruning. It is complete at
every size; the intended operating range is up to ~24 vertices, which
covers every pair this package certifies by search (larger gadget pairs
are certified structurally, not by search).
"""
from __future__ import annotations

from collections import Counter, defaultdict

from .graphs import Graph

__all__ = [
    "color_refinement",
    "wl_histogram",
    "wl_equivalent",
    "find_isomorphism",
    "is_isomorphic",
    "nonisomorphic_graphs",
    "nonisomorphic_graphs_upto",
]


def _refine(neighbors: list[tuple[int, ...]], colors: list[int]) -> list[int]:
    """Iterate neighborhood color refinement to its fixpoint.

    Color ids are reassigned each round in sorted-signature order, so the
    final coloring is canonical for the structure (comparable across
    graphs refined with the same initial coloring).
    """
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in neighbors[v])))
            for v in range(len(colors))
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(palette) == len(set(colors)):
            return new
        colors = new


def color_refinement(g: Graph) -> list[int]:
    """Stable vertex coloring of g, canonical ids."""
    return _refine([g.neighbors(v) for v in range(g.n)], [0] * g.n)


def wl_histogram(g: Graph) -> tuple[tuple[int, int], ...]:
    """Multiset of stable colors as a sorted (color, count) tuple."""
    return tuple(sorted(Counter(color_refinement(g)).items()))


def wl_equivalent(g: Graph, h: Graph) -> bool:
    """True iff refinement on the disjoint union gives both graphs the
    same color histogram (a necessary condition for isomorphism)."""
    if g.n != h.n or g.m != h.m:
        return False
    neighbors = [g.neighbors(v) for v in range(g.n)]
    neighbors += [tuple(u + g.n for u in h.neighbors(v)) for v in range(h.n)]
    colors = _refine(neighbors, [0] * (g.n + h.n))
    return Counter(colors[: g.n]) == Counter(colors[g.n:])


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """Vertex bijection mapping E(g) onto E(h), or None.

    Returns perm with perm[v_g] = v_h such that g.relabel(perm) == h.
    """
    if g.n != h.n or g.m != h.m or g.degree_sequence() != h.degree_sequence():
        return None
    n = g.n
    # Joint refinement gives comparable colors and a strong candidate filter.
    neighbors = [g.neighbors(v) for v in range(n)]
    neighbors += [tuple(u + n for u in h.neighbors(v)) for v in range(n)]
    colors = _refine(neighbors, [0] * 2 * n)
    cg, ch = colors[:n], colors[n:]
    if Counter(cg) != Counter(ch):
        return None

    by_color = defaultdict(list)
    for w in range(n):
        by_color[ch[w]].append(w)

    # Order g's vertices so each (after the first in its component) has a
    # mapped neighbor, keeping the pruning constraint tight.
    order: list[int] = []
    placed = set()
    while len(order) < n:
        best, best_key = None, None
        for v in range(n):
            if v in placed:
                continue
            anchored = sum(1 for u in g.neighbors(v) if u in placed)
            key = (anchored, g.degree(v), -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        placed.add(best)

    g_nbrs = [g.neighbors(v) for v in range(n)]
    h_adj = [h.adjacency_mask(w) for w in range(n)]
    mapping = [-1] * n
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        v = order[i]
        required = 0
        for u in g_nbrs[v]:
            mu = mapping[u]
            if mu >= 0:
                required |= 1 << mu
        for w in by_color[cg[v]]:
            if used >> w & 1:
                continue
            if h_adj[w] & used != required:
                continue
            mapping[v] = w
            used |= 1 << w
            if extend(i + 1):
                return True
            mapping[v] = -1
            used &= ~(1 << w)
        return False

    if extend(0):
        return mapping
    return None


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Exact isomorphism decision."""
    return find_isomorphism(g, h) is not None


def _invariant_key(g: Graph):
    return (g.m, g.degree_sequence(), g.triangle_count(), wl_histogram(g))


def nonisomorphic_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class on exactly n vertices.

    Classes are grown incrementally: every n-vertex graph arises from an
    (n-1)-vertex representative plus one new vertex with some attachment
    set, and candidates are deduplicated by the exact oracle (cheap
    invariants only pre-bucket the oracle calls).
    """
    return nonisomorphic_graphs_upto(n)[n]


def nonisomorphic_graphs_upto(max_n: int) -> dict[int, list[Graph]]:
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    reps: dict[int, list[Graph]] = {1: [Graph(1)]}
    for k in range(2, max_n + 1):
        buckets: dict = {}
        out: list[Graph] = []
        for base in reps[k - 1]:
            base_edges = list(base.edges)
            for mask in range(1 << (k - 1)):
                new_edges = base_edges + [
                    (i, k - 1) for i in range(k - 1) if mask >> i & 1
                ]
                cand = Graph(k, new_edges)
                bucket = buckets.setdefault(_invariant_key(cand), [])
                if not any(is_isomorphic(cand, rep) for rep in bucket):
                    bucket.append(cand)
                    out.append(cand)
        reps[k] = out
    return reps
