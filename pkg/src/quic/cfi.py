"""Gadget expansion turning a base graph into an untwisted/twisted pair.

Each base vertex v of degree d becomes a gadget of 2d edge vertices (a
0-side and a 1-side vertex per incident edge) plus 2^(d-1) inner
vertices, one per even-weight bitstring of length d; inner vertex s is
wired to the s_i-side vertex of its i-th incident edge. Each base edge
becomes two parallel bridges between the endpoint gadgets; the twisted
graph crosses the two bridges at one chosen base edge. The two expanded
graphs share all degree-based invariants (and, for base graphs of
minimum degree 2, defeat neighborhood color refinement outright) yet are
non-isomorphic.

Deterministic numbering: gadget blocks in ascending base-vertex order;
within a block the edge vertices come first (incident edges in ascending
neighbor order, 0-side before 1-side), then inner vertices in ascending
binary value of their label. The incident-edge order also fixes which
label bit belongs to which edge.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import Graph, GraphError

__all__ = ["CfiError", "CfiPair", "cfi_size", "build_cfi"]


class CfiError(GraphError):
    """Base graph unusable for gadget expansion."""


Role = tuple  # ("edge", base_edge, side) or ("inner", label_bits)


@dataclass
class CfiPair:
    """Untwisted/twisted expansion of a base graph.

    vertex_roles maps each expanded vertex id to (base_vertex, role);
    both graphs share the numbering and differ only in the two bridge
    edges at twist_edge.
    """

    base: Graph
    untwisted: Graph
    twisted: Graph
    twist_edge: tuple[int, int]
    vertex_roles: dict[int, tuple[int, Role]] = field(repr=False)


def cfi_size(base: Graph) -> int:
    """Vertex count of the expanded graph: sum of 2^(d-1) + 2d over base
    vertices of degree d."""
    degrees = base.degrees()
    if min(degrees) < 1:
        raise CfiError("base graph has an isolated vertex")
    return sum(2 ** (d - 1) + 2 * d for d in degrees)


def build_cfi(base: Graph, twist_edge: tuple[int, int] | None = None) -> CfiPair:
    """Expand a connected base graph into its untwisted/twisted pair.

    twist_edge defaults to the lexicographically smallest base edge.
    """
    if not base.is_connected():
        raise CfiError("base graph must be connected")
    if min(base.degrees()) < 1:
        raise CfiError("base graph has an isolated vertex")
    if twist_edge is None:
        twist_edge = base.edges[0]
    else:
        u, v = twist_edge
        twist_edge = (u, v) if u < v else (v, u)
        if twist_edge not in base.edges:
            raise CfiError(f"twist edge {twist_edge} is not a base edge")

    ids: dict[tuple, int] = {}
    roles: dict[int, tuple[int, Role]] = {}
    nid = 0
    for v in range(base.n):
        nbrs = base.neighbors(v)
        for u in nbrs:
            e = (v, u) if v < u else (u, v)
            for side in (0, 1):
                ids[("edge", v, e, side)] = nid
                roles[nid] = (v, ("edge", e, side))
                nid += 1
        d = len(nbrs)
        for label in range(1 << d):
            if label.bit_count() % 2 == 0:
                bits = tuple(label >> i & 1 for i in range(d))
                ids[("inner", v, bits)] = nid
                roles[nid] = (v, ("inner", bits))
                nid += 1

    gadget_edges: list[tuple[int, int]] = []
    for v in range(base.n):
        nbrs = base.neighbors(v)
        incident = [(v, u) if v < u else (u, v) for u in nbrs]
        for label in range(1 << len(nbrs)):
            if label.bit_count() % 2 != 0:
                continue
            bits = tuple(label >> i & 1 for i in range(len(nbrs)))
            inner = ids[("inner", v, bits)]
            for i, e in enumerate(incident):
                gadget_edges.append((inner, ids[("edge", v, e, bits[i])]))

    plain_bridges: list[tuple[int, int]] = []
    crossed_bridges: list[tuple[int, int]] = []
    for e in base.edges:
        u, v = e
        for side in (0, 1):
            plain_bridges.append((ids[("edge", u, e, side)], ids[("edge", v, e, side)]))
            flip = 1 - side if e == twist_edge else side
            crossed_bridges.append((ids[("edge", u, e, side)], ids[("edge", v, e, flip)]))

    total = cfi_size(base)
    untwisted = Graph(total, gadget_edges + plain_bridges)
    twisted = Graph(total, gadget_edges + crossed_bridges)
    return CfiPair(base, untwisted, twisted, twist_edge, roles)
