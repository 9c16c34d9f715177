"""Graph core: representation, family generators, rewiring, and cuts.

Vertices are the integers 0..n-1. Edges are unordered pairs stored as
(u, v) with u < v, sorted lexicographically. Adjacency is additionally
kept as one bitmask per vertex so that degree, neighborhood and cut
queries reduce to integer bit operations.

Bitstring convention (shared with the circuit engine): vertex/qubit i
sits at bit position i of an integer mask, so a rendered bitstring has
vertex 0 as its rightmost character.

Graphs are immutable once constructed and all operations are pure
functions of their inputs plus an explicit seed, so concurrent use is
safe; concurrent stochastic calls should use distinct seed streams.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "Graph",
    "GraphError",
    "RewireExhaustedError",
    "InconsistentCutOracleError",
    "GraphFamilySpec",
    "generate",
    "parse_family_spec",
    "path_graph",
    "cycle_graph",
    "pan_graph",
    "star_graph",
    "complete_graph",
    "complete_minus_edge",
    "complete_bipartite_graph",
    "er_graph",
    "ba_graph",
    "broom_graph",
    "chorded_cycle",
    "inscribed_triangle_cycle",
    "circular_ladder",
    "twisted_ladder",
    "circulant_graph",
    "named_graph",
    "NAMED_GRAPHS",
    "as_bitmask",
    "cut_value",
    "reconstruct_from_cuts",
    "rewire_degree_preserving",
]


class GraphError(ValueError):
    """Invalid graph construction or family parameters."""


class RewireExhaustedError(GraphError):
    """No non-isomorphic degree-preserving rewiring found within the budget."""


class InconsistentCutOracleError(GraphError):
    """Cut oracle returned values incompatible with any simple graph."""


def rng_from(seed) -> np.random.Generator:
    """Seeded PCG64 generator; an existing Generator passes through.

    Every stochastic operation in the package takes an explicit seed (or
    Generator) so runs are reproducible; concurrent callers should use
    distinct seeds or streams spawned from one SeedSequence.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        raise ValueError("an explicit seed (or numpy Generator) is required")
    return np.random.default_rng(seed)


class Graph:
    """Simple undirected graph: no self-loops, no duplicate edges."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not isinstance(n, int) or n < 1:
            raise GraphError(f"vertex count must be a positive integer, got {n!r}")
        norm = []
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            norm.append((u, v) if u < v else (v, u))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(norm))
        if len(set(self.edges)) != len(self.edges):
            raise GraphError("duplicate edge")
        adj = [0] * n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._adj = tuple(adj)

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self._adj]

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees(), reverse=True))

    def neighbors(self, v: int) -> tuple[int, ...]:
        mask = self._adj[v]
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return tuple(out)

    def adjacency_mask(self, v: int) -> int:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def triangle_count(self) -> int:
        t = 0
        for u, v in self.edges:
            t += (self._adj[u] & self._adj[v]).bit_count()
        return t // 3

    def is_connected(self) -> bool:
        return self.component_count() == 1

    def component_count(self) -> int:
        seen = 0
        full = (1 << self.n) - 1
        parts = 0
        while seen != full:
            start = ((~seen) & full) & -((~seen) & full)
            frontier = start
            comp = 0
            while frontier:
                comp |= frontier
                nxt = 0
                m = frontier
                while m:
                    low = m & -m
                    nxt |= self._adj[low.bit_length() - 1]
                    m ^= low
                frontier = nxt & ~comp
            seen |= comp
            parts += 1
        return parts

    # -- derived graphs ------------------------------------------------

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """New graph with vertex v renamed perm[v]."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("perm must be a permutation of 0..n-1")
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def with_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, list(self.edges) + [(u, v)])

    def without_edge(self, u: int, v: int) -> "Graph":
        e = (u, v) if u < v else (v, u)
        if e not in self.edges:
            raise GraphError(f"edge {e} not present")
        return Graph(self.n, [x for x in self.edges if x != e])

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, d: dict) -> "Graph":
        return cls(int(d["n"]), [tuple(e) for e in d["edges"]])

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        return cls.from_dict(json.loads(text))

    def to_edgelist(self) -> str:
        """Plain text: first line "n m", then one "u v" line per edge."""
        lines = [f"{self.n} {self.m}"]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist(cls, text: str) -> "Graph":
        rows = [r for r in (line.strip() for line in text.splitlines()) if r]
        if not rows:
            raise GraphError("empty edge-list text")
        head = rows[0].split()
        if len(head) != 2:
            raise GraphError("edge-list header must be 'n m'")
        n, m = int(head[0]), int(head[1])
        if len(rows) - 1 != m:
            raise GraphError(f"expected {m} edge lines, found {len(rows) - 1}")
        edges = []
        for row in rows[1:]:
            u, v = row.split()
            edges.append((int(u), int(v)))
        return cls(n, edges)

    def sha256(self) -> str:
        """Hash of the labeled edge set (used to tag embeddings)."""
        return hashlib.sha256(self.to_json().encode()).hexdigest()

    # -- dunder --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------
# Cut function and its inverse
# ---------------------------------------------------------------------

def as_bitmask(s, n: int) -> int:
    """Coerce a bitstring to an integer mask with vertex i at bit i.

    Accepts an int mask, a '0'/'1' string (rightmost character = vertex
    0), or a sequence of ints indexed by vertex.
    """
    if isinstance(s, (int, np.integer)):
        mask = int(s)
        if not 0 <= mask < (1 << n):
            raise GraphError(f"mask {mask} out of range for n={n}")
        return mask
    if isinstance(s, str):
        if len(s) != n:
            raise GraphError(f"bitstring length {len(s)} != n={n}")
        return int(s, 2)
    bits = list(s)
    if len(bits) != n:
        raise GraphError(f"bit sequence length {len(bits)} != n={n}")
    mask = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise GraphError(f"bit values must be 0/1, got {b!r}")
        mask |= b << i
    return mask


def cut_value(g: Graph, s) -> int:
    """Number of edges of g crossing the bipartition encoded by s."""
    mask = as_bitmask(s, g.n)
    inv = ~mask & ((1 << g.n) - 1)
    total = 0
    m = mask
    while m:
        low = m & -m
        total += (g.adjacency_mask(low.bit_length() - 1) & inv).bit_count()
        m ^= low
    return total


def reconstruct_from_cuts(n: int, cut_oracle: Callable[[int], int]) -> Graph:
    """Recover the unique edge set from a cut oracle.

    Only weight-1 and weight-2 masks are queried: the edge indicator is
    the coefficient cut(e_u) + cut(e_v) - cut(e_u | e_v), which is 2 for
    an edge and 0 for a non-edge in any simple graph.
    """
    deg = [cut_oracle(1 << u) for u in range(n)]
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            val = deg[u] + deg[v] - cut_oracle((1 << u) | (1 << v))
            if val == 2:
                edges.append((u, v))
            elif val != 0:
                raise InconsistentCutOracleError(
                    f"pair ({u}, {v}) gives coefficient {val}, expected 0 or 2"
                )
    return Graph(n, edges)


# ---------------------------------------------------------------------
# Deterministic families
# ---------------------------------------------------------------------

def path_graph(n: int) -> Graph:
    _require(n >= 1, "path", "n", n, ">= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    _require(n >= 3, "cycle", "n", n, ">= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def pan_graph(n: int) -> Graph:
    """Cycle on n-1 vertices plus one pendant attached to vertex 0."""
    _require(n >= 4, "pan", "n", n, ">= 4")
    g = cycle_graph(n - 1)
    return Graph(n, list(g.edges) + [(0, n - 1)])


def star_graph(n: int) -> Graph:
    """Center 0 joined to n-1 leaves."""
    _require(n >= 2, "star", "n", n, ">= 2")
    return Graph(n, [(0, i) for i in range(1, n)])


def complete_graph(n: int) -> Graph:
    _require(n >= 1, "complete", "n", n, ">= 1")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_minus_edge(n: int) -> Graph:
    """K_n with the edge (0, 1) removed."""
    _require(n >= 3, "complete_minus_edge", "n", n, ">= 3")
    return complete_graph(n).without_edge(0, 1)


def complete_bipartite_graph(a: int, b: int) -> Graph:
    _require(a >= 1, "complete_bipartite", "a", a, ">= 1")
    _require(b >= 1, "complete_bipartite", "b", b, ">= 1")
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def broom_graph(n: int, pendants: int) -> Graph:
    """Star centroid with `pendants` leaves, joined to a path on the rest.

    Vertex 0 is the centroid, 1..pendants the leaves, the remaining
    vertices form the handle path hanging off the centroid.
    """
    _require(pendants >= 1, "broom", "pendants", pendants, ">= 1")
    _require(n >= pendants + 2, "broom", "n", n, f">= pendants + 2 = {pendants + 2}")
    edges = [(0, i) for i in range(1, pendants + 1)]
    edges.append((0, pendants + 1))
    edges += [(i, i + 1) for i in range(pendants + 1, n - 1)]
    return Graph(n, edges)


def chorded_cycle(n: int, k: int) -> Graph:
    """C_n plus the chord (0, k)."""
    _require(n >= 4, "chorded_cycle", "n", n, ">= 4")
    _require(2 <= k <= n - 2, "chorded_cycle", "k", k, "in [2, n-2]")
    return cycle_graph(n).with_edge(0, k)


def inscribed_triangle_cycle(n: int, k: int) -> Graph:
    """C_n with two triangle chords (0, 2) and (k, k+2).

    Varying k moves the second triangle around the cycle, producing
    same-degree-sequence pairs that differ only in triangle placement.
    """
    _require(n >= 7, "inscribed_triangle_cycle", "n", n, ">= 7")
    _require(3 <= k <= n - 3, "inscribed_triangle_cycle", "k", k, "in [3, n-3]")
    return cycle_graph(n).with_edge(0, 2).with_edge(k, k + 2)


def circular_ladder(n: int) -> Graph:
    """Prism: two cycles of length n/2 joined by rungs (i, i + n/2)."""
    _require(n >= 6 and n % 2 == 0, "circular_ladder", "n", n, "even and >= 6")
    half = n // 2
    edges = [(i, (i + 1) % half) for i in range(half)]
    edges += [(half + i, half + (i + 1) % half) for i in range(half)]
    edges += [(i, half + i) for i in range(half)]
    return Graph(n, edges)


def twisted_ladder(n: int) -> Graph:
    """Circular ladder with the rung pair at positions 0 and 1 crossed."""
    _require(n >= 8 and n % 2 == 0, "twisted_ladder", "n", n, "even and >= 8")
    half = n // 2
    g = circular_ladder(n)
    g = g.without_edge(0, half).without_edge(1, half + 1)
    return g.with_edge(0, half + 1).with_edge(1, half)


def circulant_graph(n: int, offsets: Iterable[int]) -> Graph:
    offs = sorted(set(offsets))
    _require(n >= 3, "circulant", "n", n, ">= 3")
    for k in offs:
        _require(1 <= k <= n // 2, "circulant", "offsets", k, "in [1, n//2]")
    edges = set()
    for v in range(n):
        for k in offs:
            edges.add(tuple(sorted((v, (v + k) % n))))
    return Graph(n, sorted(edges))


# ---------------------------------------------------------------------
# Random families
# ---------------------------------------------------------------------

def er_graph(n: int, p: float, seed) -> Graph:
    """Erdos-Renyi G(n, p); identical seed gives identical edges."""
    _require(n >= 1, "er", "n", n, ">= 1")
    _require(0.0 <= p <= 1.0, "er", "p", p, "in [0, 1]")
    rng = rng_from(seed)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    return Graph(n, edges)


def ba_graph(n: int, m: int, seed) -> Graph:
    """Preferential attachment: each new vertex links to m existing ones."""
    _require(n >= 2, "ba", "n", n, ">= 2")
    _require(1 <= m < n, "ba", "m", m, "in [1, n-1]")
    rng = rng_from(seed)
    edges: list[tuple[int, int]] = []
    repeated: list[int] = []
    targets = list(range(m))
    for src in range(m, n):
        for t in targets:
            edges.append((t, src))
        repeated.extend(targets)
        repeated.extend([src] * m)
        chosen: set[int] = set()
        while len(chosen) < m:
            chosen.add(repeated[rng.integers(len(repeated))])
        targets = sorted(chosen)
    return Graph(n, edges)


# ---------------------------------------------------------------------
# Named graphs
# ---------------------------------------------------------------------

def _petersen() -> Graph:
    # Kneser graph K(5,2): 2-subsets of {0..4}, adjacent iff disjoint.
    pairs = [(a, b) for a in range(5) for b in range(a + 1, 5)]
    idx = {p: i for i, p in enumerate(pairs)}
    edges = [
        (idx[p], idx[q])
        for p in pairs
        for q in pairs
        if p < q and not set(p) & set(q)
    ]
    return Graph(10, edges)


def _shrikhande() -> Graph:
    # Cayley graph of Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}.
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    edges = set()
    for x in range(4):
        for y in range(4):
            for dx, dy in conn:
                u = 4 * x + y
                v = 4 * ((x + dx) % 4) + (y + dy) % 4
                edges.add(tuple(sorted((u, v))))
    return Graph(16, sorted(edges))


def _rook44() -> Graph:
    # 4x4 rook's graph: cells adjacent iff same row or same column.
    edges = []
    for i in range(16):
        for j in range(i + 1, 16):
            if i // 4 == j // 4 or i % 4 == j % 4:
                edges.append((i, j))
    return Graph(16, edges)


def _q3() -> Graph:
    return Graph(8, [(u, v) for u in range(8) for v in range(u + 1, 8) if (u ^ v).bit_count() == 1])


def _line_k24() -> Graph:
    # Line graph of K_{2,4} = 2x4 rook's graph.
    cells = [(a, b) for a in range(2) for b in range(4)]
    idx = {c: i for i, c in enumerate(cells)}
    edges = [
        (idx[c], idx[d])
        for c in cells
        for d in cells
        if c < d and (c[0] == d[0] or c[1] == d[1])
    ]
    return Graph(8, edges)


NAMED_GRAPHS: dict[str, Callable[[], Graph]] = {
    "petersen": _petersen,
    "shrikhande": _shrikhande,
    "rook44": _rook44,
    "q3": _q3,
    "l_k24": _line_k24,
    # Degree-matched comparison partners for the named graphs above.
    "prism5": lambda: circular_ladder(10),
    "c8_1_4": lambda: circulant_graph(8, (1, 4)),
    "c8_1_2": lambda: circulant_graph(8, (1, 2)),
}


def named_graph(name: str) -> Graph:
    key = name.lower().replace("-", "_")
    if key not in NAMED_GRAPHS:
        raise GraphError(f"unknown named graph {name!r}; known: {sorted(NAMED_GRAPHS)}")
    return NAMED_GRAPHS[key]()


# ---------------------------------------------------------------------
# Family spec dispatch
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class GraphFamilySpec:
    """Declarative description of one graph-family member.

    Unused fields stay None; each family validates the fields it needs
    and reports the offending field by name.
    """

    family: str
    n: int | None = None
    p: float | None = None
    m: int | None = None
    a: int | None = None
    b: int | None = None
    k: int | None = None
    pendants: int | None = None
    name: str | None = None
    seed: int | None = None


def generate(spec: GraphFamilySpec) -> Graph:
    """Build the family member described by spec."""
    fam = spec.family
    try:
        if fam == "path":
            return path_graph(_need(spec, "n"))
        if fam == "cycle":
            return cycle_graph(_need(spec, "n"))
        if fam == "pan":
            return pan_graph(_need(spec, "n"))
        if fam == "star":
            return star_graph(_need(spec, "n"))
        if fam == "complete":
            return complete_graph(_need(spec, "n"))
        if fam == "complete_minus_edge":
            return complete_minus_edge(_need(spec, "n"))
        if fam == "complete_bipartite":
            return complete_bipartite_graph(_need(spec, "a"), _need(spec, "b"))
        if fam == "er":
            return er_graph(_need(spec, "n"), _need(spec, "p"), _need(spec, "seed"))
        if fam == "ba":
            return ba_graph(_need(spec, "n"), _need(spec, "m"), _need(spec, "seed"))
        if fam == "broom":
            return broom_graph(_need(spec, "n"), _need(spec, "pendants"))
        if fam == "chorded_cycle":
            return chorded_cycle(_need(spec, "n"), _need(spec, "k"))
        if fam == "inscribed_triangle_cycle":
            return inscribed_triangle_cycle(_need(spec, "n"), _need(spec, "k"))
        if fam == "twisted_ladder":
            return twisted_ladder(_need(spec, "n"))
        if fam == "circular_ladder":
            return circular_ladder(_need(spec, "n"))
        if fam == "named":
            return named_graph(_need(spec, "name"))
    except GraphError:
        raise
    raise GraphError(f"unknown family {fam!r}")


def parse_family_spec(text: str) -> GraphFamilySpec:
    """Parse compact CLI forms like 'path:6', 'er:12:0.35:7', 'named:petersen'.

    A bare known graph name ('petersen') is shorthand for 'named:<name>'.
    """
    parts = text.split(":")
    fam = parts[0].lower().replace("-", "_")
    args = parts[1:]
    if fam in NAMED_GRAPHS and not args:
        return GraphFamilySpec(family="named", name=fam)
    try:
        if fam in ("path", "cycle", "pan", "star", "complete",
                   "complete_minus_edge", "twisted_ladder", "circular_ladder"):
            return GraphFamilySpec(family=fam, n=int(args[0]))
        if fam == "complete_bipartite":
            return GraphFamilySpec(family=fam, a=int(args[0]), b=int(args[1]))
        if fam == "er":
            seed = int(args[2]) if len(args) > 2 else 0
            return GraphFamilySpec(family=fam, n=int(args[0]), p=float(args[1]), seed=seed)
        if fam == "ba":
            seed = int(args[2]) if len(args) > 2 else 0
            return GraphFamilySpec(family=fam, n=int(args[0]), m=int(args[1]), seed=seed)
        if fam == "broom":
            return GraphFamilySpec(family=fam, n=int(args[0]), pendants=int(args[1]))
        if fam in ("chorded_cycle", "inscribed_triangle_cycle"):
            return GraphFamilySpec(family=fam, n=int(args[0]), k=int(args[1]))
        if fam == "named":
            return GraphFamilySpec(family=fam, name=args[0])
    except (IndexError, ValueError) as exc:
        raise GraphError(f"bad family spec {text!r}: {exc}") from exc
    raise GraphError(f"unknown family {fam!r} in spec {text!r}")


# ---------------------------------------------------------------------
# Degree-preserving rewiring
# ---------------------------------------------------------------------

def rewire_degree_preserving(g: Graph, attempts: int, seed) -> Graph:
    """Random double-edge swaps until the result is non-isomorphic to g.

    Each attempt proposes one swap ((a,b),(c,d)) -> ((a,d),(c,b)) on four
    distinct endpoints; accepted swaps keep every vertex degree fixed.
    After each accepted swap the exact isomorphism oracle decides whether
    to stop. Raises RewireExhaustedError when the budget runs out (e.g.
    complete graphs, which admit no non-isomorphic rewiring).
    """
    from .isomorphism import is_isomorphic

    if g.m < 2:
        raise GraphError("rewiring needs at least 2 edges")
    rng = rng_from(seed)
    edges = list(g.edges)
    edge_set = set(edges)
    changed = False
    for _ in range(attempts):
        i = int(rng.integers(len(edges)))
        j = int(rng.integers(len(edges)))
        if i == j:
            continue
        a, b = edges[i]
        c, d = edges[j]
        if len({a, b, c, d}) < 4:
            continue
        if rng.integers(2):
            c, d = d, c
        e1 = (a, d) if a < d else (d, a)
        e2 = (c, b) if c < b else (b, c)
        if e1 in edge_set or e2 in edge_set:
            continue
        edge_set.discard(edges[i])
        edge_set.discard(edges[j])
        edge_set.add(e1)
        edge_set.add(e2)
        edges[i], edges[j] = e1, e2
        changed = True
        candidate = Graph(g.n, edges)
        if not is_isomorphic(g, candidate):
            return candidate
    raise RewireExhaustedError(
        f"no non-isomorphic rewiring found in {attempts} attempts"
        + ("" if changed else " (no swap was ever applicable)")
    )


def _require(cond: bool, family: str, field: str, value, constraint: str) -> None:
    if not cond:
        raise GraphError(f"{family}: field {field}={value!r} must be {constraint}")


def _need(spec: GraphFamilySpec, field: str):
    val = getattr(spec, field)
    if val is None:
        raise GraphError(f"{spec.family}: field {field} is required")
    return val
