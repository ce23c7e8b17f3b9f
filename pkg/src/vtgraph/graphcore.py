"""Simple undirected graphs, graph6/edge-list I/O, automorphisms and isomorphism."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .permgroup import (
    DEFAULT_CAP,
    CapExceeded,
    Permutation,
    PermutationGroup,
    orbits,
)

logger = logging.getLogger(__name__)

GRAPH6_MAX_N = 62


class GraphFormatError(ValueError):
    pass


class PreconditionError(ValueError):
    """Input graph or group violates an operation's precondition."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        norm = set()
        for e in self.edges:
            x, y = e
            if x == y:
                raise ValueError(f"loop at vertex {x}")
            if not (0 <= x < self.n and 0 <= y < self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")
            norm.add((min(x, y), max(x, y)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges) -> Graph:
        return cls(n, frozenset(tuple(e) for e in edges))

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for x, y in self.edges:
            nbrs[x].add(y)
            nbrs[y].add(x)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def _matrix(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(y in nb for y in range(self.n)) for nb in self.adjacency)

    def has_edge(self, x: int, y: int) -> bool:
        return self._matrix[x][y]

    def degree(self, x: int) -> int:
        return len(self.adjacency[x])

    @property
    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adjacency]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


# -- graph6 ----------------------------------------------------------------

def _upper_triangle(n: int):
    # graph6 bit order: column-major over the upper triangle
    for j in range(1, n):
        for i in range(j):
            yield i, j


def emit_graph6(g: Graph) -> str:
    if g.n > GRAPH6_MAX_N:
        raise GraphFormatError(f"graph6 short form supports n <= {GRAPH6_MAX_N}, got {g.n}")
    bits = [1 if g.has_edge(i, j) else 0 for i, j in _upper_triangle(g.n)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(chr(v + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if not s:
        raise GraphFormatError("empty graph6 string")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    for c in s:
        if not 63 <= ord(c) <= 126:
            raise GraphFormatError(f"character {c!r} outside graph6 range 63..126")
    if ord(s[0]) == 126:
        raise GraphFormatError("long-form graph6 (n >= 63) is not supported")
    n = ord(s[0]) - 63
    if n == 0:
        raise GraphFormatError("graph6 with zero vertices")
    nbits = n * (n - 1) // 2
    expected = 1 + (nbits + 5) // 6
    if len(s) != expected:
        raise GraphFormatError(f"graph6 length {len(s)} does not match n={n} (expected {expected})")
    bits = []
    for c in s[1:]:
        v = ord(c) - 63
        bits.extend((v >> k) & 1 for k in range(5, -1, -1))
    if any(bits[nbits:]):
        raise GraphFormatError("nonzero padding bits")
    edges = [ij for ij, b in zip(_upper_triangle(n), bits) if b]
    return Graph.from_edges(n, edges)


# -- edge list -------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """First line ``n``, then one ``x y`` pair per line (0-based)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty edge list")
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise GraphFormatError(f"bad edge line {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
    for x, y in edges:
        if x == y:
            raise GraphFormatError(f"loop at vertex {x}")
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def emit_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{x} {y}" for x, y in g.sorted_edges()]) + "\n"


# -- structure -------------------------------------------------------------

def is_connected(g: Graph) -> bool:
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == g.n


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise PreconditionError(f"graph on {g.n} vertices is disconnected")


def warn_if_disconnected(g: Graph) -> bool:
    ok = is_connected(g)
    if not ok:
        logger.warning("graph on %d vertices is disconnected", g.n)
    return ok


def is_automorphism(g: Graph, p: Permutation) -> bool:
    if p.degree != g.n:
        raise ValueError(f"permutation degree {p.degree} != n={g.n}")
    # a bijection mapping edges into edges maps non-edges to non-edges
    return all(g.has_edge(p(x), p(y)) for x, y in g.edges)


def _search_order(g: Graph) -> list[int]:
    # BFS order so each new vertex has as many assigned neighbours as possible
    order: list[int] = []
    seen: set[int] = set()
    for root in range(g.n):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in sorted(g.adjacency[x]):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return order


def _bijections(g: Graph, h: Graph, first_only: bool, cap: int):
    """Yield edge-preserving bijections V(g) -> V(h) as image tuples.

    Backtracking in BFS order of ``g``; a candidate image must have the same
    degree and agree on adjacency with every vertex assigned so far.
    """
    n = g.n
    if h.n != n or len(g.edges) != len(h.edges):
        return
    if sorted(g.degrees) != sorted(h.degrees):
        return
    order = _search_order(g)
    # for each vertex, the previously placed vertices it must be checked against
    earlier = [order[:k] for k in range(n)]
    hdeg = h.degrees
    gdeg = g.degrees
    by_degree: dict[int, list[int]] = {}
    for y in range(n):
        by_degree.setdefault(hdeg[y], []).append(y)
    gm = g._matrix
    hm = h._matrix
    image = [-1] * n
    used = [False] * n
    count = 0

    def extend(k: int):
        nonlocal count
        if k == n:
            count += 1
            if count > cap:
                raise CapExceeded("automorphism search", cap)
            yield tuple(image)
            return
        x = order[k]
        grow = gm[x]
        for y in by_degree[gdeg[x]]:
            if used[y]:
                continue
            hrow = hm[y]
            if all(grow[z] == hrow[image[z]] for z in earlier[k]):
                image[x] = y
                used[y] = True
                yield from extend(k + 1)
                used[y] = False
                image[x] = -1
                if first_only and count:
                    return

    yield from extend(0)


def automorphism_group(g: Graph, cap: int = DEFAULT_CAP) -> PermutationGroup:
    """Full automorphism group by degree-pruned backtracking."""
    if g.n > 64:
        raise ValueError(f"automorphism search limited to n <= 64, got {g.n}")
    elems = [Permutation(t) for t in _bijections(g, g, first_only=False, cap=cap)]
    return PermutationGroup.from_elements(elems, g.n)


@dataclass(frozen=True)
class GraphIso:
    """Witness bijection V(G) -> V(H)."""

    mapping: Permutation

    def check(self, g: Graph, h: Graph) -> bool:
        m = self.mapping
        if g.n != h.n or m.degree != g.n or len(g.edges) != len(h.edges):
            return False
        return all(h.has_edge(m(x), m(y)) for x, y in g.edges)


def are_isomorphic(g: Graph, h: Graph) -> GraphIso | None:
    if g == h:
        return GraphIso(Permutation.identity(g.n))
    for t in _bijections(g, h, first_only=True, cap=1):
        return GraphIso(Permutation(t))
    return None


def is_vertex_transitive(g: Graph, cap: int = DEFAULT_CAP) -> bool:
    if len(set(g.degrees)) > 1:
        return False
    return len(orbits(automorphism_group(g, cap))) == 1
