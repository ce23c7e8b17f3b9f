"""Small named graphs used as fixtures and census seeds."""

from __future__ import annotations

from itertools import combinations

from .graphcore import Graph


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def hypercube(d: int) -> Graph:
    n = 1 << d
    return Graph.from_edges(n, [(x, x ^ (1 << k)) for x in range(n) for k in range(d) if x < x ^ (1 << k)])


def petersen_graph() -> Graph:
    # outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def circulant_graph(n: int, jumps) -> Graph:
    return Graph.from_edges(n, {(i, (i + j) % n) for i in range(n) for j in jumps if j % n})


def fixture_corpus() -> dict[str, Graph]:
    """The vertex-transitive fixture set: C3..C8, K4, K5, K3,3, 3-cube, Petersen."""
    out = {f"C{n}": cycle_graph(n) for n in range(3, 9)}
    out["K4"] = complete_graph(4)
    out["K5"] = complete_graph(5)
    out["K3,3"] = complete_bipartite(3, 3)
    out["Q3"] = hypercube(3)
    out["Petersen"] = petersen_graph()
    return out
