import itertools
from pathlib import Path

import networkx as nx
import pytest

from vtgraph.families import fixture_corpus
from vtgraph.graphcore import Graph
from vtgraph.permgroup import Permutation

DATA = Path(__file__).parent / "data"


def all_perms(n):
    return [Permutation(t) for t in itertools.permutations(range(n))]


def brute_automorphisms(g: Graph):
    """Unpruned n! filter; deliberately does not call the library predicate."""
    edges = {frozenset(e) for e in g.edges}
    out = []
    for t in itertools.permutations(range(g.n)):
        if all(frozenset((t[x], t[y])) in edges for x, y in g.edges):
            out.append(Permutation(t))
    return sorted(out)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def vf2_automorphisms(g: Graph):
    """Independent reference via networkx's VF2 matcher."""
    h = to_nx(g)
    gm = nx.algorithms.isomorphism.GraphMatcher(h, h)
    return sorted(Permutation(tuple(m[i] for i in range(g.n))) for m in gm.isomorphisms_iter())


@pytest.fixture(scope="session")
def corpus():
    return fixture_corpus()


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.summary_lines():
            terminalreporter.write_line(line)
