"""Coset-graph representation of vertex-transitive graphs and Cayley recognition.

Given a transitive ``A <= Aut(G)`` and a base vertex ``u``, the vertices of
the coset graph are the left cosets ``A/A_u`` and ``aA_u ~ bA_u`` iff
``a^-1 b`` lies in ``A_u B A_u`` where ``B = {a in A : u ~ a(u)}``.  The map
``v -> {a in A : a(u) = v}`` is an isomorphism ``G -> H``.

Two Cayley tests are provided and are meant to be compared against each
other: a search for a regular subgroup of ``Aut(G)`` and a scan for a
transitive subgroup whose point stabilizer is normal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .graphcore import (
    Graph,
    GraphIso,
    PreconditionError,
    are_isomorphic,
    automorphism_group,
    is_automorphism,
    require_connected,
)
from .permgroup import (
    DEFAULT_CAP,
    CapExceeded,
    LeftCoset,
    Permutation,
    PermutationGroup,
    action_class,
    compose,
    inverse,
    is_normal,
    is_transitive,
    left_cosets,
    stabilizer,
)

logger = logging.getLogger(__name__)

# largest group for which subgroup searches build a full multiplication table
MAX_SEARCH_ORDER = 720


class VerificationError(AssertionError):
    """An internally constructed witness failed its own check."""


@dataclass(frozen=True)
class ConnectionSet:
    base: int
    group: PermutationGroup
    members: tuple[Permutation, ...]

    def __contains__(self, p: Permutation) -> bool:
        return p in self._set

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    def is_cayley_set(self) -> bool:
        s = self._set
        ident = self.group.identity
        return ident not in s and all(inverse(b) in s for b in s)


def connection_set(g: Graph, A: PermutationGroup, u: int) -> ConnectionSet:
    if not 0 <= u < g.n:
        raise ValueError(f"base point {u} out of range for n={g.n}")
    if A.degree != g.n:
        raise ValueError(f"group degree {A.degree} != n={g.n}")
    for a in A.elements:
        if not is_automorphism(g, a):
            raise PreconditionError(f"{a} is not an automorphism of the graph")
    members = tuple(a for a in A.elements if g.has_edge(u, a(u)))
    B = ConnectionSet(u, A, members)
    if not B.is_cayley_set():
        raise VerificationError("connection set violates the Cayley-set law")
    return B


@dataclass(frozen=True)
class CosetGraph:
    graph: Graph
    cosets: tuple[LeftCoset, ...]
    group: PermutationGroup
    base: int
    connection: ConnectionSet

    def coset_index(self, p: Permutation) -> int:
        """Index of the coset containing ``p``; cosets of a stabilizer are
        determined by the image of the base point."""
        return self._by_image[p(self.base)]

    @cached_property
    def _by_image(self) -> dict[int, int]:
        return {c.representative(self.base): i for i, c in enumerate(self.cosets)}

    def table(self) -> list[str]:
        return [f"coset {i}: {c.representative}" for i, c in enumerate(self.cosets)]


def coset_graph(A: PermutationGroup, u: int, B: ConnectionSet) -> CosetGraph:
    if not is_transitive(A):
        raise PreconditionError("group is not transitive")
    if B.group != A or B.base != u:
        raise ValueError("connection set was built for a different group or base point")
    Au = stabilizer(A, u)
    cosets = tuple(left_cosets(A, Au))
    for b in B:
        if b(u) == u:
            raise ValueError("connection set contains an element fixing the base point")
    double = {compose(compose(h, b), k) for h in Au for b in B for k in Au}
    reps = [c.representative for c in cosets]
    inv_reps = [inverse(r) for r in reps]
    edges = []
    for i, j in combinations(range(len(cosets)), 2):
        if compose(inv_reps[i], reps[j]) in double:
            edges.append((i, j))
    H = Graph.from_edges(len(cosets), edges)
    return CosetGraph(H, cosets, A, u, B)


def existential_edge_rule(alpha: LeftCoset, beta: LeftCoset, B: ConnectionSet) -> bool:
    """Adjacency read literally: some v in beta*A_u lies in alpha*A_u*s for some s in B."""
    target = beta.members
    for s in B:
        for a in alpha.members:
            if compose(a, s) in target:
                return True
    return False


def sabidussi_isomorphism(g: Graph, A: PermutationGroup, u: int = 0,
                          H: CosetGraph | None = None) -> GraphIso:
    """Witness ``v -> {a in A : a(u) = v}`` from ``g`` onto its coset graph,
    checked edge by edge."""
    require_connected(g)
    if not is_transitive(A):
        raise PreconditionError("group is not transitive")
    if H is None:
        H = coset_graph(A, u, connection_set(g, A, u))
    images = [-1] * g.n
    for i, c in enumerate(H.cosets):
        pts = {a(u) for a in c.members}
        if len(pts) != 1:
            raise VerificationError(f"coset {i} does not send the base point to a single vertex")
        images[pts.pop()] = i
    iso = GraphIso(Permutation(tuple(images)))
    if not iso.check(g, H.graph):
        raise VerificationError("coset-graph witness fails edge preservation")
    return iso


def cayley_graph(A: PermutationGroup, N: PermutationGroup, C) -> Graph:
    """Cay(A/N, C): ``xN ~ yN`` iff ``(x^-1 y)N`` is in ``C``.

    ``C`` is an iterable of cosets of ``N`` (``LeftCoset`` or member sets).
    """
    if not N.issubgroup(A):
        raise ValueError("N is not a subgroup of A")
    if not is_normal(N, A):
        raise PreconditionError("N is not normal in A")
    cosets = left_cosets(A, N)
    where = {}
    for i, c in enumerate(cosets):
        for p in c.members:
            where[p] = i
    conn = set()
    for c in C:
        members = c.members if isinstance(c, LeftCoset) else frozenset(c)
        idx = {where.get(p) for p in members}
        if None in idx or len(idx) != 1:
            raise ValueError("C contains a set that is not a coset of N")
        conn.add(idx.pop())
    if where[A.identity] in conn:
        raise ValueError("C contains the identity coset")
    for k in conn:
        if where[inverse(cosets[k].representative)] not in conn:
            raise ValueError("C is not closed under inverses")
    edges = []
    inv_reps = [inverse(c.representative) for c in cosets]
    for i, j in combinations(range(len(cosets)), 2):
        if where[compose(inv_reps[i], cosets[j].representative)] in conn:
            edges.append((i, j))
    return Graph.from_edges(len(cosets), edges)


# -- subgroup search -------------------------------------------------------

class _Table:
    """Index form of a materialized group: elements[i], mul[i][j] = i*j."""

    def __init__(self, group: PermutationGroup):
        if group.order > MAX_SEARCH_ORDER:
            raise CapExceeded(f"subgroup search on a group of order {group.order}", MAX_SEARCH_ORDER)
        self.group = group
        self.elements = group.elements
        index = {p: i for i, p in enumerate(self.elements)}
        self.mul = [[index[compose(a, b)] for b in self.elements] for a in self.elements]
        self.e = index[group.identity]

    def closure(self, gens, limit: int | None = None, allowed=None) -> frozenset | None:
        """Subgroup generated by ``gens``; None once it outgrows ``limit`` or
        picks up an element outside ``allowed``."""
        seen = {self.e}
        order = [self.e]
        mul = self.mul
        for x in order:
            for g in gens:
                y = mul[g][x]
                if y not in seen:
                    if allowed is not None and y not in allowed:
                        return None
                    seen.add(y)
                    order.append(y)
                    if limit is not None and len(seen) > limit:
                        return None
        return frozenset(seen)

    def extend(self, sub: frozenset, gens, a: int, limit: int | None = None,
               allowed=None) -> frozenset | None:
        """``<sub, a>`` grown one right coset ``sub*r`` at a time (Dimino)."""
        mul = self.mul
        elems = set(sub)
        sub_list = list(sub)
        gens = list(gens) + [a]
        reps = [self.e]
        for r in reps:
            for g in gens:
                y = mul[r][g]
                if y in elems:
                    continue
                coset = [mul[h][y] for h in sub_list]
                if allowed is not None and not allowed.issuperset(coset):
                    return None
                elems.update(coset)
                if limit is not None and len(elems) > limit:
                    return None
                reps.append(y)
        return frozenset(elems)

    def subgroup(self, idx) -> PermutationGroup:
        return PermutationGroup.from_elements((self.elements[i] for i in idx), self.group.degree)

    def cyclic_reps(self, candidates) -> list[tuple[int, frozenset]]:
        out = []
        seen = set()
        for i in candidates:
            c = self.closure([i])
            if c not in seen:
                seen.add(c)
                out.append((i, c))
        return out


def _semiregular_subgroups(table: _Table, n: int, cap: int):
    """Yield index sets of subgroups of order <= n whose nonidentity elements
    are all fixed-point-free, in the order singletons, pairs, cyclic extension."""
    fpf = {i for i, p in enumerate(table.elements)
           if i != table.e and all(p(x) != x for x in range(n))}
    allowed = fpf | {table.e}
    reps = table.cyclic_reps(sorted(fpf))
    for _, c in reps:
        yield "singleton", c
    for (a, ca), (b, cb) in combinations(reps, 2):
        if b in ca or a in cb:
            continue
        s = table.closure([a, b], limit=n, allowed=allowed)
        if s is not None:
            yield "pair", s
    # every semiregular subgroup is reached by adding one cyclic piece at a time
    level = {c: [a] for a, c in reps}
    visited = set(level)
    while level:
        nxt = {}
        for s, gens in level.items():
            for a, ca in reps:
                if a in s:
                    continue
                t = table.extend(s, gens, a, limit=n, allowed=allowed)
                if t is None or t in visited:
                    continue
                visited.add(t)
                if len(visited) > cap:
                    raise CapExceeded("semiregular subgroup enumeration", cap)
                nxt[t] = gens + [a]
                yield "extension", t
        level = nxt


def find_regular_subgroup(g: Graph, cap: int = DEFAULT_CAP,
                          aut: PermutationGroup | None = None) -> PermutationGroup | None:
    """A subgroup of Aut(g) acting regularly on the vertices, or None.

    None is only returned after the cyclic-extension stage has enumerated
    every subgroup whose nonidentity elements are fixed-point-free.
    """
    aut = aut if aut is not None else automorphism_group(g, cap)
    n = g.n
    if aut.order % n:
        return None
    table = _Table(aut)
    for stage, s in _semiregular_subgroups(table, n, cap):
        if len(s) == n:
            H = table.subgroup(s)
            if action_class(H) != "regular":
                raise VerificationError("semiregular subgroup of order n is not regular")
            logger.debug("regular subgroup of order %d found at stage %s", n, stage)
            return H
    return None


def all_subgroups(group: PermutationGroup, cap: int = DEFAULT_CAP) -> list[PermutationGroup]:
    """Every subgroup, by cyclic extension, ordered by (order, elements)."""
    table = _Table(group)
    reps = table.cyclic_reps(range(len(table.elements)))
    found = {c: [a] for a, c in reps}
    level = dict(found)
    while level:
        nxt = {}
        for s, gens in level.items():
            for a, _ in reps:
                if a in s:
                    continue
                t = table.extend(s, gens, a)
                if t not in found:
                    found[t] = nxt[t] = gens + [a]
                    if len(found) > cap:
                        raise CapExceeded("subgroup enumeration", cap)
        level = nxt
    keys = sorted(found, key=lambda s: (len(s), sorted(s)))
    return [table.subgroup(s) for s in keys]


@dataclass(frozen=True)
class CayleyWitness:
    group: PermutationGroup
    base: int
    evidence: str  # "regular-subgroup" or "normal-stabilizer"

    def recheck(self) -> bool:
        if self.evidence == "regular-subgroup":
            return action_class(self.group) == "regular"
        return is_transitive(self.group) and is_normal(stabilizer(self.group, self.base), self.group)


@dataclass(frozen=True)
class CayleyVerdict:
    is_cayley: bool
    witness: CayleyWitness | None = None
    quotient_connection: tuple[LeftCoset, ...] | None = None
    cayley_graph: Graph | None = None
    isomorphism: GraphIso | None = None
    normal_at_every_base: bool | None = None


def cayley_by_normal_stabilizer(g: Graph, cap: int = DEFAULT_CAP,
                                aut: PermutationGroup | None = None, u: int = 0) -> CayleyVerdict:
    """Scan transitive subgroups of Aut(g) for one whose stabilizer of ``u``
    is normal; on success build Cay(A/A_u, C) and an isomorphism to ``g``."""
    require_connected(g)
    aut = aut if aut is not None else automorphism_group(g, cap)
    if not is_transitive(aut):
        return CayleyVerdict(False)
    for A in all_subgroups(aut, cap):
        if A.order % g.n or not is_transitive(A):
            continue
        Au = stabilizer(A, u)
        if not is_normal(Au, A):
            continue
        every = all(is_normal(stabilizer(A, v), A) for v in range(g.n))
        if not every:
            raise VerificationError("stabilizer normal at one base point but not at all")
        C = tuple(c for c in left_cosets(A, Au) if g.has_edge(u, c.representative(u)))
        cay = cayley_graph(A, Au, C)
        iso = are_isomorphic(g, cay)
        if iso is None:
            raise VerificationError("Cay(A/A_u, C) is not isomorphic to the input graph")
        return CayleyVerdict(True, CayleyWitness(A, u, "normal-stabilizer"), C, cay, iso, every)
    return CayleyVerdict(False)
