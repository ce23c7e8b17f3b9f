"""Permutations and finite permutation groups held as explicit element sets.

Composition convention: ``compose(p, q)(x) == p(q(x))``, i.e. ``q`` is
applied first.  ``p * q`` is the same product.  Points are 0-based.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Sequence

DEFAULT_CAP = 100_000


class CapExceeded(RuntimeError):
    """A materialization or search went past its element cap."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeded cap={cap}")
        self.cap = cap


class CycleSyntaxError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if not images:
            raise ValueError("degree must be at least 1")
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images) - 1}: {images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else inverse(self)
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = compose(base, result)
        return result

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        return lcm(*cycle_decomposition(self).lengths)

    def fixed_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i == x]

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"


def _fast(images: tuple[int, ...]) -> Permutation:
    # internal: skips validation, caller guarantees a bijection
    p = object.__new__(Permutation)
    object.__setattr__(p, "images", images)
    return p


def _check_degree(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return the permutation x -> p(q(x))."""
    _check_degree(p, q)
    pi = p.images
    return _fast(tuple(pi[y] for y in q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for x, y in enumerate(p.images):
        inv[y] = x
    return _fast(tuple(inv))


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...]  # sorted, one entry per cycle including fixed points

    @property
    def degree(self) -> int:
        return sum(self.lengths)


def cycle_decomposition(p: Permutation, include_fixed: bool = False) -> CycleDecomposition:
    """Disjoint cycles of ``p``, each starting at its smallest point.

    Fixed points appear as 1-cycles in ``cycles`` only when ``include_fixed``;
    ``lengths`` always accounts for every point.
    """
    seen = [False] * p.degree
    cycles = []
    lengths = []
    for start in range(p.degree):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = p.images[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = p.images[x]
        lengths.append(len(cyc))
        if len(cyc) > 1 or include_fixed:
            cycles.append(tuple(cyc))
    return CycleDecomposition(tuple(cycles), tuple(sorted(lengths)))


def format_cycles(p: Permutation) -> str:
    cycles = cycle_decomposition(p).cycles
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


_CYCLE_RE = re.compile(r"\(\s*(\d+(?:\s+\d+)*)?\s*\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 0-based disjoint-cycle notation such as ``"(0 1 2)(3 4)"``."""
    if degree < 1:
        raise CycleSyntaxError("degree must be at least 1")
    s = text.strip()
    if not s:
        raise CycleSyntaxError("empty permutation text")
    images = list(range(degree))
    used: set[int] = set()
    pos = 0
    saw_identity = False
    n_cycles = 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(s, pos)
        if m is None:
            raise CycleSyntaxError(f"malformed cycle notation at offset {pos}: {text!r}")
        pos = m.end()
        if m.group(1) is None:
            saw_identity = True
            continue
        n_cycles += 1
        pts = [int(t) for t in m.group(1).split()]
        for x in pts:
            if x >= degree:
                raise CycleSyntaxError(f"point {x} out of range for degree {degree}")
            if x in used:
                raise CycleSyntaxError(f"point {x} repeated")
            used.add(x)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    if saw_identity and n_cycles:
        raise CycleSyntaxError(f"'()' mixed with cycles: {text!r}")
    return Permutation(tuple(images))


@dataclass(frozen=True)
class SemiregularSignature:
    r: int  # number of orbits
    s: int  # common orbit length

    def __post_init__(self):
        if self.r < 1 or self.s < 2:
            raise ValueError(f"invalid signature ({self.r}, {self.s})")

    def __str__(self) -> str:
        return f"({self.r},{self.s})"


def classify_semiregular(p: Permutation) -> SemiregularSignature | None:
    """(r, s) when every cycle of ``p`` has the same length s >= 2, else None."""
    lengths = cycle_decomposition(p).lengths
    s = lengths[0]
    if s < 2 or lengths[-1] != s:
        return None
    return SemiregularSignature(len(lengths), s)


@dataclass(frozen=True, eq=False)
class PermutationGroup:
    """A permutation group with its full element set materialized.

    ``elements`` is sorted lexicographically by images, so the identity is
    always first.
    """

    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]
    _members: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self._members

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return self.degree == other.degree and self._members == other._members

    def __hash__(self) -> int:
        return hash((self.degree, self._members))

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def issubgroup(self, other: PermutationGroup) -> bool:
        return self.degree == other.degree and self._members <= other._members

    @classmethod
    def from_elements(cls, elements: Iterable[Permutation], degree: int) -> PermutationGroup:
        """Wrap a set already known to be a group; picks generators greedily."""
        elems = sorted(set(elements))
        members = set(elems)
        gens: list[Permutation] = []
        covered = {Permutation.identity(degree)}
        for p in elems:
            if p not in covered:
                gens.append(p)
                covered = set(_closure(gens, degree, len(members)))
        if covered != members:
            raise ValueError("element set is not closed under composition")
        return cls(degree, tuple(gens), tuple(elems))


def _closure(gens: Sequence[Permutation], degree: int, cap: int) -> list[Permutation]:
    ident = Permutation.identity(degree)
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    gen_images = [g.images for g in gens]
    while queue:
        x = queue.popleft().images
        for gi in gen_images:
            y = _fast(tuple(gi[v] for v in x))
            if y not in seen:
                seen.add(y)
                order.append(y)
                if len(seen) > cap:
                    raise CapExceeded("group closure", cap)
                queue.append(y)
    return order


def generate(generators: Sequence[Permutation], cap: int = DEFAULT_CAP,
             degree: int | None = None) -> PermutationGroup:
    """Breadth-first closure of ``generators`` starting from the identity.

    ``degree`` is required when ``generators`` is empty.  Closing under
    products alone suffices: in a finite group inverses are positive powers.
    """
    gens = tuple(generators)
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generating set")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"degree mismatch: generator of degree {g.degree}, expected {degree}")
    elems = _closure(gens, degree, cap)
    return PermutationGroup(degree, gens, tuple(sorted(elems)))


def trivial_group(degree: int) -> PermutationGroup:
    return generate([], degree=degree)


def symmetric_group(degree: int, cap: int = DEFAULT_CAP) -> PermutationGroup:
    gens = []
    if degree > 1:
        gens.append(Permutation((1, 0) + tuple(range(2, degree))))
    if degree > 2:
        gens.append(Permutation(tuple(range(1, degree)) + (0,)))
    return generate(gens, cap, degree)


def orbits(group: PermutationGroup) -> list[list[int]]:
    """Orbits of the natural action, each sorted, ordered by smallest point."""
    n = group.degree
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in group.generators or group.elements:
        for x, y in enumerate(g.images):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    buckets: dict[int, list[int]] = {}
    for x in range(n):
        buckets.setdefault(find(x), []).append(x)
    return [buckets[k] for k in sorted(buckets)]


def orbit_of(group: PermutationGroup, point: int) -> list[int]:
    for orb in orbits(group):
        if point in orb:
            return orb
    raise ValueError(f"point {point} out of range")


def stabilizer(group: PermutationGroup, point: int) -> PermutationGroup:
    if not 0 <= point < group.degree:
        raise ValueError(f"point {point} out of range for degree {group.degree}")
    return PermutationGroup.from_elements(
        (g for g in group.elements if g.images[point] == point), group.degree)


def _require_subgroup(sub: PermutationGroup, group: PermutationGroup, name: str = "subgroup") -> None:
    if not sub.issubgroup(group):
        raise ValueError(f"{name} is not contained in the group")


@dataclass(frozen=True)
class LeftCoset:
    representative: Permutation
    subgroup: PermutationGroup
    members: frozenset

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.members


@dataclass(frozen=True)
class DoubleCoset:
    left_subgroup: PermutationGroup
    right_subgroup: PermutationGroup
    representative: Permutation
    members: frozenset

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.members


def left_cosets(group: PermutationGroup, subgroup: PermutationGroup) -> list[LeftCoset]:
    """Cosets g*H in order of canonical (lexicographically least) representative."""
    _require_subgroup(subgroup, group)
    out = []
    covered: set[Permutation] = set()
    # elements are sorted, so the first uncovered element is the least member of its coset
    for g in group.elements:
        if g in covered:
            continue
        members = frozenset(compose(g, h) for h in subgroup.elements)
        covered |= members
        out.append(LeftCoset(g, subgroup, members))
    return out


def double_cosets(group: PermutationGroup, left: PermutationGroup,
                  right: PermutationGroup) -> list[DoubleCoset]:
    """Sets left*t*right partitioning ``group``, ordered by canonical representative."""
    _require_subgroup(left, group, "left subgroup")
    _require_subgroup(right, group, "right subgroup")
    out = []
    covered: set[Permutation] = set()
    for t in group.elements:
        if t in covered:
            continue
        tr = [compose(t, r) for r in right.elements]
        members = frozenset(compose(l, x) for l in left.elements for x in tr)
        covered |= members
        out.append(DoubleCoset(left, right, t, members))
    return out


def is_normal(subgroup: PermutationGroup, group: PermutationGroup) -> bool:
    _require_subgroup(subgroup, group)
    gens = group.generators or group.elements
    for g in gens:
        g_inv = inverse(g)
        for h in subgroup.elements:
            if compose(compose(g, h), g_inv) not in subgroup:
                return False
    return True


def action_class(group: PermutationGroup) -> str:
    """One of ``"intransitive"``, ``"transitive"``, ``"regular"``."""
    if len(orbits(group)) != 1:
        return "intransitive"
    return "regular" if group.order == group.degree else "transitive"


def is_transitive(group: PermutationGroup) -> bool:
    return action_class(group) != "intransitive"
