"""Semiregular automorphisms from double-coset classes, and an audit of that route.

For ``A' <= A`` the left cosets of ``A_u`` are grouped by the double coset
``A' t A_u`` containing them.  Left translation ``aA_u -> b a A_u`` by
``b in A'`` preserves those classes.  Whether ``{translation by b : b in A'}``
acts *regularly* on each class is measured here, never assumed, and the
translation's cycle type is checked against an exhaustive list of the
graph's semiregular automorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graphcore import (
    Graph,
    PreconditionError,
    automorphism_group,
    emit_graph6,
    is_automorphism,
    require_connected,
)
from .permgroup import (
    DEFAULT_CAP,
    DoubleCoset,
    LeftCoset,
    Permutation,
    PermutationGroup,
    SemiregularSignature,
    classify_semiregular,
    compose,
    cycle_decomposition,
    double_cosets,
    format_cycles,
    generate,
    is_transitive,
    left_cosets,
    orbits,
    stabilizer,
)
from .sabidussi import (
    CosetGraph,
    VerificationError,
    _Table,
    connection_set,
    coset_graph,
)

BRANCH_CAYLEY = "cyclic-generator"
BRANCH_PROPER = "proper-subgroup"


@dataclass(frozen=True)
class ClassPartition:
    cosets: tuple[LeftCoset, ...]
    classes: tuple[tuple[int, ...], ...]
    double_cosets: tuple[DoubleCoset, ...]  # parallel to ``classes``
    group: PermutationGroup
    subgroup: PermutationGroup
    stabilizer: PermutationGroup
    base: int

    def class_of(self, coset_index: int) -> int:
        for k, cls in enumerate(self.classes):
            if coset_index in cls:
                return k
        raise IndexError(coset_index)

    def related(self, i: int, j: int) -> bool:
        return self.class_of(i) == self.class_of(j)

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def class_partition(A: PermutationGroup, Aprime: PermutationGroup, u: int) -> ClassPartition:
    if not Aprime.issubgroup(A):
        raise ValueError("A' is not contained in A")
    if not is_transitive(A):
        raise PreconditionError("group is not transitive")
    Au = stabilizer(A, u)
    cosets = tuple(left_cosets(A, Au))
    dcs = tuple(double_cosets(A, Aprime, Au))
    buckets: list[list[int]] = [[] for _ in dcs]
    for i, c in enumerate(cosets):
        hits = [k for k, d in enumerate(dcs) if c.members <= d.members]
        if len(hits) != 1:
            raise VerificationError(f"coset {i} is not inside exactly one double coset")
        buckets[hits[0]].append(i)
    for d, b in zip(dcs, buckets):
        if sum(len(cosets[i]) for i in b) != len(d):
            raise VerificationError("double coset is not a union of its left cosets")
    return ClassPartition(cosets, tuple(tuple(b) for b in buckets), dcs, A, Aprime, Au, u)


@dataclass(frozen=True)
class InducedTranslation:
    beta: Permutation
    coset_map: Permutation

    @property
    def signature(self) -> SemiregularSignature | None:
        return classify_semiregular(self.coset_map)


def _coset_lookup(cosets) -> dict[Permutation, int]:
    return {p: i for i, c in enumerate(cosets) for p in c.members}


def induced_translation(beta: Permutation, A: PermutationGroup, u: int,
                        H: CosetGraph | None = None,
                        _lookup: dict | None = None) -> InducedTranslation:
    """Left translation by ``beta`` on the cosets ``A/A_u``.

    Every member of every coset is translated, so a representative-dependent
    map is caught.  With ``H`` given, the map is also checked to be an
    automorphism of the coset graph.
    """
    if beta not in A:
        raise ValueError(f"{beta} is not an element of A")
    cosets = H.cosets if H is not None else tuple(left_cosets(A, stabilizer(A, u)))
    lookup = _lookup if _lookup is not None else _coset_lookup(cosets)
    images = []
    for i, c in enumerate(cosets):
        targets = {lookup[compose(beta, a)] for a in c.members}
        if len(targets) != 1:
            raise VerificationError(f"translation by {beta} is not well defined on coset {i}")
        images.append(targets.pop())
    lam = InducedTranslation(beta, Permutation(tuple(images)))
    if H is not None and not is_automorphism(H.graph, lam.coset_map):
        raise VerificationError(f"translation by {beta} is not an automorphism of the coset graph")
    return lam


def check_regular_on_classes(Aprime: PermutationGroup, partition: ClassPartition,
                             H: CosetGraph | None = None) -> list[bool]:
    """Per class: is {translation by b : b in A'} regular on that class?

    Regular means transitive on the class with every point stabilizer
    consisting of the identity map alone.  Failures are reported, not raised.
    """
    if Aprime != partition.subgroup:
        raise ValueError("partition was built from a different subgroup")
    lookup = _coset_lookup(partition.cosets)
    maps = [induced_translation(b, partition.group, partition.base, H, lookup).coset_map
            for b in Aprime.elements]
    verdicts = []
    for cls in partition.classes:
        members = set(cls)
        first = cls[0]
        orbit = {m(first) for m in maps}
        if orbit != members:
            verdicts.append(False)
            continue
        free = all(m.is_identity() for m in maps for x in cls if m(x) == x)
        verdicts.append(free)
    return verdicts


def find_semiregular_bruteforce(g: Graph, cap: int = DEFAULT_CAP,
                                aut: PermutationGroup | None = None
                                ) -> list[tuple[Permutation, SemiregularSignature]]:
    """Every semiregular automorphism of ``g``, in lexicographic order."""
    aut = aut if aut is not None else automorphism_group(g, cap)
    out = []
    for p in aut.elements:
        sig = classify_semiregular(p)
        if sig is not None:
            out.append((p, sig))
    return out


@dataclass
class Attempt:
    """One choice of generating subset B' in exhaustive mode."""

    generators: tuple[Permutation, ...]
    order: int
    proper: bool
    class_sizes: list[int]
    regular_on_classes: list[bool]
    witness: Permutation | None  # first beta in some B' whose translation is semiregular
    witness_signature: SemiregularSignature | None

    def to_dict(self) -> dict:
        return {
            "generators": [format_cycles(p) for p in self.generators],
            "order": self.order,
            "proper": self.proper,
            "class_sizes": self.class_sizes,
            "regular_on_classes": self.regular_on_classes,
            "witness": None if self.witness is None else format_cycles(self.witness),
            "witness_signature": _sig(self.witness_signature),
        }


def _sig(s: SemiregularSignature | None):
    return None if s is None else [s.r, s.s]


@dataclass
class AuditReport:
    graph6: str
    n: int
    aut_order: int
    base: int
    connection_size: int
    branch: str
    beta: Permutation
    generating_subset: tuple[Permutation, ...]
    subgroup_order: int
    aut_abelian: bool | None  # only evaluated on the cyclic-generator branch
    class_sizes: list[int]
    regular_on_classes: list[bool]
    class_orbit_lengths: list[list[int]]
    lambda_map: Permutation
    lambda_cycle_type: tuple[int, ...]
    lambda_signature: SemiregularSignature | None
    oracle: list[tuple[Permutation, SemiregularSignature]]
    agreement: bool
    attempts: list[Attempt] | None = None
    label: str | None = None

    @property
    def oracle_nonempty(self) -> bool:
        return bool(self.oracle)

    @property
    def exhaustive_agreement(self) -> bool | None:
        if self.attempts is None:
            return None
        return any(a.proper and a.witness is not None for a in self.attempts)

    def to_dict(self) -> dict:
        d = {
            "graph6": self.graph6,
            "n": self.n,
            "aut_order": self.aut_order,
            "branch": self.branch,
            "beta_cycles": format_cycles(self.beta),
            "class_sizes": self.class_sizes,
            "regular_on_classes": self.regular_on_classes,
            "lambda_signature": _sig(self.lambda_signature),
            "oracle_signatures": [
                {"cycles": format_cycles(p), "r": s.r, "s": s.s} for p, s in self.oracle
            ],
            "agreement": self.agreement,
            "base": self.base,
            "lambda_cycle_type": list(self.lambda_cycle_type),
            "oracle_nonempty": self.oracle_nonempty,
        }
        if self.label is not None:
            d["label"] = self.label
        if self.aut_abelian is not None:
            d["aut_abelian"] = self.aut_abelian
        if self.attempts is not None:
            d["attempts"] = [a.to_dict() for a in self.attempts]
            d["exhaustive_agreement"] = self.exhaustive_agreement
        return d

    def to_text(self) -> str:
        sig = "none" if self.lambda_signature is None else str(self.lambda_signature)
        oracle_sigs = sorted({(s.r, s.s) for _, s in self.oracle})
        lines = [
            f"graph6: {self.graph6}" + (f"  [{self.label}]" if self.label else ""),
            f"n={self.n} |Aut|={self.aut_order} base={self.base} |B|={self.connection_size}",
            f"branch: {self.branch}",
            f"beta: {format_cycles(self.beta)}  |<B'>|={self.subgroup_order}",
        ]
        if self.aut_abelian is not None:
            lines.append(f"Aut abelian: {self.aut_abelian}")
        lines += [
            f"class sizes: {self.class_sizes}",
            f"regular on classes: {self.regular_on_classes}",
            f"translation cycle type: {list(self.lambda_cycle_type)}  signature: {sig}",
            f"oracle: {len(self.oracle)} semiregular automorphisms, signatures "
            + (", ".join(f"({r},{s})" for r, s in oracle_sigs) or "none"),
            f"agreement: {self.agreement}",
        ]
        if self.attempts is not None:
            ok = sum(1 for a in self.attempts if a.proper and a.witness is not None)
            lines.append(f"exhaustive: {len(self.attempts)} subgroups tried, "
                         f"{ok} with a semiregular generator; agreement={self.exhaustive_agreement}")
        return "\n".join(lines)


def _is_abelian(A: PermutationGroup) -> bool:
    gens = A.generators
    return all(compose(a, b) == compose(b, a) for a, b in combinations(gens, 2))


def _class_orbit_lengths(lam: Permutation, partition: ClassPartition) -> list[list[int]]:
    out = []
    for cls in partition.classes:
        members = set(cls)
        seen: set[int] = set()
        lengths = []
        for x in cls:
            if x in seen:
                continue
            k = 0
            y = x
            while True:
                seen.add(y)
                y = lam(y)
                k += 1
                if y == x:
                    break
                if y not in members:
                    raise VerificationError("translation leaves its class")
            lengths.append(k)
        out.append(sorted(lengths))
    return out


def _exhaustive_attempts(A: PermutationGroup, u: int, B, H: CosetGraph,
                         lookup: dict) -> list[Attempt]:
    table = _Table(A)
    index = {p: i for i, p in enumerate(table.elements)}
    subsets = [(b,) for b in B] + list(combinations(B, 2))
    by_group: dict[frozenset, list[tuple[Permutation, ...]]] = {}
    for sub in subsets:
        s = table.closure([index[b] for b in sub])
        by_group.setdefault(s, []).append(sub)
    sig_cache: dict[Permutation, SemiregularSignature | None] = {}

    def sig_of(b):
        if b not in sig_cache:
            sig_cache[b] = induced_translation(b, A, u, H, lookup).signature
        return sig_cache[b]

    attempts = []
    for s, subs in by_group.items():
        Aprime = table.subgroup(s)
        part = class_partition(A, Aprime, u)
        reg = check_regular_on_classes(Aprime, part, H)
        witness = None
        for sub in subs:
            for b in sub:
                if sig_of(b) is not None:
                    witness = b
                    break
            if witness is not None:
                break
        attempts.append(Attempt(subs[0], Aprime.order, Aprime.order < A.order,
                                part.sizes, reg, witness,
                                None if witness is None else sig_of(witness)))
    return attempts


def theorem1_procedure(g: Graph, u: int = 0, cap: int = DEFAULT_CAP,
                       exhaustive: bool = False, aut: PermutationGroup | None = None,
                       label: str | None = None) -> AuditReport:
    """Run the double-coset construction on ``A = Aut(g)`` and audit it.

    If some ``b in B`` generates all of ``A`` the cyclic-generator branch is
    taken; otherwise ``beta`` is the lexicographically least element of
    ``B`` and ``A' = <beta>``.  ``agreement`` is true exactly when the
    translation by ``beta`` is semiregular.
    """
    require_connected(g)
    A = aut if aut is not None else automorphism_group(g, cap)
    if len(orbits(A)) != 1:
        raise PreconditionError("graph is not vertex-transitive")
    if not 0 <= u < g.n:
        raise PreconditionError(f"base point {u} out of range for n={g.n}")
    B = connection_set(g, A, u)
    H = coset_graph(A, u, B)
    lookup = _coset_lookup(H.cosets)

    generators_of_A = [b for b in B if b.order() == A.order]
    if generators_of_A:
        branch = BRANCH_CAYLEY
        beta = generators_of_A[0]
        abelian = _is_abelian(A)
    else:
        branch = BRANCH_PROPER
        beta = B.members[0]
        abelian = None
    Aprime = generate([beta], cap)
    part = class_partition(A, Aprime, u)
    regular = check_regular_on_classes(Aprime, part, H)
    lam = induced_translation(beta, A, u, H, lookup)
    oracle = find_semiregular_bruteforce(g, cap, aut=A)
    attempts = _exhaustive_attempts(A, u, B.members, H, lookup) if exhaustive else None
    return AuditReport(
        graph6=emit_graph6(g),
        n=g.n,
        aut_order=A.order,
        base=u,
        connection_size=len(B),
        branch=branch,
        beta=beta,
        generating_subset=(beta,),
        subgroup_order=Aprime.order,
        aut_abelian=abelian,
        class_sizes=part.sizes,
        regular_on_classes=regular,
        class_orbit_lengths=_class_orbit_lengths(lam.coset_map, part),
        lambda_map=lam.coset_map,
        lambda_cycle_type=cycle_decomposition(lam.coset_map).lengths,
        lambda_signature=lam.signature,
        oracle=oracle,
        agreement=lam.signature is not None,
        attempts=attempts,
        label=label,
    )


def recheck_report(g: Graph, report: AuditReport, cap: int = DEFAULT_CAP) -> list[str]:
    """Re-derive every verdict in ``report`` by a separate route.

    Classes and regularity are recomputed from the orbits of ``<beta>`` on
    the vertices of ``g`` itself rather than from double cosets.  Returns a
    list of discrepancies; empty means the report is consistent.
    """
    problems = []
    A = automorphism_group(g, cap)
    u = report.base
    if A.order != report.aut_order:
        problems.append("aut_order")
    beta = report.beta
    if beta not in A or not g.has_edge(u, beta(u)):
        problems.append("beta is not in the connection set")
    if report.graph6 != emit_graph6(g):
        problems.append("graph6")
    B = [b for b in A.elements if g.has_edge(u, b(u))]
    gens_of_A = [b for b in B if b.order() == A.order]
    expected_beta = gens_of_A[0] if gens_of_A else min(B)
    if report.branch != (BRANCH_CAYLEY if gens_of_A else BRANCH_PROPER):
        problems.append("branch")
    if beta != expected_beta:
        problems.append("beta is not the canonical choice")

    Aprime = generate([beta], cap)
    vorbits = orbits(Aprime)
    if sorted(report.class_sizes) != sorted(len(o) for o in vorbits):
        problems.append("class_sizes")
    # A' acts regularly on an orbit iff every point of it has trivial stabilizer in A'
    reg = sorted(len(o) == Aprime.order for o in vorbits)
    if sorted(report.regular_on_classes) != reg:
        problems.append("regular_on_classes")

    # the translation on cosets is conjugate to beta acting on vertices
    vertex_type = cycle_decomposition(beta).lengths
    if tuple(report.lambda_cycle_type) != vertex_type:
        problems.append("lambda_cycle_type")
    if cycle_decomposition(report.lambda_map).lengths != vertex_type:
        problems.append("lambda_map")
    sig = classify_semiregular(report.lambda_map)
    if sig != report.lambda_signature:
        problems.append("lambda_signature")
    if report.lambda_signature is not None and classify_semiregular(beta) != report.lambda_signature:
        problems.append("semiregularity asserted without confirmation")
    if report.agreement != (report.lambda_signature is not None):
        problems.append("agreement")

    oracle = [p for p in A.elements if classify_semiregular(p) is not None]
    if [p for p, _ in report.oracle] != oracle:
        problems.append("oracle")
    for p, s in report.oracle:
        if not is_automorphism(g, p) or classify_semiregular(p) != s:
            problems.append(f"oracle entry {format_cycles(p)}")
    return problems
