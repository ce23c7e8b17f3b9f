import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vtgraph.permgroup import (
    CapExceeded,
    CycleSyntaxError,
    Permutation,
    SemiregularSignature,
    action_class,
    classify_semiregular,
    compose,
    cycle_decomposition,
    double_cosets,
    format_cycles,
    generate,
    inverse,
    is_normal,
    left_cosets,
    orbit_of,
    orbits,
    parse_cycles,
    stabilizer,
    symmetric_group,
    trivial_group,
)

from conftest import all_perms

P = parse_cycles


def perms(max_degree=8):
    return st.integers(1, max_degree).flatmap(
        lambda n: st.permutations(list(range(n))).map(lambda t: Permutation(tuple(t))))


# -- parse_cycles / format -------------------------------------------------

@pytest.mark.parametrize("text,degree,images", [
    ("(0 1 2)", 3, (1, 2, 0)),
    ("()", 4, (0, 1, 2, 3)),
    ("(0 1)(2 3)", 5, (1, 0, 3, 2, 4)),
    ("  (0 2) (1)  ", 3, (2, 1, 0)),
])
def test_parse_cycles(text, degree, images):
    assert P(text, degree).images == images


@pytest.mark.parametrize("text,degree", [
    ("(0 3)", 3),
    ("(0 1)(1 2)", 3),
    ("(0 1", 3),
    ("0 1)", 3),
    ("(0 a)", 3),
    ("", 3),
    ("()(0 1)", 3),
])
def test_parse_cycles_errors(text, degree):
    with pytest.raises(CycleSyntaxError):
        P(text, degree)


def test_format_cycles():
    assert format_cycles(Permutation.identity(3)) == "()"
    assert format_cycles(Permutation((1, 0, 3, 2, 4))) == "(0 1)(2 3)"
    assert format_cycles(Permutation((2, 0, 1))) == "(0 2 1)"


@given(perms(16))
def test_cycle_roundtrip(p):
    assert P(format_cycles(p), p.degree) == p


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
    with pytest.raises(ValueError):
        Permutation(())


# -- compose / inverse -----------------------------------------------------

def test_composition_convention():
    # apply q first: x -> p(q(x))
    p = P("(0 1)", 3)
    q = P("(1 2)", 3)
    r = compose(p, q)
    assert [r(x) for x in range(3)] == [p(q(x)) for x in range(3)]
    assert r == P("(0 1 2)", 3)
    assert p * q == r


def test_compose_examples():
    c = P("(0 1 2)", 3)
    e = Permutation.identity(3)
    assert compose(e, c) == c
    assert compose(c, c) == P("(0 2 1)", 3)
    assert compose(c, inverse(c)) == e


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_inverse_examples():
    assert inverse(Permutation.identity(4)) == Permutation.identity(4)
    assert inverse(P("(0 1 2)", 3)) == P("(0 2 1)", 3)
    assert inverse(P("(0 1)", 2)) == P("(0 1)", 2)


@given(perms())
def test_inverse_law(p):
    e = Permutation.identity(p.degree)
    assert compose(p, inverse(p)) == e == compose(inverse(p), p)


def test_power_and_order():
    c = P("(0 1 2)(3 4)", 5)
    assert c.order() == 6
    assert c ** 6 == Permutation.identity(5)
    assert c ** -1 == inverse(c)


# -- generate --------------------------------------------------------------

def test_generate_cyclic():
    assert generate([P("(0 1 2)", 3)]).order == 3


def test_generate_symmetric_matches_enumeration():
    G = generate([P("(0 1)", 3), P("(0 1 2)", 3)])
    assert list(G.elements) == sorted(all_perms(3))


def test_generate_empty():
    G = generate([], degree=4)
    assert G.order == 1 and G.elements[0].is_identity()


def test_generate_cap():
    with pytest.raises(CapExceeded):
        generate([P("(0 1)", 5), P("(0 1 2 3 4)", 5)], cap=100)


def test_generate_degree_mismatch():
    with pytest.raises(ValueError):
        generate([P("(0 1)", 3), P("(0 1)", 4)])


def test_group_laws_closure():
    G = symmetric_group(4)
    assert G.order == 24
    assert G.elements[0].is_identity()
    members = set(G.elements)
    for a in G:
        assert inverse(a) in members
        for b in G:
            assert compose(a, b) in members
    for g in G.generators:
        assert g in G


def test_generate_idempotent():
    G = generate([P("(0 1 2 3)", 6), P("(4 5)", 6)])
    assert generate(G.elements).elements == G.elements


def test_generate_deterministic():
    gens = [P("(0 1 2 3 4)", 5), P("(1 4)(2 3)", 5)]
    assert generate(gens).elements == generate(list(reversed(gens))).elements


# -- orbits / stabilizer ---------------------------------------------------

def test_orbits_examples():
    assert orbits(generate([P("(0 1)(2 3)", 4)])) == [[0, 1], [2, 3]]
    assert orbits(trivial_group(3)) == [[0], [1], [2]]
    assert orbits(symmetric_group(3)) == [[0, 1, 2]]


def test_stabilizer_examples():
    S3 = symmetric_group(3)
    expected = [p for p in all_perms(3) if p(0) == 0]
    A0 = stabilizer(S3, 0)
    assert sorted(A0.elements) == sorted(expected)
    assert set(A0.elements) == {Permutation.identity(3), P("(1 2)", 3)}
    assert stabilizer(trivial_group(3), 2).order == 1
    assert stabilizer(generate([P("(0 1 2 3)", 4)]), 1).order == 1
    with pytest.raises(ValueError):
        stabilizer(S3, 3)


@settings(max_examples=60)
@given(st.lists(perms(7), min_size=0, max_size=3), st.integers(1, 7))
def test_orbit_stabilizer(gens, n):
    gens = [g for g in gens if g.degree == n]
    G = generate(gens, degree=n)
    for x in range(n):
        assert G.order == stabilizer(G, x).order * len(orbit_of(G, x))


# -- cosets ----------------------------------------------------------------

def _is_partition(blocks, G):
    seen = set()
    for b in blocks:
        if seen & b.members:
            return False
        seen |= b.members
    return seen == set(G.elements) and sum(len(b) for b in blocks) == G.order


def test_left_cosets_examples():
    S3 = symmetric_group(3)
    assert len(left_cosets(S3, S3)) == 1
    assert len(left_cosets(S3, trivial_group(3))) == 6
    cos = left_cosets(S3, stabilizer(S3, 0))
    # oracle: bucket the 6 elements by the image of 0
    buckets = {}
    for p in all_perms(3):
        buckets.setdefault(p(0), set()).add(p)
    assert sorted(map(set, (c.members for c in cos)), key=sorted) == \
        sorted(buckets.values(), key=sorted)
    for c in cos:
        assert len({p(0) for p in c.members}) == 1
        assert c.representative == min(c.members)
    assert _is_partition(cos, S3)


def test_left_cosets_containment():
    with pytest.raises(ValueError):
        left_cosets(generate([P("(0 1 2)", 3)]), generate([P("(0 1)", 3)]))


def test_double_cosets_examples():
    S3 = symmetric_group(3)
    C3 = generate([P("(0 1 2)", 3)])
    A0 = stabilizer(S3, 0)
    assert [len(d) for d in double_cosets(S3, S3, A0)] == [6]
    assert len(double_cosets(S3, trivial_group(3), trivial_group(3))) == 6
    # oracle: every product l*t*r for each t
    dcs = double_cosets(S3, C3, A0)
    assert len(dcs) == 1
    brute = {compose(compose(l, t), r) for t in all_perms(3) for l in C3 for r in A0}
    assert dcs[0].members == frozenset(brute)


def test_double_cosets_are_unions_of_left_cosets():
    S4 = symmetric_group(4)
    L = generate([P("(0 1 2 3)", 4)])
    R = stabilizer(S4, 0)
    dcs = double_cosets(S4, L, R)
    assert _is_partition(dcs, S4)
    for c in left_cosets(S4, R):
        hits = [d for d in dcs if c.members & d.members]
        assert len(hits) == 1 and c.members <= hits[0].members
    for d in dcs:
        assert d.members == frozenset(
            compose(compose(l, d.representative), r) for l in L for r in R)


# -- normality / action ----------------------------------------------------

def test_is_normal_examples():
    S3 = symmetric_group(3)
    C3 = generate([P("(0 1 2)", 3)])
    assert is_normal(trivial_group(3), S3)
    assert is_normal(C3, S3)
    assert not is_normal(stabilizer(S3, 0), S3)
    # oracle: conjugate every element by every element
    brute = all(compose(compose(g, h), inverse(g)) in C3 for g in S3 for h in C3)
    assert brute


def test_action_class():
    assert action_class(generate([P("(0 1 2 3)", 4)])) == "regular"
    assert action_class(symmetric_group(3)) == "transitive"
    assert action_class(generate([P("(0 1)", 3)])) == "intransitive"


# -- semiregular -----------------------------------------------------------

def test_classify_semiregular_examples():
    assert classify_semiregular(P("(0 1 2 3 4)", 5)) == SemiregularSignature(1, 5)
    assert classify_semiregular(Permutation.identity(4)) is None
    assert classify_semiregular(P("(0 1)(2 3)(4 5)", 6)) == SemiregularSignature(3, 2)
    assert classify_semiregular(P("(0 1)", 4)) is None
    assert classify_semiregular(P("(0 1)(2 3 4)", 5)) is None


@given(perms(10))
def test_semiregular_powers(p):
    sig = classify_semiregular(p)
    if sig is None:
        return
    assert sig.r * sig.s == p.degree
    assert p ** sig.s == Permutation.identity(p.degree)
    for k in range(1, sig.s):
        assert not (p ** k).fixed_points()


@given(perms(10))
def test_cycle_decomposition_partitions_points(p):
    cd = cycle_decomposition(p, include_fixed=True)
    pts = [x for c in cd.cycles for x in c]
    assert sorted(pts) == list(range(p.degree))
    assert cd.degree == p.degree
    assert sorted(len(c) for c in cd.cycles) == list(cd.lengths)


def test_signature_validation():
    with pytest.raises(ValueError):
        SemiregularSignature(1, 1)


def test_group_order_divides_factorial():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 6)
        gens = [Permutation(tuple(rng.sample(range(n), n))) for _ in range(rng.randint(0, 2))]
        G = generate(gens, degree=n)
        assert len(list(itertools.permutations(range(n)))) % G.order == 0
