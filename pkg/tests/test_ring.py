from fractions import Fraction

import pytest
from hypothesis import given

from orthokit.ring import (
    CapExceeded,
    ContextMismatch,
    Excision,
    Poly,
    RingError,
    UnsupportedError,
    Zmod,
    enumerate_ideals,
    excision_project,
    ideal,
    is_maximal_ideal,
    parse_ring,
    ring_arith,
    ring_inverse,
    split_components,
)

from conftest import EXC, F3, PX, QQ, RINGS, Z9, elements


def E(ctx, v):
    return ctx.elem(v)


# -- arithmetic examples -------------------------------------------------------------

def test_zmod_addition_reduces():
    assert ring_arith(Z9, "add", Z9(5), Z9(7)) == Z9(3)


def test_zmod_inverse_of_two():
    assert ring_inverse(Z9, Z9(2)) == Z9(5)


def test_zero_divisor_is_not_a_unit():
    assert ring_inverse(Z9, Z9(3)) is None


def test_excision_product_over_rationals():
    X = Excision(QQ, ideal(QQ, [1]))
    prod = ring_arith(X, "mul", X("(2|3)"), X("(1|4)"))
    assert prod.value == (Fraction(2), Fraction(23))


def test_multiplying_by_one(ring):
    a = ring.elem(ring.from_int(7))
    assert a * ring.one() == a
    assert ring_inverse(ring, ring.elem(ring.one())) == ring.elem(ring.one())


def test_excision_projection_examples():
    assert excision_project(EXC("(2|3)")) == Z9(5)
    assert excision_project(EXC("(1|0)")) == Z9(1)
    a, b = EXC("(2|3)"), EXC("(4|6)")
    assert excision_project(a * b) == excision_project(a) * excision_project(b) == Z9(5)


def test_modulus_must_be_odd():
    with pytest.raises(RingError):
        Zmod(8)
    with pytest.raises(RingError):
        Zmod(1)


def test_poly_over_even_ring_rejected():
    with pytest.raises(RingError):
        parse_ring("poly:zmod:4:X")


def test_mixed_rings_rejected():
    with pytest.raises(ContextMismatch):
        Z9(1) + F3(1)
    with pytest.raises(ContextMismatch):
        ring_arith(Z9, "add", F3(1), F3(1))


def test_excision_ideal_membership_enforced():
    with pytest.raises(RingError):
        EXC("(1|1)")


def test_poly_arithmetic():
    x = PX.elem(PX.x())
    assert (x + 1) * (x + 2) == PX.elem((2, 0, 1))  # x^2 + 3x + 2 = x^2 + 2 over F3
    assert PX.elem((1, 1)).inverse() is None
    assert str(PX.elem(PX.zero())) == "[0]"


def test_poly_unit_with_nilpotent_part():
    P = Poly(Z9)
    a = P.elem((1, 3))  # 1 + 3X, (3X)^2 = 0
    inv = a.inverse()
    assert inv is not None and a * inv == P.elem(P.one())


def test_ring_specs_round_trip():
    for spec in ["zmod:9", "Q", "poly:zmod:3:X", "exc:zmod:9:[3]", "exc:Q:[1]"]:
        assert parse_ring(spec).spec() == spec


# -- properties ------------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(RINGS))
def test_commutative_ring_axioms(name):
    ctx = RINGS[name]
    el = elements(ctx)

    @given(el, el, el)
    def check(a, b, c):
        add, mul = ctx.add, ctx.mul
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert add(add(a, b), c) == add(a, add(b, c))
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        assert mul(a, b) == mul(b, a)
        assert add(a, ctx.neg(a)) == ctx.zero()
        assert mul(a, ctx.one()) == a
        inv = ctx.inverse(a)
        if inv is not None:
            assert mul(a, inv) == ctx.one()

    check()


@pytest.mark.parametrize("name", sorted(RINGS))
def test_format_parse_round_trip(name):
    ctx = RINGS[name]

    @given(elements(ctx))
    def check(a):
        assert ctx.parse(ctx.format(a)) == a

    check()


@given(elements(EXC), elements(EXC))
def test_projection_is_ring_homomorphism(a, b):
    p, B = EXC.project, EXC.base
    assert p(EXC.add(a, b)) == B.add(p(a), p(b))
    assert p(EXC.mul(a, b)) == B.mul(p(a), p(b))


def test_projection_is_surjective():
    assert {EXC.project(a) for a in EXC.elements()} == set(Z9.elements())


@pytest.mark.parametrize("base,gens", [(Z9, [3]), (Zmod(3), [1]), (Zmod(15), [5]), (Zmod(27), [9])])
def test_excision_units_match_exhaustive_search(base, gens):
    X = Excision(base, ideal(base, gens))
    elems = X.elements()
    one = X.one()
    for a in elems:
        searched = any(X.mul(a, b) == one for b in elems)
        criterion = base.is_unit(a[0]) and base.is_unit(base.add(a[0], a[1]))
        assert searched == criterion == (X.inverse(a) is not None)


# -- ideals ------------------------------------------------------------------------------

def test_ideals_of_z9():
    ideals = enumerate_ideals(Z9)
    assert [sorted(I.elements) for I in ideals] == [[0], [0, 3, 6], list(range(9))]


def test_field_has_two_ideals():
    assert [len(I.elements) for I in enumerate_ideals(F3)] == [1, 3]


def test_ideal_enumeration_is_closed_and_complete():
    for ctx in (Z9, Zmod(15), EXC, Excision(F3, ideal(F3, [1]))):
        ideals = enumerate_ideals(ctx)
        elems = ctx.elements()
        for I in ideals:
            S = I.elements
            assert all(ctx.add(a, b) in S for a in S for b in S)
            assert all(ctx.mul(r, a) in S for r in elems for a in S)
        # brute-force oracle: every subset closed under the ideal operations
        if len(elems) <= 9:
            closed = set()
            for mask in range(1, 2 ** len(elems)):
                S = {e for k, e in enumerate(elems) if mask >> k & 1}
                if ctx.zero() in S and all(ctx.add(a, ctx.neg(b)) in S for a in S for b in S) and all(
                    ctx.mul(r, a) in S for r in elems for a in S
                ):
                    closed.add(frozenset(S))
            assert closed == {I.elements for I in ideals}


def test_excision_over_field_has_a_non_split_ideal():
    X = Excision(F3, ideal(F3, [1]))
    ideals = enumerate_ideals(X)
    assert len(ideals) == 4
    non_split = [I for I in ideals if not split_components(I)[2]]
    assert [sorted(I.elements) for I in non_split] == [[(0, 0), (1, 2), (2, 1)]]


def test_maximal_ideals():
    ideals = enumerate_ideals(Z9)
    assert is_maximal_ideal(Z9, ideal(Z9, [3]), ideals)
    assert not is_maximal_ideal(Z9, ideal(Z9, [1]), ideals)
    lifted = ideal(EXC, ["(3|0)", "(0|3)"])
    assert is_maximal_ideal(EXC, lifted)


def test_ideal_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_ideals(Zmod(101), size_cap=50)


def test_ideal_enumeration_needs_finite_ring():
    with pytest.raises(UnsupportedError):
        enumerate_ideals(QQ)


def test_membership_in_infinite_rings():
    P = Poly(QQ)
    I = ideal(P, ["[0,1]"])
    assert I.contains(P.parse("[0,2,5]"))
    assert not I.contains(P.parse("[1,1]"))
    assert ideal(QQ, [0]).contains(QQ.zero())
    assert not ideal(QQ, [0]).contains(QQ.one())
    with pytest.raises(UnsupportedError):
        ideal(Poly(PX), ["[[0,1]]"]).contains(Poly(PX).one())
