import pytest
from hypothesis import given, settings, strategies as st

from linkage.ring import (
    GradedRing,
    MonomialOrder,
    Ordering,
    PolynomialRing,
    PrimeField,
    RingError,
    is_prime,
    monomials_of_degree,
    poly_arith,
)


@pytest.fixture
def S():
    return GradedRing.make("x,y").ambient


def test_additive_inverse_cancels(S):
    x, y = S.gens()
    assert poly_arith("add", x + y, poly_arith("scale", y, S.p - 1)) == x


def test_product_degree(S):
    x, y = S.gens()
    f = poly_arith("mul", x, y)
    assert str(f) == "x*y" and f.degree() == 2


def test_frobenius_in_characteristic_two():
    S2 = GradedRing.make("x,y", p=2).ambient
    x, y = S2.gens()
    assert (x + y) ** 2 == x ** 2 + y ** 2


def test_grevlex_and_lex_comparisons():
    g, l = MonomialOrder("grevlex"), MonomialOrder("lex")
    assert g.compare((2, 0), (1, 1)) == Ordering.GT
    assert l.compare((1, 0), (0, 2)) == Ordering.GT
    assert g.compare((0, 2), (1, 1)) == Ordering.LT
    assert g.compare((1, 3), (1, 3)) == Ordering.EQ


def test_grevlex_breaks_ties_on_last_variable():
    g = MonomialOrder("grevlex")
    # x*z < y^2 in grevlex on three variables
    assert g.compare((1, 0, 1), (0, 2, 0)) == Ordering.LT


def test_parse_and_print_roundtrip(S):
    f = S.parse("3*x^2*y - y^3 + 5")
    assert S.parse(str(f)) == f
    assert not f.is_homogeneous()
    assert S.parse("x^2 - 2*x*y").is_homogeneous()


def test_parse_errors(S):
    with pytest.raises(RingError):
        S.parse("x + w")
    with pytest.raises(RingError):
        S.parse("x + ")


def test_coefficients_reduced_mod_p(S):
    assert S.parse("102*x") == S.parse("x")
    assert S.parse("101*x").is_zero()


def test_mixed_rings_rejected():
    A = GradedRing.make("x,y").ambient
    B = GradedRing.make("x,y", p=7).ambient
    with pytest.raises(RingError):
        A.gens()[0] + B.gens()[0]


def test_non_prime_characteristic_rejected():
    assert is_prime(101) and not is_prime(100)
    with pytest.raises(RingError):
        PrimeField(100)


def test_field_inverse():
    F = PrimeField(101)
    assert all(a * F.inv(a) % 101 == 1 for a in range(1, 101))


def test_quotient_ring_validation():
    with pytest.raises(RingError):
        GradedRing.make("x,y", ["x + y^2"])
    with pytest.raises(RingError):
        GradedRing.make("x,y", ["1"])
    R = GradedRing.make("x,y", ["x*y"])
    assert R == GradedRing.make("x,y", ["x*y"]) and hash(R) == hash(GradedRing.make("x,y", ["x*y"]))
    assert R.quotient(["x^2"]).ideal[-1] == R.parse("x^2")


def test_monomial_counts():
    assert len(monomials_of_degree(3, 2)) == 6
    assert len(monomials_of_degree(2, 5)) == 6


# -- ring axioms on random polynomials
_S = PolynomialRing(PrimeField(101), ("x", "y", "z"), MonomialOrder("grevlex"))
_terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
    st.integers(1, 100), max_size=5)
polys = _terms.map(_S.element)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero()
    assert f * _S.one() == f


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_degree_of_product(f, g):
    if not f.is_zero() and not g.is_zero():
        assert (f * g).degree() == f.degree() + g.degree()
