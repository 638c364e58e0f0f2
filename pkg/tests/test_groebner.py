import pytest
from hypothesis import given, settings, strategies as st

from linkage import config
from linkage.groebner import (
    InhomogeneousInput,
    ModuleOrder,
    buchberger,
    ideal_is_unit,
    ideal_membership,
    kernel_of_matrix,
    minimal_generators,
    normal_form,
    reduce_basis,
    syzygies,
    vec_add,
    vec_scale,
)
from linkage.ring import GradedRing, mono_lcm

from conftest import make_ring


def polys(ring, *texts):
    return [ring.parse(t) for t in texts]


def vec(f, comp=0):
    return {(comp, m): c for m, c in f.data.items()}


def test_normal_form_examples(S2):
    xy, = polys(S2, "x*y")
    assert normal_form(xy, [xy], ring=S2).is_zero()
    x2, = polys(S2, "x^2")
    assert normal_form(x2, [xy], ring=S2) == x2
    f, g = polys(S2, "x^2*y + y^3", "x*y - y^2")
    assert normal_form(f, [g], ring=S2) == S2.parse("2*y^3")


def test_buchberger_principal_monomial(S2):
    gb = buchberger(polys(S2, "x*y"), S2)
    assert gb.as_polys() == polys(S2, "x*y")


def test_buchberger_adds_cubic(S2):
    gb = buchberger(polys(S2, "x^2 - y^2", "x*y"), S2)
    assert set(gb.as_polys()) == set(polys(S2, "x^2 - y^2", "x*y", "y^3"))


def test_buchberger_over_quotient_adjoins_defining_ideal(Rxy):
    gb = buchberger(polys(Rxy, "x"), Rxy)
    assert gb.contains(vec(Rxy.parse("x*y")))
    assert gb.contains(vec(Rxy.parse("x^3")))
    assert not gb.contains(vec(Rxy.parse("y")))


def test_reduce_basis_drops_redundant(S2):
    gb = buchberger(polys(S2, "x", "x^2"), S2, reduce=False)
    red = reduce_basis(gb)
    assert red.as_polys() == polys(S2, "x")
    again = reduce_basis(buchberger(polys(S2, "x^2 - y^2", "x*y"), S2))
    for v in again.elements:
        assert v[again.order.lead(v)] == 1


def test_syzygies_principal_is_empty(S2):
    assert syzygies(buchberger(polys(S2, "x"), S2)).columns == ()


def test_koszul_syzygy(S2):
    gb = buchberger(polys(S2, "x", "y"), S2)
    syz = syzygies(gb)
    assert len(syz.columns) == 1 and syz.is_exact(S2.p)
    col = syz.columns[0]
    # a multiple of (y, -x) in the basis order
    assert {k for k, _ in col} == {0, 1}
    assert sorted(sum(m) for _, m in col) == [1, 1]


def test_kernel_of_x_over_polynomial_ring(S2):
    assert kernel_of_matrix([vec(S2.parse("x"))], (0,), (1,), S2) == []


def test_kernel_of_x_over_node(Rxy):
    ker = kernel_of_matrix([vec(Rxy.parse("x"))], (0,), (1,), Rxy)
    assert len(ker) == 1
    (comp, mono), = ker[0].keys()
    assert comp == 0 and mono == (0, 1)


def test_kernel_of_identity(S2):
    cols = [{(0, (0, 0)): 1}, {(1, (0, 0)): 1}]
    assert kernel_of_matrix(cols, (0, 0), (0, 0), S2) == []


def test_kernel_of_row_x_y_over_node(Rxy):
    # a*x + b*y in (xy): generated by (y, 0) and (0, x)
    cols = [vec(Rxy.parse("x")), vec(Rxy.parse("y"))]
    # a 1x2 matrix: both columns land in component 0
    ker = kernel_of_matrix(cols, (0,), (1, 1), Rxy)
    assert len(ker) == 2
    shapes = sorted(tuple(sorted((k, m) for k, m in v)) for v in ker)
    assert shapes == [((0, (0, 1)),), ((1, (1, 0)),)]


def test_membership_and_unit(S2):
    assert ideal_membership(S2.parse("x^2*y"), polys(S2, "x*y"), S2)
    assert not ideal_membership(S2.parse("x"), polys(S2, "x*y"), S2)
    assert ideal_is_unit(polys(S2, "x", "x + 1"))
    assert not ideal_is_unit(polys(S2, "x", "y"))


def test_minimal_generators_indices(S2):
    vs = [vec(f) for f in polys(S2, "x", "x*y", "y", "x^2 + y^2")]
    assert minimal_generators(vs, (0,), S2) == [0, 2]


def test_inhomogeneous_generators_rejected(S2):
    with pytest.raises(InhomogeneousInput):
        buchberger(polys(S2, "x + y^2"), S2)


def test_degree_cap_is_reported():
    R = make_ring("x,y,z")
    gens = polys(R, "x^3 - y*z^2", "y^3 - x*z^2")
    with config.degree_cap_set(1):
        with pytest.raises(config.TruncationExceeded):
            buchberger(gens, R)
    buchberger(gens, R)


def test_module_orders(S2):
    v = {(0, (0, 1)): 1, (1, (2, 0)): 1}
    # TOP: degree first, so the quadratic term in component 1 leads
    assert ModuleOrder(S2.order, (0, 0)).lead(v) == (1, (2, 0))
    # POT: position first, component 0 is larger
    assert ModuleOrder(S2.order, (0, 0), kind="pot").lead(v) == (0, (0, 1))
    # Schreyer: compare leads of the images m*g_i
    base = ModuleOrder(S2.order, (0,))
    sch = ModuleOrder.schreyer(base, [(0, (1, 0)), (0, (0, 1))], (1, 1))
    # y*e_0 -> x*y and x*e_1 -> x*y tie; index breaks the tie (lower index larger)
    assert sch.lead({(0, (0, 1)): 1, (1, (1, 0)): 1}) == (0, (0, 1))
    with pytest.raises(ValueError):
        ModuleOrder(S2.order, (0,), kind="diagonal")


# -- properties of Groebner bases of random homogeneous ideals
_R = GradedRing.make("x,y,z")


@st.composite
def homogeneous_poly(draw):
    d = draw(st.integers(1, 3))
    terms = draw(st.lists(st.tuples(st.integers(0, d), st.integers(0, d), st.integers(1, 100)),
                          min_size=1, max_size=3))
    data = {}
    for a, b, c in terms:
        if a + b <= d:
            data[(a, b, d - a - b)] = c
    return _R.ambient.element(data)


@settings(max_examples=40, deadline=None)
@given(st.lists(homogeneous_poly(), min_size=1, max_size=3))
def test_groebner_basis_properties(gens):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    gb = buchberger(gens, _R)
    # every generator reduces to zero
    for g in gens:
        assert gb.contains(vec(g))
    # Buchberger criterion: all S-polynomials reduce to zero
    p = _R.p
    E = list(gb.elements)
    for i in range(len(E)):
        for j in range(i + 1, len(E)):
            (_, mi), (_, mj) = gb.order.lead(E[i]), gb.order.lead(E[j])
            lcm = mono_lcm(mi, mj)
            qi = tuple(a - b for a, b in zip(lcm, mi))
            qj = tuple(a - b for a, b in zip(lcm, mj))
            s = vec_add(vec_scale(E[i], 1, qi, p), vec_scale(E[j], 1, qj, p), p, -1)
            assert gb.contains(s)
    # Schreyer syzygies really are syzygies
    assert syzygies(gb).is_exact(p)
