import math

import pytest
from hypothesis import given, settings, strategies as st

from linkage import oracle
from linkage.homalg import PresentedModule, is_zero
from linkage.invariants import (
    INF,
    canonical_module,
    depth,
    dim,
    dim_via_ext,
    gdim,
    gk_dim,
    grade,
    ideal_grade,
    is_cohen_macaulay_ring,
    is_gorenstein_ring,
    is_GK_gorenstein_ideal,
    is_reduced_G_perfect,
    is_semidualizing,
    jsonable,
    local_cohomology,
    local_cohomology_support,
    reduced_grade,
    report,
    ring_depth,
    ring_dim,
    satisfies_tilde_S,
    serre_level,
    serre_via_local_cohomology,
    tilde_S_via_grades,
)
from linkage.operators import congruent, is_horizontally_linked
from linkage.ring import GradedRing

from conftest import cyclic, free, ideal_module, residue_field


def test_grade_values(S2, Rxy):
    assert grade(residue_field(S2)) == 2
    assert grade(residue_field(Rxy)) == 1
    assert grade(cyclic(Rxy, "x")) == 0
    assert grade(PresentedModule(Rxy, (), ())) == INF
    assert ideal_grade(S2, [S2.parse("x*y")]) == 1


def test_reduced_grade(Rxy):
    assert reduced_grade(residue_field(Rxy)) == 1
    # gdim 0 gives infinite reduced grade (reported as no nonvanishing within the bound)
    assert reduced_grade(cyclic(Rxy, "x")) is None
    assert reduced_grade(free(Rxy)) is None


def test_depth_and_dim(S2, Rxy, NG1):
    assert depth(free(S2)) == 2 and dim(free(S2)) == 2
    assert depth(cyclic(Rxy, "x")) == 1 and dim(cyclic(Rxy, "x")) == 1
    assert depth(residue_field(Rxy)) == 0 and dim(residue_field(Rxy)) == 0
    assert ring_depth(NG1) == 0 and ring_dim(NG1) == 1
    assert dim(PresentedModule(Rxy, (), ())) == -1
    assert depth(PresentedModule(Rxy, (), ())) == INF


@pytest.mark.parametrize("gens", [("x",), ("x", "y"), ("y^2",), ("x + y",)])
def test_depth_agrees_with_oracle(Rxy, gens):
    M = cyclic(Rxy, *gens)
    assert depth(M) == oracle.depth_oracle(M)


def test_dim_two_routes(R3, CI):
    for M in (cyclic(R3, "x"), residue_field(R3), cyclic(CI, "y"), free(CI)):
        assert dim(M) == dim_via_ext(M)


def test_gdim_values(Rxy, NG2):
    assert gdim(free(Rxy)).value == 0
    g = gdim(residue_field(Rxy))
    assert g.value == 1 and g.method == "gorenstein"
    assert gdim(cyclic(Rxy, "x")).value == 0
    # over a non-Gorenstein ring k has no certificate within the bound
    assert gdim(residue_field(NG2)).value is None
    assert gdim(cyclic(NG2, "z")).value == 1


def test_gorenstein_verdicts(S2, Rxy, NG1, NG2, CI):
    assert is_gorenstein_ring(Rxy) == "yes"
    assert is_gorenstein_ring(S2) == "yes"
    assert is_gorenstein_ring(CI) == "yes"
    assert is_gorenstein_ring(NG1) == "no"
    assert is_gorenstein_ring(NG2) == "no"
    assert is_cohen_macaulay_ring(NG2) and not is_cohen_macaulay_ring(NG1)


def test_canonical_module(Rxy, NG2, NG1):
    w = canonical_module(Rxy)
    assert congruent(w, free(Rxy), up_to_shift=True).consistent
    assert canonical_module(NG2).rank == 2
    with pytest.raises(ValueError):
        canonical_module(NG1)


def test_semidualizing(Rxy, NG2):
    assert is_semidualizing(free(Rxy)).ok
    assert is_semidualizing(canonical_module(NG2), 3).ok
    assert not is_semidualizing(residue_field(Rxy)).ok


def test_gk_dimension_against_canonical(NG2):
    w = canonical_module(NG2)
    assert gk_dim(cyclic(NG2, "z"), w, 3).value == 1
    assert gk_dim(w, w, 3).value == 0


def test_gk_gorenstein_ideal(S2):
    assert is_GK_gorenstein_ideal(S2, [S2.parse("x*y")], free(S2))


def test_tilde_S(Rxy):
    assert satisfies_tilde_S(cyclic(Rxy, "x"), 1)
    assert not satisfies_tilde_S(residue_field(Rxy), 1)
    assert satisfies_tilde_S(free(Rxy), 3)
    assert serre_level(cyclic(Rxy, "x"), 4) == 4
    assert serre_level(residue_field(Rxy), 4) == 0


def test_tilde_S_routes_agree(R3):
    for M in (cyclic(R3, "x"), ideal_module(R3, ["x", "y", "z"]), residue_field(R3)):
        for k in (1, 2):
            assert satisfies_tilde_S(M, k) == tilde_S_via_grades(M, k)


def test_serre_window(Rxy):
    c = serre_via_local_cohomology(cyclic(Rxy, "x"), 0)
    assert c.window == [] and c.agree
    c = serre_via_local_cohomology(residue_field(Rxy), 1)
    assert not c.applicable and "horizontally linked" in c.reason


def test_local_cohomology(Rxy, S2):
    k = residue_field(Rxy)
    assert local_cohomology_support(k) == [0]
    assert local_cohomology(k, 0).dims(-1, 1) == {-1: 0, 0: 1, 1: 0}
    # H^2_m(S) lives in degrees <= -2
    H2 = local_cohomology(free(S2), 2)
    assert H2.dims(-4, -1) == {-4: 3, -3: 2, -2: 1, -1: 0}
    assert local_cohomology_support(free(S2)) == [2]


def test_reduced_G_perfect(Rxy):
    assert is_reduced_G_perfect(residue_field(Rxy))
    assert not is_reduced_G_perfect(free(Rxy))
    assert not is_reduced_G_perfect(cyclic(Rxy, "x"))


def test_report_residue_field(Rxy):
    r = report(residue_field(Rxy))
    assert (r["grade"], r["reduced_grade"], r["depth"], r["dim"]) == (1, 1, 0, 0)
    assert r["gdim"]["value"] == 1
    assert r["stable"] and not r["horizontally_linked"] and r["reduced_G_perfect"]
    assert all(i["status"] == "pass" for i in r["identities"])


def test_report_Mx(Rxy):
    r = report(cyclic(Rxy, "x"))
    assert (r["grade"], r["reduced_grade"], r["depth"], r["dim"]) == (0, None, 1, 1)
    assert r["gdim"]["value"] == 0 and r["stable"] and r["horizontally_linked"]
    assert not r["reduced_G_perfect"]
    assert r["ring"]["gorenstein"] == "yes"


def test_report_free(Rxy):
    r = report(free(Rxy))
    assert r["gdim"]["value"] == 0 and not r["stable"] and not r["horizontally_linked"]
    assert r["reduced_grade"] is None


def test_jsonable_infinity():
    assert jsonable({"a": math.inf, "b": [1, math.inf]}) == {"a": "inf", "b": [1, "inf"]}


# -- properties: Auslander-Bridger over a Gorenstein ring
_R = GradedRing.make("x,y,z", ["x*y"])
_gens = st.sampled_from(["x", "y", "z", "x^2", "z^2", "x*z", "y*z", "x + z", "y^2 + z^2", "z^3"])


@settings(max_examples=25, deadline=None)
@given(st.lists(_gens, min_size=1, max_size=3, unique=True))
def test_depth_formula_and_grade_inequalities(gens):
    M = cyclic(_R, *gens)
    if is_zero(M):
        return
    g = gdim(M)
    assert g.finite  # Gorenstein ring
    assert depth(M) + g.value == ring_depth(_R)
    gr, rg = grade(M), reduced_grade(M)
    if gr > 0:
        assert rg is not None and gr <= rg
    if g.value > 0:
        assert rg is not None and rg <= g.value
    assert dim(M) >= depth(M)


@settings(max_examples=20, deadline=None)
@given(st.lists(_gens, min_size=1, max_size=2, unique=True))
def test_report_identities_never_fail(gens):
    M = cyclic(_R, *gens)
    r = report(M)
    assert all(i["status"] != "fail" for i in r["identities"])
    assert r["horizontally_linked"] == is_horizontally_linked(M)
