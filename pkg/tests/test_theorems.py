import pytest

from linkage.homalg import HilbertSeries
from linkage.invariants import canonical_module
from linkage.theorems import REGISTRY, THEOREMS, CheckError, shift_between, verify

from conftest import cyclic, free, ideal_module, residue_field


def status(thm, M, name="M", **params):
    return verify(thm, name, M, params)


def test_registry_is_complete():
    assert len(THEOREMS) == 19 and set(THEOREMS) == set(REGISTRY)
    for name in THEOREMS:
        assert "bound" in REGISTRY[name].inputs and REGISTRY[name].description


def test_unknown_theorem_is_an_error(Rxy):
    with pytest.raises(CheckError):
        verify("Thm-nonexistent", "k", residue_field(Rxy))


def test_horizontal_linkage_check(Rxy):
    r = status("MS", residue_field(Rxy), "k")
    assert r.status == "pass" and r.witness["hlinked"] is False and r.witness["torsionless"] is False
    r = status("MS", cyclic(Rxy, "x"), "Mx")
    assert r.status == "pass" and r.witness["hlinked"] is True


def test_depth_formula_check(Rxy, NG2):
    r = status("AB-formula", residue_field(Rxy))
    assert r.status == "pass" and (r.witness["depth"], r.witness["gdim"], r.witness["depth_ring"]) == (0, 1, 1)
    assert status("AB-formula", residue_field(NG2)).status == "inapplicable"


def test_depth_sum_on_residue_field(Rxy):
    r = status("Thm-d", residue_field(Rxy))
    w = r.witness
    assert r.status == "pass"
    assert (w["depth"], w["depth_lambda"], w["d"], w["depth_ext"]) == (0, 1, 1, 0)
    assert w["lhs"] == w["rhs"] == 1


def test_depth_sum_inapplicable_off_hypotheses(Rxy, NG1):
    assert status("Thm-d", cyclic(Rxy, "x")).status == "inapplicable"
    assert status("Thm-d", residue_field(NG1)).status == "inapplicable"


def test_serre_bridge(R3):
    for M in (cyclic(R3, "x"), ideal_module(R3, ["x", "y", "z"])):
        assert status("CorA", M, k=[1, 2, 3]).status == "pass"


def test_sequence_e(Rxy, R3):
    assert status("seq-e", residue_field(Rxy), k=[1, 2]).status == "pass"
    assert status("seq-e", ideal_module(R3, ["x", "y", "z"]), k=[1, 2]).status == "pass"


def test_ass_criterion(S3, R3):
    r = status("Thm-t", ideal_module(S3, ["x", "y"]))
    assert r.status == "pass" and r.witness["part_i"] is False and r.witness["part_ii"] is False
    r = status("Thm-t", ideal_module(R3, ["x", "y", "z"]))
    assert r.status == "pass" and r.witness["part_i"] is True


def test_local_cohomology_sup(R3):
    assert status("Lemma-l1", ideal_module(R3, ["x", "y", "z"])).status == "pass"
    assert status("Lemma-l1", cyclic(R3, "x")).status == "inapplicable"


def test_serre_via_local_cohomology(R3):
    for M in (cyclic(R3, "x"), ideal_module(R3, ["x", "y", "z"])):
        assert status("S4-theorem", M, k=[1, 2]).status == "pass"
    assert status("S4-theorem", residue_field(R3), k=[1]).status == "inapplicable"


def test_tor_ext_transfer(Rxy):
    assert status("Lemma-p2", residue_field(Rxy), n=1).status == "pass"
    assert status("Prop-P5-flat", residue_field(Rxy)).status == "pass"
    assert status("Lemma-p2", cyclic(Rxy, "x"), n=1).status == "pass"
    # reduced grade 1 is below n = 2
    assert status("Lemma-p2", residue_field(Rxy), n=2).status == "inapplicable"


def test_prop_p1(Rxy):
    assert status("Prop-P1", residue_field(Rxy)).status == "pass"


def test_relative_checks_with_canonical_module(NG2):
    w = canonical_module(NG2)
    M = cyclic(NG2, "z")
    I = [NG2.parse("z")]
    assert status("Lemma-G1-dims", M, I=I, K=w).status == "pass"
    assert status("Thm-G2", M, I=I, K=w).status == "pass"


def test_double_link(S3):
    M = ideal_module(S3.quotient(["x^2"]), ["x", "y", "z"]).rebase(S3)
    c1, c2 = [S3.parse("x^2")], [S3.parse("x^3")]
    r = status("Prop-p4", M, c1=c1, c2=c2, K=free(S3))
    assert r.status == "pass" and r.witness["shift"] == -1
    r = status("Cor-end", M, c1=c1, c2=c2, K=free(S3), k=1)
    assert r.status == "pass"


def test_degenerate_double_link_has_no_shift(S3):
    M = cyclic(S3, "x")
    c = [S3.parse("x^2")]
    r = status("Prop-p4", M, c1=c, c2=c, K=free(S3))
    assert r.status == "pass" and r.witness["shift"] == 0


def test_linkage_grade(S3):
    M = ideal_module(S3.quotient(["x^2"]), ["x", "y", "z"]).rebase(S3)
    assert status("Lemma-l2", M, I=[S3.parse("x^2")], K=free(S3)).status == "pass"
    assert status("Prop-P3", cyclic(S3, "x"), I=[S3.parse("x^2")], K=free(S3)).status == "pass"


# -- claims: the negative-control mechanism
def test_claim_contradiction_fails(Rxy):
    k = residue_field(Rxy)
    r = status("MS", k, "k", hlinked=True)
    assert r.status == "fail"
    assert r.witness["claims"] == [{"field": "hlinked", "claimed": True, "computed": False}]


def test_matching_claim_keeps_pass(Rxy):
    assert status("Thm-d", residue_field(Rxy), lhs=1, rhs="1").status == "pass"


def test_claiming_pass_on_inapplicable_fails(Rxy):
    r = status("Thm-d", cyclic(Rxy, "x"), status="pass")
    assert r.status == "fail" and r.witness["claims"][0]["computed"] == "inapplicable"


def test_record_json_shape(Rxy):
    j = status("AB-formula", residue_field(Rxy), "k").to_json()
    assert set(j) == {"theorem", "fixture", "status", "witness", "reason"}


def test_shift_between():
    h = HilbertSeries.make({0: 1}, 1)
    assert shift_between(h, h.shift(1)) == -1
    assert shift_between(h, HilbertSeries.make({0: 2}, 1)) is None
    assert shift_between(HilbertSeries.make({}, 0), HilbertSeries.make({}, 3)) == 0
