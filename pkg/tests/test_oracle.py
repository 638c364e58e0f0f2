"""The linear-algebra oracle, checked on its own and against the Groebner engine."""
import pytest
from hypothesis import given, settings, strategies as st

from linkage import oracle
from linkage.homalg import PresentedModule, ext, hilbert_series, tor
from linkage.ring import GradedRing

from conftest import cyclic, free, residue_field


def test_truncated_node(Rxy):
    T = oracle.truncate(free(Rxy), 4)
    assert [T.dim(d) for d in range(5)] == [1, 2, 2, 2, 2]
    assert T.check_commuting()


def test_truncated_zero_and_residue_field(Rxy):
    Z = oracle.truncate(PresentedModule(Rxy, (), ()), 4)
    assert all(Z.dim(d) == 0 for d in range(5))
    K = oracle.truncate(residue_field(Rxy), 4)
    assert [K.dim(d) for d in range(5)] == [1, 0, 0, 0, 0]


def test_truncated_ring_normal_forms(NG1):
    TR = oracle.TruncatedRing(NG1, 5)
    # F[x,y]/(x^2, xy): degree d >= 2 is spanned by y^d alone
    assert [TR.dim(d) for d in range(6)] == [1, 2, 1, 1, 1, 1]


def test_ext_dims_residue_field(Rxy):
    k, R = residue_field(Rxy), free(Rxy)
    dims = oracle.ext_dims(k, R, 1, -3, 3)
    assert dims == {-3: 0, -2: 0, -1: 0, 0: 1, 1: 0, 2: 0, 3: 0}
    for i in (2, 3, 4):
        assert sum(oracle.ext_dims(k, R, i, -6, 0).values()) == 0


def test_ext_dims_of_free_vanish(Rxy):
    assert sum(oracle.ext_dims(free(Rxy), residue_field(Rxy), 1, -2, 4).values()) == 0


def test_hom_direct_matches_resolution_route(Rxy):
    Mx, R = cyclic(Rxy, "x"), free(Rxy)
    assert oracle.hom_dims_direct(Mx, R, -1, 4) == oracle.ext_dims(Mx, R, 0, -1, 4)


def test_depth_oracle(S2, Rxy):
    assert oracle.depth_oracle(free(S2)) == 2
    assert oracle.depth_oracle(cyclic(Rxy, "x")) == 1
    assert oracle.depth_oracle(residue_field(Rxy)) == 0


def test_oracle_betti_matches_koszul(S3):
    res = oracle.OracleResolution(residue_field(S3), 6)
    assert res.ranks(3) == [1, 3, 3, 1]


def test_inconclusive_when_truncation_too_low(R3):
    M = cyclic(R3, "x^3", "z^3")
    with pytest.raises(oracle.Inconclusive):
        oracle.ext_dims(M, free(R3), 2, -8, -5, D=3)


def test_dump_uses_string_keys():
    assert oracle.dump({-1: 0, 2: 3}) == {"-1": 0, "2": 3}


# frozen oracle values for the linkage fixtures (degrees as keys)
FROZEN = {
    # Ext^1(M_x, R) over the node vanishes: M_x is reflexive there
    ("Rxy", "x", "ext", 1): {-2: 0, -1: 0, 0: 0, 1: 0, 2: 0},
    # Ext^1(k, R) over the node is one-dimensional in degree 0
    ("Rxy", "x,y", "ext", 1): {-2: 0, -1: 0, 0: 1, 1: 0, 2: 0},
    # Tor_2(k, k) over the node: two copies of k in degree 2
    ("Rxy", "x,y", "tor", 2): {0: 0, 1: 0, 2: 2, 3: 0},
    # Ext^2(k, R) over F[x,y,z]/(xy): one-dimensional in degree -1
    ("R3", "x,y,z", "ext", 2): {-3: 0, -2: 0, -1: 1, 0: 0},
}


@pytest.mark.parametrize("key", sorted(FROZEN))
def test_frozen_oracle_values(key, Rxy, R3):
    ring = {"Rxy": Rxy, "R3": R3}[key[0]]
    M = cyclic(ring, *key[1].split(","))
    lo, hi = min(FROZEN[key]), max(FROZEN[key])
    if key[2] == "ext":
        got = oracle.ext_dims(M, free(ring), key[3], lo, hi)
        eng = ext(M, free(ring), key[3])
    else:
        got = oracle.tor_dims(M, residue_field(ring), key[3], lo, hi)
        eng = tor(M, residue_field(ring), key[3])
    assert got == FROZEN[key]
    assert {d: hilbert_series(eng).coefficient(d) for d in got} == got


# -- engine versus oracle on random cyclic modules
_rings = {
    "node": GradedRing.make("x,y", ["x*y"]),
    "ci": GradedRing.make("x,y,z", ["x^2", "y*z"]),
    "ng": GradedRing.make("x,y", ["x^2", "x*y"]),
}
_gens = st.sampled_from(["x", "y", "x^2", "y^2", "x + y", "x^2 + y^2", "y^3", "x*y"])


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(_rings)), st.lists(_gens, min_size=1, max_size=2, unique=True))
def test_engine_matches_oracle_on_cyclic_modules(name, gens):
    ring = _rings[name]
    M = cyclic(ring, *gens)
    D = 7
    H = hilbert_series(M)
    assert oracle.hilbert_dims(M, 0, D) == {d: H.coefficient(d) for d in range(0, D + 1)}
    R = free(ring)
    try:
        dims = oracle.ext_dims(M, R, 1, -4, 2, D=D)
    except oracle.Inconclusive:
        return
    E = hilbert_series(ext(M, R, 1))
    assert dims == {d: E.coefficient(d) for d in dims}
