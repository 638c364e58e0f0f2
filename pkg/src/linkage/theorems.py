"""Machine checks of the linkage identities on concrete modules.

Every check returns a :class:`VerificationRecord` whose status is ``pass``,
``fail`` or ``inapplicable``.  Hypotheses are gated explicitly: a module that
does not satisfy them yields ``inapplicable`` with the reason, never a
vacuous pass.  Isomorphism statements are checked through Hilbert series
(and, where stated, the full congruence proxy).

Parameters are passed as a dict.  Keys listed in a check's ``inputs`` are
arguments (modules, ideals, integers); every other key is a *claim* about a
witness field, and a claim that disagrees with the computed witness turns
the record into a failure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from .homalg import PresentedModule, ext, hilbert_series, is_zero, minimalize, projective_dimension, tor
from .invariants import (
    INF,
    depth,
    dim,
    gdim,
    gk_dim,
    grade,
    ext_sup,
    ideal_grade,
    is_cohen_macaulay_ring,
    is_GK_gorenstein_ideal,
    is_GK_perfect,
    is_reduced_G_perfect,
    is_semidualizing,
    jsonable,
    local_cohomology,
    reduced_grade,
    ring_depth,
    ring_dim,
    satisfies_tilde_S,
    serre_via_local_cohomology,
    tilde_S_via_grades,
)
from .operators import (
    annihilates,
    congruent,
    evaluation_map,
    is_horizontally_linked,
    is_stable,
    lambda_,
    link_via_ideal,
    quotient_ring,
    restrict_scalars,
    t_functor,
    transpose,
)
from .config import DEFAULT_BOUND

PASS, FAIL, NA = "pass", "fail", "inapplicable"


@dataclass
class VerificationRecord:
    theorem: str
    fixture: str
    status: str
    witness: dict = field(default_factory=dict)
    reason: str = ""

    def to_json(self) -> dict:
        return jsonable({"theorem": self.theorem, "fixture": self.fixture, "status": self.status,
                         "witness": self.witness, "reason": self.reason})


class Inapplicable(Exception):
    """Raised inside a check when a hypothesis fails."""


class CheckError(ValueError):
    """Bad parameters for a check."""


@dataclass
class Check:
    name: str
    fn: Callable
    inputs: tuple = ()
    description: str = ""


REGISTRY: Dict[str, Check] = {}


def register(name: str, inputs: tuple = (), description: str = ""):
    def deco(fn):
        REGISTRY[name] = Check(name, fn, ("bound",) + tuple(inputs), description)
        return fn
    return deco


THEOREMS = (
    "MS", "AB-formula", "CorA", "seq-e", "Lemma-l3-at-m", "Thm-t", "Lemma-p2", "Thm-d",
    "Thm-t1", "Prop-P1", "Prop-P5-flat", "Lemma-l1", "S4-theorem", "Lemma-G1-dims",
    "Thm-G2", "Prop-P3", "Lemma-l2", "Prop-p4", "Cor-end",
)


# ----------------------------------------------------------------- helpers
def _R(ring) -> PresentedModule:
    return PresentedModule.free(ring)


def _hs(M) -> str:
    return str(hilbert_series(M).reduced())


def _rgr(M, b) -> float:
    r = reduced_grade(M, b)
    return INF if r is None else r


def _ints(v, default) -> List[int]:
    if v is None:
        return list(default)
    if isinstance(v, (list, tuple)):
        return [int(x) for x in v]
    return [int(v)]


def _need(cond: bool, reason: str):
    if not cond:
        raise Inapplicable(reason)


def _module(params, key, default=None) -> PresentedModule:
    v = params.get(key, default)
    if v is None:
        raise CheckError(f"parameter {key} (a module) is required")
    if not isinstance(v, PresentedModule):
        raise CheckError(f"parameter {key} must name a module")
    return v


def _ideal(params, key) -> list:
    v = params.get(key)
    if v is None:
        raise CheckError(f"parameter {key} (an ideal) is required")
    if isinstance(v, PresentedModule):
        raise CheckError(f"parameter {key} must name an ideal")
    return list(v)


def shift_between(h1, h2) -> Optional[int]:
    """The a with h2 = h1 * t^a if it exists (0 when both are zero), else None."""
    r1, r2 = h1.reduced(), h2.reduced()
    if not r1.numerator and not r2.numerator:
        return 0
    if not r1.numerator or not r2.numerator or r1.power != r2.power:
        return None
    a = r2.numerator[0][0] - r1.numerator[0][0]
    return a if r1.shift(-a) == r2 else None


# ---------------------------------------------------------------- checks
@register("MS", description="horizontally linked iff stable and Ext^1(Tr M, R) = 0")
def check_ms(M, params, b):
    _need(not is_zero(M), "zero module")
    stable = is_stable(M)
    hl = is_horizontally_linked(M)
    ev = evaluation_map(M)
    torsionless = ev.is_injective()
    e1 = ext(transpose(M), _R(M.ring), 1)
    w = {"stable": stable, "hlinked": hl, "torsionless": torsionless,
         "ext1_tr_hilbert": _hs(e1), "evaluation_kernel_hilbert": _hs(ev.kernel)}
    ok = hl == (stable and torsionless) and hilbert_series(e1) == hilbert_series(ev.kernel)
    if hl:
        c = congruent(lambda_(lambda_(M)), M)
        w["lambda2"] = c.to_json()
        ok = ok and c.consistent
    return ok, w


@register("AB-formula", description="depth M + gdim M = depth R when gdim is finite")
def check_ab(M, params, b):
    _need(not is_zero(M), "zero module")
    g = gdim(M, b)
    _need(g.finite, f"gdim not certified finite within bound {b}")
    dM, dR = int(depth(M)), ring_depth(M.ring)
    sup = ext_sup(M, b)
    w = {"depth": dM, "depth_ring": dR, "gdim": g.value, "method": g.method, "ext_sup": sup,
         "bound": b}
    ok = dM + g.value == dR
    if g.value < b:
        ok = ok and sup == g.value
    return ok, w


@register("CorA", inputs=("k",), description="tilde-S_k iff rgr(lambda M) >= k and M h.l.")
def check_cor_a(M, params, b):
    _need(not is_zero(M) and is_stable(M), "module is not stable")
    g = gdim(M, b)
    _need(g.finite, "gdim not certified finite")
    hl = is_horizontally_linked(M)
    r = _rgr(lambda_(M), b)
    rows, ok = [], True
    for k in _ints(params.get("k"), range(1, 4)):
        lhs = satisfies_tilde_S(M, k)
        rhs = r >= k and hl
        grades = tilde_S_via_grades(M, k, b)
        rows.append({"k": k, "tilde_S": lhs, "rgr_lambda_ge_k_and_hl": rhs, "grade_route": grades})
        ok = ok and lhs == rhs == grades
    w = {"hlinked": hl, "gdim": g.value, "rgr_lambda": r, "rows": rows}
    if hl:
        # gdim M != 0 iff rgr(lambda M) is finite
        w["gdim_nonzero_iff_rgr_lambda_finite"] = (g.value != 0) == (r != INF)
        ok = ok and w["gdim_nonzero_iff_rgr_lambda_finite"]
    return ok, w


@register("seq-e", inputs=("k",), description="HS(T_k M) = HS(Ext^k(M,R)) + HS(lambda^2 T_k M)")
def check_seq_e(M, params, b):
    _need(not is_zero(M), "zero module")
    rows, ok = [], True
    for k in _ints(params.get("k"), range(1, min(b, 3) + 1)):
        T = t_functor(M, k)
        E = ext(M, _R(M.ring), k)
        L2 = lambda_(lambda_(T))
        good = hilbert_series(T) == hilbert_series(E) + hilbert_series(L2)
        rows.append({"k": k, "T_k": _hs(T), "ext_k": _hs(E), "lambda2_T_k": _hs(L2), "holds": good})
        ok = ok and good
    return ok, {"rows": rows}


def _hl_positive_gdim(M, b):
    _need(not is_zero(M) and is_horizontally_linked(M), "module is not horizontally linked")
    g = gdim(M, b)
    _need(g.finite and g.value > 0, "gdim not certified finite and positive")
    return g


@register("Lemma-l3-at-m", description="depth Ext^n(M,R) = 0 iff depth(lambda M) = n = rgr M")
def check_l3(M, params, b):
    g = _hl_positive_gdim(M, b)
    n = reduced_grade(M, b)
    _need(n is not None, "reduced grade not found within bound")
    E = ext(M, _R(M.ring), n)
    lhs = depth(E) == 0
    dl = depth(lambda_(M))
    rhs = dl == n
    return lhs == rhs, {"rgr": n, "gdim": g.value, "depth_ext": depth(E), "depth_lambda": dl,
                        "m_in_ass": lhs, "depth_lambda_eq_rgr": rhs}


@register("Thm-t", description="depth M = rgr(lambda M) iff m in Ass Ext^{rgr}(lambda M, R)")
def check_thm_t(M, params, b):
    g = _hl_positive_gdim(M, b)
    L = lambda_(M)
    r = _rgr(L, b)
    dM = depth(M)
    lhs = dM == r
    if r == INF:
        rhs, dE = False, None
    else:
        dE = depth(ext(L, _R(M.ring), int(r)))
        rhs = dE == 0
    return lhs == rhs, {"depth": dM, "rgr_lambda": r, "depth_ext_lambda": dE,
                        "part_i": lhs, "part_ii": rhs, "gdim": g.value}


@register("Lemma-p2", inputs=("N", "n", "span"),
          description="Tor/Ext of T_n M against N versus Ext/Tor of M and lambda M")
def check_p2(M, params, b):
    _need(not is_zero(M), "zero module")
    N = _module(params, "N", _R(M.ring))
    r = _rgr(M, b)
    n = int(params.get("n", r if r != INF else 2))
    _need(n >= 1, "n must be positive")
    _need(r >= n, f"reduced grade {r} is below n = {n}")
    span = int(params.get("span", 2))
    T = t_functor(M, n)
    L = lambda_(M)
    rows, ok = [], True
    for i in list(range(1, n)) + list(range(n + 1, n + span + 1)):
        if i < n:
            pairs = [("tor", tor(T, N, i), ext(M, N, n - i)), ("ext", ext(T, N, i), tor(M, N, n - i))]
        else:
            pairs = [("tor", tor(T, N, i), tor(L, N, i - n)), ("ext", ext(T, N, i), ext(L, N, i - n))]
        for kind, A, B in pairs:
            good = hilbert_series(A) == hilbert_series(B)
            rows.append({"i": i, "kind": kind, "lhs": _hs(A), "rhs": _hs(B), "holds": good})
            ok = ok and good
    return ok, {"n": n, "rgr": r, "rows": rows}


def _reduced_g_perfect(M, b):
    _need(not is_zero(M), "zero module")
    _need(is_reduced_G_perfect(M, b), "module is not reduced G-perfect within bound")
    return gdim(M, b).value


@register("Thm-d", description="depth M + depth lambda M = d + depth Ext^n(M,R)")
def check_thm_d(M, params, b):
    _need(is_cohen_macaulay_ring(M.ring), "ring is not Cohen-Macaulay")
    n = _reduced_g_perfect(M, b)
    d = ring_dim(M.ring)
    dM, dL = depth(M), depth(lambda_(M))
    dE = depth(ext(M, _R(M.ring), n))
    return dM + dL == d + dE, {"n": n, "depth": dM, "depth_lambda": dL, "d": d, "depth_ext": dE,
                               "lhs": dM + dL, "rhs": d + dE}


@register("Thm-t1", description="depth identity under the depth-gap hypothesis")
def check_thm_t1(M, params, b):
    _need(not is_zero(M), "zero module")
    _need(is_cohen_macaulay_ring(M.ring), "ring is not Cohen-Macaulay")
    g = gdim(M, b)
    _need(g.finite, "gdim not certified finite")
    n = g.value
    R = _R(M.ring)
    L = lambda_(M)
    En = ext(M, R, n)
    _need(not is_zero(L) and not is_zero(En), "lambda M or Ext^n(M,R) vanishes")
    dEn = depth(En)
    gaps = []
    for i in range(1, n):
        dEi = depth(ext(M, R, n - i))
        gaps.append({"i": i, "depth_ext": dEi})
        _need(dEn < dEi - i - 1, f"depth gap hypothesis fails at i = {i}")
    d = ring_dim(M.ring)
    dM, dL = depth(M), depth(L)
    return dM + dL == d + dEn, {"n": n, "depth": dM, "depth_lambda": dL, "d": d,
                                "depth_ext": dEn, "gaps": gaps}


@register("Prop-P1", description="Ext^i(lambda M,R) = Ext^{n+i}(Ext^n(M,R),R); h.l. via grades")
def check_p1(M, params, b):
    n = _reduced_g_perfect(M, b)
    R = _R(M.ring)
    L = lambda_(M)
    E = ext(M, R, n)
    rows, ok = [], True
    for i in range(1, b + 1):
        A, B = ext(L, R, i), ext(E, R, n + i)
        good = hilbert_series(A) == hilbert_series(B)
        rows.append({"i": i, "lhs": _hs(A), "rhs": _hs(B), "holds": good})
        ok = ok and good
    w = {"n": n, "rows": rows}
    if is_stable(M):
        hl = is_horizontally_linked(M)
        rl = _rgr(L, b)
        gE = grade(E)
        w.update({"hlinked": hl, "rgr": n, "rgr_lambda": rl, "grade_ext": gE,
                  "part_ii": hl == (n + rl == gE)})
        ok = ok and w["part_ii"]
    return ok, w


@register("Prop-P5-flat", inputs=("N", "span"),
          description="Tor/Ext of Ext^n(M,R) against N of finite projective dimension")
def check_p5(M, params, b):
    n = _reduced_g_perfect(M, b)
    N = _module(params, "N", _R(M.ring))
    pdN = projective_dimension(N, b + M.ring.nvars)
    _need(pdN is not None, "N does not have finite projective dimension within bound")
    span = int(params.get("span", 2))
    E = ext(M, _R(M.ring), n)
    L = lambda_(M)
    rows, ok = [], True
    for i in list(range(0, n)) + list(range(n + 1, n + span + 1)):
        if i < n:
            pairs = [("tor", tor(E, N, i), ext(M, N, n - i)), ("ext", ext(E, N, i), tor(M, N, n - i))]
        else:
            pairs = [("tor", tor(E, N, i), tor(L, N, i - n)), ("ext", ext(E, N, i), ext(L, N, i - n))]
        for kind, A, B in pairs:
            good = hilbert_series(A) == hilbert_series(B)
            rows.append({"i": i, "kind": kind, "lhs": _hs(A), "rhs": _hs(B), "holds": good})
            ok = ok and good
    return ok, {"n": n, "pd_N": pdN, "rows": rows}


@register("Lemma-l1", description="sup{i != d : H^i_m(M) != 0} = d - rgr(M)")
def check_l1(M, params, b):
    _need(not is_zero(M), "zero module")
    ring = M.ring
    _need(is_cohen_macaulay_ring(ring), "ring is not Cohen-Macaulay")
    d = ring_dim(ring)
    _need(dim(M) == d, "dim M is not dim R")
    _need(depth(M) < d, "module is maximal Cohen-Macaulay")
    L = lambda_(M)
    _need(not is_zero(L) and gdim(L, b).finite, "gdim(lambda M) not certified finite")
    support = [i for i in range(d) if not local_cohomology(M, i).is_zero()]
    top = max(support) if support else -INF
    r = _rgr(M, b)
    return top == d - r, {"d": d, "lc_support_below_d": support, "sup": top, "rgr": r,
                          "d_minus_rgr": d - r}


@register("S4-theorem", inputs=("k",), description="Serre condition via local cohomology of lambda M")
def check_s4(M, params, b):
    rows = [serre_via_local_cohomology(M, k, b) for k in _ints(params.get("k"), (1, 2))]
    _need(any(r.applicable for r in rows), rows[0].reason if rows else "no k given")
    ok = all(r.agree for r in rows)
    return ok, {"rows": [r.to_json() for r in rows]}


# ------------------------------------------------- relative (K) statements
def _K(params, ring):
    K = params.get("K")
    if K is None:
        return _R(ring)
    if not isinstance(K, PresentedModule):
        raise CheckError("parameter K must name a module")
    return K


def _semidualizing(K, b):
    sd = is_semidualizing(K, b)
    _need(sd.ok, "K is not semidualizing within bound")
    return sd


@register("Lemma-G1-dims", inputs=("I", "K", "n"),
          description="Ext over R/I into Ext^n(R/I,K) versus Ext^{n+i}(-,K)")
def check_g1(M, params, b):
    _need(not is_zero(M), "zero module")
    ring = M.ring
    I = _ideal(params, "I")
    K = _K(params, ring)
    _need(annihilates(I, M), "I does not annihilate the module")
    Q = PresentedModule.cyclic(ring, I)
    n = int(params.get("n", grade(Q)))
    R = _R(ring)
    nonzero = [j for j in range(0, n + b + 1) if j != n and not is_zero(ext(Q, K, j))]
    _need(not nonzero, f"Ext^j(R/I, K) nonzero for j = {nonzero}")
    Rq = quotient_ring(ring, I)
    C = ext(Q, K, n)
    Cq = PresentedModule(Rq, minimalize(C).degrees, minimalize(C).relations, check=False)
    Mq = M.rebase(Rq)
    rows, ok = [], True
    for i in range(0, b + 1):
        A, B = ext(Mq, Cq, i), ext(M, K, n + i)
        good = hilbert_series(A) == hilbert_series(B)
        rows.append({"i": i, "lhs": _hs(A), "rhs": _hs(B), "holds": good})
        ok = ok and good
    return ok, {"n": n, "rows": rows}


@register("Thm-G2", inputs=("I", "K"),
          description="C = Ext^{gr I}(R/I,K) semidualizing and gkd_R M = gr I + gC_{R/I} M")
def check_g2(M, params, b):
    _need(not is_zero(M), "zero module")
    ring = M.ring
    I = _ideal(params, "I")
    K = _K(params, ring)
    _semidualizing(K, b)
    Q = PresentedModule.cyclic(ring, I)
    _need(is_GK_perfect(Q, K, b), "R/I is not G_K-perfect within bound")
    _need(annihilates(I, M), "I does not annihilate the module")
    n = int(grade(Q))
    Rq = quotient_ring(ring, I)
    C = minimalize(ext(Q, K, n))
    Cq = PresentedModule(Rq, C.degrees, C.relations, check=False)
    sd = is_semidualizing(Cq, b)
    gR = gk_dim(M, K, b)
    gQ = gk_dim(M.rebase(Rq), Cq, b)
    if gR.finite and gQ.finite:
        part_ii = gR.value == n + gQ.value
    else:
        part_ii = gR.finite == gQ.finite
    return sd.ok and part_ii, {"grade_I": n, "C_semidualizing": sd.to_json(),
                               "gk_dim_R": gR.to_json(), "gC_dim_quotient": gQ.to_json(),
                               "part_ii": part_ii}


def _gk_gorenstein(I, K, ring, b):
    _need(is_GK_gorenstein_ideal(ring, I, K, b), "ideal is not G_K-Gorenstein within bound")
    return int(ideal_grade(ring, I))


@register("Prop-P3", inputs=("I", "K"),
          description="lambda over R/I of a G_K-perfect module is G_K-perfect of the same grade")
def check_p3(M, params, b):
    ring = M.ring
    I = _ideal(params, "I")
    K = _K(params, ring)
    _semidualizing(K, b)
    n = _gk_gorenstein(I, K, ring, b)
    _need(annihilates(I, M), "I does not annihilate the module")
    _need(is_GK_perfect(M, K, b) and grade(M) == n, "module is not G_K-perfect of grade n")
    L = restrict_scalars(link_via_ideal(M, I), ring)
    w = {"n": n}
    ok = True
    if not is_zero(L):
        gl = gk_dim(L, K, b)
        w.update({"lambda_grade": grade(L), "lambda_gk_dim": gl.to_json()})
        ok = gl.finite and gl.value == n and grade(L) == n
    Mq = M.rebase(quotient_ring(ring, I))
    if is_stable(Mq):
        w["hlinked_over_quotient"] = is_horizontally_linked(Mq)
        ok = ok and w["hlinked_over_quotient"]
    return ok, w


@register("Lemma-l2", inputs=("I", "K"), description="grade M = grade I for M h.l. over R/I")
def check_l2(M, params, b):
    ring = M.ring
    I = _ideal(params, "I")
    K = _K(params, ring)
    _semidualizing(K, b)
    n = _gk_gorenstein(I, K, ring, b)
    _need(annihilates(I, M), "I does not annihilate the module")
    _need(is_horizontally_linked(M.rebase(quotient_ring(ring, I))),
          "module is not horizontally linked over R/I")
    gM = grade(M)
    return gM == n, {"grade": gM, "grade_I": n}


def _double_link(M, params, b):
    ring = M.ring
    c1, c2 = _ideal(params, "c1"), _ideal(params, "c2")
    K = _K(params, ring)
    _semidualizing(K, b)
    n1 = _gk_gorenstein(c1, K, ring, b)
    n2 = _gk_gorenstein(c2, K, ring, b)
    _need(n1 == n2, "the two ideals have different grades")
    _need(annihilates(c1, M) and annihilates(c2, M), "an ideal does not annihilate the module")
    for c in (c1, c2):
        _need(is_horizontally_linked(M.rebase(quotient_ring(ring, c))),
              "module is not horizontally linked over a quotient")
    M1 = restrict_scalars(link_via_ideal(M, c1), ring)
    M2 = restrict_scalars(link_via_ideal(M, c2), ring)
    return K, n1, M1, M2


@register("Prop-p4", inputs=("c1", "c2", "K"),
          description="Ext^i(M1,K) and Ext^i(M2,K) agree for i > n on a double link")
def check_p4(M, params, b):
    K, n, M1, M2 = _double_link(M, params, b)
    rows, shifts, ok = [], set(), True
    for i in range(n + 1, n + b + 1):
        h1, h2 = hilbert_series(ext(M1, K, i)), hilbert_series(ext(M2, K, i))
        s = shift_between(h1, h2)
        rows.append({"i": i, "M1": str(h1.reduced()), "M2": str(h2.reduced()), "shift": s})
        if s is None:
            ok = False
        elif not (h1.is_zero() and h2.is_zero()):
            shifts.add(s)
    ok = ok and len(shifts) <= 1
    gM = grade(M)
    w = {"n": n, "rows": rows, "shift": min(shifts) if shifts else 0,
         "grade_M": gM, "grade_M_eq_n": gM == n}
    return ok and gM == n, w


@register("Cor-end", inputs=("c1", "c2", "K", "k"),
          description="gkd(M1) = gkd(M2) on a double link, and tilde-S_k transfers")
def check_cor_end(M, params, b):
    K, n, M1, M2 = _double_link(M, params, b)
    g1, g2 = gk_dim(M1, K, b), gk_dim(M2, K, b)
    ok = g1.value == g2.value
    w = {"n": n, "gk_dim_M1": g1.to_json(), "gk_dim_M2": g2.to_json()}
    Km = minimalize(K)
    if g1.finite and g2.finite and Km.rank == 1 and not Km.relations:
        rows = []
        for k in _ints(params.get("k"), (1, 2)):
            s1, s2 = satisfies_tilde_S(M1, k), satisfies_tilde_S(M2, k)
            rows.append({"k": k, "M1": s1, "M2": s2})
            ok = ok and s1 == s2
        w["tilde_S"] = rows
    return ok, w


# ----------------------------------------------------------------- driver
def _normalize(v):
    v = jsonable(v)
    if isinstance(v, str):
        low = v.lower()
        if low in ("true", "false"):
            return low == "true"
        if low in ("inf", "infinity"):
            return "inf"
        if low in ("none", "null"):
            return None
        try:
            return int(v)
        except ValueError:
            return v
    return v


def verify(theorem: str, fixture: str, M: PresentedModule, params: Optional[dict] = None,
           bound: Optional[int] = None) -> VerificationRecord:
    """Run one check; claims among ``params`` are compared to the witness."""
    if theorem not in REGISTRY:
        raise CheckError(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREMS)}")
    check = REGISTRY[theorem]
    params = dict(params or {})
    b = int(params.get("bound", bound if bound is not None else DEFAULT_BOUND))
    claims = {k: v for k, v in params.items() if k not in check.inputs}
    try:
        ok, witness = check.fn(M, params, b)
        status = PASS if ok else FAIL
        reason = "" if ok else "identity violated"
    except Inapplicable as exc:
        status, witness, reason = NA, {}, str(exc)
    witness = jsonable(witness)
    mismatched = []
    for key, claimed in sorted(claims.items()):
        if key == "status":
            actual = status
        else:
            actual = witness.get(key, "<absent>")
        if _normalize(claimed) != _normalize(actual):
            mismatched.append({"field": key, "claimed": _normalize(claimed), "computed": actual})
    if mismatched:
        witness = dict(witness)
        witness["claims"] = mismatched
        status, reason = FAIL, "claim contradicted by computation"
    return VerificationRecord(theorem, fixture, status, witness, reason)
