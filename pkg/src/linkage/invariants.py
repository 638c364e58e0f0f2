"""Numerical and structural invariants: grade, depth, dimension, Gorenstein
dimensions, Serre-type conditions, local cohomology and the module report.

Conventions: the zero module has depth and grade ``math.inf`` and dimension
-1.  Quantities that are only certified through a finite range of Ext
indices come back as :class:`BoundedVerdict`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from . import config
from .homalg import (
    HilbertSeries,
    PresentedModule,
    ambient_resolution,
    annihilator,
    betti,
    ext,
    hilbert_function,
    hilbert_series,
    hom,
    is_zero,
    minimalize,
    resolve,
)
from .operators import (
    evaluation_map,
    is_horizontally_linked,
    is_stable,
    lambda_,
    syzygy,
    transpose,
)
from .ring import GradedRing, Polynomial

INF = math.inf


def jsonable(x):
    """Replace infinities by the string "inf" (recursively)."""
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, dict):
        return {k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


@dataclass(frozen=True)
class BoundedVerdict:
    """A value certified by a computation that inspected indices up to ``bound``.

    ``value`` is None when no finite value was found within the bound.
    """

    value: Optional[int]
    bound: int
    method: str

    @property
    def finite(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        return {"value": self.value, "bound": self.bound, "method": self.method}


def _R(ring: GradedRing) -> PresentedModule:
    return PresentedModule.free(ring)


def _bound(bound: Optional[int]) -> int:
    return config.DEFAULT_BOUND if bound is None else int(bound)


# ------------------------------------------------------------ depth and dim
def depth(M: PresentedModule) -> float:
    """depth of M at the homogeneous maximal ideal (n - pd over the ambient ring)."""
    def compute():
        if is_zero(M):
            return INF
        res = ambient_resolution(M)
        return M.ring.nvars - res.projective_dimension()
    return M.cached("depth", compute)


def dim(M: PresentedModule) -> int:
    """Krull dimension, the pole order of the Hilbert series (-1 for the zero module)."""
    if is_zero(M):
        return -1
    return hilbert_series(M).pole_order()


def dim_via_ext(M: PresentedModule) -> int:
    """n - grade over the ambient ring; an Ext-based second route to dim."""
    if is_zero(M):
        return -1
    MS = M.over_ambient()
    S = _R(MS.ring)
    for i in range(M.ring.nvars + 1):
        if not is_zero(ext(MS, S, i)):
            return M.ring.nvars - i
    raise AssertionError("nonzero module with vanishing Ext over a polynomial ring")


def ring_depth(ring: GradedRing) -> int:
    return int(depth(_R(ring)))


def ring_dim(ring: GradedRing) -> int:
    return dim(_R(ring))


def is_cohen_macaulay(M: PresentedModule) -> bool:
    return is_zero(M) or depth(M) == dim(M)


def is_cohen_macaulay_ring(ring: GradedRing) -> bool:
    return ring.is_ambient or ring_depth(ring) == ring_dim(ring)


# ---------------------------------------------------------------- grades
def grade(M: PresentedModule, bound: Optional[int] = None) -> float:
    """min{i : Ext^i(M, R) != 0}; exact since it never exceeds depth R.

    ``bound`` is accepted for symmetry with the bounded invariants; the scan
    always runs through depth R.
    """
    def compute():
        if is_zero(M):
            return INF
        R = _R(M.ring)
        for i in range(ring_depth(M.ring) + 1):
            if not is_zero(ext(M, R, i)):
                return i
        raise AssertionError("grade exceeded depth R")
    return M.cached("grade", compute)


def ideal_grade(ring: GradedRing, gens: Sequence[Polynomial]) -> float:
    return grade(PresentedModule.cyclic(ring, gens))


def reduced_grade(M: PresentedModule, bound: Optional[int] = None) -> Optional[int]:
    """min{i >= 1 : Ext^i(M, R) != 0}, or None if all vanish for 1 <= i <= bound."""
    b = _bound(bound)
    R = _R(M.ring)
    for i in range(1, b + 1):
        if not is_zero(ext(M, R, i)):
            return i
    return None


def ext_sup(M: PresentedModule, bound: Optional[int] = None,
            K: Optional[PresentedModule] = None) -> int:
    """max{i <= bound : Ext^i(M, K) != 0} (0 if none); the sup-Ext route to G-dimensions."""
    b = _bound(bound)
    K = K if K is not None else _R(M.ring)
    top = 0
    for i in range(1, b + 1):
        if not is_zero(ext(M, K, i)):
            top = i
    return top


# -------------------------------------------------- Gorenstein properties
def canonical_module(ring: GradedRing) -> PresentedModule:
    """Ext_S^c(R, S(-n)) with c = n - dim R, presented over R (R must be CM)."""
    if not is_cohen_macaulay_ring(ring):
        raise ValueError("canonical module requested for a ring that is not Cohen-Macaulay")
    n = ring.nvars
    c = n - ring_dim(ring)
    RS = _R(ring).over_ambient()
    E = ext(RS, _R(RS.ring), c)
    E = minimalize(E)
    return minimalize(PresentedModule(ring, [d + n for d in E.degrees], E.relations, check=False))


def is_gorenstein_ring(ring: GradedRing) -> str:
    """'yes' or 'no': Cohen-Macaulay with cyclic canonical module."""
    if ring.is_ambient:
        return "yes"
    if not is_cohen_macaulay_ring(ring):
        return "no"
    return "yes" if canonical_module(ring).rank == 1 else "no"


def is_totally_reflexive(X: PresentedModule, bound: Optional[int] = None) -> bool:
    """Bidual map bijective and Ext^i(X, R) = Ext^i(X*, R) = 0 for 1 <= i <= bound."""
    return is_GK_zero(X, _R(X.ring), bound)


def gdim(M: PresentedModule, bound: Optional[int] = None) -> BoundedVerdict:
    """Gorenstein dimension.

    Finite projective dimension gives the value directly; over a Gorenstein
    ring depth R - depth M is exact; otherwise the syzygies Omega^j M are
    tested for total reflexivity, j = 0..bound.
    """
    b = _bound(bound)

    def compute():
        if is_zero(M):
            return BoundedVerdict(None, b, "zero-module")
        ring = M.ring
        if ring.is_ambient:
            return BoundedVerdict(ring.nvars - int(depth(M)), b, "pd")
        pd = resolve(M, b + 1).projective_dimension()
        if pd is not None:
            return BoundedVerdict(pd, b, "pd")
        if is_gorenstein_ring(ring) == "yes":
            return BoundedVerdict(ring_depth(ring) - int(depth(M)), b, "gorenstein")
        for j in range(b + 1):
            if is_totally_reflexive(syzygy(M, j), b):
                return BoundedVerdict(j, b, "syzygy-scan")
        return BoundedVerdict(None, b, "syzygy-scan")
    return M.cached(("gdim", b), compute)


def is_reduced_G_perfect(M: PresentedModule, bound: Optional[int] = None) -> bool:
    """gdim finite and positive, equal to the reduced grade."""
    g = gdim(M, bound)
    return g.finite and g.value > 0 and reduced_grade(M, bound) == g.value


# ------------------------------------------------ semidualizing modules
@dataclass
class SemidualizingCheck:
    homothety: bool
    nonvanishing: List[int]
    bound: int

    @property
    def ok(self) -> bool:
        return self.homothety and not self.nonvanishing

    def to_json(self) -> dict:
        return {"homothety": self.homothety, "nonvanishing": self.nonvanishing,
                "bound": self.bound, "semidualizing": self.ok}


def is_semidualizing(K: PresentedModule, bound: Optional[int] = None) -> SemidualizingCheck:
    """Hom(K, K) free of rank one in degree 0 and Ext^i(K, K) = 0 for 1 <= i <= bound."""
    b = _bound(bound)
    H = minimalize(hom(K, K))
    homothety = H.rank == 1 and not H.relations and H.degrees == (0,)
    bad = [i for i in range(1, b + 1) if not is_zero(ext(K, K, i))]
    return SemidualizingCheck(homothety, bad, b)


def _is_free_cyclic(K: PresentedModule) -> bool:
    Km = minimalize(K)
    return Km.rank == 1 and not Km.relations


def is_GK_zero(X: PresentedModule, K: PresentedModule, bound: Optional[int] = None) -> bool:
    """X reflexive for Hom(-, K) with Ext^i(X, K) = Ext^i(Hom(X, K), K) = 0, 1 <= i <= bound."""
    b = _bound(bound)
    if is_zero(X):
        return True
    if not evaluation_map(X, K).is_bijective():
        return False
    Xd = hom(X, K)
    for i in range(1, b + 1):
        if not is_zero(ext(X, K, i)) or not is_zero(ext(Xd, K, i)):
            return False
    return True


def gk_dim(M: PresentedModule, K: PresentedModule, bound: Optional[int] = None) -> BoundedVerdict:
    """G_K-dimension: equals gdim when K is free of rank one, pd when that is
    finite, otherwise the first syzygy that is G_K-zero."""
    b = _bound(bound)
    if _is_free_cyclic(K):
        return gdim(M, b)

    def compute():
        if is_zero(M):
            return BoundedVerdict(None, b, "zero-module")
        pd = resolve(M, b + 1).projective_dimension()
        if pd is not None:
            return BoundedVerdict(pd, b, "pd")
        for j in range(b + 1):
            if is_GK_zero(syzygy(M, j), K, b):
                return BoundedVerdict(j, b, "syzygy-scan")
        return BoundedVerdict(None, b, "syzygy-scan")
    return M.cached(("gkdim", K.fingerprint(), b), compute)


def is_GK_perfect(M: PresentedModule, K: PresentedModule, bound: Optional[int] = None) -> bool:
    g = gk_dim(M, K, bound)
    return g.finite and g.value == grade(M)


def is_GK_gorenstein_ideal(ring: GradedRing, gens: Sequence[Polynomial], K: PresentedModule,
                           bound: Optional[int] = None) -> bool:
    """R/I is G_K-perfect of grade n and Ext^n(R/I, K) is cyclic."""
    Q = PresentedModule.cyclic(ring, gens)
    if not is_GK_perfect(Q, K, bound):
        return False
    n = int(grade(Q))
    return minimalize(ext(Q, K, n)).rank == 1


# ----------------------------------------------------- local cohomology
@dataclass
class LocalCohomology:
    """H^i_m(M), represented through its graded Matlis dual.

    dim H^i_m(M)_d = dim Ext_S^{n-i}(M, S)_{-d-n}.
    """

    index: int
    dual: PresentedModule
    nvars: int

    def is_zero(self) -> bool:
        return is_zero(self.dual)

    def dim(self, d: int) -> int:
        return hilbert_function(self.dual, -d - self.nvars)

    def dims(self, lo: int, hi: int) -> Dict[int, int]:
        return {d: self.dim(d) for d in range(lo, hi + 1)}

    def to_json(self) -> dict:
        return {"index": self.index, "zero": self.is_zero(),
                "dual_hilbert": hilbert_series(self.dual).to_json(), "dual_shift": self.nvars}


def local_cohomology(M: PresentedModule, i: int) -> LocalCohomology:
    n = M.ring.nvars
    MS = M.over_ambient()
    if not 0 <= i <= n:
        E = PresentedModule(MS.ring, (), (), minimal=True)
    else:
        E = ext(MS, _R(MS.ring), n - i)
    return LocalCohomology(i, E, n)


def local_cohomology_support(M: PresentedModule) -> List[int]:
    """All i with H^i_m(M) != 0."""
    return [i for i in range(M.ring.nvars + 1) if not local_cohomology(M, i).is_zero()]


# ------------------------------------------------ Serre-type conditions
def satisfies_tilde_S(M: PresentedModule, k: int) -> bool:
    """Ext^i(Tr M, R) = 0 for 1 <= i <= k (the Serre-type condition when gdim M < inf)."""
    T = transpose(M)
    R = _R(M.ring)
    return all(is_zero(ext(T, R, i)) for i in range(1, k + 1))


def tilde_S_via_grades(M: PresentedModule, k: int, bound: Optional[int] = None) -> bool:
    """grade Ext^i(M, R) >= i + k for 1 <= i <= bound (second route, gdim M < inf)."""
    b = _bound(bound)
    R = _R(M.ring)
    return all(grade(ext(M, R, i)) >= i + k for i in range(1, b + 1))


@dataclass
class SerreComparison:
    k: int
    window: List[int]
    applicable: bool
    reason: str = ""
    algebraic: Optional[bool] = None
    cohomological: Optional[bool] = None
    nonvanishing: List[int] = field(default_factory=list)

    @property
    def agree(self) -> Optional[bool]:
        if not self.applicable:
            return None
        return self.algebraic == self.cohomological

    def to_json(self) -> dict:
        return {"k": self.k, "window": self.window, "applicable": self.applicable,
                "reason": self.reason, "algebraic": self.algebraic,
                "cohomological": self.cohomological, "nonvanishing": self.nonvanishing,
                "agree": self.agree}


def serre_via_local_cohomology(M: PresentedModule, k: int,
                               bound: Optional[int] = None) -> SerreComparison:
    """Compare the Ext(Tr M, R) condition with vanishing of H^i_m(lambda M)
    for d-k+1 <= i <= d-1 (M horizontally linked, finite gdim, R CM)."""
    ring = M.ring
    d = ring_dim(ring)
    window = list(range(max(d - k + 1, 0), d))
    if not is_cohen_macaulay_ring(ring):
        return SerreComparison(k, window, False, "ring is not Cohen-Macaulay")
    if not is_horizontally_linked(M):
        return SerreComparison(k, window, False, "module is not horizontally linked")
    if not gdim(M, bound).finite:
        return SerreComparison(k, window, False, "gdim not certified finite")
    L = lambda_(M)
    bad = [i for i in window if not local_cohomology(L, i).is_zero()]
    return SerreComparison(k, window, True, "", satisfies_tilde_S(M, k), not bad, bad)


# ----------------------------------------------------------------- report
def report(M: PresentedModule, bound: Optional[int] = None) -> dict:
    """All invariants of M as a JSON-ready dict."""
    b = _bound(bound)
    Mm = minimalize(M)
    ring = M.ring
    out = {
        "rank": Mm.rank,
        "degrees": list(Mm.degrees),
        "presentation": Mm.matrix_str(),
        "betti": betti(Mm, b).truncate(b).to_json(),
        "hilbert": hilbert_series(Mm).to_json(),
        "annihilator": [str(f) for f in annihilator(Mm)],
        "grade": grade(Mm),
        "reduced_grade": reduced_grade(Mm, b),
        "depth": depth(Mm),
        "dim": dim(Mm),
        "gdim": gdim(Mm, b).to_json(),
        "stable": is_stable(Mm),
        "horizontally_linked": is_horizontally_linked(Mm),
        "reduced_G_perfect": is_reduced_G_perfect(Mm, b),
        "serre": serre_level(Mm, b),
        "bound": b,
        "ring": {"name": str(ring), "depth": ring_depth(ring), "dim": ring_dim(ring),
                 "cohen_macaulay": is_cohen_macaulay_ring(ring),
                 "gorenstein": is_gorenstein_ring(ring)},
    }
    out["identities"] = report_identities(out)
    return jsonable(out)


def serre_level(M: PresentedModule, bound: Optional[int] = None) -> int:
    """Largest k <= bound with Ext^i(Tr M, R) = 0 for 1 <= i <= k (k = bound means ">= bound")."""
    b = _bound(bound)
    T = transpose(M)
    R = _R(M.ring)
    for i in range(1, b + 1):
        if not is_zero(ext(T, R, i)):
            return i - 1
    return b


def report_identities(rep: dict) -> List[dict]:
    """Check the internal relations between the fields of a report."""
    out = []
    g = rep["gdim"]["value"] if isinstance(rep["gdim"], dict) else None
    rdepth = rep["ring"]["depth"]
    if g is not None and rep["rank"]:
        lhs, rhs = rep["depth"] + g, rdepth
        out.append({"name": "depth+gdim=depth(R)", "lhs": lhs, "rhs": rhs,
                    "status": "pass" if lhs == rhs else "fail"})
    else:
        out.append({"name": "depth+gdim=depth(R)", "status": "inapplicable",
                    "reason": "gdim not certified finite"})
    gr, rg = rep["grade"], rep["reduced_grade"]
    if rep["rank"] and 0 < gr < INF:
        ok = rg is not None and gr <= rg
        out.append({"name": "grade<=reduced_grade", "lhs": gr, "rhs": rg,
                    "status": "pass" if ok else "fail"})
    else:
        out.append({"name": "grade<=reduced_grade", "status": "inapplicable",
                    "reason": "grade is 0 or the module is zero"})
    if g is not None and g > 0:
        ok = rg is not None and rg <= g
        out.append({"name": "reduced_grade<=gdim", "lhs": rg, "rhs": g,
                    "status": "pass" if ok else "fail"})
    else:
        out.append({"name": "reduced_grade<=gdim", "status": "inapplicable",
                    "reason": "gdim not finite and positive"})
    return out
