"""Transpose, syzygy, the linkage operator and their relatives.

All operators work on minimal presentations, so results are determined up
to isomorphism (not only up to free summands).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .groebner import buchberger, ideal_is_unit, reduce_mod_ideal
from .homalg import (
    PresentedModule,
    annihilator,
    betti,
    ext,
    functionals,
    hilbert_series,
    hom,
    is_zero,
    kernel_module,
    minimalize,
    resolve,
    subquotient,
    trace_ideal,
)
from .ring import GradedRing, Polynomial


class LinkageError(ValueError):
    """An operator precondition failed (e.g. the ideal does not annihilate M)."""


def zero_module(ring: GradedRing) -> PresentedModule:
    return PresentedModule(ring, (), (), minimal=True)


def transpose(M: PresentedModule) -> PresentedModule:
    """Tr M = coker(A^T) for the minimal presentation matrix A of M."""
    def compute():
        Mm = minimalize(M)
        if not Mm.relations:
            return zero_module(M.ring)
        rdeg = Mm.relation_degrees()
        cols = []
        for i in range(Mm.rank):
            col = {}
            for j, rel in enumerate(Mm.relations):
                for (k, m), c in rel.items():
                    if k == i:
                        col[(j, m)] = c
            cols.append(col)
        T = PresentedModule(M.ring, [-e for e in rdeg], cols, check=False)
        return minimalize(T)
    return M.cached("transpose", compute)


def syzygy(M: PresentedModule, k: int = 1) -> PresentedModule:
    """Omega^k M = coker(d_{k+1}) on F_k of the minimal resolution (k = 0 gives M)."""
    if k < 0:
        raise ValueError("syzygy index must be >= 0")
    if k == 0:
        return minimalize(M)

    def compute():
        res = resolve(M, k + 1)
        degs = res.degrees(k)
        if not degs:
            return zero_module(M.ring)
        rels = res.differential(k + 1)
        return PresentedModule(M.ring, degs, rels, minimal=True,
                               images=res.differential(k), image_degrees=res.degrees(k - 1),
                               check=False)
    return M.cached(("syzygy", k), compute)


def lambda_(M: PresentedModule) -> PresentedModule:
    """The linkage operator: Omega(Tr M)."""
    return M.cached("lambda", lambda: syzygy(transpose(M), 1))


def t_functor(M: PresentedModule, k: int) -> PresentedModule:
    """T_k M = Tr Omega^{k-1} M."""
    if k < 1:
        raise ValueError("T_k needs k >= 1")
    return transpose(syzygy(M, k - 1))


# --------------------------------------------------------------- stability
def is_stable(M: PresentedModule) -> bool:
    """No nonzero free summand, i.e. the trace ideal is proper."""
    return M.cached("stable", lambda: not ideal_is_unit(trace_ideal(M), M.ring))


def stable_part(M: PresentedModule) -> Tuple[PresentedModule, List[int]]:
    """Split off free summands one at a time; returns (stable part, degrees split off)."""
    cur = minimalize(M)
    split = []
    zero = (0,) * M.ring.nvars
    while True:
        found = None
        for phi in functionals(cur):
            for i, f in enumerate(phi):
                if not f.is_zero() and f.is_constant():
                    found = i
                    break
            if found is not None:
                break
        if found is None:
            return cur, split
        split.append(cur.degrees[found])
        rels = list(cur.relations) + [{(found, zero): 1}]
        cur = minimalize(PresentedModule(cur.ring, cur.degrees, rels, check=False))


# ----------------------------------------------------------- evaluation map
@dataclass
class EvaluationMap:
    """e: M -> M^{dd} for d = Hom(-, K), with kernel and cokernel computed explicitly."""

    kernel: PresentedModule
    cokernel: PresentedModule

    def is_injective(self) -> bool:
        return self.kernel.rank == 0

    def is_bijective(self) -> bool:
        return self.kernel.rank == 0 and self.cokernel.rank == 0


def evaluation_map(M: PresentedModule, K: Optional[PresentedModule] = None) -> EvaluationMap:
    """Kernel and cokernel of M -> Hom(Hom(M, K), K), built from explicit functionals.

    The generators phi_g of M^d are recorded as their values on the
    generators of M; e(e_i) is the tuple (phi_g(e_i))_g inside the cover of
    Hom(M^d, K).
    """
    ring = M.ring
    if K is None:
        K = PresentedModule.free(ring)
    K = minimalize(K)
    Mm = minimalize(M)
    key = ("evaluation", K.fingerprint())

    def compute():
        Md = hom(Mm, K)               # generators phi_g, images in Hom(F_M, K) cover
        L = K.rank
        r = Mm.rank
        s = Md.rank
        Mdd = hom(Md, K)              # cycles inside Hom(F_{M^d}, K) cover
        cover = tuple(g - dg for dg in Md.degrees for g in K.degrees)
        # e(e_i): block g of the cover holds phi_g(e_i) in F_K
        e_images = []
        for i in range(r):
            v = {}
            for g, phi in enumerate(Md.images or ()):
                for (k, m), c in phi.items():
                    if k // L == i:
                        v[(g * L + k % L, m)] = c
            e_images.append(v)
        Q = []
        for g in range(s):
            for q in K.relations:
                Q.append({(g * L + l, m): c for (l, m), c in q.items()})
        # cokernel: cycles of Hom(M^d, K) modulo the image of e
        coker = subquotient(ring, cover, list(Mdd.images or ()), Q + [v for v in e_images if v])
        # kernel: {a in F_M : sum a_i e(e_i) in span(Q)} modulo relations of M
        if r == 0:
            ker = PresentedModule(ring, (), (), minimal=True)
        elif not any(e_images):
            ker = Mm
        else:
            nz = [i for i in range(r) if e_images[i]]
            gens = kernel_module(ring, [e_images[i] for i in nz], cover,
                                 [Mm.degrees[i] for i in nz], Q)
            gens = [{(nz[k], m): c for (k, m), c in v.items()} for v in gens]
            gens += [{(i, (0,) * ring.nvars): 1} for i in range(r) if not e_images[i]]
            ker = subquotient(ring, Mm.degrees, gens, list(Mm.relations))
        return EvaluationMap(ker, coker)
    return M.cached(key, compute)


# ------------------------------------------------------ congruence proxy
@dataclass
class Congruence:
    """Invariant-congruence of two modules; never a claim of isomorphism."""

    hilbert: bool
    betti: bool
    annihilator: bool
    shift: Optional[int] = None

    @property
    def consistent(self) -> bool:
        return self.hilbert and self.betti and self.annihilator

    def to_json(self) -> dict:
        return {"hilbert": self.hilbert, "betti": self.betti, "annihilator": self.annihilator,
                "consistent": self.consistent, "shift": self.shift}


def ideals_equal(a: Sequence[Polynomial], b: Sequence[Polynomial], ring: GradedRing) -> bool:
    ga = buchberger(list(a), ring).elements if a else ()
    gb = buchberger(list(b), ring).elements if b else ()
    return sorted(map(_freeze, ga)) == sorted(map(_freeze, gb))


def _freeze(v):
    return tuple(sorted(v.items()))


def congruent(M: PresentedModule, N: PresentedModule, length: int = 2,
              up_to_shift: bool = False) -> Congruence:
    """Compare Hilbert series, Betti tables through ``length`` and annihilators.

    With ``up_to_shift`` the comparison allows one global degree shift,
    determined from the lowest generator degrees.
    """
    Mm, Nm = minimalize(M), minimalize(N)
    shift = 0
    if up_to_shift and Mm.rank and Nm.rank:
        shift = min(Nm.degrees) - min(Mm.degrees)
        Nm = Nm.shift(shift)
    hs = hilbert_series(Mm) == hilbert_series(Nm)
    bt = betti(Mm, length).truncate(length).entries == betti(Nm, length).truncate(length).entries
    an = ideals_equal(annihilator(Mm), annihilator(Nm), M.ring)
    return Congruence(hs, bt, an, shift if up_to_shift else None)


# ----------------------------------------------------------- linkage by ideals
def annihilates(gens: Sequence[Polynomial], M: PresentedModule) -> bool:
    """Whether every f in ``gens`` kills M."""
    Mm = minimalize(M)
    if Mm.rank == 0:
        return True
    gb = buchberger(list(Mm.relations), M.ring, degrees=Mm.degrees) if Mm.relations else None
    for f in gens:
        if f.is_zero():
            continue
        for i in range(Mm.rank):
            v = reduce_mod_ideal({(i, m): c for m, c in f.data.items()}, M.ring)
            if not v:
                continue
            if gb is None or gb.normal_form(v):
                return False
    return True


def quotient_ring(ring: GradedRing, ideal: Sequence[Polynomial]) -> GradedRing:
    gens = [f for f in ideal if not f.is_zero()]
    return ring.quotient(gens) if gens else ring


def restrict_scalars(M: PresentedModule, ring: GradedRing) -> PresentedModule:
    """An R/c-module regarded as a module over ``ring`` = R (same ambient ring)."""
    if ring.ambient != M.ring.ambient:
        raise LinkageError("restriction needs a common ambient polynomial ring")
    rels = list(M.relations)
    for f in M.ring.ideal:
        for i in range(M.rank):
            rels.append({(i, m): c for m, c in f.data.items()})
    return minimalize(PresentedModule(ring, M.degrees, rels, check=False))


def link_via_ideal(M: PresentedModule, c: Sequence[Polynomial]) -> PresentedModule:
    """lambda of M computed over R/c (M must be annihilated by c); result lives over R/c."""
    if not annihilates(c, M):
        raise LinkageError("the linking ideal does not annihilate the module")
    Rc = quotient_ring(M.ring, c)
    return lambda_(M.rebase(Rc))


def is_horizontally_linked(M: PresentedModule) -> bool:
    """Stable and Ext^1(Tr M, R) = 0."""
    def compute():
        if minimalize(M).rank == 0:
            return False
        if not is_stable(M):
            return False
        return is_zero(ext(transpose(M), PresentedModule.free(M.ring), 1))
    return M.cached("hlinked", compute)


def linked_by_ideal(M: PresentedModule, N: PresentedModule, c: Sequence[Polynomial]) -> dict:
    """Both modules killed by c, both horizontally linked over R/c, and
    lambda_{R/c} M congruent to N (and vice versa)."""
    out = {"annihilated": annihilates(c, M) and annihilates(c, N)}
    if not out["annihilated"]:
        out["linked"] = False
        return out
    Rc = quotient_ring(M.ring, c)
    Mc, Nc = M.rebase(Rc), N.rebase(Rc)
    out["M_hlinked"] = is_horizontally_linked(Mc)
    out["N_hlinked"] = is_horizontally_linked(Nc)
    c1 = congruent(lambda_(Mc), Nc)
    c2 = congruent(lambda_(Nc), Mc)
    out["lambda_M_vs_N"] = c1.to_json()
    out["lambda_N_vs_M"] = c2.to_json()
    out["linked"] = bool(out["M_hlinked"] and out["N_hlinked"] and c1.consistent and c2.consistent)
    return out
