"""Buchberger's algorithm for submodules of graded free modules.

A module element ("vector") is a dict ``{(component, monomial): coeff}``.
Submodules of a quotient-ring free module R^r are handled over the ambient
ring by adjoining ``I * e_i`` for every basis vector.
"""
from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import config
from .ring import (
    GradedRing,
    MonomialOrder,
    Polynomial,
    divides,
    mono_div,
    mono_lcm,
    mono_mul,
)

Vector = Dict[Tuple[int, tuple], int]


class InhomogeneousInput(ValueError):
    pass


# ----------------------------------------------------------------- vectors
def vec_degree(v: Vector, degrees: Sequence[int]) -> int:
    """Degree of a homogeneous vector (max over terms otherwise)."""
    return max(sum(m) + degrees[c] for c, m in v)


def vec_is_homogeneous(v: Vector, degrees: Sequence[int]) -> bool:
    return len({sum(m) + degrees[c] for c, m in v}) <= 1


def vec_add(u: Vector, v: Vector, p: int, scale: int = 1) -> Vector:
    out = dict(u)
    for t, c in v.items():
        x = (out.get(t, 0) + scale * c) % p
        if x:
            out[t] = x
        else:
            out.pop(t, None)
    return out


def vec_scale(v: Vector, c: int, mono, p: int) -> Vector:
    c %= p
    if not c:
        return {}
    return {(k, mono_mul(mono, m)): x * c % p for (k, m), x in v.items()}


def vec_mul_poly(v: Vector, f: Dict, p: int) -> Vector:
    out: Vector = {}
    for m2, c2 in f.items():
        for (k, m1), c1 in v.items():
            t = (k, mono_mul(m1, m2))
            x = (out.get(t, 0) + c1 * c2) % p
            if x:
                out[t] = x
            else:
                out.pop(t, None)
    return out


def vec_from_polys(polys: Sequence[Polynomial]) -> Vector:
    out: Vector = {}
    for i, f in enumerate(polys):
        for m, c in f.data.items():
            out[(i, m)] = c
    return out


def vec_to_polys(v: Vector, rank: int, ring) -> List[Polynomial]:
    S = ring.ambient if isinstance(ring, GradedRing) else ring
    comps: List[dict] = [dict() for _ in range(rank)]
    for (k, m), c in v.items():
        comps[k][m] = c
    return [S.element(t) for t in comps]


def vec_freeze(v: Vector):
    return tuple(sorted(v.items()))


def vec_shift_components(v: Vector, offset: int) -> Vector:
    return {(k + offset, m): c for (k, m), c in v.items()}


# ------------------------------------------------------------ module orders
class ModuleOrder:
    """Monomial order on a free module with graded basis.

    kind ``"top"`` (default): total degree (with shifts) first, then the
    block index (smaller block is larger), then the monomial order, then
    position (lower index larger).  ``"pot"``: position first.  Schreyer
    orders come from :meth:`schreyer`.
    """

    def __init__(self, order: MonomialOrder, degrees: Sequence[int],
                 blocks: Optional[Sequence[int]] = None, kind: str = "top"):
        if kind not in ("top", "pot"):
            raise ValueError(f"unknown module order {kind!r}")
        self.order = order
        self.degrees = tuple(degrees)
        self.blocks = tuple(blocks) if blocks is not None else (0,) * len(self.degrees)
        self.kind = kind
        self._cache: dict = {}
        self._schreyer = None

    @classmethod
    def schreyer(cls, base: "ModuleOrder", leads: Sequence[Tuple[int, tuple]],
                 degrees: Sequence[int]) -> "ModuleOrder":
        """m*e_i < n*e_j iff lead(m*g_i) < lead(n*g_j), ties broken by index."""
        obj = cls(base.order, degrees)
        obj._schreyer = (base, tuple(leads))
        return obj

    def key(self, t):
        k = self._cache.get(t)
        if k is None:
            c, m = t
            if self._schreyer is not None:
                base, leads = self._schreyer
                lc, lm = leads[c]
                k = (base.key((lc, mono_mul(m, lm))), -c)
            elif self.kind == "top":
                k = (sum(m) + self.degrees[c], -self.blocks[c], self.order.key(m), -c)
            else:
                k = (-self.blocks[c], -c, sum(m) + self.degrees[c], self.order.key(m))
            self._cache[t] = k
        return k

    def lead(self, v: Vector):
        return max(v, key=self.key)


# ------------------------------------------------------------------- engine
class Buchberger:
    """Incremental, degree-by-degree Buchberger (normal strategy).

    Elements are kept monic.  ``run(upto)`` completes the basis through
    degree ``upto``; S-pairs above the degree cap raise
    :class:`config.TruncationExceeded`.
    """

    def __init__(self, p: int, order: ModuleOrder, homogeneous: bool = True,
                 cap: Optional[int] = None, product_criterion: bool = False):
        self.p = p
        self.order = order
        self.homogeneous = homogeneous
        self.cap = cap
        self.product_criterion = product_criterion
        self.G: List[Vector] = []
        self.leads: List[Tuple[int, tuple]] = []
        self.by_comp: Dict[int, List[int]] = defaultdict(list)
        self.queue: list = []
        self.pending: set = set()
        self.age = 0
        self.origin: List[Optional[int]] = []  # input index for elements added unreduced
        base = min(order.degrees) if order.degrees else 0
        self._base_degree = base

    def degree(self, v: Vector) -> int:
        return vec_degree(v, self.order.degrees)

    def _check_cap(self, deg: int):
        if self.cap is not None and deg - self._base_degree > self.cap:
            raise config.TruncationExceeded(
                f"Groebner computation needs degree {deg} "
                f"(cap {self.cap} above base degree {self._base_degree})")

    # -- input
    def add_generators(self, vecs: Iterable[Vector]):
        for idx, v in enumerate(vecs):
            if not v:
                continue
            if self.homogeneous and not vec_is_homogeneous(v, self.order.degrees):
                raise InhomogeneousInput(f"generator {idx} is not homogeneous")
            self.age += 1
            heapq.heappush(self.queue, (self.degree(v), 0, self.age, ("gen", v)))

    def seed(self, vecs: Iterable[Vector]):
        """Insert vectors already known to form a Groebner basis together."""
        start = len(self.G)
        for v in vecs:
            if v:
                self._insert(self._monic(v), pairs=False)
        # seeded elements pair only with later additions
        del start

    # -- core
    def _monic(self, v: Vector) -> Vector:
        lt = self.order.lead(v)
        c = v[lt]
        if c == 1:
            return v
        inv = pow(c, -1, self.p)
        return {t: x * inv % self.p for t, x in v.items()}

    def _insert(self, v: Vector, pairs: bool = True):
        i = len(self.G)
        lt = self.order.lead(v)
        self.G.append(v)
        self.leads.append(lt)
        comp, mono = lt
        if pairs:
            for j in self.by_comp[comp]:
                lm = self.leads[j][1]
                if self.product_criterion and all(a == 0 or b == 0 for a, b in zip(mono, lm)):
                    continue
                lcm = mono_lcm(mono, lm)
                deg = sum(lcm) + self.order.degrees[comp]
                self.age += 1
                self.pending.add((j, i))
                heapq.heappush(self.queue, (deg, 1, self.age, ("pair", j, i, lcm)))
        self.by_comp[comp].append(i)

    def reduce(self, v: Vector, full: bool = True) -> Vector:
        p = self.p
        key = self.order.key
        f = dict(v)
        r: Vector = {}
        G, leads, by_comp = self.G, self.leads, self.by_comp
        while f:
            t = max(f, key=key)
            c = f[t]
            comp, m = t
            for k in by_comp.get(comp, ()):
                lm = leads[k][1]
                if divides(lm, m):
                    q = mono_div(m, lm)
                    for (kc, km), x in G[k].items():
                        tt = (kc, mono_mul(q, km))
                        y = (f.get(tt, 0) - c * x) % p
                        if y:
                            f[tt] = y
                        else:
                            del f[tt]
                    break
            else:
                if not full:
                    r.update(f)
                    return r
                r[t] = c
                del f[t]
        return r

    def _criterion_chain(self, i: int, j: int, lcm) -> bool:
        comp = self.leads[i][0]
        for k in self.by_comp[comp]:
            if k == i or k == j:
                continue
            if divides(self.leads[k][1], lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in self.pending and b not in self.pending:
                    return True
        return False

    def spoly(self, i: int, j: int, lcm) -> Vector:
        mi = mono_div(lcm, self.leads[i][1])
        mj = mono_div(lcm, self.leads[j][1])
        return vec_add(vec_scale(self.G[i], 1, mi, self.p), vec_scale(self.G[j], 1, mj, self.p),
                       self.p, -1)

    def run(self, upto: Optional[int] = None):
        while self.queue:
            deg = self.queue[0][0]
            if upto is not None and deg > upto:
                return
            self._check_cap(deg)
            _, _, _, item = heapq.heappop(self.queue)
            if item[0] == "gen":
                h = self.reduce(item[1])
            else:
                _, i, j, lcm = item
                self.pending.discard((i, j))
                if self._criterion_chain(i, j, lcm):
                    continue
                h = self.reduce(self.spoly(i, j, lcm))
            if h:
                self._insert(self._monic(h))

    # -- output
    def minimal_indices(self) -> List[int]:
        """Indices of elements whose lead is not divisible by another's lead."""
        keep = []
        for i, (c, m) in enumerate(self.leads):
            redundant = False
            for j in self.by_comp[c]:
                if j == i:
                    continue
                lm = self.leads[j][1]
                if divides(lm, m) and (lm != m or j < i):
                    redundant = True
                    break
            if not redundant:
                keep.append(i)
        return keep

    def reduced_elements(self) -> List[Vector]:
        keep = self.minimal_indices()
        sub = Buchberger(self.p, self.order, self.homogeneous)
        elems = [self.G[i] for i in keep]
        sub.G = list(elems)
        sub.leads = [self.leads[i] for i in keep]
        for n, (c, _) in enumerate(sub.leads):
            sub.by_comp[c].append(n)
        out = []
        for n, v in enumerate(elems):
            lt = sub.leads[n]
            tail = dict(v)
            del tail[lt]
            # tail reduction against the others (lead of v cannot reappear)
            saved = sub.by_comp[lt[0]]
            sub.by_comp[lt[0]] = [k for k in saved if k != n]
            rt = sub.reduce(tail)
            sub.by_comp[lt[0]] = saved
            rt[lt] = 1
            out.append(rt)
        out.sort(key=lambda v: self.order.key(self.order.lead(v)), reverse=True)
        return out


# ----------------------------------------------------------- public layer
@dataclass(frozen=True)
class GroebnerBasis:
    ring: GradedRing
    degrees: Tuple[int, ...]
    elements: Tuple[Vector, ...]
    order: ModuleOrder = field(compare=False)
    reduced: bool = False
    over_quotient: bool = False

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def leads(self):
        return [self.order.lead(v) for v in self.elements]

    def engine(self) -> Buchberger:
        eng = Buchberger(self.ring.p, self.order)
        eng.seed(self.elements)
        return eng

    def normal_form(self, v: Vector) -> Vector:
        return self.engine().reduce(v)

    def contains(self, v: Vector) -> bool:
        return not self.normal_form(v)

    def as_polys(self) -> List:
        """Elements as polynomials (rank 1) or polynomial lists."""
        if self.rank == 1:
            return [self.ring.ambient.element({m: c for (_, m), c in v.items()})
                    for v in self.elements]
        return [vec_to_polys(v, self.rank, self.ring) for v in self.elements]


def _as_vectors(gens) -> Tuple[List[Vector], Optional[int]]:
    vecs, rank = [], None
    for g in gens:
        if isinstance(g, Polynomial):
            vecs.append({(0, m): c for m, c in g.data.items()})
            rank = max(rank or 0, 1)
        elif isinstance(g, dict):
            vecs.append(dict(g))
        else:
            g = list(g)
            vecs.append(vec_from_polys(g))
            rank = max(rank or 0, len(g))
    return vecs, rank


def ideal_basis(ring: GradedRing) -> Tuple[Vector, ...]:
    """Reduced GB of the defining ideal, as rank-1 vectors (memoized)."""
    key = ring.key
    hit = _IDEAL_GB.get(key)
    if hit is None:
        order = ModuleOrder(ring.order, (0,))
        eng = Buchberger(ring.p, order, product_criterion=True)
        eng.add_generators({(0, m): c for m, c in f.data.items()} for f in ring.ideal)
        eng.run()
        hit = tuple(eng.reduced_elements())
        _IDEAL_GB[key] = hit
    return hit


_IDEAL_GB: dict = {}


def quotient_seed(ring: GradedRing, rank: int, offset: int = 0) -> List[Vector]:
    """GB of I*S^rank placed in components offset..offset+rank-1."""
    base = ideal_basis(ring)
    return [{(i + offset, m): c for (_, m), c in g.items()}
            for i in range(rank) for g in base]


def buchberger(gens, ring: GradedRing, degrees: Optional[Sequence[int]] = None,
               order: Optional[ModuleOrder] = None, reduce: bool = True) -> GroebnerBasis:
    """Groebner basis of the submodule generated by ``gens``.

    ``gens`` are polynomials (ideal case) or lists of polynomials / vectors.
    Over a quotient ring the multiples ``I*e_i`` are adjoined first.
    """
    vecs, rank = _as_vectors(gens)
    if degrees is None:
        degrees = (0,) * (rank or 1)
    degrees = tuple(degrees)
    for idx, v in enumerate(vecs):
        if v and not vec_is_homogeneous(v, degrees):
            raise InhomogeneousInput(f"generator {idx} is not homogeneous")
    if order is None:
        order = ModuleOrder(ring.order, degrees)
    eng = Buchberger(ring.p, order, cap=config.degree_cap(),
                     product_criterion=len(degrees) == 1)
    if ring.ideal:
        eng.seed(quotient_seed(ring, len(degrees)))
    eng.add_generators(vecs)
    eng.run()
    elems = eng.reduced_elements() if reduce else list(eng.G)
    return GroebnerBasis(ring, degrees, tuple(elems), order, reduce, bool(ring.ideal))


def reduce_basis(gb: GroebnerBasis) -> GroebnerBasis:
    eng = Buchberger(gb.ring.p, gb.order)
    eng.seed(gb.elements)
    return GroebnerBasis(gb.ring, gb.degrees, tuple(eng.reduced_elements()), gb.order,
                         True, gb.over_quotient)


def normal_form(f, G, order: Optional[ModuleOrder] = None, ring: Optional[GradedRing] = None,
                degrees: Optional[Sequence[int]] = None):
    """Remainder of ``f`` on division by the listed sequence ``G``.

    ``f`` may be a polynomial or a vector; the result has the same shape.
    """
    if isinstance(G, GroebnerBasis):
        ring, order, elems = G.ring, G.order, list(G.elements)
    else:
        elems, _ = _as_vectors(G)
    poly_in = isinstance(f, Polynomial)
    v = {(0, m): c for m, c in f.data.items()} if poly_in else dict(f)
    p = ring.p if ring is not None else f.ring.p
    if order is None:
        mo = ring.order if ring is not None else f.ring.order
        if degrees is None:
            rank = 1 + max([k for k, _ in v] + [k for g in elems for k, _ in g], default=0)
            degrees = (0,) * rank
        order = ModuleOrder(mo, degrees)
    eng = Buchberger(p, order, homogeneous=False)
    for g in elems:
        if g:
            eng._insert(eng._monic(g), pairs=False)
    r = eng.reduce(v)
    if poly_in:
        return f.ring.element({m: c for (_, m), c in r.items()})
    return r


# ---------------------------------------------------------------- syzygies
@dataclass(frozen=True)
class SyzygyMatrix:
    """Columns generate the syzygies of ``generators`` (vectors in S^s)."""

    generators: Tuple[Vector, ...]
    columns: Tuple[Vector, ...]
    source_degrees: Tuple[int, ...]

    def is_exact(self, p: int) -> bool:
        for col in self.columns:
            acc: Vector = {}
            for (k, m), c in col.items():
                acc = vec_add(acc, vec_scale(self.generators[k], c, m, p), p)
            if acc:
                return False
        return True


def _reduce_with_quotients(eng: Buchberger, v: Vector):
    p = eng.p
    key = eng.order.key
    f = dict(v)
    quot: Dict[int, dict] = defaultdict(dict)
    r: Vector = {}
    while f:
        t = max(f, key=key)
        c = f[t]
        comp, m = t
        for k in eng.by_comp.get(comp, ()):
            lm = eng.leads[k][1]
            if divides(lm, m):
                q = mono_div(m, lm)
                quot[k][q] = (quot[k].get(q, 0) + c) % p
                for (kc, km), x in eng.G[k].items():
                    tt = (kc, mono_mul(q, km))
                    y = (f.get(tt, 0) - c * x) % p
                    if y:
                        f[tt] = y
                    else:
                        del f[tt]
                break
        else:
            r[t] = c
            del f[t]
    return r, quot


def syzygies(gb: GroebnerBasis) -> SyzygyMatrix:
    """Schreyer syzygies of the basis elements (over the ambient ring).

    For each pair with leads in a common component, the S-vector reduced to
    zero gives ``m_i e_i - m_j e_j - sum q_k e_k``.
    """
    if not gb.reduced:
        gb = reduce_basis(gb)
    p = gb.ring.p
    elems = list(gb.elements)
    eng = Buchberger(p, gb.order, homogeneous=False)
    for g in elems:
        eng._insert(g, pairs=False)
    src_deg = [vec_degree(g, gb.degrees) for g in elems]
    cols = []
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            ci, mi_ = eng.leads[i]
            cj, mj_ = eng.leads[j]
            if ci != cj:
                continue
            lcm = mono_lcm(mi_, mj_)
            s = eng.spoly(i, j, lcm)
            r, quot = _reduce_with_quotients(eng, s)
            if r:
                raise ArithmeticError("input is not a Groebner basis")
            col: Vector = {(i, mono_div(lcm, mi_)): 1}
            col = vec_add(col, {(j, mono_div(lcm, mj_)): 1}, p, -1)
            for k, q in quot.items():
                col = vec_add(col, {(k, m): c for m, c in q.items()}, p, -1)
            if col:
                cols.append(col)
    return SyzygyMatrix(tuple(elems), tuple(cols), tuple(src_deg))


# ------------------------------------------------------------- over rings R
def reduce_mod_ideal(v: Vector, ring: GradedRing) -> Vector:
    """Componentwise normal form modulo the defining ideal."""
    if not ring.ideal or not v:
        return v
    base = ideal_basis(ring)
    comps = sorted({k for k, _ in v})
    order = ModuleOrder(ring.order, (0,))
    eng = Buchberger(ring.p, order, homogeneous=False)
    for g in base:
        eng._insert(g, pairs=False)
    out: Vector = {}
    for k in comps:
        part = {(0, m): c for (kk, m), c in v.items() if kk == k}
        for (_, m), c in eng.reduce(part).items():
            out[(k, m)] = c
    return out


def minimal_generators(vecs: Sequence[Vector], degrees: Sequence[int],
                       ring: GradedRing) -> List[int]:
    """Indices of a minimal homogeneous generating subset over R.

    Candidates are scanned by degree; a candidate is kept iff it is not in
    the span of the kept ones plus ``I*F``.
    """
    degrees = tuple(degrees)
    order = ModuleOrder(ring.order, degrees)
    eng = Buchberger(ring.p, order, cap=config.degree_cap())
    if ring.ideal:
        eng.seed(quotient_seed(ring, len(degrees)))
    cand = [(vec_degree(v, degrees), i) for i, v in enumerate(vecs) if v]
    cand.sort()
    keep = []
    for deg, i in cand:
        eng.run(upto=deg)
        if eng.reduce(vecs[i]):
            keep.append(i)
            eng.add_generators([vecs[i]])
            eng.run(upto=deg)
    keep.sort()
    return keep


def kernel_of_matrix(columns: Sequence[Vector], target_degrees: Sequence[int],
                     source_degrees: Sequence[int], ring: GradedRing,
                     minimal: bool = True) -> List[Vector]:
    """Generators of ker(R^m -> R^r), columns given as vectors in S^r.

    Elimination: a GB of {(col_j, e_j)} + I*S^r + I*S^m in S^r (+) S^m with the
    S^r block dominating; elements with no S^r part generate the kernel.
    """
    r, m = len(target_degrees), len(source_degrees)
    if m == 0:
        return []
    degs = tuple(target_degrees) + tuple(source_degrees)
    blocks = (0,) * r + (1,) * m
    order = ModuleOrder(ring.order, degs, blocks)
    eng = Buchberger(ring.p, order, cap=config.degree_cap())
    if ring.ideal:
        eng.seed(quotient_seed(ring, r) + quotient_seed(ring, m, offset=r))
    gens = []
    for j, col in enumerate(columns):
        v = dict(col)
        v[(r + j, (0,) * ring.nvars)] = 1
        if not vec_is_homogeneous(v, degs):
            raise InhomogeneousInput(f"column {j} is not homogeneous of degree {source_degrees[j]}")
        gens.append(v)
    eng.add_generators(gens)
    eng.run()
    ker = []
    for v, (c, _) in zip(eng.G, eng.leads):
        if c >= r:
            w = reduce_mod_ideal(vec_shift_components(v, -r), ring)
            if w:
                ker.append(w)
    if not minimal:
        return ker
    idx = minimal_generators(ker, source_degrees, ring)
    return [ker[i] for i in idx]


def ideal_membership(f: Polynomial, gens: Sequence[Polynomial], ring: GradedRing) -> bool:
    gb = buchberger(list(gens), ring)
    return not gb.normal_form({(0, m): c for m, c in f.data.items()})


def ideal_is_unit(gens: Sequence[Polynomial], ring: Optional[GradedRing] = None) -> bool:
    """Whether the ideal (gens) + I is the unit ideal; accepts inhomogeneous gens."""
    gens = [g for g in gens if not g.is_zero()]
    if ring is None:
        if not gens:
            return False
        S = gens[0].ring
        ring = GradedRing(S, ())
    allgens = list(gens) + list(ring.ideal)
    order = ModuleOrder(ring.order, (0,))
    eng = Buchberger(ring.p, order, homogeneous=False, product_criterion=True)
    eng.add_generators({(0, m): c for m, c in g.data.items()} for g in allgens)
    eng.run()
    return any(sum(lm) == 0 for _, lm in eng.leads)
