"""Finitely presented graded modules and their homological algebra.

A module is ``coker(A: F_1 -> F_0)`` where ``F_0 = sum R(-d_i)``.  Here
``degrees`` lists the d_i (the degree of the i-th generator) and the
relations are the columns of A, stored as sparse vectors over the ambient
polynomial ring.  Entries are always read modulo the defining ideal.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import config
from .groebner import (
    Buchberger,
    ModuleOrder,
    Vector,
    kernel_of_matrix,
    minimal_generators,
    quotient_seed,
    reduce_mod_ideal,
    vec_add,
    vec_degree,
    vec_freeze,
    vec_from_polys,
    vec_is_homogeneous,
    vec_scale,
)
from .ring import GradedRing, Polynomial, RingError, divides, mono_div, monomials_of_degree


class ModuleError(ValueError):
    """Malformed module data (degree-incompatible matrix, bad shapes)."""


# ---------------------------------------------------------------- free/matrix
@dataclass(frozen=True)
class FreeModule:
    ring: GradedRing
    degrees: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.degrees)


@dataclass(frozen=True)
class MatrixOverRing:
    """A graded map ``source -> target``; ``columns[j]`` is the image of e_j."""

    source: FreeModule
    target: FreeModule
    columns: Tuple[Vector, ...]

    def entry(self, i: int, j: int) -> Polynomial:
        S = self.target.ring.ambient
        return S.element({m: c for (k, m), c in self.columns[j].items() if k == i})

    def rows(self) -> List[List[Polynomial]]:
        return [[self.entry(i, j) for j in range(self.source.rank)] for i in range(self.target.rank)]

    def check_degrees(self):
        for j, col in enumerate(self.columns):
            for (i, m), _ in col.items():
                if sum(m) + self.target.degrees[i] != self.source.degrees[j]:
                    raise ModuleError(
                        f"entry ({i},{j}) has degree {sum(m)}, expected "
                        f"{self.source.degrees[j] - self.target.degrees[i]}")

    def compose(self, other: "MatrixOverRing") -> "MatrixOverRing":
        """self o other."""
        p = self.target.ring.p
        cols = []
        for col in other.columns:
            acc: Vector = {}
            for (k, m), c in col.items():
                acc = vec_add(acc, vec_scale(self.columns[k], c, m, p), p)
            cols.append(reduce_mod_ideal(acc, self.target.ring))
        return MatrixOverRing(other.source, self.target, tuple(cols))

    def is_zero(self) -> bool:
        return not any(reduce_mod_ideal(c, self.target.ring) for c in self.columns)


# ------------------------------------------------------------ Hilbert series
@dataclass(frozen=True, eq=False)
class HilbertSeries:
    """``numerator(t) / (1 - t)^power``; the numerator is a Laurent polynomial.

    ``numerator`` maps exponents to nonzero integer coefficients.
    """

    numerator: Tuple[Tuple[int, int], ...]
    power: int

    @classmethod
    def make(cls, num: Dict[int, int], power: int) -> "HilbertSeries":
        return cls(tuple(sorted((e, c) for e, c in num.items() if c)), power)

    def coefficient(self, d: int) -> int:
        n = self.power
        total = 0
        for e, c in self.numerator:
            k = d - e
            if k < 0:
                continue
            total += c * (math.comb(k + n - 1, n - 1) if n > 0 else (1 if k == 0 else 0))
        return total

    def dims(self, lo: int, hi: int) -> List[int]:
        return [self.coefficient(d) for d in range(lo, hi + 1)]

    def is_zero(self) -> bool:
        return not self.numerator

    def reduced(self) -> "HilbertSeries":
        """Cancel common factors (1 - t) between numerator and denominator."""
        num = dict(self.numerator)
        power = self.power
        while power > 0 and num and sum(num.values()) == 0:
            # divide by (1 - t): q_k = sum_{j<=k} num_j
            lo, hi = min(num), max(num)
            q, acc = {}, 0
            for e in range(lo, hi):
                acc += num.get(e, 0)
                if acc:
                    q[e] = acc
            num = q
            power -= 1
        return HilbertSeries.make(num, power)

    def __eq__(self, other):
        return isinstance(other, HilbertSeries) and (self - other).is_zero()

    def __hash__(self):
        r = self.reduced()
        return hash((r.numerator, r.power if r.numerator else 0))

    def pole_order(self) -> int:
        """Krull dimension of the module (-1 for the zero series)."""
        r = self.reduced()
        return r.power if r.numerator else -1

    def __add__(self, other: "HilbertSeries") -> "HilbertSeries":
        return _combine(self, other, 1)

    def __sub__(self, other: "HilbertSeries") -> "HilbertSeries":
        return _combine(self, other, -1)

    def shift(self, a: int) -> "HilbertSeries":
        """Series of M(a): multiply by t^{-a}."""
        return HilbertSeries(tuple((e - a, c) for e, c in self.numerator), self.power)

    def to_json(self) -> dict:
        lo = self.numerator[0][0] if self.numerator else 0
        hi = self.numerator[-1][0] if self.numerator else -1
        num = dict(self.numerator)
        return {"numerator_start": lo,
                "hilbert_numerator": [num.get(e, 0) for e in range(lo, hi + 1)],
                "denominator_power": self.power}

    def __str__(self):
        if not self.numerator:
            return "0"
        terms = []
        for e, c in self.numerator:
            terms.append(f"{c}" if e == 0 else f"{c}*t^{e}")
        return f"({' + '.join(terms)})/(1-t)^{self.power}"


def _to_power(h: HilbertSeries, n: int) -> Dict[int, int]:
    """Numerator of h rewritten over (1 - t)^n, n >= h.power."""
    num = dict(h.numerator)
    for _ in range(n - h.power):
        out: Dict[int, int] = {}
        for e, c in num.items():
            out[e] = out.get(e, 0) + c
            out[e + 1] = out.get(e + 1, 0) - c
        num = {e: c for e, c in out.items() if c}
    return num


def _combine(a: HilbertSeries, b: HilbertSeries, sign: int) -> HilbertSeries:
    n = max(a.power, b.power)
    na, nb = _to_power(a, n), _to_power(b, n)
    out = dict(na)
    for e, c in nb.items():
        out[e] = out.get(e, 0) + sign * c
    return HilbertSeries.make(out, n)


# ------------------------------------------------------------------ modules
class PresentedModule:
    """coker of a graded presentation matrix over ``ring``.

    ``images`` optionally records, for each generator, a vector in another
    free module of degrees ``image_degrees`` (e.g. the cycles a homology
    module was cut out of); it is carried through minimalization.
    """

    def __init__(self, ring: GradedRing, degrees: Sequence[int], relations: Sequence[Vector] = (),
                 minimal: bool = False, images: Optional[Sequence[Vector]] = None,
                 image_degrees: Optional[Sequence[int]] = None, check: bool = True):
        self.ring = ring
        self.degrees: Tuple[int, ...] = tuple(int(d) for d in degrees)
        rels = []
        for j, v in enumerate(relations):
            if not v:
                continue
            if check:
                for (k, _m) in v:
                    if not 0 <= k < len(self.degrees):
                        raise ModuleError(f"relation {j} refers to generator {k} out of range")
                if not vec_is_homogeneous(v, self.degrees):
                    raise ModuleError(f"relation {j} is not homogeneous for the generator degrees")
            rels.append(dict(v))
        self.relations: Tuple[Vector, ...] = tuple(rels)
        self.minimal = minimal
        self.images = tuple(images) if images is not None else None
        self.image_degrees = tuple(image_degrees) if image_degrees is not None else None
        self._cache: dict = {}
        self._lock = threading.Lock()

    # -- constructors
    @classmethod
    def free(cls, ring: GradedRing, degrees: Sequence[int] = (0,)) -> "PresentedModule":
        return cls(ring, degrees, (), minimal=True)

    @classmethod
    def cyclic(cls, ring: GradedRing, ideal: Sequence, shift: int = 0) -> "PresentedModule":
        """R/(ideal), generator in degree ``shift``."""
        rels = []
        for f in ideal:
            f = ring.parse(f)
            if not f.is_homogeneous():
                raise ModuleError(f"ideal generator {f} is not homogeneous")
            rels.append({(0, m): c for m, c in f.data.items()})
        return cls(ring, (shift,), rels)

    @classmethod
    def from_rows(cls, ring: GradedRing, rows: Sequence[Sequence], shifts: Optional[Sequence[int]] = None,
                  ) -> "PresentedModule":
        """coker of the matrix with the given rows; ``shifts`` are generator degrees."""
        rows = [[ring.parse(e) for e in row] for row in rows]
        r = len(rows)
        if shifts is None:
            shifts = (0,) * r
        if len(shifts) != r:
            raise ModuleError(f"{len(shifts)} shifts given for {r} rows")
        ncols = {len(row) for row in rows}
        if len(ncols) > 1:
            raise ModuleError("ragged matrix")
        m = ncols.pop() if ncols else 0
        cols = [vec_from_polys([rows[i][j] for i in range(r)]) for j in range(m)]
        return cls(ring, shifts, cols)

    # -- basic data
    @property
    def rank(self) -> int:
        """Number of generators of this presentation."""
        return len(self.degrees)

    def relation_degrees(self) -> Tuple[int, ...]:
        return tuple(vec_degree(v, self.degrees) for v in self.relations)

    @property
    def presentation(self) -> MatrixOverRing:
        return MatrixOverRing(FreeModule(self.ring, self.relation_degrees()),
                              FreeModule(self.ring, self.degrees), self.relations)

    def fingerprint(self):
        return (self.ring.key, self.degrees, tuple(vec_freeze(v) for v in self.relations))

    def cached(self, key, fn):
        hit = self._cache.get(key)
        if hit is None:
            val = fn()
            with self._lock:
                hit = self._cache.setdefault(key, val)
        return hit

    def shift(self, a: int) -> "PresentedModule":
        """M(a): all generator degrees lowered by a."""
        return PresentedModule(self.ring, [d - a for d in self.degrees], self.relations,
                               minimal=self.minimal, images=self.images,
                               image_degrees=None if self.image_degrees is None
                               else [d - a for d in self.image_degrees], check=False)

    def direct_sum(self, other: "PresentedModule") -> "PresentedModule":
        off = self.rank
        rels = list(self.relations) + [{(k + off, m): c for (k, m), c in v.items()}
                                       for v in other.relations]
        return PresentedModule(self.ring, self.degrees + other.degrees, rels)

    def rebase(self, ring: GradedRing) -> "PresentedModule":
        """Same presentation data read over another ring on the same ambient ring."""
        if ring.ambient != self.ring.ambient:
            raise RingError("rebase needs a common ambient polynomial ring")
        return PresentedModule(ring, self.degrees, self.relations)

    def over_ambient(self) -> "PresentedModule":
        """M regarded as a module over the ambient polynomial ring S."""
        S = self.ring.ambient_ring()
        rels = list(self.relations)
        if self.ring.ideal:
            rels += quotient_seed(self.ring, self.rank)
        return PresentedModule(S, self.degrees, rels, check=False)

    def __repr__(self):
        return f"PresentedModule(rank={self.rank}, degrees={self.degrees}, relations={len(self.relations)}, ring={self.ring})"

    def matrix_str(self) -> List[List[str]]:
        return [[str(e) for e in row] for row in self.presentation.rows()]


# --------------------------------------------------------------- minimalize
def _unit_position(cols: List[Vector], zero):
    for j, col in enumerate(cols):
        for (i, m), c in col.items():
            if m == zero:
                return i, j, c
    return None


def minimalize(M: PresentedModule) -> PresentedModule:
    """A minimal presentation of M (all entries in the maximal ideal)."""
    if M.minimal:
        return M
    return M.cached("minimalize", lambda: _minimalize(M))


def _minimalize(M: PresentedModule) -> PresentedModule:
    ring = M.ring
    p = ring.p
    zero = (0,) * ring.nvars
    cols = [reduce_mod_ideal(v, ring) for v in M.relations]
    cols = [v for v in cols if v]
    alive = list(range(M.rank))  # current index -> original generator index
    degrees = list(M.degrees)
    while True:
        pos = _unit_position(cols, zero)
        if pos is None:
            break
        i, j, c = pos
        pivot = cols[j]
        inv = pow(c, -1, p)
        new = []
        for k, col in enumerate(cols):
            if k == j:
                continue
            row_i = {m: x for (kk, m), x in col.items() if kk == i}
            for m, x in row_i.items():
                col = vec_add(col, vec_scale(pivot, x * inv, m, p), p, -1)
            new.append(col)
        # drop generator i and renumber
        cols = []
        for col in new:
            col = {((k if k < i else k - 1), m): x for (k, m), x in col.items() if k != i}
            col = reduce_mod_ideal(col, ring)
            if col:
                cols.append(col)
        del alive[i]
        del degrees[i]
    if cols:
        keep = minimal_generators(cols, degrees, ring)
        cols = [cols[k] for k in keep]
    images = [M.images[k] for k in alive] if M.images is not None else None
    return PresentedModule(ring, degrees, cols, minimal=True, images=images,
                           image_degrees=M.image_degrees, check=False)


def is_zero(M: PresentedModule) -> bool:
    return minimalize(M).rank == 0


def subquotient(ring: GradedRing, space: Sequence[int], gens: Sequence[Vector],
                relations: Sequence[Vector]) -> PresentedModule:
    """(span(gens) + span(relations)) / span(relations) inside the free module ``space``.

    The generators of the result are the given ``gens`` (their vectors are
    recorded as ``images``).
    """
    space = tuple(space)
    gens = [g for g in (reduce_mod_ideal(v, ring) for v in gens) if g]
    relations = [q for q in (reduce_mod_ideal(v, ring) for v in relations) if q]
    if not gens:
        return PresentedModule(ring, (), (), minimal=True, images=(), image_degrees=space)
    gdeg = [vec_degree(g, space) for g in gens]
    qdeg = [vec_degree(q, space) for q in relations]
    ker = kernel_of_matrix(list(gens) + list(relations), space, gdeg + qdeg, ring)
    g = len(gens)
    rels = []
    for v in ker:
        w = {(k, m): c for (k, m), c in v.items() if k < g}
        if w:
            rels.append(w)
    M = PresentedModule(ring, gdeg, rels, images=gens, image_degrees=space, check=False)
    return minimalize(M)


def kernel_module(ring: GradedRing, columns: Sequence[Vector], target: Sequence[int],
                  source: Sequence[int], modulo: Sequence[Vector] = ()) -> List[Vector]:
    """Generators (in the source free module) of {v : A v in span(modulo)}."""
    cols = list(columns)
    mod = [q for q in modulo if q]
    ker = kernel_of_matrix(cols + mod, target,
                           list(source) + [vec_degree(q, target) for q in mod], ring)
    s = len(cols)
    out = []
    for v in ker:
        w = {(k, m): c for (k, m), c in v.items() if k < s}
        if w:
            out.append(w)
    return out


# --------------------------------------------------------------- resolutions
@dataclass
class Resolution:
    """Minimal free resolution ``... -> F_2 -> F_1 -> F_0``.

    ``modules[i]`` holds the generator degrees of F_i and ``differentials[i]``
    the columns of d_{i+1}: F_{i+1} -> F_i.  ``complete`` is set when a zero
    kernel was reached, so the resolution is finite and exact as given.
    """

    ring: GradedRing
    modules: List[Tuple[int, ...]]
    differentials: List[Tuple[Vector, ...]]
    complete: bool

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def rank(self, i: int) -> int:
        return len(self.modules[i]) if i < len(self.modules) else 0

    def degrees(self, i: int) -> Tuple[int, ...]:
        if i < 0:
            return ()
        if i < len(self.modules):
            return self.modules[i]
        if self.complete:
            return ()
        raise config.TruncationExceeded(f"resolution only computed to length {self.length}")

    def differential(self, i: int) -> Tuple[Vector, ...]:
        """Columns of d_i: F_i -> F_{i-1} (empty for i = 0 or beyond the end)."""
        if i <= 0:
            return ()
        if i - 1 < len(self.differentials):
            return self.differentials[i - 1]
        if self.complete:
            return ()
        raise config.TruncationExceeded(f"resolution only computed to length {self.length}")

    def matrix(self, i: int) -> MatrixOverRing:
        return MatrixOverRing(FreeModule(self.ring, self.degrees(i)),
                              FreeModule(self.ring, self.degrees(i - 1)), self.differential(i))

    def betti(self) -> "BettiTable":
        table = {}
        for i, degs in enumerate(self.modules):
            for d in degs:
                table[(i, d)] = table.get((i, d), 0) + 1
        return BettiTable(tuple(sorted(table.items())), self.complete)

    def projective_dimension(self) -> Optional[int]:
        if not self.complete:
            return None
        return max((i for i, degs in enumerate(self.modules) if degs), default=-1)

    def is_minimal(self) -> bool:
        zero = (0,) * self.ring.nvars
        return all(m != zero for cols in self.differentials for col in cols for (_k, m) in col)

    def check_complex(self) -> bool:
        p = self.ring.p
        for i in range(1, len(self.differentials)):
            a, b = self.differentials[i - 1], self.differentials[i]
            for col in b:
                acc: Vector = {}
                for (k, m), c in col.items():
                    acc = vec_add(acc, vec_scale(a[k], c, m, p), p)
                if reduce_mod_ideal(acc, self.ring):
                    return False
        return True


@dataclass(frozen=True)
class BettiTable:
    entries: Tuple[Tuple[Tuple[int, int], int], ...]
    complete: bool

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return dict(self.entries)

    def ranks(self) -> List[int]:
        out: Dict[int, int] = {}
        for (i, _), b in self.entries:
            out[i] = out.get(i, 0) + b
        return [out.get(i, 0) for i in range(max(out, default=-1) + 1)]

    def truncate(self, L: int) -> "BettiTable":
        return BettiTable(tuple(e for e in self.entries if e[0][0] <= L), False)

    def alternating_numerator(self) -> Dict[int, int]:
        num: Dict[int, int] = {}
        for (i, j), b in self.entries:
            num[j] = num.get(j, 0) + (-1) ** i * b
        return {e: c for e, c in num.items() if c}

    def to_json(self) -> list:
        return [[i, j, b] for (i, j), b in self.entries]


_RES_MEMO: Dict[tuple, Resolution] = {}
_RES_LOCK = threading.Lock()


def resolve(M: PresentedModule, length: int) -> Resolution:
    """Minimal free resolution of M through F_length (memoized, extended on demand)."""
    if length < 0:
        raise ValueError("length must be >= 0")
    Mm = minimalize(M)
    key = (Mm.fingerprint(), config.degree_cap())
    res = _RES_MEMO.get(key)
    if res is None:
        res = Resolution(M.ring, [Mm.degrees], [], Mm.rank == 0)
        if Mm.relations:
            res.modules.append(Mm.relation_degrees())
            res.differentials.append(Mm.relations)
        elif Mm.rank:
            res.complete = True
    while not res.complete and res.length < length:
        cols = res.differentials[-1]
        ker = kernel_of_matrix(cols, res.modules[-2], res.modules[-1], M.ring)
        if not ker:
            res.complete = True
            break
        res.modules.append(tuple(vec_degree(v, res.modules[-1]) for v in ker))
        res.differentials.append(tuple(ker))
    with _RES_LOCK:
        _RES_MEMO.setdefault(key, res)
    return res


def betti(M: PresentedModule, length: int) -> BettiTable:
    return resolve(M, length).betti()


def projective_dimension(M: PresentedModule, bound: int) -> Optional[int]:
    """pd over the module's own ring if a resolution completes within ``bound`` steps."""
    res = resolve(M, bound + 1)
    return res.projective_dimension()


def ambient_resolution(M: PresentedModule) -> Resolution:
    """The finite minimal resolution of M regarded over the ambient ring."""
    return M.cached("ambient_res", lambda: resolve(M.over_ambient(), M.ring.nvars + 1))


def hilbert_series(M: PresentedModule) -> HilbertSeries:
    def compute():
        res = ambient_resolution(M)
        if not res.complete:
            raise config.TruncationExceeded("ambient resolution did not complete")
        return HilbertSeries.make(res.betti().alternating_numerator(), M.ring.nvars)
    return M.cached("hs", compute)


def hilbert_function(M: PresentedModule, d: int) -> int:
    return hilbert_series(M).coefficient(d)


def hilbert_function_direct(M: PresentedModule, d: int) -> int:
    """dim M_d by counting standard monomials of a Groebner basis of the relations."""
    A = M.over_ambient()
    if A.rank == 0:
        return 0
    order = ModuleOrder(M.ring.order, A.degrees)
    eng = Buchberger(M.ring.p, order, cap=max(config.degree_cap(), d - min(A.degrees) + 1))
    eng.add_generators(A.relations)
    eng.run(upto=d)
    count = 0
    for i, di in enumerate(A.degrees):
        leads = [eng.leads[k][1] for k in eng.by_comp.get(i, [])]
        for m in monomials_of_degree(M.ring.nvars, d - di):
            if not any(divides(l, m) for l in leads):
                count += 1
    return count


# ------------------------------------------------------------- Hom/Ext/Tor
def _block_relations(N: PresentedModule, blocks: int) -> List[Vector]:
    L = N.rank
    out = []
    for b in range(blocks):
        for q in N.relations:
            out.append({(b * L + l, m): c for (l, m), c in q.items()})
    return out


def _hom_cover(Fdeg: Sequence[int], N: PresentedModule) -> Tuple[int, ...]:
    return tuple(g - a for a in Fdeg for g in N.degrees)


def _hom_map(d_cols: Sequence[Vector], N: PresentedModule) -> List[Vector]:
    """Columns of Hom(d, N): Hom(F_j, N) -> Hom(F_{j+1}, N), indexed by (b, l)."""
    L = N.rank
    rows: Dict[int, Vector] = {}
    for c, col in enumerate(d_cols):
        for (b, m), x in col.items():
            for l in range(L):
                rows.setdefault(b * L + l, {})[(c * L + l, m)] = x
    return rows


def _tensor_cover(Fdeg: Sequence[int], N: PresentedModule) -> Tuple[int, ...]:
    return tuple(a + g for a in Fdeg for g in N.degrees)


def _tensor_map(d_cols: Sequence[Vector], N: PresentedModule) -> List[Vector]:
    """Columns of d (x) 1: F_j (x) N -> F_{j-1} (x) N, indexed by (c, l)."""
    L = N.rank
    out = []
    for col in d_cols:
        for l in range(L):
            out.append({(b * L + l, m): x for (b, m), x in col.items()})
    return out


def ext(M: PresentedModule, N: PresentedModule, i: int) -> PresentedModule:
    """Ext^i_R(M, N) as a minimal presentation; generators carry their cocycles."""
    if i < 0:
        raise ValueError("Ext index must be >= 0")
    if M.ring != N.ring:
        raise RingError("modules over different rings")
    key = ("ext", i, N.fingerprint())
    return M.cached(key, lambda: _ext(M, minimalize(N), i))


def _ext(M, N, i):
    ring = M.ring
    res = resolve(M, i + 1)
    Fi = res.degrees(i)
    Fi1 = res.degrees(i + 1)
    cover = _hom_cover(Fi, N)
    if not cover:
        return PresentedModule(ring, (), minimal=True, images=(), image_degrees=())
    beta = _hom_map(res.differential(i + 1), N)
    beta_cols = [beta.get(k, {}) for k in range(len(cover))]
    if Fi1:
        Z = kernel_module(ring, beta_cols, _hom_cover(Fi1, N), cover,
                          _block_relations(N, len(Fi1)))
    else:
        Z = [{(k, (0,) * ring.nvars): 1} for k in range(len(cover))]
    Q = _block_relations(N, len(Fi))
    if i > 0:
        alpha = _hom_map(res.differential(i), N)
        Q += [v for v in alpha.values() if v]
    return subquotient(ring, cover, Z, Q)


def hom(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    """Hom_R(M, N); generator images are the values phi(e_i) stacked blockwise."""
    return ext(M, N, 0)


def dual(M: PresentedModule) -> PresentedModule:
    """M* = Hom(M, R)."""
    return hom(M, PresentedModule.free(M.ring))


def tor(M: PresentedModule, N: PresentedModule, i: int) -> PresentedModule:
    if i < 0:
        raise ValueError("Tor index must be >= 0")
    if M.ring != N.ring:
        raise RingError("modules over different rings")
    key = ("tor", i, N.fingerprint())
    return M.cached(key, lambda: _tor(M, minimalize(N), i))


def _tor(M, N, i):
    ring = M.ring
    res = resolve(M, i + 1)
    Fi = res.degrees(i)
    cover = _tensor_cover(Fi, N)
    if not cover:
        return PresentedModule(ring, (), minimal=True, images=(), image_degrees=())
    if i > 0:
        delta = _tensor_map(res.differential(i), N)
        Z = kernel_module(ring, delta, _tensor_cover(res.degrees(i - 1), N), cover,
                          _block_relations(N, len(res.degrees(i - 1))))
    else:
        Z = [{(k, (0,) * ring.nvars): 1} for k in range(len(cover))]
    Q = _block_relations(N, len(Fi)) + _tensor_map(res.differential(i + 1), N)
    return subquotient(ring, cover, Z, Q)


def tensor(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    return tor(M, N, 0)


# ------------------------------------------------------ ideals and functionals
def annihilator(M: PresentedModule) -> List[Polynomial]:
    """Generators of ann(M), from one kernel computation.

    r annihilates M iff r*e_i lies in im(A) for every generator e_i; stack
    one copy of F_0 (shifted by -d_i) per generator.
    """
    Mm = minimalize(M)
    ring = M.ring
    S = ring.ambient
    r = Mm.rank
    if r == 0:
        return [S.one()]
    space = tuple(d - di for di in Mm.degrees for d in Mm.degrees)
    zero = (0,) * ring.nvars
    v = {(i * r + i, zero): 1 for i in range(r)}
    cols = [v]
    for i in range(r):
        for q in Mm.relations:
            cols.append({(i * r + k, m): c for (k, m), c in q.items()})
    srcdeg = [0] + [vec_degree(c, space) for c in cols[1:]]
    ker = kernel_of_matrix(cols, space, srcdeg, ring)
    gens = []
    for w in ker:
        f = {m: c for (k, m), c in w.items() if k == 0}
        if f:
            gens.append(S.element(f))
    return reduce_ideal_gens(gens, ring)


def reduce_ideal_gens(gens: Sequence[Polynomial], ring: GradedRing) -> List[Polynomial]:
    """Minimal generators of (gens) + I / I, as reduced polynomials."""
    vecs = [reduce_mod_ideal({(0, m): c for m, c in f.data.items()}, ring) for f in gens]
    vecs = [v for v in vecs if v]
    if not vecs:
        return []
    degs = [vec_degree(v, (0,)) for v in vecs]
    if any(d == 0 for d in degs):
        return [ring.ambient.one()]
    keep = minimal_generators(vecs, (0,), ring)
    return [ring.ambient.element({m: c for (_, m), c in vecs[k].items()}) for k in keep]


def functionals(M: PresentedModule) -> List[List[Polynomial]]:
    """Generators phi of M*, as the lists (phi(e_1), ..., phi(e_r))."""
    Mm = minimalize(M)
    D = dual(Mm)
    S = M.ring.ambient
    out = []
    for img in D.images or ():
        vals = [dict() for _ in range(Mm.rank)]
        for (k, m), c in img.items():
            vals[k][m] = c
        out.append([S.element(v) for v in vals])
    return out


def trace_ideal(M: PresentedModule) -> List[Polynomial]:
    """Generators of the trace ideal: all values phi(e_i) for phi in M*."""
    gens = [f for phi in functionals(M) for f in phi if not f.is_zero()]
    return reduce_ideal_gens(gens, M.ring)


def ideal_hilbert_series(ring: GradedRing, gens: Sequence[Polynomial]) -> HilbertSeries:
    return hilbert_series(PresentedModule.cyclic(ring, gens))
