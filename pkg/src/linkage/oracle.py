"""Brute-force graded linear algebra: the independent cross-check engine.

Rings and modules are realised degree by degree as explicit F_p vector
spaces with multiplication-by-variable matrices.  Free resolutions, Hom,
Ext and Tor dimensions are then computed by ranks and null spaces only;
nothing here calls the Groebner engine.  Input modules are read as raw
presentation data (generator degrees plus relation vectors).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import config
from .linalg import matmul, nullspace, rank, rref
from .ring import GradedRing, monomials_of_degree


class Inconclusive(RuntimeError):
    """The truncation degree is too small to decide the requested value."""


# ---------------------------------------------------------------- the ring
class TruncatedRing:
    """R_d for d <= D, with a basis of standard (non-pivot) monomials."""

    def __init__(self, ring: GradedRing, D: int):
        self.ring = ring
        self.p = ring.p
        self.n = ring.nvars
        self.D = -1
        self._monos: Dict[int, List[tuple]] = {}
        self._std: Dict[int, List[tuple]] = {}
        self._std_index: Dict[int, Dict[tuple, int]] = {}
        self._reduce: Dict[int, Dict[tuple, np.ndarray]] = {}
        self.extend(D)

    def extend(self, D: int):
        for d in range(self.D + 1, D + 1):
            self._build(d)
        self.D = max(self.D, D)

    def _build(self, d: int):
        p = self.p
        monos = sorted(monomials_of_degree(self.n, d), key=self.ring.order.key, reverse=True)
        idx = {m: k for k, m in enumerate(monos)}
        rows = []
        for f in self.ring.ideal:
            e = f.degree()
            if e > d:
                continue
            for mu in monomials_of_degree(self.n, d - e):
                row = np.zeros(len(monos), dtype=np.int64)
                for m, c in f.data.items():
                    row[idx[tuple(a + b for a, b in zip(m, mu))]] += c
                rows.append(row % p)
        if rows:
            red, piv = rref(np.array(rows), p)
        else:
            red, piv = np.zeros((0, len(monos)), dtype=np.int64), []
        pivset = set(piv)
        std = [m for k, m in enumerate(monos) if k not in pivset]
        std_pos = [k for k in range(len(monos)) if k not in pivset]
        sidx = {m: k for k, m in enumerate(std)}
        table = {}
        for k, m in enumerate(monos):
            vec = np.zeros(len(std), dtype=np.int64)
            if k in pivset:
                row = red[piv.index(k)]
                for s, pos in enumerate(std_pos):
                    vec[s] = (-row[pos]) % p
            else:
                vec[sidx[m]] = 1
            table[m] = vec
        self._monos[d] = monos
        self._std[d] = std
        self._std_index[d] = sidx
        self._reduce[d] = table

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        self.extend(d)
        return len(self._std[d])

    def std(self, d: int) -> List[tuple]:
        if d < 0:
            return []
        self.extend(d)
        return self._std[d]

    def reduce_mono(self, m: tuple) -> np.ndarray:
        d = sum(m)
        self.extend(d)
        return self._reduce[d][m]

    def reduce_poly(self, terms: Dict[tuple, int], d: int) -> np.ndarray:
        out = np.zeros(self.dim(d), dtype=np.int64)
        for m, c in terms.items():
            out = (out + c * self.reduce_mono(m)) % self.p
        return out


def _mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


# -------------------------------------------------------- truncated modules
class TruncatedModule:
    """A graded module known in degrees lo..D.

    ``dims[d]`` is dim M_d and ``act[v][d]`` the matrix of multiplication by
    the v-th variable, M_d -> M_{d+1} (acting on column vectors).
    """

    def __init__(self, ring: TruncatedRing, lo: int, D: int):
        self.R = ring
        self.p = ring.p
        self.lo = lo
        self.D = D
        self.dims: Dict[int, int] = {}
        self.act: List[Dict[int, np.ndarray]] = [dict() for _ in range(ring.n)]

    def dim(self, d: int) -> int:
        if d > self.D:
            raise Inconclusive(f"degree {d} beyond truncation {self.D}")
        return self.dims.get(d, 0)

    def mono_action(self, mono: tuple, d: int) -> np.ndarray:
        """Matrix of multiplication by a monomial, M_d -> M_{d+|mono|}."""
        cur = np.eye(self.dim(d), dtype=np.int64)
        deg = d
        for v, e in enumerate(mono):
            for _ in range(e):
                if deg + 1 > self.D:
                    raise Inconclusive(f"degree {deg + 1} beyond truncation {self.D}")
                A = self.act[v].get(deg)
                if A is None:
                    A = np.zeros((self.dim(deg + 1), self.dim(deg)), dtype=np.int64)
                cur = matmul(A, cur, self.p)
                deg += 1
        return cur

    def poly_action(self, coords: np.ndarray, k: int, d: int) -> np.ndarray:
        """Multiplication by the ring element with standard coordinates ``coords`` in R_k."""
        out = np.zeros((self.dim(d + k), self.dim(d)), dtype=np.int64)
        for s, c in zip(self.R.std(k), coords):
            if c:
                out = (out + int(c) * self.mono_action(s, d)) % self.p
        return out

    def check_commuting(self) -> bool:
        """x_i x_j = x_j x_i on every degree where both products are defined."""
        for d in range(self.lo, self.D - 1):
            for i in range(self.R.n):
                for j in range(i + 1, self.R.n):
                    ei = [0] * self.R.n
                    ei[i] += 1
                    ej = [0] * self.R.n
                    ej[j] += 1
                    a = matmul(self._act(j, d + 1), self._act(i, d), self.p)
                    b = matmul(self._act(i, d + 1), self._act(j, d), self.p)
                    if not np.array_equal(a, b):
                        return False
        return True

    def _act(self, v, d):
        A = self.act[v].get(d)
        if A is None:
            A = np.zeros((self.dim(d + 1), self.dim(d)), dtype=np.int64)
        return A

    def hilbert_function(self) -> Dict[int, int]:
        return {d: self.dim(d) for d in range(self.lo, self.D + 1)}


@dataclass
class FreeTrunc:
    """A graded free module sum R(-a_g), with bases (g, standard monomial)."""

    R: TruncatedRing
    degrees: Tuple[int, ...]
    _basis: Dict[int, List[Tuple[int, tuple]]] = field(default_factory=dict)

    def basis(self, d: int):
        b = self._basis.get(d)
        if b is None:
            b = [(g, s) for g, a in enumerate(self.degrees) for s in self.R.std(d - a)]
            self._basis[d] = b
        return b

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def offsets(self, d: int) -> List[int]:
        out, k = [], 0
        for a in self.degrees:
            out.append(k)
            k += self.R.dim(d - a)
        return out

    def act(self, v: int, d: int) -> np.ndarray:
        p = self.R.p
        src = self.basis(d)
        off = self.offsets(d + 1)
        A = np.zeros((self.dim(d + 1), len(src)), dtype=np.int64)
        for col, (g, s) in enumerate(src):
            m = list(s)
            m[v] += 1
            vec = self.R.reduce_mono(tuple(m))
            A[off[g]:off[g] + len(vec), col] = vec
        return A % p

    def as_module(self, lo: int, D: int) -> TruncatedModule:
        T = TruncatedModule(self.R, lo, D)
        for d in range(lo, D + 1):
            T.dims[d] = self.dim(d)
        for v in range(self.R.n):
            for d in range(lo, D):
                T.act[v][d] = self.act(v, d)
        return T

    def element(self, vec: Dict[Tuple[int, tuple], int], d: int) -> np.ndarray:
        """Coordinates of a homogeneous ambient vector {(g, mono): c} of degree d."""
        off = self.offsets(d)
        out = np.zeros(self.dim(d), dtype=np.int64)
        for (g, m), c in vec.items():
            r = self.R.reduce_mono(m)
            out[off[g]:off[g] + len(r)] = (out[off[g]:off[g] + len(r)] + c * r) % self.R.p
        return out


def _quotient_module(F: FreeTrunc, rels: Sequence[Tuple[int, Dict]], lo: int, D: int) -> TruncatedModule:
    """F / span(rels) in degrees lo..D; rels are (degree, ambient vector)."""
    p = F.R.p
    n = F.R.n
    T = TruncatedModule(F.R, lo, D)
    proj: Dict[int, Tuple[np.ndarray, list, list]] = {}
    for d in range(lo, D + 1):
        rows = []
        for c, vec in rels:
            if c > d:
                continue
            for mu in monomials_of_degree(n, d - c):
                shifted = {(g, _mul(m, mu)): x for (g, m), x in vec.items()}
                rows.append(F.element(shifted, d))
        dimF = F.dim(d)
        if rows and dimF:
            red, piv = rref(np.array(rows), p)
            red = red[:len(piv)]
        else:
            red, piv = np.zeros((0, dimF), dtype=np.int64), []
        keep = [k for k in range(dimF) if k not in set(piv)]
        proj[d] = (red, piv, keep)
        T.dims[d] = len(keep)

    def project(u: np.ndarray, d: int) -> np.ndarray:
        red, piv, keep = proj[d]
        u = u.copy() % p
        for r, c in enumerate(piv):
            if u[c]:
                u = (u - u[c] * red[r]) % p
        return u[keep]

    for v in range(n):
        for d in range(lo, D):
            A = F.act(v, d)
            _, _, keep = proj[d]
            cols = [project(A[:, k], d + 1) for k in keep]
            T.act[v][d] = (np.array(cols, dtype=np.int64).T if cols
                           else np.zeros((T.dims[d + 1], 0), dtype=np.int64))
    return T


def truncate(M, D: int = config.DEFAULT_ORACLE_DEGREE, lo: Optional[int] = None) -> TruncatedModule:
    """Degreewise realisation of coker(A) from raw presentation data, degrees <= D."""
    R = TruncatedRing(M.ring, max(D - min(M.degrees, default=0), 0) + 1)
    if lo is None:
        lo = min(M.degrees, default=0)
    F = FreeTrunc(R, tuple(M.degrees))
    rels = []
    for v in M.relations:
        deg = {sum(m) + M.degrees[g] for (g, m) in v}
        rels.append((deg.pop(), v))
    return _quotient_module(F, rels, lo, D)


# ------------------------------------------------------------ resolutions
@dataclass
class Level:
    """F_i = sum R(-a_g) with d_i given as F_{i-1}-coordinates of each generator."""

    free: FreeTrunc
    columns: List[np.ndarray]
    saturated: bool  # generators found at the top degree: more may exist above


def _minimal_generators(T: TruncatedModule, lo: int, D: int):
    """(degree, coordinate vector) for a minimal generating set in degrees lo..D."""
    p = T.p
    gens = []
    for d in range(lo, D + 1):
        dm = T.dims.get(d, 0)
        if dm == 0:
            continue
        span = []
        if d - 1 >= T.lo:
            for v in range(T.R.n):
                A = T.act[v].get(d - 1)
                if A is not None and A.size:
                    span.extend(A.T.tolist())
        for a, w in gens:
            if a == d:
                span.append(w.tolist())
        cur = rank(np.array(span, dtype=np.int64), p) if span else 0
        for k in range(dm):
            if cur == dm:
                break
            e = np.zeros(dm, dtype=np.int64)
            e[k] = 1
            r = rank(np.array(span + [e.tolist()], dtype=np.int64), p)
            if r > cur:
                span.append(e.tolist())
                gens.append((d, e))
                cur = r
    return gens


def _cover_map(T: TruncatedModule, F: FreeTrunc, gens, d: int) -> np.ndarray:
    """Matrix F_d -> T_d sending (g, s) to s * w_g."""
    cols = []
    for g, s in F.basis(d):
        a, w = gens[g]
        cols.append(matmul(T.mono_action(s, a), w.reshape(-1, 1), T.p)[:, 0])
    if not cols:
        return np.zeros((T.dim(d), 0), dtype=np.int64)
    return np.array(cols, dtype=np.int64).T


def _kernel_module(T: TruncatedModule, F: FreeTrunc, gens, lo: int, D: int):
    """ker(F -> T) as a TruncatedModule plus its embedding into F (RREF rows)."""
    p = T.p
    K = TruncatedModule(T.R, lo, D)
    emb: Dict[int, Tuple[np.ndarray, list]] = {}
    for d in range(lo, D + 1):
        phi = _cover_map(T, F, gens, d)
        ns = nullspace(phi, p) if F.dim(d) else np.zeros((0, 0), dtype=np.int64)
        if ns.shape[0]:
            red, piv = rref(ns, p)
            red = red[:len(piv)]
        else:
            red, piv = np.zeros((0, F.dim(d)), dtype=np.int64), []
        emb[d] = (red, piv)
        K.dims[d] = len(piv)
    for v in range(T.R.n):
        for d in range(lo, D):
            red, _ = emb[d]
            red1, piv1 = emb[d + 1]
            if red.shape[0] == 0:
                K.act[v][d] = np.zeros((len(piv1), 0), dtype=np.int64)
                continue
            img = matmul(F.act(v, d), red.T, p)  # columns in F_{d+1}
            K.act[v][d] = img[piv1, :] if piv1 else np.zeros((0, red.shape[0]), dtype=np.int64)
    return K, emb


class OracleResolution:
    """Minimal free resolution computed degree by degree up to internal degree D."""

    def __init__(self, M, D: int = config.DEFAULT_ORACLE_DEGREE):
        self.ring = M.ring
        self.D = D
        self.lo = min(M.degrees, default=0)
        self.R = TruncatedRing(M.ring, D - self.lo + 1)
        self.levels: List[Level] = []
        self._current = truncate(M, D)
        self._current_emb = None

    def extend(self, length: int):
        while len(self.levels) <= length:
            T = self._current
            gens = _minimal_generators(T, self.lo, self.D)
            F = FreeTrunc(self.R, tuple(a for a, _ in gens))
            prev_emb = self._current_emb
            cols = []
            for a, w in gens:
                if prev_emb is None:
                    cols.append(w)
                else:
                    red, piv = prev_emb[a]
                    cols.append(matmul(w.reshape(1, -1), red, self.R.p)[0])
            sat = any(a >= self.D for a, _ in gens)
            self.levels.append(Level(F, cols, sat))
            K, emb = _kernel_module(T, F, gens, self.lo, self.D)
            self._current = K
            self._current_emb = emb

    def ranks(self, length: int) -> List[int]:
        self.extend(length)
        return [len(lv.free.degrees) for lv in self.levels[:length + 1]]

    def free(self, i: int) -> FreeTrunc:
        if i < 0:
            return FreeTrunc(self.R, ())
        self.extend(i)
        return self.levels[i].free

    def entry(self, i: int, b: int, c: int) -> Tuple[np.ndarray, int]:
        """d_i[b, c] as (standard coordinates, degree) in R."""
        lv = self.levels[i]
        prev = self.levels[i - 1].free
        a_c = lv.free.degrees[c]
        k = a_c - prev.degrees[b]
        off = prev.offsets(a_c)
        u = lv.columns[c]
        return u[off[b]:off[b] + self.R.dim(k)], k

    def betti(self, length: int) -> Dict[Tuple[int, int], int]:
        self.extend(length)
        out: Dict[Tuple[int, int], int] = {}
        for i, lv in enumerate(self.levels[:length + 1]):
            for a in lv.free.degrees:
                out[(i, a)] = out.get((i, a), 0) + 1
        return out


# ------------------------------------------------------------------ Ext/Tor
def _block_offsets(sizes):
    out, k = [], 0
    for s in sizes:
        out.append(k)
        k += s
    return out, k


def _hom_space(res: OracleResolution, i: int, N: TruncatedModule, e: int):
    F = res.free(i)
    sizes = [N.dim(a + e) if a + e >= N.lo else 0 for a in F.degrees]
    return F, sizes


def _hom_differential(res: OracleResolution, i: int, N: TruncatedModule, e: int) -> np.ndarray:
    """Hom(F_i, N)_e -> Hom(F_{i+1}, N)_e, phi -> phi o d_{i+1}."""
    p = res.R.p
    F, s_in = _hom_space(res, i, N, e)
    G, s_out = _hom_space(res, i + 1, N, e)
    off_in, n_in = _block_offsets(s_in)
    off_out, n_out = _block_offsets(s_out)
    A = np.zeros((n_out, n_in), dtype=np.int64)
    for c, a_c in enumerate(G.degrees):
        if s_out[c] == 0:
            continue
        for b, a_b in enumerate(F.degrees):
            if s_in[b] == 0:
                continue
            coords, k = res.entry(i + 1, b, c)
            if k < 0 or not coords.any():
                continue
            blk = N.poly_action(coords, k, a_b + e)
            A[off_out[c]:off_out[c] + s_out[c], off_in[b]:off_in[b] + s_in[b]] += blk
    return A % p


def _check_saturation(res: OracleResolution, upto: int):
    res.extend(upto)
    for i in range(upto + 1):
        if res.levels[i].saturated:
            raise Inconclusive(f"resolution generators reach the truncation degree {res.D} at step {i}")


def ext_dims(M, N, i: int, lo: int, hi: int, D: int = config.DEFAULT_ORACLE_DEGREE,
             res: Optional[OracleResolution] = None) -> Dict[int, int]:
    """dim Ext^i(M, N)_e for lo <= e <= hi via the Hom complex of a brute-force resolution."""
    if res is None:
        res = OracleResolution(M, D)
    _check_saturation(res, i + 1)
    p = res.R.p
    amax = max([a for j in (i - 1, i, i + 1) for a in res.free(j).degrees] or [0])
    NT = truncate(N, amax + hi + 1)
    out = {}
    for e in range(lo, hi + 1):
        _, s_in = _hom_space(res, i, NT, e)
        dim_c = sum(s_in)
        if dim_c == 0:
            out[e] = 0
            continue
        beta = _hom_differential(res, i, NT, e)
        z = dim_c - (rank(beta, p) if beta.size else 0)
        if i > 0:
            alpha = _hom_differential(res, i - 1, NT, e)
            b = rank(alpha, p) if alpha.size else 0
        else:
            b = 0
        out[e] = z - b
    return out


def hom_dims_direct(M, N, lo: int, hi: int) -> Dict[int, int]:
    """dim Hom(M, N)_e by solving for generator images directly (no resolution)."""
    dmax = max((sum(m) + M.degrees[g] for v in M.relations for (g, m) in v), default=0)
    dmax = max([dmax] + list(M.degrees))
    NT = truncate(N, dmax + hi + 1)
    p = NT.p
    out = {}
    for e in range(lo, hi + 1):
        sizes = [NT.dim(a + e) if a + e >= NT.lo else 0 for a in M.degrees]
        off, total = _block_offsets(sizes)
        if total == 0:
            out[e] = 0
            continue
        blocks = []
        for v in M.relations:
            cdeg = {sum(m) + M.degrees[g] for (g, m) in v}.pop()
            tgt = cdeg + e
            rows = NT.dim(tgt) if tgt >= NT.lo else 0
            if rows == 0:
                continue
            A = np.zeros((rows, total), dtype=np.int64)
            for (g, m), c in v.items():
                if sizes[g]:
                    A[:, off[g]:off[g] + sizes[g]] += c * NT.mono_action(m, M.degrees[g] + e)
            blocks.append(A % p)
        if blocks:
            out[e] = total - rank(np.vstack(blocks), p)
        else:
            out[e] = total
    return out


def _tensor_differential(res: OracleResolution, i: int, N: TruncatedModule, e: int) -> np.ndarray:
    """(F_i (x) N)_e -> (F_{i-1} (x) N)_e."""
    p = res.R.p
    F = res.free(i)
    G = res.free(i - 1)
    s_in = [N.dim(e - a) if e - a >= N.lo else 0 for a in F.degrees]
    s_out = [N.dim(e - a) if e - a >= N.lo else 0 for a in G.degrees]
    off_in, n_in = _block_offsets(s_in)
    off_out, n_out = _block_offsets(s_out)
    A = np.zeros((n_out, n_in), dtype=np.int64)
    for c, a_c in enumerate(F.degrees):
        if s_in[c] == 0:
            continue
        for b, a_b in enumerate(G.degrees):
            if s_out[b] == 0:
                continue
            coords, k = res.entry(i, b, c)
            if not coords.any():
                continue
            blk = N.poly_action(coords, k, e - a_c)
            A[off_out[b]:off_out[b] + s_out[b], off_in[c]:off_in[c] + s_in[c]] += blk
    return A % p


def tor_dims(M, N, i: int, lo: int, hi: int, D: int = config.DEFAULT_ORACLE_DEGREE,
             res: Optional[OracleResolution] = None) -> Dict[int, int]:
    """dim Tor_i(M, N)_e for lo <= e <= hi.

    Exact whenever the resolution is computed through internal degree
    hi - min(deg N); generators above that cannot contribute.
    """
    nlo = min(N.degrees, default=0)
    need = hi - nlo
    if res is None:
        res = OracleResolution(M, max(D, need))
    if res.D < need:
        raise Inconclusive("resolution truncated below the requested Tor degree")
    res.extend(i + 1)
    p = res.R.p
    NT = truncate(N, hi - min([0] + [a for a in res.free(i).degrees]) + 1)
    out = {}
    for e in range(lo, hi + 1):
        F = res.free(i)
        s = [NT.dim(e - a) if e - a >= NT.lo else 0 for a in F.degrees]
        dim_c = sum(s)
        if dim_c == 0:
            out[e] = 0
            continue
        z = dim_c
        if i > 0:
            delta = _tensor_differential(res, i, NT, e)
            z -= rank(delta, p) if delta.size else 0
        beta = _tensor_differential(res, i + 1, NT, e)
        out[e] = z - (rank(beta, p) if beta.size else 0)
    return out


def hilbert_dims(M, lo: int, hi: int) -> Dict[int, int]:
    T = truncate(M, hi, lo=min(lo, min(M.degrees, default=0)))
    return {d: T.dim(d) if d >= T.lo else 0 for d in range(lo, hi + 1)}


def depth_oracle(M, D: int = config.DEFAULT_ORACLE_DEGREE) -> int:
    """Smallest i with Ext^i(k, M) != 0, scanning internal degrees up to D."""
    ring = M.ring
    n = ring.nvars

    class _K:
        pass
    k = _K()
    k.ring = ring
    k.degrees = (0,)
    k.relations = tuple({(0, tuple(1 if j == v else 0 for j in range(n))): 1} for v in range(n))
    res = OracleResolution(k, D)
    lo = min(M.degrees, default=0) - n - 1
    for i in range(n + 1):
        dims = ext_dims(k, M, i, lo, D - i - 1, D, res=res)
        if any(dims.values()):
            return i
    raise Inconclusive(f"no nonzero Ext(k, M) found through index {n} and degree {D}")


def dump(table: Dict[int, int]) -> Dict[str, int]:
    """JSON-ready per-degree table."""
    return {str(d): int(v) for d, v in sorted(table.items())}
