"""Dense linear algebra over F_p on numpy int64 arrays.

Entries stay in [0, p) with p < 2^31, so a product of two entries fits in
int64 before reduction.
"""
from __future__ import annotations

import numpy as np


def as_matrix(rows, p: int, ncols: int | None = None) -> np.ndarray:
    a = np.asarray(rows, dtype=np.int64)
    if a.size == 0:
        return np.zeros((len(rows) if hasattr(rows, "__len__") else 0, ncols or 0), dtype=np.int64)
    return a % p


def rref(a: np.ndarray, p: int):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    a = np.array(a, dtype=np.int64) % p
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            a[rows] = (a[rows] - np.outer(col[rows], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of {v : a v = 0} as the rows of the returned array."""
    nrows, ncols = a.shape
    if ncols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if nrows == 0:
        return np.eye(ncols, dtype=np.int64)
    r, piv = rref(a, p)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(piv):
            basis[i, pc] = (-r[row, f]) % p
    return basis


def row_space_basis(a: np.ndarray, p: int) -> np.ndarray:
    if a.size == 0:
        return np.zeros((0, a.shape[1] if a.ndim == 2 else 0), dtype=np.int64)
    r, piv = rref(a, p)
    return r[: len(piv)]


def in_row_space(basis_rref: np.ndarray, pivots, v: np.ndarray, p: int) -> bool:
    """Whether v lies in the span of an RREF basis with the given pivots."""
    w = np.array(v, dtype=np.int64) % p
    for row, c in enumerate(pivots):
        if w[c]:
            w = (w - w[c] * basis_rref[row]) % p
    return not w.any()


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """a @ b mod p without int64 overflow on long inner dimensions."""
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    step = max(1, (2**62) // (p * p))
    for k in range(0, a.shape[1], step):
        out = (out + a[:, k:k + step] @ b[k:k + step, :]) % p
    return out
