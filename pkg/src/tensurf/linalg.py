"""Exact dense linear algebra over F_p on int64 numpy arrays.

All entries live in [0, p).  With p < 2**31 every intermediate product of two
reduced residues fits in int64, so elimination reduces mod p after each
vectorized row update.  Conventions fixed here and relied on throughout:

* pivots are chosen leftmost (first nonzero entry scanning top to bottom);
* the canonical kernel basis has one vector per free column, ordered by free
  column ascending, with that free variable set to 1 and all other free
  variables set to 0;
* particular solutions set every free variable to 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

Matrix = NDArray[np.int64]
Vector = NDArray[np.int64]


def as_matrix(rows, p: int) -> Matrix:
    return np.asarray(rows, dtype=np.int64) % p


def _forward_echelon(M: Matrix, p: int) -> list[int]:
    """Reduce M in place to row echelon form (pivot entries normalized to 1).

    Returns the list of pivot columns; row i of the result carries the pivot
    in column pivots[i].
    """
    n_rows, n_cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r, c:] = M[r, c:] * inv % p
        tail = M[r + 1:, c]
        hot = np.nonzero(tail)[0]
        if hot.size:
            rows = hot + r + 1
            M[rows, c:] = (M[rows, c:] - M[rows, c, None] * M[r, c:]) % p
        pivots.append(c)
        r += 1
    return pivots


@dataclass(frozen=True)
class RrefResult:
    rank: int
    pivots: tuple[int, ...]
    matrix: Matrix


def rref(mat, p: int) -> RrefResult:
    """Full reduced row echelon form."""
    M = as_matrix(mat, p)
    pivots = _forward_echelon(M, p)
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        hot = np.nonzero(M[:i, c])[0]
        if hot.size:
            M[hot, c:] = (M[hot, c:] - M[hot, c, None] * M[i, c:]) % p
    return RrefResult(len(pivots), tuple(pivots), M)


def rank(mat, p: int) -> int:
    M = as_matrix(mat, p)
    return len(_forward_echelon(M, p))


def kernel_basis(mat, p: int) -> list[Vector]:
    """Canonical basis of the right kernel (free column ascending)."""
    M = as_matrix(mat, p)
    n_cols = M.shape[1]
    pivots = _forward_echelon(M, p)
    pivot_set = set(pivots)
    free = [c for c in range(n_cols) if c not in pivot_set]
    if not free:
        return []
    # Back-substitute only the free columns: cheap when the kernel is small.
    F = M[:len(pivots), free].copy()
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        col = M[:i, c]
        if np.any(col):
            F[:i] = (F[:i] - col[:, None] * F[i]) % p
    piv_arr = np.array(pivots, dtype=np.intp)
    out = []
    for j, fc in enumerate(free):
        v = np.zeros(n_cols, dtype=np.int64)
        v[fc] = 1
        if piv_arr.size:
            v[piv_arr] = (-F[:, j]) % p
        out.append(v)
    return out


def solve_particular(mat, rhs, p: int) -> Vector | None:
    """One solution of mat @ x = rhs with all free variables set to 0.

    Returns None when the system is inconsistent.
    """
    A = as_matrix(mat, p)
    b = as_matrix(rhs, p).reshape(-1, 1)
    M = np.hstack([A, b])
    n_cols = A.shape[1]
    pivots = _forward_echelon(M, p)
    if pivots and pivots[-1] == n_cols:
        return None
    R = M[:len(pivots), n_cols].copy()
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        col = M[:i, c]
        if np.any(col):
            R[:i] = (R[:i] - col * R[i]) % p
    x = np.zeros(n_cols, dtype=np.int64)
    if pivots:
        x[np.array(pivots, dtype=np.intp)] = R
    return x


def det_field(mat, p: int) -> int:
    """Determinant of a square matrix over F_p."""
    M = as_matrix(mat, p)
    n = M.shape[0]
    if M.shape[0] != M.shape[1]:
        raise ValueError("determinant of a non-square matrix")
    det = 1
    for c in range(n):
        nz = np.nonzero(M[c:, c])[0]
        if nz.size == 0:
            return 0
        pr = c + int(nz[0])
        if pr != c:
            M[[c, pr]] = M[[pr, c]]
            det = -det % p
        piv = int(M[c, c])
        det = det * piv % p
        inv = pow(piv, -1, p)
        M[c, c:] = M[c, c:] * inv % p
        tail = M[c + 1:, c]
        hot = np.nonzero(tail)[0]
        if hot.size:
            rows = hot + c + 1
            M[rows, c:] = (M[rows, c:] - M[rows, c, None] * M[c, c:]) % p
    return det


def matrix_inverse(mat, p: int) -> Matrix:
    M = as_matrix(mat, p)
    n = M.shape[0]
    if M.shape[0] != M.shape[1]:
        raise ValueError("inverse of a non-square matrix")
    aug = np.hstack([M, np.eye(n, dtype=np.int64)])
    res = rref(aug, p)
    if res.rank < n or res.pivots[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return res.matrix[:, n:]


def _batch_modinv(x: Vector, p: int) -> Vector:
    """Elementwise inverse mod p by Fermat exponentiation (x must be nonzero)."""
    e = p - 2
    result = np.ones_like(x)
    base = x % p
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def batch_det(mats, p: int) -> Vector:
    """Determinants of a stack of square matrices over F_p.

    ``mats`` has shape (N, n, n).  One elimination sweep runs for the whole
    stack, with per-matrix pivot choice, swap signs, and singular drop-out
    tracked in parallel.
    """
    M = np.asarray(mats, dtype=np.int64) % p
    M = M.copy()
    if M.ndim != 3 or M.shape[1] != M.shape[2]:
        raise ValueError("expected a stack of square matrices")
    n_mats, n = M.shape[0], M.shape[1]
    det = np.ones(n_mats, dtype=np.int64)
    alive = np.ones(n_mats, dtype=bool)
    for c in range(n):
        col = M[:, c:, c]
        has = col != 0
        any_nz = has.any(axis=1)
        det[alive & ~any_nz] = 0
        alive &= any_nz
        if not alive.any():
            return det
        first = has.argmax(axis=1)
        need = alive & (first > 0)
        if need.any():
            idx = np.nonzero(need)[0]
            rows = c + first[idx]
            tmp = M[idx, rows].copy()
            M[idx, rows] = M[idx, c]
            M[idx, c] = tmp
            det[idx] = -det[idx] % p
        piv = M[:, c, c].copy()
        piv[~alive] = 1
        det = det * piv % p
        inv = _batch_modinv(piv, p)
        M[:, c, c:] = M[:, c, c:] * inv[:, None] % p
        if c + 1 < n:
            below = M[:, c + 1:, c]
            M[:, c + 1:, c:] = (M[:, c + 1:, c:]
                                - below[:, :, None] * M[:, c, None, c:]) % p
    return det


def matmul_mod(A, B, p: int) -> Matrix:
    """(A @ B) mod p without int64 overflow (reduces per inner-dim step)."""
    A = as_matrix(A, p)
    B = as_matrix(B, p)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = (out + A[:, k, None] * B[k, None, :]) % p
    return out


def mat_vec_mod(A, x, p: int) -> Vector:
    A = as_matrix(A, p)
    x = as_matrix(x, p)
    out = np.zeros(A.shape[0], dtype=np.int64)
    for k in range(A.shape[1]):
        out = (out + A[:, k] * int(x[k])) % p
    return out
