"""Square matrix of linear forms built from the syzygy family.

Each syzygy column of bidegree (c, d) is multiplied by every monomial of
bidegree (2a-1-c, b-1-d) to land in the fixed working bidegree
(2a-1, b-1).  The resulting columns assemble a square matrix of size
2ab whose entries are linear forms in the image coordinates x0..x3; the
determinant of that matrix is a scalar multiple of a power of the
implicit equation of the parameterized surface.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .bipoly import CertificateError, basis_position, monomial_basis
from .cases import CaseResult
from .xpoly import XPoly

DEFAULT_INTERPOLATION_CAP = 24

_EVAL_CHUNK = 2048


@dataclass(frozen=True)
class Strand:
    """Size-2ab matrix with entries linear in x0..x3.

    ``tensor`` has shape (size, size, 4); entry (r, c) is the linear form
    sum_k tensor[r, c, k] * x_k.  ``column_labels`` records, per column,
    the syzygy label and the monomial multiplier that produced it.
    """

    p: int
    a: int
    b: int
    size: int
    tensor: np.ndarray
    column_labels: tuple[tuple[str, tuple[int, int, int, int]], ...]

    def eval_matrix_at(self, point) -> np.ndarray:
        """Scalar matrix obtained by evaluating every entry at one point."""
        x = np.asarray(point, dtype=np.int64) % self.p
        return (self.tensor * x[None, None, :] % self.p).sum(axis=2) % self.p

    def det_at(self, point) -> int:
        return linalg.det_field(self.eval_matrix_at(point), self.p)

    def det_at_many(self, points: np.ndarray) -> np.ndarray:
        """Determinants at each row of an (N, 4) point array, chunked."""
        pts = np.asarray(points, dtype=np.int64) % self.p
        out = np.empty(pts.shape[0], dtype=np.int64)
        for lo in range(0, pts.shape[0], _EVAL_CHUNK):
            chunk = pts[lo:lo + _EVAL_CHUNK]
            mats = (self.tensor[None, :, :, :] * chunk[:, None, None, :]
                    % self.p).sum(axis=3) % self.p
            out[lo:lo + _EVAL_CHUNK] = linalg.batch_det(mats, self.p)
        return out


def build_strand(case: CaseResult) -> Strand:
    """Spread the syzygy family over monomial multipliers into a square matrix."""
    va = case.analysis
    a, b, p = va.input.a, va.input.b, va.input.field.p
    row_c, row_d = 2 * a - 1, b - 1
    size = 2 * a * b
    columns: list[np.ndarray] = []
    labels: list[tuple[str, tuple[int, int, int, int]]] = []
    for sy in case.syzygies:
        c, d = sy.bidegree
        for mult in monomial_basis(row_c - c, row_d - d):
            i, j, k, l = mult
            col = np.zeros((size, 4), dtype=np.int64)
            for x_idx, entry in enumerate(sy.entries):
                if entry.is_zero:
                    continue
                for (ei, ej, ek, el), coeff in entry.terms.items():
                    row = basis_position((ei + i, ej + j, ek + k, el + l),
                                         row_c, row_d)
                    col[row, x_idx] = coeff
            columns.append(col)
            labels.append((sy.label, mult))
    if len(columns) != size:
        raise CertificateError(
            f"strand is {size}x{len(columns)}, expected a square matrix")
    tensor = np.stack(columns, axis=1)
    return Strand(p=p, a=a, b=b, size=size, tensor=tensor,
                  column_labels=tuple(labels))


def build_d1_strand(case: CaseResult) -> Strand:
    """Alias for :func:`build_strand`; the matrix is the first differential
    of the graded strand in working bidegree (2a-1, b-1)."""
    return build_strand(case)


def eval_det(strand: Strand, point) -> int:
    """Determinant of the strand specialized at one point."""
    return strand.det_at(point)


def _affine_grid(n_nodes: int) -> np.ndarray:
    """All points (1, y1, y2, y3) with each y ranging over 0..n_nodes-1."""
    nodes = np.arange(n_nodes, dtype=np.int64)
    y1, y2, y3 = np.meshgrid(nodes, nodes, nodes, indexing="ij")
    pts = np.stack([np.ones(y1.size, dtype=np.int64),
                    y1.ravel(), y2.ravel(), y3.ravel()], axis=1)
    return pts


def _vandermonde_inverse(n_nodes: int, p: int) -> np.ndarray:
    nodes = np.arange(n_nodes, dtype=np.int64)
    V = np.ones((n_nodes, n_nodes), dtype=np.int64)
    for e in range(1, n_nodes):
        V[:, e] = V[:, e - 1] * nodes % p
    return linalg.matrix_inverse(V, p)


def reconstruct_det(strand: Strand,
                    cap: int = DEFAULT_INTERPOLATION_CAP) -> XPoly:
    """Exact determinant polynomial via product-grid interpolation.

    Evaluates the determinant on the affine chart x0 = 1 over a full
    (size+1)^3 grid, interpolates one variable at a time, and homogenizes
    back to total degree ``size``.  Raises ValueError above the size cap.
    """
    p, deg = strand.p, strand.size
    if deg > cap:
        raise ValueError(
            f"interpolation needs a ({deg + 1})^3 grid; size {deg} exceeds "
            f"the cap of {cap}")
    n_nodes = deg + 1
    values = strand.det_at_many(_affine_grid(n_nodes))
    tensor = values.reshape(n_nodes, n_nodes, n_nodes)
    vinv = _vandermonde_inverse(n_nodes, p)
    for _ in range(3):
        flat = tensor.reshape(n_nodes, -1)
        tensor = linalg.matmul_mod(vinv, flat, p).reshape(
            n_nodes, n_nodes, n_nodes).transpose(1, 2, 0)
    terms: dict[tuple[int, int, int, int], int] = {}
    for (i, j, k), c in np.ndenumerate(tensor):
        if not c:
            continue
        if i + j + k > deg:
            raise CertificateError(
                "interpolated determinant exceeds the strand degree")
        terms[(deg - i - j - k, i, j, k)] = int(c)
    result = XPoly(p, terms)
    rng = np.random.default_rng(0)
    spots = rng.integers(0, p, size=(10, 4), dtype=np.int64)
    for pt in spots:
        if result.eval(pt) != strand.det_at(pt):
            raise CertificateError(
                "interpolated determinant fails a spot check")
    return result
