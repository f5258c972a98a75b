"""Ideal membership for pairs of binary forms, and resultant utilities.

For coprime binary forms h0, h1 of degrees m, n, every form of degree
>= m + n - 1 lies in the ideal (h0, h1); concretely the (m+n) x (m+n)
Sylvester matrix expresses the degree-(m+n-1) monomials in terms of the
shifted copies of h0 and h1, and the same band system in any degree
d >= m + n - 1 is surjective.  `two_gen_solve` solves

    target = x0 * h0 + x1 * h1

slice by slice over the s,t-monomials of the target, with free variables set
to zero, so the answer is canonical.  `psi_solve` plays the same game against
a graded syzygy matrix with a unique solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from . import linalg
from .bipoly import (
    BiPoly,
    CertificateError,
    HypothesisError,
    UniHomPoly,
    uni_gcd,
)
from .hburch import HBResolution


def sylvester_from_coeffs(fc: Sequence[int], gc: Sequence[int], p: int
                          ) -> NDArray[np.int64]:
    """Sylvester band matrix for formal degrees m = len(fc)-1, n = len(gc)-1.

    Row r < n carries fc shifted by r; row n + r (r < m) carries gc shifted
    by r.  Columns correspond to the degree-(m+n-1) monomials x^(m+n-1-c) y^c,
    c ascending.
    """
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    M = np.zeros((size, size), dtype=np.int64)
    for r in range(n):
        for k, c in enumerate(fc):
            M[r, r + k] = c % p
    for r in range(m):
        for k, c in enumerate(gc):
            M[n + r, r + k] = c % p
    return M


def sylvester(f: UniHomPoly, g: UniHomPoly) -> NDArray[np.int64]:
    if f.is_zero or g.is_zero:
        raise ValueError("Sylvester matrix needs nonzero forms")
    return sylvester_from_coeffs(f.coeffs, g.coeffs, f.p)


def resultant(f: UniHomPoly, g: UniHomPoly) -> int:
    return linalg.det_field(sylvester(f, g), f.p)


def pair_system(h0: UniHomPoly, h1: UniHomPoly, d: int, p: int
                ) -> NDArray[np.int64]:
    """Columns u^(e0-w) v^w h0 then u^(e1-w) v^w h1 against degree-d rows."""
    cols = []
    for h in (h0, h1):
        e = d - h.degree
        for w in range(e + 1):
            col = np.zeros(d + 1, dtype=np.int64)
            for k, c in enumerate(h.coeffs):
                col[w + k] = c
            cols.append(col)
    return np.stack(cols, axis=1)


@dataclass(frozen=True)
class TwoGenCertificate:
    """target = x0 * h0 + x1 * h1."""

    x0: BiPoly
    x1: BiPoly


def two_gen_solve(target: BiPoly, h0: UniHomPoly, h1: UniHomPoly,
                  st_degree: Optional[int] = None,
                  uv_degree: Optional[int] = None) -> TwoGenCertificate:
    """Canonical membership certificate of target in (h0, h1).

    Requires unit gcd and target uv-degree >= deg h0 + deg h1 - 1.  Solved
    slice by slice over s^i t^(c-i) with free variables zero; the result is
    verified exactly before returning.
    """
    p = h0.p
    common = uni_gcd(h0, h1)
    if common.is_zero or common.degree > 0:
        raise HypothesisError("the pair of forms shares a common factor")
    bd = target.bidegree()
    if bd is not None:
        st_degree, uv_degree = bd
    if st_degree is None or uv_degree is None:
        raise ValueError("zero target needs explicit degrees")
    c, d = st_degree, uv_degree
    if d < h0.degree + h1.degree - 1:
        raise HypothesisError(
            f"target uv-degree {d} below the membership threshold "
            f"{h0.degree + h1.degree - 1}")
    M = pair_system(h0, h1, d, p)
    e0 = d - h0.degree
    slices0, slices1 = [], []
    for sl in target.st_slices(c, d):
        x = linalg.solve_particular(M, np.array(sl.coeffs, dtype=np.int64), p)
        if x is None:
            raise CertificateError("membership system unexpectedly inconsistent")
        slices0.append(UniHomPoly(p, e0, tuple(int(t) for t in x[:e0 + 1])))
        slices1.append(UniHomPoly(p, d - h1.degree,
                                  tuple(int(t) for t in x[e0 + 1:])))
    x0 = BiPoly.from_st_slices(slices0, c, p)
    x1 = BiPoly.from_st_slices(slices1, c, p)
    resid = target - x0 * h0.to_bipoly() - x1 * h1.to_bipoly()
    if not resid.is_zero:
        raise CertificateError("membership certificate failed the exact check")
    return TwoGenCertificate(x0, x1)


def psi_solve(f_prime: Sequence[BiPoly], psi: HBResolution, a: int, b: int
              ) -> list[BiPoly]:
    """The unique alpha with psi * alpha = f_prime, alpha_j of bidegree
    (a, b - mu_j)."""
    mat = psi.matrix
    p = mat.p
    k = len(mat.row_degrees)
    if len(f_prime) != k:
        raise ValueError("length of f_prime must match the rows of psi")
    n = mat.row_degrees[0]
    mus = [cd - n for cd in mat.col_degrees]
    if any(b - mu < 0 for mu in mus):
        raise HypothesisError("a column degree of psi exceeds b")
    blocks = [b - mu + 1 for mu in mus]
    cols = []
    for j, mu in enumerate(mus):
        for w in range(blocks[j]):
            col = np.zeros(k * (b + 1), dtype=np.int64)
            for i in range(k):
                e = mat.entries[i][j]
                if e.is_zero:
                    continue
                for kk, cc in enumerate(e.coeffs):
                    if cc:
                        col[i * (b + 1) + w + kk] = cc
            cols.append(col)
    M = np.stack(cols, axis=1)
    if linalg.kernel_basis(M, p):
        raise CertificateError("psi is not injective in the solve degree")
    slices: list[list[UniHomPoly]] = [[] for _ in mus]
    for pos in range(a + 1):
        rhs = np.concatenate([
            np.array(f.st_slices(a, b)[pos].coeffs, dtype=np.int64)
            for f in f_prime])
        x = linalg.solve_particular(M, rhs, p)
        if x is None:
            raise CertificateError("f_prime is not in the image of psi")
        off = 0
        for j, size in enumerate(blocks):
            slices[j].append(UniHomPoly(p, b - mus[j],
                                        tuple(int(t) for t in x[off:off + size])))
            off += size
    alphas = [BiPoly.from_st_slices(sl, a, p) for sl in slices]
    # exact verification
    for i in range(k):
        acc = BiPoly.zero(p)
        for j in range(len(mus)):
            e = mat.entries[i][j]
            if not e.is_zero:
                acc = acc + e.to_bipoly() * alphas[j]
        if not (acc - f_prime[i]).is_zero:
            raise CertificateError("psi solve failed the exact check")
    return alphas


# ---------------------------------------------------------------------------
# resultants of bigraded forms and exact coprimality


def resultant_uv(f: BiPoly, g: BiPoly, deg_f: tuple[int, int],
                 deg_g: tuple[int, int], p: int) -> UniHomPoly:
    """Homogeneous resultant in (u, v) with fixed formal bidegrees.

    The result is a binary form in (s, t) of degree cf*dg + cg*df, computed
    by specialize-and-interpolate; t is set to 1 at cf*dg + cg*df + 1 sample
    values of s, which stays below p for every supported size.
    """
    (cf, df), (cg, dg) = deg_f, deg_g
    D = cf * dg + cg * df
    if D == 0:
        val = linalg.det_field(
            sylvester_from_coeffs(
                f.substitute_st(1, 1, df).coeffs,
                g.substitute_st(1, 1, dg).coeffs, p), p)
        return UniHomPoly(p, 0, (val,))
    if D + 1 > p:
        raise ValueError("prime too small for resultant interpolation")
    samples = []
    for s0 in range(D + 1):
        fc = f.substitute_st(s0, 1, df).coeffs
        gc = g.substitute_st(s0, 1, dg).coeffs
        samples.append(linalg.det_field(sylvester_from_coeffs(fc, gc, p), p))
    # R(s, 1) = sum r_k s^(D-k): Vandermonde solve for r
    V = np.zeros((D + 1, D + 1), dtype=np.int64)
    for row, s0 in enumerate(range(D + 1)):
        acc = 1
        for k in range(D, -1, -1):
            V[row, k] = acc
            acc = acc * s0 % p
    sol = linalg.solve_particular(V, np.array(samples, dtype=np.int64), p)
    if sol is None:
        raise CertificateError("resultant interpolation failed")
    return UniHomPoly(p, D, tuple(int(t) for t in sol))


def st_content(f: BiPoly, c: int, d: int) -> UniHomPoly:
    """gcd of the (s, t)-coefficient forms of f, one per u^k v^l monomial."""
    groups: dict[tuple[int, int], list[int]] = {}
    for (i, j, k, l), coeff in f.terms.items():
        groups.setdefault((k, l), [0] * (c + 1))[j] = coeff
    acc: Optional[UniHomPoly] = None
    for coeffs in groups.values():
        form = UniHomPoly(f.p, c, tuple(coeffs))
        acc = form if acc is None else uni_gcd(acc, form)
    return acc if acc is not None else UniHomPoly.zero(f.p, 0)


def uv_content(f: BiPoly, c: int, d: int) -> UniHomPoly:
    from .bipoly import mirror_poly
    return st_content(mirror_poly(f), d, c)


def bihomog_coprime(f: BiPoly, g: BiPoly) -> bool:
    """Exact coprimality of two nonzero bihomogeneous polynomials."""
    bf, bg = f.bidegree(), g.bidegree()
    if bf is None or bg is None:
        raise ValueError("inputs must be nonzero and bihomogeneous")
    p = f.p
    (cf, df), (cg, dg) = bf, bg
    cont_st = uni_gcd(st_content(f, cf, df), st_content(g, cg, dg))
    if cont_st.degree > 0:
        return False
    cont_uv = uni_gcd(uv_content(f, cf, df), uv_content(g, cg, dg))
    if cont_uv.degree > 0:
        return False
    if df > 0 and dg > 0:
        if resultant_uv(f, g, bf, bg, p).is_zero:
            return False
    return True
