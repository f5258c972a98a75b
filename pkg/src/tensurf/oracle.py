"""Independent implicitization by exact point elimination.

The implicit equation of the image surface is recovered from the generators
alone, without the syzygy pipeline: degree-e forms vanishing on the image
are exactly the kernel of evaluation at image points taken over a product
grid of parameter values.  A composed form f(g0..g3) is bihomogeneous of
bidegree (e*a, e*b), so vanishing on an (e*a + 1) x (e*b + 1) grid of
distinct affine nodes forces it to vanish identically; no probabilistic
stabilization is needed.  The module also certifies that the strand-matrix
determinant is a scalar multiple of a power of the recovered equation, and
screens the input for basepoints via pairwise resultants.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from . import linalg
from .bipoly import (CertificateError, FieldConfig, HypothesisError,
                     UniHomPoly, _upoly_gcd, _upoly_mod, uni_gcd)
from .cases import CaseResult, run_case
from .membership import resultant_uv
from .strand import DEFAULT_INTERPOLATION_CAP, Strand, build_strand, reconstruct_det
from .syzygy import SurfaceInput, VAnalysis, analyze
from .xpoly import (XPoly, divide_with_remainder, eval_matrix, grid_from_bipoly,
                    linear_substitute)

__all__ = [
    "OracleResult", "implicit_by_elimination",
    "DetCertificate", "verify_implicitization",
    "BasepointReport", "basepoint_check",
    "ImplicitizationResult", "implicitize",
]


# ---------------------------------------------------------------------------
# elimination oracle


@dataclass(frozen=True)
class OracleResult:
    """Implicit equation recovered by point elimination.

    ``kernel_dims`` records, per scanned degree, the exact dimension of the
    space of forms of that degree vanishing on the image.  A final dimension
    of one identifies the unique minimal equation; a larger value signals
    that the image is not a hypersurface of that degree (the first canonical
    kernel vector is still returned, and downstream certification will
    reject it).
    """

    f: XPoly
    degree: int
    kernel_dims: tuple[tuple[int, int], ...]
    scan: str
    grid_shape: tuple[int, int]

    @property
    def kernel_dim(self) -> int:
        return self.kernel_dims[-1][1]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _vandermonde(nodes: Sequence[int], width: int, p: int) -> NDArray[np.int64]:
    out = np.zeros((len(nodes), width), dtype=np.int64)
    for i, x in enumerate(nodes):
        acc = 1
        for j in range(width):
            out[i, j] = acc
            acc = acc * x % p
    return out


def implicit_by_elimination(inp: SurfaceInput, scan: str = "full",
                            rng_purpose: str = "oracle") -> OracleResult:
    """Scan degrees for the minimal implicit equation of the image.

    ``scan="full"`` tries every degree 1..2ab in order; ``scan="divisors"``
    tries only divisors of 2ab (cheaper, and still exact: a kernel of
    dimension one at degree e proves e is the true minimal degree).
    """
    if scan not in ("full", "divisors"):
        raise ValueError(f"unknown scan mode {scan!r}")
    p, a, b = inp.field.p, inp.a, inp.b
    size = 2 * a * b
    degrees = list(range(1, size + 1)) if scan == "full" else _divisors(size)
    rng = inp.field.rng(rng_purpose)
    t_nodes = rng.sample(range(p), size * a + 1)
    v_nodes = rng.sample(range(p), size * b + 1)
    gen_grids = [grid_from_bipoly(g, a, b) for g in inp.gens]
    dims: list[tuple[int, int]] = []
    for e in degrees:
        nt, nv = e * a + 1, e * b + 1
        tv = _vandermonde(t_nodes[:nt], a + 1, p)
        vv = _vandermonde(v_nodes[:nv], b + 1, p)
        points = np.stack(
            [linalg.matmul_mod(linalg.matmul_mod(tv, g, p), vv.T, p).reshape(-1)
             for g in gen_grids], axis=1)
        dead = np.flatnonzero(~points.any(axis=1))
        if dead.size:
            r = int(dead[0])
            raise HypothesisError(
                "all four generators vanish at parameter point "
                f"(1, {t_nodes[r // nv]}, 1, {v_nodes[r % nv]}); "
                "the input has a basepoint")
        kern = linalg.kernel_basis(eval_matrix(e, points, p), p)
        dims.append((e, len(kern)))
        if not kern:
            continue
        vec = kern[0] % p
        lead = int(vec[np.flatnonzero(vec)[0]])
        vec = vec * pow(lead, -1, p) % p
        return OracleResult(
            f=XPoly.from_coeff_vector(p, e, vec), degree=e,
            kernel_dims=tuple(dims), scan=scan, grid_shape=(nt, nv))
    raise HypothesisError(
        f"no implicit equation of degree <= {size} vanishes on the image; "
        "the input is degenerate")


# ---------------------------------------------------------------------------
# determinant certificate


@dataclass(frozen=True)
class DetCertificate:
    """Exactly verified relation det(strand) = c * F^exponent."""

    c: int
    exponent: int
    n_points: int
    mode: str
    det_poly: Optional[XPoly]
    f_transformed: Optional[XPoly]


def _pow_mod_array(vals: NDArray[np.int64], e: int, p: int) -> NDArray[np.int64]:
    out = np.ones_like(vals)
    base = vals % p
    while e:
        if e & 1:
            out = out * base % p
        base = base * base % p
        e >>= 1
    return out


def verify_implicitization(strand: Strand, oracle: OracleResult,
                           point_transform: NDArray[np.int64],
                           field: FieldConfig, n_points: int = 40,
                           mode: str = "eval",
                           interpolation_cap: int = DEFAULT_INTERPOLATION_CAP,
                           rng_purpose: str = "certificate") -> DetCertificate:
    """Certify det(strand) = c * F^d with d = size / deg F.

    The strand acts on the changed generator basis while the oracle equation
    F refers to the original one, so F is composed with ``point_transform``
    before comparison.  ``mode="eval"`` checks the relation at ``n_points``
    random points after fitting c; ``mode="interpolate"`` additionally
    reconstructs the determinant as a polynomial and divides it by F exactly,
    d times, checking every remainder vanishes and the last quotient is the
    constant c.
    """
    if mode not in ("eval", "interpolate"):
        raise ValueError(f"unknown certificate mode {mode!r}")
    p = field.p
    if strand.size % oracle.degree:
        raise CertificateError(
            f"implicit degree {oracle.degree} does not divide the strand "
            f"size {strand.size}")
    d = strand.size // oracle.degree
    transform = np.asarray(point_transform, dtype=np.int64) % p
    rng = field.rng(rng_purpose)

    def f_value(point: NDArray[np.int64]) -> int:
        return oracle.f.eval(linalg.mat_vec_mod(transform, point, p))

    c = None
    for _ in range(200):
        y = np.array([rng.randrange(p) for _ in range(4)], dtype=np.int64)
        dv = strand.det_at(y)
        fv = f_value(y)
        if (dv == 0) != (fv == 0):
            raise CertificateError(
                "determinant and implicit equation have different zero sets "
                f"at sample point {tuple(int(x) for x in y)}")
        if dv:
            c = dv * pow(pow(fv, d, p), -1, p) % p
            break
    if c is None:
        raise CertificateError(
            "could not find a sample point with nonzero determinant")

    pts = np.array([[rng.randrange(p) for _ in range(4)]
                    for _ in range(n_points)], dtype=np.int64)
    lhs = strand.det_at_many(pts)
    rhs = c * _pow_mod_array(
        oracle.f.eval_many(linalg.matmul_mod(pts, transform.T, p)), d, p) % p
    bad = int(np.count_nonzero(lhs != rhs))
    if bad:
        raise CertificateError(
            f"det = c * F^{d} fails at {bad} of {n_points} sample points")

    det_poly = f_transformed = None
    if mode == "interpolate":
        det_poly = reconstruct_det(strand, cap=interpolation_cap)
        f_transformed = linear_substitute(oracle.f, transform)
        quotient = det_poly
        for step in range(d):
            quotient, rem = divide_with_remainder(quotient, f_transformed)
            if not rem.is_zero:
                raise CertificateError(
                    f"nonzero remainder dividing the determinant by F "
                    f"(division {step + 1} of {d})")
        if quotient.is_zero or quotient.degree() != 0:
            raise CertificateError(
                f"determinant / F^{d} is not a nonzero constant")
        const = quotient.terms.get((0, 0, 0, 0), 0)
        if const != c:
            raise CertificateError(
                "interpolated constant differs from the point-fitted one")
    return DetCertificate(c=int(c), exponent=d, n_points=n_points, mode=mode,
                          det_poly=det_poly, f_transformed=f_transformed)


# ---------------------------------------------------------------------------
# basepoint screening


@dataclass(frozen=True)
class BasepointReport:
    """Outcome of the resultant-based basepoint screen.

    ``free`` certifies there is no common zero even over the algebraic
    closure: the six pairwise resultants have constant gcd on both charts.
    ``basepoint`` means some specialization at a base-field root of a gcd
    left the four generators with a nonconstant common factor, which has a
    common zero over the closure; ``witness`` carries a verified base-field
    zero when one exists.  ``undetermined`` means a gcd is nonconstant but
    no base-field root confirmed a common zero; zeros may live in an
    extension field.  ``g_uv`` and ``g_st`` are the resultant gcds of the
    two charts (in (s, t) and (u, v) respectively); ``candidates`` lists
    the base-field roots that were examined.
    """

    status: str
    witness: Optional[tuple[int, int, int, int]]
    g_uv: UniHomPoly
    g_st: UniHomPoly
    candidates: tuple[tuple[int, int], ...]
    detail: str


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    return out


def _pow_poly_mod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    acc = _upoly_mod(base[:], mod, p)
    while e:
        if e & 1:
            result = _upoly_mod(_pmul(result, acc, p), mod, p)
        acc = _upoly_mod(_pmul(acc, acc, p), mod, p)
        e >>= 1
    return result


def _strip_high(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_roots(coeffs: Sequence[int], p: int, rng) -> list[int]:
    """All roots in F_p of a univariate polynomial, ascending coefficients."""
    f = _strip_high([c % p for c in coeffs])
    if len(f) <= 1:
        return []
    # x^p - x mod f isolates the product of distinct linear factors
    h = _pow_poly_mod([0, 1], p, f, p)
    h = h + [0] * (2 - len(h))
    h[1] = (h[1] - 1) % p
    h = _strip_high(h)
    g = _upoly_gcd(f, h, p) if h else [c * pow(f[-1], -1, p) % p for c in f]

    def split(g: list[int]) -> list[int]:
        if len(g) <= 1:
            return []
        if len(g) == 2:
            return [-g[0] * pow(g[1], -1, p) % p]
        while True:
            r = rng.randrange(p)
            h = _pow_poly_mod([r, 1], (p - 1) // 2, g, p)
            h = h + [0] * (1 - len(h))
            h[0] = (h[0] - 1) % p
            h = _strip_high(h)
            if not h:
                continue
            w = _upoly_gcd(g, h, p)
            if 0 < len(w) - 1 < len(g) - 1:
                rest = _upoly_divide(g, w, p)
                return split(w) + split(rest)

    return sorted(split(g))


def _upoly_divide(a: list[int], b: list[int], p: int) -> list[int]:
    """Exact quotient of dense univariates, ascending coefficients."""
    a = a[:]
    deg_q = len(a) - len(b)
    inv = pow(b[-1], -1, p)
    q = [0] * (deg_q + 1)
    for i in range(deg_q, -1, -1):
        c = a[i + len(b) - 1] * inv % p
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - c * y) % p
    if any(a):
        raise ValueError("inexact univariate division")
    return q


def _form_roots(form: UniHomPoly, rng) -> list[tuple[int, int]]:
    """Projective roots of a nonzero binary form that lie over F_p."""
    p = form.p
    roots = [(1, z) for z in _poly_roots(list(form.coeffs), p, rng)]
    if form.coeffs[form.degree] == 0:
        roots.append((0, 1))
    return roots


def _resultant_gcd(inp: SurfaceInput) -> UniHomPoly:
    """gcd in (s, t) of the six pairwise uv-resultants of the generators."""
    deg = (inp.a, inp.b)
    acc: Optional[UniHomPoly] = None
    for i in range(4):
        for j in range(i + 1, 4):
            r = resultant_uv(inp.gens[i], inp.gens[j], deg, deg, inp.field.p)
            acc = r if acc is None else uni_gcd(acc, r)
    assert acc is not None
    return acc


def _specialized_gcd(inp: SurfaceInput, s0: int, t0: int) -> UniHomPoly:
    acc: Optional[UniHomPoly] = None
    for g in inp.gens:
        h = g.substitute_st(s0, t0, inp.b)
        acc = h if acc is None else uni_gcd(acc, h)
    assert acc is not None
    return acc


def _probe_root(inp: SurfaceInput, s0: int, t0: int, rng
                ) -> Optional[BasepointReport]:
    """Report a basepoint if the generators specialized at (s0 : t0) share
    a nonconstant factor; fields g_uv/g_st/candidates are filled by the
    caller."""
    acc = _specialized_gcd(inp, s0, t0)
    if acc.is_zero or acc.degree == 0:
        return None
    witness = None
    for u0, v0 in _form_roots(acc, rng):
        if all(g.eval(s0, t0, u0, v0) == 0 for g in inp.gens):
            witness = (s0, t0, u0, v0)
            break
    detail = ("verified common zero of all four generators" if witness
              else f"generators specialized at ({s0} : {t0}) share a factor "
                   f"of degree {acc.degree}; its zeros lie in an extension "
                   "field")
    return BasepointReport("basepoint", witness, UniHomPoly.zero(inp.field.p, 0),
                           UniHomPoly.zero(inp.field.p, 0), (), detail)


def basepoint_check(inp: SurfaceInput,
                    rng_purpose: str = "basepoints") -> BasepointReport:
    """Screen the generators for common zeros on P^1 x P^1.

    Constant resultant gcds on both charts prove there is none; otherwise
    base-field roots of the gcds are probed for a confirmed common zero.
    """
    rng = inp.field.rng(rng_purpose)
    g_uv = _resultant_gcd(inp)
    mirror = inp.mirror()
    g_st = _resultant_gcd(mirror)
    uv_const = not g_uv.is_zero and g_uv.degree == 0
    st_const = not g_st.is_zero and g_st.degree == 0
    if uv_const and st_const:
        return BasepointReport(
            "free", None, g_uv, g_st, (),
            "pairwise resultants have constant gcd on both charts")

    def chart_candidates(g: UniHomPoly) -> list[tuple[int, int]]:
        if g.is_zero:
            return [(1, rng.randrange(inp.field.p)) for _ in range(5)]
        if g.degree == 0:
            return []
        return _form_roots(g, rng)

    uv_candidates = chart_candidates(g_uv)
    for s0, t0 in uv_candidates:
        hit = _probe_root(inp, s0, t0, rng)
        if hit is not None:
            return BasepointReport(hit.status, hit.witness, g_uv, g_st,
                                   tuple(uv_candidates), hit.detail)
    st_candidates = chart_candidates(g_st)
    for u0, v0 in st_candidates:
        hit = _probe_root(mirror, u0, v0, rng)
        if hit is not None:
            witness = hit.witness
            if witness is not None:
                # mirror coordinates come back as (u, v, s, t)
                witness = (witness[2], witness[3], witness[0], witness[1])
            return BasepointReport(hit.status, witness, g_uv, g_st,
                                   tuple(st_candidates), hit.detail)
    parts = []
    if not uv_const:
        parts.append("uv-resultant gcd "
                     + ("vanishes identically" if g_uv.is_zero
                        else f"has degree {g_uv.degree}"))
    if not st_const:
        parts.append("st-resultant gcd "
                     + ("vanishes identically" if g_st.is_zero
                        else f"has degree {g_st.degree}"))
    return BasepointReport(
        "undetermined", None, g_uv, g_st,
        tuple(uv_candidates) + tuple(st_candidates),
        "; ".join(parts) + "; no base-field root confirmed a common zero")


# ---------------------------------------------------------------------------
# end-to-end pipeline


@dataclass(frozen=True)
class ImplicitizationResult:
    """Everything produced by one full implicitization run."""

    basepoints: Optional[BasepointReport]
    analysis: VAnalysis
    case: CaseResult
    strand: Strand
    oracle: OracleResult
    certificate: DetCertificate
    timings: dict


def implicitize(inp: SurfaceInput, check_level: str = "full",
                scan: str = "full", det_mode: str = "eval",
                n_points: int = 40,
                interpolation_cap: int = DEFAULT_INTERPOLATION_CAP,
                basepoints: str = "check") -> ImplicitizationResult:
    """Run analysis, case construction, strand, oracle and certificate.

    ``basepoints="check"`` refuses inputs with a verified basepoint and
    proceeds (recording the report) when the screen is inconclusive;
    ``"skip"`` bypasses the screen entirely.
    """
    if basepoints not in ("check", "skip"):
        raise ValueError(f"unknown basepoint mode {basepoints!r}")
    timings: dict = {}
    report: Optional[BasepointReport] = None
    start = time.perf_counter()
    if basepoints == "check":
        report = basepoint_check(inp)
        if report.status == "basepoint":
            raise HypothesisError(
                f"basepoint at {report.witness}; the construction requires "
                "a basepoint-free input")
        timings["basepoints"] = time.perf_counter() - start

    start = time.perf_counter()
    va = analyze(inp)
    case = run_case(va, check_level=check_level)
    timings["analysis"] = time.perf_counter() - start

    start = time.perf_counter()
    strand = build_strand(case)
    timings["strand"] = time.perf_counter() - start

    start = time.perf_counter()
    oracle = implicit_by_elimination(inp, scan=scan)
    timings["oracle"] = time.perf_counter() - start

    start = time.perf_counter()
    certificate = verify_implicitization(
        strand, oracle, va.point_transform, inp.field,
        n_points=n_points, mode=det_mode, interpolation_cap=interpolation_cap)
    timings["certificate"] = time.perf_counter() - start
    return ImplicitizationResult(
        basepoints=report, analysis=va, case=case, strand=strand,
        oracle=oracle, certificate=certificate, timings=timings)
