"""Construction of the certifying syzygy quadruple, split by dim V.

Each pipeline receives the singly graded analysis (minimal n, f', g, the
completed generator list) and produces four syzygies S, S1, S2, S3 on the
completed generators whose strand described in :mod:`tensurf.strand` is a
square matrix of size 2ab.  The verification battery re-checks every
construction identity exactly; ``check_level="final"`` keeps only the
annihilation, homogeneity and column-count checks.

All three pipelines require b >= 2n - 1 (membership threshold for the
two-generator solves).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import hburch, membership
from .bipoly import BiPoly, CertificateError, HypothesisError, UniHomPoly, divide_by_uni
from .hburch import GradedSyzMatrix, HBResolution
from .syzygy import VAnalysis


@dataclass(frozen=True)
class SyzygyColumn:
    label: str
    bidegree: tuple[int, int]
    entries: tuple[BiPoly, BiPoly, BiPoly, BiPoly]


@dataclass(frozen=True)
class CaseResult:
    analysis: VAnalysis
    case_tag: str
    syzygies: tuple[SyzygyColumn, ...]
    aux: dict
    checks: dict[str, bool]


def expected_column_counts(syzygies: Sequence[SyzygyColumn], a: int, b: int
                           ) -> list[int]:
    """Strand column count contributed by each syzygy."""
    out = []
    for col in syzygies:
        c, d = col.bidegree
        out.append(max(0, 2 * a - c) * max(0, b - d))
    return out


def _mat_vec(mat: GradedSyzMatrix, coeffs: Sequence[BiPoly]) -> list[BiPoly]:
    """Product of a graded matrix with a vector of bigraded polynomials."""
    p = mat.p
    out = []
    for i in range(len(mat.row_degrees)):
        acc = BiPoly.zero(p)
        for m, c in enumerate(coeffs):
            e = mat.entries[i][m]
            if not e.is_zero and not c.is_zero:
                acc = acc + e.to_bipoly() * c
        out.append(acc)
    return out


def _check_annihilation(cols: Sequence[SyzygyColumn], gens: Sequence[BiPoly],
                        p: int) -> bool:
    for col in cols:
        acc = BiPoly.zero(p)
        for e, g in zip(col.entries, gens):
            if not e.is_zero:
                acc = acc + e * g
        if not acc.is_zero:
            return False
    return True


def _check_homogeneity(cols: Sequence[SyzygyColumn]) -> bool:
    return all(e.is_bihomogeneous(*col.bidegree)
               for col in cols for e in col.entries)


def _finish(va: VAnalysis, tag: str, cols: list[SyzygyColumn], aux: dict,
            checks: dict[str, bool]) -> CaseResult:
    a, b = va.input.a, va.input.b
    checks["annihilation"] = _check_annihilation(cols, va.new_gens, va.input.field.p)
    checks["homogeneity"] = _check_homogeneity(cols)
    counts = expected_column_counts(cols, a, b)
    checks["column_count"] = sum(counts) == 2 * a * b
    aux = dict(aux)
    aux["column_counts"] = counts
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise CertificateError(f"{tag} verification failed: {', '.join(failed)}")
    return CaseResult(va, tag, tuple(cols), aux, checks)


def run_case(va: VAnalysis, check_level: str = "full") -> CaseResult:
    if check_level not in ("full", "final"):
        raise ValueError("check_level must be 'full' or 'final'")
    if va.input.b < 2 * va.n - 1:
        raise HypothesisError(
            f"b = {va.input.b} is below 2n - 1 = {2 * va.n - 1}")
    if va.dim_v == 2:
        return _run_dim2(va, check_level)
    if va.dim_v == 3:
        return _run_dim3(va, check_level)
    if va.dim_v == 4:
        return _run_dim4(va, check_level)
    raise CertificateError(f"unsupported dim V = {va.dim_v}")


# ---------------------------------------------------------------------------
# dim V = 2


def _run_dim2(va: VAnalysis, check_level: str) -> CaseResult:
    p = va.input.field.p
    a, b, n = va.input.a, va.input.b, va.n
    g0, g1 = va.g
    f0p, f1p = va.f_prime
    try:
        alpha = divide_by_uni(f0p, g1)
    except ValueError as exc:
        raise CertificateError(f"f'_0 is not a multiple of g_1: {exc}") from exc
    checks: dict[str, bool] = {}
    checks["alpha_consistent"] = (f1p + alpha * g0.to_bipoly()).is_zero
    p2, p3 = va.new_gens[2], va.new_gens[3]
    neg_g0 = -g0
    cert_q = membership.two_gen_solve(p2, g1, neg_g0)
    cert_r = membership.two_gen_solve(p3, g1, neg_g0)
    q1, q0 = cert_q.x0, cert_q.x1
    r1, r0 = cert_r.x0, cert_r.x1
    zero = BiPoly.zero(p)
    cols = [
        SyzygyColumn("S", (0, n), (g0.to_bipoly(), g1.to_bipoly(), zero, zero)),
        SyzygyColumn("S1", (a, b - n), (q1, q0, -alpha, zero)),
        SyzygyColumn("S2", (a, b - n), (r1, r0, zero, -alpha)),
    ]
    aux = {"alpha": alpha, "q": (q0, q1), "r": (r0, r1), "g": va.g}
    return _finish(va, "dim2", cols, aux, checks)


# ---------------------------------------------------------------------------
# dim V = 3


def _run_dim3(va: VAnalysis, check_level: str) -> CaseResult:
    p = va.input.field.p
    a, b, n = va.input.a, va.input.b, va.n
    psi = hburch.hilbert_burch_psi(va.g, p)
    mus = [cd - n for cd in psi.matrix.col_degrees]
    if sum(mus) != n:
        raise CertificateError("column degrees of psi do not sum to n")
    mu = mus[0]
    phis = hburch.column_resolutions(psi)
    phi1, phi2 = phis
    alphas = membership.psi_solve(list(va.f_prime), psi, a, b)
    alpha1, alpha2 = alphas

    c1 = psi.matrix.column(0)
    c2 = psi.matrix.column(1)
    h_q = hburch.transpose_product(c2, phi1.matrix)
    h_r = hburch.transpose_product(c1, phi2.matrix)
    p3 = va.new_gens[3]
    cert_q = membership.two_gen_solve(alpha1, h_q[0], h_q[1],
                                      st_degree=a, uv_degree=b - mus[0])
    cert_r = membership.two_gen_solve(alpha2, h_r[0], h_r[1],
                                      st_degree=a, uv_degree=b - mus[1])
    cert_m = membership.two_gen_solve(p3, h_q[0], h_q[1])
    cert_n = membership.two_gen_solve(p3, h_r[0], h_r[1])
    q = (cert_q.x0, cert_q.x1)
    r = (cert_r.x0, cert_r.x1)
    mm = (cert_m.x0, cert_m.x1)
    nn = (cert_n.x0, cert_n.x1)

    phi1q = _mat_vec(phi1.matrix, list(q))
    phi2r = _mat_vec(phi2.matrix, list(r))
    phi1m = _mat_vec(phi1.matrix, list(mm))
    phi2n = _mat_vec(phi2.matrix, list(nn))
    theta_col = [x - y for x, y in zip(phi1q, phi2r)]

    zero = BiPoly.zero(p)
    cols = [
        SyzygyColumn("S", (0, n), (va.g[0].to_bipoly(), va.g[1].to_bipoly(),
                                   va.g[2].to_bipoly(), zero)),
        SyzygyColumn("S1", (a, b - n), (*theta_col, zero)),
        SyzygyColumn("S2", (a, b - mus[1]), (*phi1m, -alpha2)),
        SyzygyColumn("S3", (a, b - mus[0]), (*phi2n, -alpha1)),
    ]

    n0 = (q[0] * mm[1] - q[1] * mm[0]) + (r[0] * nn[1] - r[1] * nn[0])
    nvec = (n0, p3, -alpha1, alpha2)
    checks: dict[str, bool] = {}
    if check_level == "full":
        # signed 2x2 minors of Theta = [phi1 q - phi2 r | g] recover f'
        theta = [[theta_col[i], va.g[i].to_bipoly()] for i in range(3)]
        ok = True
        for i in range(3):
            rows = [theta[r_] for r_ in range(3) if r_ != i]
            minor = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
            if i % 2 == 1:
                minor = -minor
            if not (minor - va.f_prime[i]).is_zero:
                ok = False
        checks["theta_minors"] = ok
        mn = True
        for i in range(4):
            acc = BiPoly.zero(p)
            for col, nv in zip(cols, nvec):
                if not col.entries[i].is_zero and not nv.is_zero:
                    acc = acc + col.entries[i] * nv
            if not acc.is_zero:
                mn = False
        checks["kernel_vector"] = mn
        checks["alpha_coprime"] = membership.bihomog_coprime(alpha1, alpha2)
        checks["psi_minors"] = all((x - y).is_zero
                                   for x, y in zip(psi.minors, va.g))
    aux = {"mu": mu, "mus": tuple(mus), "psi": psi, "phis": phis,
           "alphas": tuple(alphas), "q": q, "r": r, "m": mm, "n_pair": nn,
           "theta_col": tuple(theta_col), "N": nvec}
    return _finish(va, "dim3", cols, aux, checks)


# ---------------------------------------------------------------------------
# dim V = 4


def _run_dim4(va: VAnalysis, check_level: str) -> CaseResult:
    p = va.input.field.p
    a, b, n = va.input.a, va.input.b, va.n
    psi = hburch.hilbert_burch_psi(va.g, p)
    mus = [cd - n for cd in psi.matrix.col_degrees]
    if sum(mus) != n:
        raise CertificateError("column degrees of psi do not sum to n")
    phis = hburch.column_resolutions(psi)
    alphas = membership.psi_solve(list(va.f_prime), psi, a, b)
    alpha1, alpha2, alpha3 = alphas
    gammas = hburch.gamma_matrices(psi, phis)

    comp12 = hburch.compose(phis[1].matrix, gammas[(0, 1)].matrix,
                            [mus[0]] * 4)
    comp13 = hburch.compose(phis[2].matrix, gammas[(0, 2)].matrix,
                            [mus[0]] * 4)
    comp23 = hburch.compose(phis[2].matrix, gammas[(1, 2)].matrix,
                            [mus[1]] * 4)

    c1 = psi.matrix.column(0)
    c2 = psi.matrix.column(1)
    c3 = psi.matrix.column(2)
    h_a = hburch.transpose_product(c2, comp13)  # targets alpha1, alpha3
    h_b = hburch.transpose_product(c3, comp12)  # targets alpha1, alpha2
    h_c = hburch.transpose_product(c1, comp23)  # targets alpha2, alpha3

    def solve(target: BiPoly, h: list[UniHomPoly], d: int) -> tuple[BiPoly, BiPoly]:
        cert = membership.two_gen_solve(target, h[0], h[1],
                                        st_degree=a, uv_degree=d)
        return cert.x0, cert.x1

    a2 = solve(alpha1, h_a, b - mus[0])
    a3 = solve(alpha1, h_b, b - mus[0])
    b3 = solve(alpha2, h_b, b - mus[1])
    b1 = solve(alpha2, h_c, b - mus[1])
    c2p = solve(alpha3, h_a, b - mus[2])
    c1p = solve(alpha3, h_c, b - mus[2])

    s1 = [x - y for x, y in zip(_mat_vec(comp12, list(b3)),
                                _mat_vec(comp13, list(c2p)))]
    s2 = [x - y for x, y in zip(_mat_vec(comp23, list(c1p)),
                                _mat_vec(comp12, list(a3)))]
    s3 = [x - y for x, y in zip(_mat_vec(comp13, list(a2)),
                                _mat_vec(comp23, list(b1)))]

    cols = [
        SyzygyColumn("S", (0, n), tuple(gk.to_bipoly() for gk in va.g)),
        SyzygyColumn("S1", (a, b - n + mus[0]), tuple(s1)),
        SyzygyColumn("S2", (a, b - n + mus[1]), tuple(s2)),
        SyzygyColumn("S3", (a, b - mus[0] - mus[1]), tuple(s3)),
    ]

    hh = (-(a2[0] * c2p[1] - a2[1] * c2p[0])
          - (b1[0] * c1p[1] - b1[1] * c1p[0])
          - (a3[0] * b3[1] - a3[1] * b3[0]))
    checks: dict[str, bool] = {}
    if check_level == "full":
        combo = True
        for i in range(4):
            acc = hh * cols[0].entries[i]
            acc = acc + alpha1 * cols[1].entries[i]
            acc = acc + alpha2 * cols[2].entries[i]
            acc = acc + alpha3 * cols[3].entries[i]
            if not acc.is_zero:
                combo = False
        checks["alpha_combination"] = combo
        checks["psi_minors"] = all((x - y).is_zero
                                   for x, y in zip(psi.minors, va.g))
        gm = True
        for (i, j), gamma in gammas.items():
            h = hburch.transpose_product(psi.matrix.column(i), phis[j].matrix)
            if not all((x - y).is_zero for x, y in zip(gamma.minors, h)):
                gm = False
        checks["gamma_minors"] = gm
        checks["alpha12_coprime"] = membership.bihomog_coprime(alpha1, alpha2)
    aux = {"mus": tuple(mus), "psi": psi, "phis": phis, "gammas": gammas,
           "alphas": tuple(alphas), "a2": a2, "a3": a3, "b3": b3, "b1": b1,
           "c2": c2p, "c1": c1p, "H": hh,
           "composites": {"12": comp12, "13": comp13, "23": comp23},
           "N": (hh, alpha1, alpha2, alpha3)}
    return _finish(va, "dim4", cols, aux, checks)
