"""Exact arithmetic for bihomogeneous polynomials over a prime field.

The ambient ring is R = K[s, t, u, v] with K = F_p, bigraded by
deg(s) = deg(t) = (1, 0) and deg(u) = deg(v) = (0, 1).  Two containers:

* :class:`BiPoly` — sparse polynomial in all four variables, keyed by
  exponent tuples ``(i, j, k, l)`` for ``s^i t^j u^k v^l``.
* :class:`UniHomPoly` — dense binary form in one variable pair, with an
  explicit graded degree so the zero form of each degree is representable.
  ``coeffs[k]`` is the coefficient of ``x^(d-k) y^k`` for the pair (x, y);
  the pair is (u, v) everywhere except where noted.

Global monomial order (used for printing, coefficient vectors and equation
rows): s-exponent descending, then u-exponent descending.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.typing import NDArray

DEFAULT_PRIME = 2147483647  # largest signed-32-bit prime


class HypothesisError(Exception):
    """The input violates a structural hypothesis (no certificate exists)."""


class CertificateError(Exception):
    """An internal identity that the construction guarantees failed to hold."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldConfig:
    """Coefficient field F_p plus the master seed for randomized steps.

    ``p`` must be an odd prime below 2**31 so that products of two reduced
    residues fit in int64.
    """

    p: int = DEFAULT_PRIME
    seed: int = 0

    def __post_init__(self) -> None:
        if not (2 < self.p < 2**31):
            raise ValueError(f"prime must lie in (2, 2^31), got {self.p}")
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def inv(self, x: int) -> int:
        return pow(int(x) % self.p, -1, self.p)

    def rng(self, purpose: str) -> random.Random:
        """Deterministic per-purpose random stream derived from the seed."""
        return random.Random(f"{self.seed}:{purpose}")


# ---------------------------------------------------------------------------
# dense binary forms


@dataclass(frozen=True)
class UniHomPoly:
    """Dense binary form of an explicit graded degree over F_p."""

    p: int
    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValueError("degree must be >= 0")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient length does not match degree")
        object.__setattr__(self, "coeffs", tuple(c % self.p for c in self.coeffs))

    @staticmethod
    def zero(p: int, degree: int) -> "UniHomPoly":
        return UniHomPoly(p, degree, (0,) * (degree + 1))

    @staticmethod
    def monomial(p: int, degree: int, k: int, c: int = 1) -> "UniHomPoly":
        """c * x^(degree-k) y^k."""
        coeffs = [0] * (degree + 1)
        coeffs[k] = c
        return UniHomPoly(p, degree, tuple(coeffs))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "UniHomPoly") -> "UniHomPoly":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in binary-form addition")
        return UniHomPoly(
            self.p, self.degree,
            tuple((a + b) % self.p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "UniHomPoly") -> "UniHomPoly":
        return self + (-other)

    def __neg__(self) -> "UniHomPoly":
        return UniHomPoly(self.p, self.degree, tuple(-c % self.p for c in self.coeffs))

    def scale(self, c: int) -> "UniHomPoly":
        c %= self.p
        return UniHomPoly(self.p, self.degree, tuple(a * c % self.p for a in self.coeffs))

    def __mul__(self, other: "UniHomPoly") -> "UniHomPoly":
        d = self.degree + other.degree
        out = [0] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = (out[i + j] + a * b) % self.p
        return UniHomPoly(self.p, d, tuple(out))

    def times_xy(self, i: int, j: int) -> "UniHomPoly":
        """Multiply by x^i y^j (pure degree shift)."""
        return UniHomPoly(self.p, self.degree + i + j,
                          (0,) * j + self.coeffs + (0,) * i)

    def eval(self, x0: int, y0: int) -> int:
        d = self.degree
        acc = 0
        for k, c in enumerate(self.coeffs):
            if c:
                acc = (acc + c * pow(x0, d - k, self.p) * pow(y0, k, self.p)) % self.p
        return acc

    def to_bipoly(self) -> "BiPoly":
        """Embed into R with (x, y) read as (u, v)."""
        d = self.degree
        return BiPoly(self.p, {(0, 0, d - k, k): c
                               for k, c in enumerate(self.coeffs) if c})

    def to_bipoly_st(self) -> "BiPoly":
        """Embed into R with (x, y) read as (s, t)."""
        d = self.degree
        return BiPoly(self.p, {(d - k, k, 0, 0): c
                               for k, c in enumerate(self.coeffs) if c})

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"UniHomPoly(d={self.degree}, {self.coeffs})"


def _strip(coeffs: Sequence[int]) -> tuple[int, int, list[int]]:
    """Return (lo, hi, core) with core = coeffs[lo:hi+1], ends nonzero."""
    lo = next(i for i, c in enumerate(coeffs) if c)
    hi = max(i for i, c in enumerate(coeffs) if c)
    return lo, hi, list(coeffs[lo:hi + 1])


def _upoly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of dense univariate a by b (ascending coefficients)."""
    a = a[:]
    db, lead = len(b) - 1, b[-1]
    inv = pow(lead, -1, p)
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        q = a[-1] * inv % p
        off = len(a) - 1 - db
        for i, c in enumerate(b):
            a[off + i] = (a[off + i] - q * c) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _upoly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def uni_gcd(f: UniHomPoly, g: UniHomPoly) -> UniHomPoly:
    """Greatest common divisor of two binary forms.

    The result is normalized so its first nonzero coefficient is 1.  The gcd
    of two zero forms is the zero form of degree 0 by convention.
    """
    if f.is_zero and g.is_zero:
        return UniHomPoly.zero(f.p, 0)
    if f.is_zero:
        f, g = g, f
    if g.is_zero:
        lead = next(c for c in f.coeffs if c)
        return f.scale(pow(lead, -1, f.p))
    p = f.p
    f_lo, f_hi, f_core = _strip(f.coeffs)
    g_lo, g_hi, g_core = _strip(g.coeffs)
    # x-valuation of a form is (degree - hi), y-valuation is lo.
    y_val = min(f_lo, g_lo)
    x_val = min(f.degree - f_hi, g.degree - g_hi)
    core = _upoly_gcd(f_core, g_core, p)  # univariate in z = y/x
    r = len(core) - 1
    d = r + x_val + y_val
    coeffs = [0] * (d + 1)
    for k, c in enumerate(core):
        coeffs[y_val + k] = c
    out = UniHomPoly(p, d, tuple(coeffs))
    lead = next(c for c in out.coeffs if c)
    return out.scale(pow(lead, -1, p))


def uni_divide_exact(f: UniHomPoly, g: UniHomPoly) -> UniHomPoly:
    """Exact quotient f / g of binary forms; raises ValueError otherwise."""
    if g.is_zero:
        raise ValueError("division by the zero form")
    p = f.p
    if f.is_zero:
        if f.degree < g.degree:
            raise ValueError("degree of quotient would be negative")
        return UniHomPoly.zero(p, f.degree - g.degree)
    g_lo, g_hi, g_core = _strip(g.coeffs)
    f_lo, f_hi, f_core = _strip(f.coeffs)
    if f_lo < g_lo or (f.degree - f_hi) < (g.degree - g_hi):
        raise ValueError("not divisible (valuation)")
    # divide cores as univariates in z = y/x, ascending coefficients
    rem = f_core[:]
    dq = len(f_core) - len(g_core)
    if dq < 0:
        raise ValueError("not divisible (degree)")
    q = [0] * (dq + 1)
    inv = pow(g_core[-1], -1, p)
    for i in range(dq, -1, -1):
        c = rem[i + len(g_core) - 1] * inv % p
        q[i] = c
        if c:
            for j, b in enumerate(g_core):
                rem[i + j] = (rem[i + j] - c * b) % p
    if any(rem):
        raise ValueError("not divisible (nonzero remainder)")
    d = f.degree - g.degree
    coeffs = [0] * (d + 1)
    off = f_lo - g_lo
    for k, c in enumerate(q):
        coeffs[off + k] = c
    return UniHomPoly(p, d, tuple(coeffs))


# ---------------------------------------------------------------------------
# sparse bigraded polynomials


class BiPoly:
    """Sparse element of K[s,t,u,v], keyed by (i, j, k, l) exponent tuples."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: Optional[dict] = None):
        self.p = p
        self.terms: dict[tuple[int, int, int, int], int] = {}
        if terms:
            for exp, c in terms.items():
                c %= p
                if c:
                    self.terms[exp] = c

    @staticmethod
    def zero(p: int) -> "BiPoly":
        return BiPoly(p)

    @staticmethod
    def monomial(p: int, exp: tuple[int, int, int, int], c: int = 1) -> "BiPoly":
        return BiPoly(p, {exp: c})

    @staticmethod
    def const(p: int, c: int) -> "BiPoly":
        return BiPoly(p, {(0, 0, 0, 0): c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def bidegree(self) -> Optional[tuple[int, int]]:
        """The common (st, uv) degree, or None for zero / inhomogeneous."""
        degs = {(i + j, k + l) for (i, j, k, l) in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_bihomogeneous(self, c: int, d: int) -> bool:
        return self.is_zero or self.bidegree() == (c, d)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, BiPoly) and self.p == other.p
                and self.terms == other.terms)

    def __hash__(self):  # pragma: no cover
        return hash((self.p, frozenset(self.terms.items())))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = (out.get(exp, 0) + c) % self.p
        return BiPoly(self.p, out)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __neg__(self) -> "BiPoly":
        return BiPoly(self.p, {e: -c % self.p for e, c in self.terms.items()})

    def scale(self, c: int) -> "BiPoly":
        c %= self.p
        return BiPoly(self.p, {e: a * c % self.p for e, a in self.terms.items()})

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        p = self.p
        out: dict[tuple[int, int, int, int], int] = {}
        a_items = self.terms.items()
        for (i2, j2, k2, l2), c2 in other.terms.items():
            for (i1, j1, k1, l1), c1 in a_items:
                exp = (i1 + i2, j1 + j2, k1 + k2, l1 + l2)
                out[exp] = (out.get(exp, 0) + c1 * c2) % p
        return BiPoly(p, out)

    def times_monomial(self, i: int, j: int, k: int, l: int) -> "BiPoly":
        return BiPoly(self.p, {(a + i, b + j, c + k, d + l): v
                               for (a, b, c, d), v in self.terms.items()})

    def coeff(self, exp: tuple[int, int, int, int]) -> int:
        return self.terms.get(exp, 0)

    def eval(self, s0: int, t0: int, u0: int, v0: int) -> int:
        p = self.p
        acc = 0
        for (i, j, k, l), c in self.terms.items():
            acc = (acc + c * pow(s0, i, p) * pow(t0, j, p)
                   * pow(u0, k, p) * pow(v0, l, p)) % p
        return acc

    def substitute_st(self, s0: int, t0: int, uv_degree: Optional[int] = None
                      ) -> UniHomPoly:
        """Specialize (s, t) at scalars; the result is a (u, v)-form."""
        if uv_degree is None:
            bd = self.bidegree()
            if bd is None:
                raise ValueError("need explicit uv_degree for this input")
            uv_degree = bd[1]
        p = self.p
        out = [0] * (uv_degree + 1)
        for (i, j, k, l), c in self.terms.items():
            out[l] = (out[l] + c * pow(s0, i, p) * pow(t0, j, p)) % p
        return UniHomPoly(p, uv_degree, tuple(out))

    def substitute_uv(self, u0: int, v0: int, st_degree: Optional[int] = None
                      ) -> UniHomPoly:
        """Specialize (u, v) at scalars; the result is an (s, t)-form."""
        if st_degree is None:
            bd = self.bidegree()
            if bd is None:
                raise ValueError("need explicit st_degree for this input")
            st_degree = bd[0]
        p = self.p
        out = [0] * (st_degree + 1)
        for (i, j, k, l), c in self.terms.items():
            out[j] = (out[j] + c * pow(u0, k, p) * pow(v0, l, p)) % p
        return UniHomPoly(p, st_degree, tuple(out))

    def st_slices(self, c: int, d: int) -> list[UniHomPoly]:
        """Split a (c, d)-form into (u,v)-forms, one per s^i t^(c-i), i descending."""
        rows = [[0] * (d + 1) for _ in range(c + 1)]
        for (i, j, k, l), a in self.terms.items():
            rows[c - i][l] = a
        return [UniHomPoly(self.p, d, tuple(r)) for r in rows]

    @staticmethod
    def from_st_slices(slices: Sequence[UniHomPoly], c: int, p: int) -> "BiPoly":
        """Inverse of :meth:`st_slices` (slices[0] goes with s^c)."""
        out: dict[tuple[int, int, int, int], int] = {}
        for pos, sl in enumerate(slices):
            i = c - pos
            d = sl.degree
            for k, coeff in enumerate(sl.coeffs):
                if coeff:
                    out[(i, c - i, d - k, k)] = coeff
        return BiPoly(p, out)

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"BiPoly({poly_to_str(self)})"


def mirror_poly(f: BiPoly) -> BiPoly:
    """Swap the roles of (s, t) and (u, v)."""
    return BiPoly(f.p, {(k, l, i, j): c for (i, j, k, l), c in f.terms.items()})


def divide_by_uni(f: BiPoly, g: UniHomPoly) -> BiPoly:
    """Exact quotient of a bihomogeneous f by a (u, v)-form g."""
    bd = f.bidegree()
    if f.is_zero:
        return f
    if bd is None:
        raise ValueError("dividend is not bihomogeneous")
    c, d = bd
    slices = f.st_slices(c, d)
    quot = [uni_divide_exact(sl, g) if not sl.is_zero
            else UniHomPoly.zero(f.p, d - g.degree) for sl in slices]
    return BiPoly.from_st_slices(quot, c, f.p)


# ---------------------------------------------------------------------------
# monomial order, coefficient vectors


def monomial_basis(c: int, d: int) -> list[tuple[int, int, int, int]]:
    """Monomials of bidegree (c, d): s-exponent descending, then u descending."""
    if c < 0 or d < 0:
        return []
    return [(i, c - i, k, d - k)
            for i in range(c, -1, -1) for k in range(d, -1, -1)]


def basis_position(exp: tuple[int, int, int, int], c: int, d: int) -> int:
    i, _, k, _ = exp
    return (c - i) * (d + 1) + (d - k)


def coeff_vector(f: BiPoly, c: int, d: int) -> NDArray[np.int64]:
    """Coefficients of a (c, d)-form in the global monomial order."""
    if not f.is_bihomogeneous(c, d):
        raise ValueError(f"expected a form of bidegree ({c}, {d})")
    vec = np.zeros((c + 1) * (d + 1), dtype=np.int64)
    for exp, a in f.terms.items():
        vec[basis_position(exp, c, d)] = a
    return vec


def bipoly_from_vector(vec: Sequence[int], c: int, d: int, p: int) -> BiPoly:
    basis = monomial_basis(c, d)
    return BiPoly(p, {exp: int(a) for exp, a in zip(basis, vec)})


# ---------------------------------------------------------------------------
# parsing and printing


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_VARS = {"s": (1, 0, 0, 0), "t": (0, 1, 0, 0), "u": (0, 0, 1, 0), "v": (0, 0, 0, 1)}


class _Parser:
    """Recursive-descent parser for +, -, *, ^ and parentheses."""

    def __init__(self, text: str, p: int):
        self.text = text
        self.p = p
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> BiPoly:
        out = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected character {self.text[self.pos]!r}", self.pos)
        return out

    def _expr(self) -> BiPoly:
        ch = self._peek()
        if ch == "+":
            self.pos += 1
        acc = self._term()
        while True:
            ch = self._peek()
            if ch == "+":
                self.pos += 1
                acc = acc + self._term()
            elif ch == "-":
                self.pos += 1
                acc = acc - self._term()
            else:
                return acc

    def _term(self) -> BiPoly:
        acc = self._factor()
        while self._peek() == "*":
            self.pos += 1
            if self._peek() == "*":  # tolerate ** as exponentiation
                self.pos += 1
                acc = self._apply_power(acc)
            else:
                acc = acc * self._factor()
        return acc

    def _apply_power(self, base: BiPoly) -> BiPoly:
        n = self._integer()
        out = BiPoly.const(self.p, 1)
        for _ in range(n):
            out = out * base
        return out

    def _factor(self) -> BiPoly:
        ch = self._peek()
        if ch == "-":
            self.pos += 1
            return -self._factor()
        base = self._atom()
        if self._peek() == "^":
            self.pos += 1
            return self._apply_power(base)
        return base

    def _atom(self) -> BiPoly:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            inner = self._expr()
            if self._peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return inner
        if ch.isdigit():
            return BiPoly.const(self.p, self._integer())
        if ch.isalpha():
            if ch not in _VARS:
                raise ParseError(f"unknown variable {ch!r}", self.pos)
            self.pos += 1
            return BiPoly.monomial(self.p, _VARS[ch])
        raise ParseError("expected a term", self.pos)

    def _integer(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", self.pos)
        return int(self.text[start:self.pos])


def parse_poly(text: str, p: int = DEFAULT_PRIME) -> BiPoly:
    """Parse an expression in s, t, u, v with integer coefficients."""
    return _Parser(text, p).parse()


def _balanced(c: int, p: int) -> int:
    return c if c <= p // 2 else c - p


def _fmt_monomial(exp: tuple[int, int, int, int]) -> str:
    parts = []
    for name, e in zip("stuv", exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_to_str(f: BiPoly) -> str:
    """Render in the global monomial order with balanced coefficient lifts."""
    if f.is_zero:
        return "0"
    items = sorted(f.terms.items(),
                   key=lambda kv: (-kv[0][0], -kv[0][2], -kv[0][1], -kv[0][3]))
    out = []
    for idx, (exp, c) in enumerate(items):
        cb = _balanced(c, f.p)
        mag, neg = abs(cb), cb < 0
        mono = _fmt_monomial(exp)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


def uni_to_str(f: UniHomPoly, pair: str = "uv") -> str:
    return poly_to_str(f.to_bipoly() if pair == "uv" else f.to_bipoly_st())
