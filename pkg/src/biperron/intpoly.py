"""Exact univariate polynomials over the integers.

Coefficients are stored in ascending order of degree as Python ints, so every
operation here is exact regardless of coefficient size.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import BiPerronError


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in _trim(coeffs)))

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "IntPoly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        other = _coerce(other)
        return IntPoly(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result, base = IntPoly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation at an int, Fraction or any ring element."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def reversal(self) -> "IntPoly":
        """x^deg * p(1/x)."""
        return IntPoly(self.coeffs[::-1])

    def negate_variable(self) -> "IntPoly":
        """p(-x)."""
        return IntPoly([-c if i & 1 else c for i, c in enumerate(self.coeffs)])

    def scale_variable(self, r) -> "IntPoly":
        """Integer polynomial with the same roots as p(r*x), r a positive rational.

        For r = u/v this is sum c_i u^i v^(deg-i) x^i, i.e. v^deg * p(u x / v).
        """
        r = Fraction(r)
        u, v = r.numerator, r.denominator
        d = self.degree
        return IntPoly([c * u**i * v ** (d - i) for i, c in enumerate(self.coeffs)])

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return IntPoly([x // c for x in self.coeffs])

    def divmod(self, other: "IntPoly"):
        """Division over the rationals; raises unless the quotient is integral."""
        q, r = _divmod_exact(self.coeffs, other.coeffs)
        return IntPoly(q), IntPoly(r)

    def __floordiv__(self, other):
        if isinstance(other, int):
            if any(c % other for c in self.coeffs):
                raise BiPerronError("inexact", "integer division leaves a remainder")
            return IntPoly([c // other for c in self.coeffs])
        q, r = self.divmod(other)
        if r:
            raise BiPerronError("inexact", "polynomial division leaves a remainder")
        return q

    def divides(self, other: "IntPoly") -> bool:
        """True iff self divides other in Z[x] (self primitive is assumed)."""
        try:
            _, r = other.divmod(self)
        except BiPerronError:
            return False
        return r.is_zero()

    def sign_at(self, x) -> int:
        """Exact sign of p(x) for an int or Fraction x."""
        return _sign_at(self.coeffs, Fraction(x))

    # -- presentation ---------------------------------------------------------

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return format_poly(self)


def _coerce(p) -> IntPoly:
    if isinstance(p, IntPoly):
        return p
    if isinstance(p, int):
        return IntPoly([p])
    raise TypeError(f"cannot use {type(p).__name__} as IntPoly")


def _mul(a: Sequence[int], b: Sequence[int]):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _divmod_exact(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = r[k + db]
        if c:
            if c % lb:
                raise BiPerronError("inexact", "quotient is not integral")
            t = c // lb
            q[k] = t
            for j in range(db + 1):
                r[k + j] -= t * b[j]
    return q, _trim(r[:db])


def _prem(a, b):
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    steps = len(a) - len(b) + 1
    if steps <= 0:
        return r
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        r = [lb * x for x in r]
        if c:
            for j in range(db + 1):
                r[k + j] -= c * b[j]
    return _trim(r[:db])


def _sign_at(coeffs, x: Fraction) -> int:
    # homogenised evaluation keeps everything in Z
    u, v = x.numerator, x.denominator
    acc = 0
    vpow = 1
    for c in reversed(coeffs):
        acc = acc * u + c * vpow
        vpow *= v
    # acc = v^d * p(u/v) with v > 0
    return (acc > 0) - (acc < 0)


# -- gcd and square-free structure -------------------------------------------


def gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (subresultant PRS)."""
    if p.is_zero() and q.is_zero():
        raise BiPerronError("zero-gcd", "gcd of two zero polynomials")
    if p.is_zero():
        return q.primitive()
    if q.is_zero():
        return p.primitive()
    a, b = p.primitive().coeffs, q.primitive().coeffs
    if len(a) < len(b):
        a, b = b, a
    g = h = 1
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            break
        if len(r) == 1:
            return IntPoly([1])
        a, b = b, [c // (g * h**delta) for c in r]
        g = a[-1]
        if delta:
            h = g**delta // h ** (delta - 1)
    return IntPoly(b).primitive()


@dataclass(frozen=True)
class SquareFreeDecomposition:
    """``content * prod(f**k for f, k in parts)`` reproduces the input."""

    content: int
    parts: tuple  # of (IntPoly, int), multiplicities strictly increasing

    def expand(self) -> IntPoly:
        p = IntPoly([self.content])
        for f, k in self.parts:
            p = p * f**k
        return p

    def part(self, multiplicity: int) -> IntPoly:
        for f, k in self.parts:
            if k == multiplicity:
                return f
        return IntPoly([1])

    def squarefree_part(self) -> IntPoly:
        s = IntPoly([1])
        for f, _ in self.parts:
            s = s * f
        return s


def square_free_decomposition(p: IntPoly) -> SquareFreeDecomposition:
    """Yun's algorithm over Z."""
    if p.is_zero():
        raise BiPerronError("zero-polynomial", "square-free decomposition of 0")
    content = p.content() * (1 if p.lc > 0 else -1)
    f = p.primitive()
    if f.degree == 0:
        return SquareFreeDecomposition(content, ())
    parts = []
    df = f.derivative()
    a = gcd(f, df)
    b = f // a
    c = df // a
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            parts.append((a, k))
        b = b // a
        c = d // a
        d = c - b.derivative()
        k += 1
    return SquareFreeDecomposition(content, tuple(parts))


def squarefree_part(p: IntPoly) -> IntPoly:
    if p.degree <= 0:
        return IntPoly([1]) if p else p
    return p.primitive() // gcd(p, p.derivative())


def all_roots_nonsimple(p: IntPoly) -> bool:
    return square_free_decomposition(p).part(1).degree == 0


def is_palindromic(p: IntPoly) -> bool:
    return p.coeffs == p.coeffs[::-1]


def is_reciprocal(p: IntPoly) -> bool:
    """x^deg p(1/x) = +p or -p."""
    rev = p.coeffs[::-1]
    return p.coeffs == rev or p.coeffs == tuple(-c for c in rev)


def compose_identity_rhs(q: IntPoly, g: int) -> IntPoly:
    """Cleared form of x^g q((x-1)^2/x): sum q_k (x-1)^(2k) x^(g-k)."""
    if q.degree != g:
        raise BiPerronError("degree", f"expected degree {g}, got {q.degree}")
    sq = IntPoly([1, -2, 1])
    out = IntPoly()
    for k, c in enumerate(q.coeffs):
        if c:
            out = out + (sq**k * IntPoly.monomial(g - k)) * c
    return out


# -- Sturm sequences --------------------------------------------------------


def cauchy_bound(p: IntPoly) -> int:
    """Integer B with every complex root strictly inside |z| < B."""
    lc = abs(p.lc)
    m = max((abs(c) for c in p.coeffs[:-1]), default=0)
    return 1 + -(-m // lc)


def sturm_chain(coeffs) -> list:
    """Signed remainder sequence of p, p' with positive rescalings only.

    Works on coefficient lists; each element is divided by its positive content
    so that growth stays moderate.
    """
    a = list(coeffs)
    b = [i * c for i, c in enumerate(a)][1:]
    chain = [a]
    while b:
        chain.append(b)
        lb = b[-1]
        steps = len(a) - len(b) + 1
        r = _prem(a, b)
        if lb < 0 and steps & 1:
            r = [-x for x in r]
        r = [-x for x in r]
        if r:
            g = reduce(math.gcd, r)
            if g > 1:
                r = [x // g for x in r]
        a, b = b, r
    return chain


def _variations(signs) -> int:
    v, last = 0, 0
    for s in signs:
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def _variations_at_infinity(chain, positive: bool) -> int:
    signs = []
    for c in chain:
        s = 1 if c[-1] > 0 else -1
        if not positive and (len(c) - 1) & 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def real_root_count(p: IntPoly) -> int:
    """Number of distinct real roots."""
    if p.degree <= 0:
        return 0
    chain = sturm_chain(p.coeffs)
    return _variations_at_infinity(chain, False) - _variations_at_infinity(chain, True)


def _variations_at(chain, x: Fraction) -> int:
    return _variations([_sign_at(c, x) for c in chain])


def _strip_rational_root(s: IntPoly, x: Fraction) -> IntPoly:
    lin = IntPoly([-x.numerator, x.denominator])
    return s // lin


def sturm_count(p: IntPoly, lo=None, hi=None) -> int:
    """Distinct real roots in (lo, hi]; ``None`` endpoints mean -inf / +inf."""
    if p.is_zero():
        raise BiPerronError("zero-polynomial", "Sturm count of 0")
    if lo is not None and hi is not None and Fraction(lo) >= Fraction(hi):
        raise BiPerronError("empty-interval", f"lo={lo} >= hi={hi}")
    s = squarefree_part(p)
    if s.degree <= 0:
        return 0
    extra = 0
    if lo is not None:
        lo = Fraction(lo)
        if s(lo) == 0:
            s = _strip_rational_root(s, lo)
    if hi is not None:
        hi = Fraction(hi)
        if s(hi) == 0:
            s = _strip_rational_root(s, hi)
            extra = 1
    if s.degree <= 0:
        return extra
    chain = sturm_chain(s.coeffs)
    v_lo = _variations_at_infinity(chain, False) if lo is None else _variations_at(chain, lo)
    v_hi = _variations_at_infinity(chain, True) if hi is None else _variations_at(chain, hi)
    return v_lo - v_hi + extra


# -- text / JSON formats ----------------------------------------------------


def parse_poly(text: str) -> IntPoly:
    """Whitespace-separated ascending coefficients, or a JSON array."""
    text = text.strip()
    if text.startswith("["):
        data = json.loads(text)
        return IntPoly(int(str(c)) for c in data)
    try:
        return IntPoly(int(tok) for tok in text.split())
    except ValueError as exc:
        raise BiPerronError("parse", str(exc)) from None


def poly_to_json(p: IntPoly) -> list:
    return [str(c) for c in p.coeffs]


def format_poly(p: IntPoly, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            body = (f"{mag}*" if mag != 1 else "") + (var if k == 1 else f"{var}^{k}")
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
