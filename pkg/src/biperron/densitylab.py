"""Real-root-free palindromic quartics x^4 + n x^3 + m x^2 + n x + 1.

The set Q collects the (n, m) for which the quartic has no real root; its
upper asymptotic density in sup-norm balls of radius K tends to zero.
"""

from __future__ import annotations

import bisect
import cmath
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .intpoly import IntPoly, real_root_count, sturm_count


@dataclass(frozen=True)
class QuarticParams:
    n: int
    m: int

    def poly(self) -> IntPoly:
        return IntPoly([1, self.n, self.m, self.n, 1])

    @property
    def norm(self) -> int:
        return max(abs(self.n), abs(self.m))


def in_Q(params: QuarticParams) -> bool:
    return sturm_count(params.poly()) == 0


def _sgn(v: int) -> int:
    return (v > 0) - (v < 0)


def quartic_real_root_count(n: int, m: int) -> int:
    """Distinct real roots of x^4 + n x^3 + m x^2 + n x + 1 via its Sturm chain.

    In the generic case the chain p, p', p2, p3, p4 has degrees 4..0 and the
    leading coefficients of p2, p3, p4 are (up to positive factors)
        3n^2 - 8m,
        -(4m - n^2 - 8)(m^2 + 2m - 3n^2),
        (m - 2n + 2)(m + 2n + 2),
    so the count V(-inf) - V(+inf) needs only their signs.  Whenever p2 or p3
    drops degree the full chain is computed instead.
    """
    s2 = _sgn(3 * n * n - 8 * m)
    s3 = -_sgn(4 * m - n * n - 8) * _sgn(m * m + 2 * m - 3 * n * n)
    if s2 == 0 or s3 == 0:
        return real_root_count(IntPoly([1, n, m, n, 1]))
    s4 = _sgn((m - 2 * n + 2) * (m + 2 * n + 2))
    # lc signs at +inf: 1, 1, s2, s3, s4; at -inf the odd degrees flip
    plus = (1, 1, s2, s3, s4)
    minus = (1, -1, s2, -s3, s4)
    return _variations(minus) - _variations(plus)


def _variations(signs) -> int:
    v, last = 0, 0
    for s in signs:
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def quartic_roots_closed_form(params: QuarticParams) -> list:
    """Floating-point values of the four nested-radical root expressions.

    Diagnostic only: principal square roots, no certification.
    """
    n, m = params.n, params.m
    D = cmath.sqrt(n * n - 4 * m + 8)
    inner_minus = cmath.sqrt(n * D + n * n - 2 * (m + 2))
    inner_plus = cmath.sqrt(-n * D + n * n - 2 * (m + 2))
    r2 = math.sqrt(2)
    return [
        (-D - r2 * inner_minus - n) / 4,
        (-D + r2 * inner_minus - n) / 4,
        (D - r2 * inner_plus - n) / 4,
        (D + r2 * inner_plus - n) / 4,
    ]


def closed_form_real_count(params: QuarticParams, tol: float = 1e-9) -> int:
    return sum(1 for z in quartic_roots_closed_form(params) if abs(z.imag) < tol)


def exceptional_set(scan_bound: int) -> list:
    """Members of Q in the ball of radius scan_bound with n^2 - 4m + 8 > 0.

    Such members satisfy n^2 < 2m + 4 < n^2/2 + 8, hence |n| <= 3 and
    -1 < m < 5, so any scan_bound >= 4 already contains all of them.
    """
    if scan_bound < 4:
        raise ValueError("scan_bound must be >= 4")
    out = []
    for n in range(-scan_bound, scan_bound + 1):
        for m in range(-scan_bound, scan_bound + 1):
            if n * n - 4 * m + 8 > 0 and in_Q(QuarticParams(n, m)):
                out.append(QuarticParams(n, m))
    for q in out:
        # stabilisation: everything found lies well inside the smallest admissible ball
        assert abs(q.n) <= 3 and abs(q.m) <= 4, q
    return out


# -- density scan -------------------------------------------------------------


def density_bound(K: int) -> Fraction:
    """ceil((4K-4)^(3/2)) / (3 (2K+1)^2): an exact rational upper bound."""
    N = (4 * K - 4) ** 3
    r = math.isqrt(N)
    if r * r != N:
        r += 1
    return Fraction(r, 3 * (2 * K + 1) ** 2)


@dataclass(frozen=True)
class DensityReport:
    K: int
    count_Q: int
    count_total: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.count_Q, self.count_total)

    @property
    def paper_bound(self) -> Fraction:
        return density_bound(self.K)

    def row(self) -> dict:
        f, b = self.fraction, self.paper_bound
        return {
            "K": self.K,
            "count_Q": self.count_Q,
            "count_total": self.count_total,
            "fraction_num": f.numerator,
            "fraction_den": f.denominator,
            "bound_num": b.numerator,
            "bound_den": b.denominator,
        }


CSV_COLUMNS = ("K", "count_Q", "count_total", "fraction_num", "fraction_den", "bound_num", "bound_den")


def _scan_rows(args):
    ns, K = args
    rows = []
    for n in ns:
        rows.append([m for m in range(-K, K + 1) if quartic_real_root_count(n, m) == 0])
    return rows


def _row_members(K: int, jobs: int) -> list:
    """For n = 0..K, the sorted list of m in [-K, K] with (n, m) in Q."""
    ns = list(range(K + 1))
    if jobs <= 1 or K < 64:
        return _scan_rows((ns, K))
    chunk = max(1, len(ns) // (jobs * 4))
    tasks = [(ns[i : i + chunk], K) for i in range(0, len(ns), chunk)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_scan_rows, tasks))
    return [row for part in parts for row in part]


def density_scan_many(Ks: Sequence[int], jobs: int = 1) -> list:
    """Density reports for several radii from a single scan of the largest ball.

    Only n >= 0 is evaluated: x -> -x maps q_(n,m) to q_(-n,m).
    """
    Ks = list(Ks)
    if not Ks or min(Ks) < 1:
        raise ValueError("K must be >= 1")
    rows = _row_members(max(Ks), jobs)
    reports = []
    for K in Ks:
        count = 0
        for n in range(K + 1):
            row = rows[n]
            c = bisect.bisect_right(row, K) - bisect.bisect_left(row, -K)
            count += c if n == 0 else 2 * c
        reports.append(DensityReport(K, count, (2 * K + 1) ** 2))
    return reports


def density_scan(K: int, jobs: int = 1) -> DensityReport:
    return density_scan_many([K], jobs)[0]


def brute_force_count(K: int) -> int:
    """Reference count over the whole ball with the generic Sturm routine."""
    return sum(
        1
        for n in range(-K, K + 1)
        for m in range(-K, K + 1)
        if in_Q(QuarticParams(n, m))
    )
