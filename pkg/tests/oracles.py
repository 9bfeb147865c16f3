"""Independent reference computations used only by the tests."""

import numpy as np

from biperron.intpoly import IntPoly


def cofactor_det(M):
    """Laplace expansion along the first row; entries may be ints or IntPoly."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j] == 0 or (isinstance(M[0][j], IntPoly) and M[0][j].is_zero()):
            continue
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        term = M[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def cofactor_charpoly(A):
    """det(xI - A) with polynomial entries, by cofactor expansion."""
    n = A.n
    M = [
        [IntPoly([-A[i, j], 1]) if i == j else IntPoly([-A[i, j]]) for j in range(n)]
        for i in range(n)
    ]
    p = cofactor_det(M)
    return p if isinstance(p, IntPoly) else IntPoly([p])


def numeric_roots(p):
    return np.roots([float(c) for c in reversed(p.coeffs)])


def real_root_count_by_sign_scan(p, lo, hi, roots):
    """Count distinct known integer roots r with lo < r <= hi."""
    return len({r for r in roots if lo < r <= hi})


def exact_in_Q_by_substitution(n, m):
    """x^4+nx^3+mx^2+nx+1 = x^2 (t^2 + n t + m - 2) with t = x + 1/x.

    A real x gives a real t with |t| >= 2 and every such t gives a real x, so
    q has no real root iff t^2 + n t + (m - 2) has no root with |t| >= 2.
    """
    disc = n * n - 4 * (m - 2)
    if disc < 0:
        return True
    # roots t = (-n +- sqrt(disc)) / 2; |t| >= 2 iff t <= -2 or t >= 2
    # t >= 2  <=>  +-sqrt(disc) >= 4 + n ; t <= -2 <=> +-sqrt(disc) <= n - 4
    s2 = disc  # sqrt(disc)^2

    def ge(sign, c):  # sign*sqrt(disc) >= c
        if sign > 0:
            return c <= 0 or s2 >= c * c
        return c <= 0 and s2 <= c * c

    def le(sign, c):  # sign*sqrt(disc) <= c
        if sign > 0:
            return c >= 0 and s2 <= c * c
        return c >= 0 or s2 >= c * c

    for sign in (1, -1):
        if ge(sign, 4 + n) or le(sign, n - 4):
            return False
    return True
