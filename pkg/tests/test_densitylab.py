from fractions import Fraction

import pytest

from biperron.densitylab import (
    QuarticParams,
    brute_force_count,
    closed_form_real_count,
    density_scan,
    density_scan_many,
    exceptional_set,
    in_Q,
    density_bound,
    quartic_real_root_count,
    quartic_roots_closed_form,
)
from biperron.intpoly import IntPoly, gcd, real_root_count
from oracles import exact_in_Q_by_substitution


@pytest.mark.parametrize("n, m, expected", [(10, 30, True), (0, 3, True), (0, -3, False)])
def test_in_Q_examples(n, m, expected):
    assert in_Q(QuarticParams(n, m)) is expected


def test_in_Q_matches_substitution_oracle():
    for n in range(-25, 26):
        for m in range(-25, 26):
            assert in_Q(QuarticParams(n, m)) == exact_in_Q_by_substitution(n, m)


def test_fast_kernel_matches_generic_sturm():
    for n in range(-40, 41):
        for m in range(-40, 41):
            assert quartic_real_root_count(n, m) == real_root_count(IntPoly([1, n, m, n, 1]))


def test_symmetry_in_n():
    for n in range(0, 30):
        for m in range(-30, 31):
            assert in_Q(QuarticParams(n, m)) == in_Q(QuarticParams(-n, m))


def _close(z, w, tol=1e-9):
    return abs(z - w) < tol


def test_closed_form_examples():
    roots = quartic_roots_closed_form(QuarticParams(0, 2))
    assert sorted(round(z.imag) for z in roots) == [-1, -1, 1, 1]
    assert all(abs(z.real) < 1e-12 for z in roots)
    assert closed_form_real_count(QuarticParams(10, 30)) == 0
    roots = quartic_roots_closed_form(QuarticParams(-4, 6))
    assert all(_close(z, 1) for z in roots)


def test_closed_form_values_are_roots():
    for n, m in [(3, -7), (10, 30), (-5, 1), (1, 1), (20, -3)]:
        q = QuarticParams(n, m)
        for z in quartic_roots_closed_form(q):
            assert abs(z**4 + n * z**3 + m * z**2 + n * z + 1) < 1e-6 * (1 + abs(z)) ** 4


def test_closed_form_diagnostic_agrees_with_exact_verdict():
    flagged = []
    for n in range(-20, 21):
        for m in range(-20, 21):
            q = QuarticParams(n, m)
            p = q.poly()
            if gcd(p, p.derivative()).degree > 0:
                flagged.append((n, m))  # repeated root: numerically ill-conditioned
                continue
            assert (closed_form_real_count(q) == 0) == in_Q(q), (n, m)
    assert len(flagged) < 200


def test_exceptional_set():
    small, large = exceptional_set(10), exceptional_set(50)
    assert small == large
    assert all(abs(q.n) <= 3 for q in small)
    assert QuarticParams(10, 30) not in small
    assert {(q.n, q.m) for q in small} == {(-1, 1), (-1, 2), (0, -1), (0, 0), (0, 1), (1, 1), (1, 2)}
    with pytest.raises(ValueError):
        exceptional_set(3)


def test_lemma_outside_exceptional_set():
    exc = {(q.n, q.m) for q in exceptional_set(10)}
    for n in range(-50, 51):
        for m in range(-50, 51):
            if (n, m) not in exc and in_Q(QuarticParams(n, m)):
                assert n * n - 4 * m + 8 <= 0


def test_density_bound_rational():
    assert density_bound(10) == Fraction(216, 1323)
    for K in (1, 2, 7, 50, 333):
        b = density_bound(K)
        exact = (4 * K - 4) ** 1.5 / (3 * (2 * K + 1) ** 2)
        assert b >= exact - 1e-15
        assert b - exact < 1 / (3 * (2 * K + 1) ** 2) + 1e-15


@pytest.mark.parametrize("K", [1, 2, 5, 10, 17])
def test_density_scan_matches_brute_force(K):
    r = density_scan(K)
    assert r.count_total == (2 * K + 1) ** 2
    assert r.count_Q == brute_force_count(K)


def test_density_scan_examples():
    assert density_scan(1).count_total == 9
    r = density_scan(10)
    assert r.fraction <= 2 * r.paper_bound


def test_density_parallel_is_deterministic():
    assert density_scan_many([10, 100], jobs=1) == density_scan_many([10, 100], jobs=2)


def test_density_rows():
    row = density_scan(10).row()
    assert row == {
        "K": 10,
        "count_Q": 72,
        "count_total": 441,
        "fraction_num": 8,
        "fraction_den": 49,
        "bound_num": 8,
        "bound_den": 49,
    }


def test_density_scan_rejects_bad_K():
    with pytest.raises(ValueError):
        density_scan(0)
