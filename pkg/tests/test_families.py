import pytest
from hypothesis import given, settings, strategies as st

from biperron.errors import BiPerronError, StageError
from biperron.exactmat import FormVariant, IntMatrix, SymplecticForm, charpoly, det, is_symplectic
from biperron.families import (
    BlockDiagonalParams,
    YFamilyParams,
    build_A_from_Y,
    build_block_diagonal,
    build_Y,
    certify_matrix,
    expected_charpoly,
    nonsurjectivity_certificate,
    random_symplectic,
)
from biperron.intpoly import (
    IntPoly,
    compose_identity_rhs,
    is_palindromic,
    square_free_decomposition,
    sturm_count,
)
from biperron.rootcert import Verdict, certify_biperron, classify_simplicity, leading_eigenvalue_bracket

M = IntMatrix
P = IntPoly
A1 = M([[2, 1], [1, 1]])


def test_build_Y_examples():
    assert build_Y(YFamilyParams(2, 3, 4)) == M([[3, 4], [4, -3]])
    assert build_Y(YFamilyParams(3, 0, 1, M([[0]]))) == M([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    Y = build_Y(YFamilyParams(4, 1, 1, M([[1, 0], [0, -1]])))
    assert Y.block(2, 2, 2) == M([[1, 0], [0, -1]])


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(g=1, a=1, b=0),
        dict(g=2, a=0, b=0),
        dict(g=3, a=1, b=1, Z=M([[2]])),  # |2| > sqrt(2)
        dict(g=4, a=1, b=0, Z=M([[0, 1], [0, 0]])),  # not symmetric
        dict(g=3, a=1, b=0, Z=M([[0, 0], [0, 0]])),  # wrong size
    ],
)
def test_bad_params(kwargs):
    with pytest.raises(BiPerronError, match="bad-params"):
        YFamilyParams(**kwargs)


def test_z_on_the_boundary_is_allowed():
    YFamilyParams(3, 3, 4, M([[5]]))
    YFamilyParams(4, 0, 1, M([[0, 1], [1, 0]]))  # eigenvalues +-1


def test_build_A_examples():
    assert build_A_from_Y(M.zeros(2)) == M.identity(4)
    assert build_A_from_Y(M([[0, 1], [1, 0]])) == M([[2, 0, 0, 1], [0, 2, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]])
    A = build_A_from_Y(M([[3, 4], [4, -3]]))
    assert A.block(0, 0, 2) == M([[26, 0], [0, 26]])


def test_build_A_rejects_non_symmetric():
    with pytest.raises(BiPerronError, match="not-symmetric"):
        build_A_from_Y(M([[0, 1], [2, 0]]))


def test_expected_charpoly_examples():
    quad = lambda s: P([1, -(s + 2), 1])
    x1 = P([-1, 1])
    assert expected_charpoly(YFamilyParams(2, 0, 1)) == P([1, -3, 1]) ** 2
    assert expected_charpoly(YFamilyParams(3, 3, 4)) == x1**2 * quad(25) ** 2
    assert expected_charpoly(YFamilyParams(4, 1, 1)) == x1**4 * P([1, -4, 1]) ** 2
    with pytest.raises(BiPerronError, match="closed-form-unavailable"):
        expected_charpoly(YFamilyParams(3, 1, 1, M([[1]])))


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 7), st.integers(-30, 30), st.integers(-30, 30))
def test_family_charpoly_matches_closed_form(g, a, b):
    if a == 0 and b == 0:
        return
    params = YFamilyParams(g, a, b)
    A = build_A_from_Y(build_Y(params))
    assert charpoly(A) == expected_charpoly(params)


def _symmetric(draw_rows):
    n = len(draw_rows)
    return M([[draw_rows[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)])


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 6).flatmap(lambda g: st.lists(st.lists(st.integers(-5, 5), min_size=g, max_size=g), min_size=g, max_size=g)))
def test_identity_chain(rows):
    Y = _symmetric(rows)
    A = build_A_from_Y(Y)
    assert charpoly(A) == compose_identity_rhs(charpoly(Y @ Y), Y.n)


@pytest.mark.parametrize(
    "g, a, b, Z",
    [
        (3, 1, 1, M([[1]])),
        (4, 1, 1, M([[1, 0], [0, -1]])),
        (4, 2, 1, M([[1, 1], [1, -1]])),
        (3, 3, 4, M([[5]])),
        (5, 0, 2, M([[0, 1, 0], [1, 0, 1], [0, 1, 0]])),
    ],
)
def test_generalized_family(g, a, b, Z):
    params = YFamilyParams(g, a, b, Z)
    A = build_A_from_Y(build_Y(params))
    p = charpoly(A)
    quad = P([1, -(params.lambda_sq + 2), 1])
    iv = leading_eigenvalue_bracket(p)
    assert iv is not None
    assert sturm_count(quad, iv.lo, iv.hi) == 1  # mu is the bracketed root
    assert classify_simplicity(p, iv) == "multiple"
    assert certify_biperron(p).verdict is Verdict.BIPERRON


def test_generalized_family_certificate_depends_on_Z():
    # Z eigenvalues +-1 give a repeated factor x^2 - 3x + 1: every root is non-simple
    r = nonsurjectivity_certificate(YFamilyParams(4, 1, 1, M([[1, 0], [0, -1]])))
    assert r["verdict"] == "BiPerron" and r["nonsimple"] is True
    # a single Z eigenvalue 1 contributes that factor once
    with pytest.raises(StageError) as info:
        nonsurjectivity_certificate(YFamilyParams(3, 1, 1, M([[1]])))
    assert info.value.stage == "all_roots_nonsimple"


@pytest.mark.parametrize("g, a, b", [(2, 0, 1), (3, 2, 3), (4, 1, 1), (6, 3, 4)])
def test_symmetric_annulus_property(g, a, b):
    A = build_A_from_Y(build_Y(YFamilyParams(g, a, b)))
    assert A.is_symmetric()
    p = charpoly(A)
    parts = square_free_decomposition(p).parts
    assert sum(k * sturm_count(f) for f, k in parts) == p.degree  # all roots real
    assert is_palindromic(p)  # roots come in pairs z, 1/z


def test_random_symplectic_examples():
    assert random_symplectic(3, 0, 5) == M.identity(6)
    A = random_symplectic(2, 10, 1)
    assert is_symplectic(A, SymplecticForm.standard(2))
    assert is_palindromic(charpoly(A))
    assert random_symplectic(2, 10, 1) == A
    assert random_symplectic(2, 10, 2) != A


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(0, 20), st.integers(0, 2**32))
def test_random_symplectic_properties(g, steps, seed):
    A = random_symplectic(g, steps, seed)
    assert is_symplectic(A, SymplecticForm.standard(g))
    assert det(A) == 1
    assert is_palindromic(charpoly(A))


def test_block_diagonal_examples():
    T = M([[1, 1], [0, 1]])
    A = build_block_diagonal(BlockDiagonalParams([T, T, M.identity(2)]))
    assert A.n == 6
    assert charpoly(A) == P([-1, 1]) ** 6
    assert build_block_diagonal(BlockDiagonalParams([M.identity(2)])) == M.identity(2)
    A = build_block_diagonal(BlockDiagonalParams([A1, A1]))
    p = charpoly(A)
    assert p == P([1, -3, 1]) ** 2
    iv = leading_eigenvalue_bracket(p)
    assert classify_simplicity(p, iv) == "multiple"


def test_block_diagonal_rejects_bad_block():
    with pytest.raises(BiPerronError, match="block 1"):
        build_block_diagonal(BlockDiagonalParams([A1, M([[2, 0], [0, 1]])]))


def test_block_diagonal_under_each_form():
    # direct sums preserve the pairwise form only; under the literal tridiagonal
    # form the same matrices fail, as do they under the standard block form
    for blocks in ([A1, A1, M.identity(2)], [M([[1, 1], [0, 1]])] * 2 + [M.identity(2)]):
        A = M.direct_sum(blocks)
        g = A.n // 2
        results = {v: is_symplectic(A, SymplecticForm(v, g)) for v in FormVariant}
        assert results == {FormVariant.PAIRWISE: True, FormVariant.TRIDIAGONAL: False, FormVariant.STANDARD: False}


def test_certificate_examples():
    r = nonsurjectivity_certificate(YFamilyParams(2, 0, 1))
    assert r["verdict"] == "BiPerron" and r["nonsimple"] is True and r["symplectic"] is True
    assert r["leading_root"] == "multiple"
    r = nonsurjectivity_certificate(YFamilyParams(5, 3, 4))
    expected = P([-1, 1]) ** 6 * P([1, -27, 1]) ** 2
    assert r["charpoly"] == [str(c) for c in expected.coeffs]


def test_identity_matrix_fails_at_certify_stage():
    with pytest.raises(StageError) as info:
        certify_matrix(M.identity(4), SymplecticForm.standard(2))
    assert info.value.stage == "certify_biperron"
    assert info.value.partial["nonsimple"] is True


def test_stage_failures_are_named():
    with pytest.raises(StageError) as info:
        certify_matrix(M.identity(4) * 2, SymplecticForm.standard(2))
    assert info.value.stage == "is_symplectic"
    with pytest.raises(StageError) as info:
        certify_matrix(A1, SymplecticForm.standard(1))
    assert info.value.stage == "all_roots_nonsimple"
    with pytest.raises(StageError) as info:
        certify_matrix(M.identity(2), SymplecticForm.standard(1), expected=P([1, 0, 1]))
    assert info.value.stage == "charpoly"
