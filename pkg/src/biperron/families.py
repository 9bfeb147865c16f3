"""Integer symplectic matrices with a non-simple bi-Perron leading eigenvalue.

The main family is A = [[I + Y^2, Y], [Y, I]] for a symmetric integer Y, which
is symplectic for the standard block form.  With Y = [[a, b], [b, -a]] (+) Z the
characteristic polynomial is (x-1)^(2g-4) (x^2 - (a^2+b^2+2) x + 1)^2 when Z = 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import BiPerronError, StageError
from .exactmat import (
    IntMatrix,
    SymplecticForm,
    charpoly,
    is_symplectic,
    matrix_to_json,
)
from .intpoly import (
    IntPoly,
    all_roots_nonsimple,
    cauchy_bound,
    format_poly,
    is_palindromic,
    poly_to_json,
    square_free_decomposition,
    sturm_count,
)
from .rootcert import DEFAULT_MAX_REFINEMENT, Mode, Verdict, certify_biperron, classify_simplicity


@dataclass(frozen=True)
class YFamilyParams:
    g: int
    a: int
    b: int
    Z: Optional[IntMatrix] = None

    def __post_init__(self):
        if self.g < 2:
            raise BiPerronError("bad-params", "g must be >= 2")
        if self.a == 0 and self.b == 0:
            raise BiPerronError("bad-params", "a and b must not both be zero")
        if self.Z is not None:
            if self.Z.n != self.g - 2:
                raise BiPerronError("bad-params", f"Z must be {self.g - 2}x{self.g - 2}")
            if not self.Z.is_symmetric():
                raise BiPerronError("bad-params", "Z must be symmetric")
            if not z_spectrum_within(self.Z, self.lambda_sq):
                raise BiPerronError("bad-params", "Z has an eigenvalue outside [-lambda, lambda]")

    @property
    def lambda_sq(self) -> int:
        return self.a * self.a + self.b * self.b


def z_spectrum_within(Z: IntMatrix, lambda_sq: int) -> bool:
    """Every eigenvalue z of the symmetric Z satisfies z^2 <= lambda_sq.

    Compares squared quantities: the eigenvalues of Z^2 are the z^2, so it is
    enough that charpoly(Z^2) has no root in (lambda_sq, B].
    """
    q = charpoly(Z @ Z)
    B = cauchy_bound(q)
    if lambda_sq >= B:
        return True
    return sturm_count(q, lambda_sq, B) == 0


@dataclass(frozen=True)
class BlockDiagonalParams:
    blocks: tuple

    def __init__(self, blocks: Sequence[IntMatrix]):
        blocks = tuple(blocks)
        if not blocks:
            raise BiPerronError("bad-params", "no blocks")
        for i, blk in enumerate(blocks):
            if blk.n % 2:
                raise BiPerronError("bad-params", f"block {i} has odd dimension {blk.n}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def g(self) -> int:
        return sum(b.n for b in self.blocks) // 2


def build_Y(params: YFamilyParams) -> IntMatrix:
    g, a, b = params.g, params.a, params.b
    Y = [[0] * g for _ in range(g)]
    Y[0][0], Y[0][1], Y[1][0], Y[1][1] = a, b, b, -a
    if params.Z is not None:
        for i in range(g - 2):
            Y[2 + i][2:] = params.Z.rows[i]
    return IntMatrix(Y)


def build_A_from_Y(Y: IntMatrix) -> IntMatrix:
    if not Y.is_symmetric():
        raise BiPerronError("not-symmetric", "Y must be symmetric")
    g = Y.n
    I = IntMatrix.identity(g)
    A = IntMatrix.from_blocks([[I + Y @ Y, Y], [Y, I]])
    assert is_symplectic(A, SymplecticForm.standard(g))
    return A


def expected_charpoly(params: YFamilyParams) -> IntPoly:
    """(x-1)^(2g-4) (x^2 - (lambda^2+2) x + 1)^2, expanded."""
    if params.Z is not None:
        raise BiPerronError("closed-form-unavailable", "closed form needs Z absent")
    quad = IntPoly([1, -(params.lambda_sq + 2), 1])
    return IntPoly([-1, 1]) ** (2 * params.g - 4) * quad**2


def build_block_diagonal(params: BlockDiagonalParams) -> IntMatrix:
    for i, blk in enumerate(params.blocks):
        if not is_symplectic(blk, SymplecticForm.pairwise(blk.n // 2)):
            raise BiPerronError("bad-params", f"block {i} is not symplectic")
    A = IntMatrix.direct_sum(params.blocks)
    assert is_symplectic(A, SymplecticForm.pairwise(params.g))
    return A


# -- random sampler ---------------------------------------------------------


def _random_symmetric(rng: random.Random, g: int) -> IntMatrix:
    S = [[0] * g for _ in range(g)]
    for i in range(g):
        for j in range(i, g):
            S[i][j] = S[j][i] = rng.choice((-1, 0, 1))
    return IntMatrix(S)


def _generator(rng: random.Random, g: int) -> IntMatrix:
    I, O = IntMatrix.identity(g), IntMatrix.zeros(g)
    kind = rng.randrange(3)
    if kind == 0:
        return IntMatrix.from_blocks([[I, _random_symmetric(rng, g)], [O, I]])
    if kind == 1:
        return IntMatrix.from_blocks([[I, O], [_random_symmetric(rng, g), I]])
    if g == 1:
        U, Uinv_t = IntMatrix([[-1]]), IntMatrix([[-1]])
    else:
        i, j = rng.sample(range(g), 2)
        e = rng.choice((-1, 1))
        U = [[int(r == c) for c in range(g)] for r in range(g)]
        W = [[int(r == c) for c in range(g)] for r in range(g)]
        U[i][j] = e
        W[j][i] = -e  # (U^t)^-1 for an elementary U
        U, Uinv_t = IntMatrix(U), IntMatrix(W)
    return IntMatrix.from_blocks([[U, O], [O, Uinv_t]])


def random_symplectic(g: int, steps: int, seed: int) -> IntMatrix:
    """Product of ``steps`` random elementary generators of Sp(2g, Z)."""
    if g < 1:
        raise BiPerronError("bad-params", "g must be >= 1")
    rng = random.Random(seed)
    A = IntMatrix.identity(2 * g)
    for _ in range(steps):
        A = A @ _generator(rng, g)
    return A


# -- certificate pipeline ---------------------------------------------------


def certify_matrix(
    A: IntMatrix,
    form: SymplecticForm,
    expected: Optional[IntPoly] = None,
    max_refinement: int = DEFAULT_MAX_REFINEMENT,
) -> dict:
    """Run the staged check on A; raises StageError naming the first failing stage."""
    report = {"matrix": matrix_to_json(A), "form": form.variant.value, "g": form.g}
    try:
        ok = is_symplectic(A, form)
    except BiPerronError as exc:
        raise StageError("is_symplectic", str(exc), report) from None
    report["symplectic"] = ok
    if not ok:
        raise StageError("is_symplectic", "A^t J A != J", report)
    p = charpoly(A)
    report["charpoly"] = poly_to_json(p)
    report["charpoly_text"] = format_poly(p)
    if expected is not None:
        report["expected_charpoly"] = poly_to_json(expected)
        if p != expected:
            raise StageError("charpoly", "characteristic polynomial differs from the closed form", report)
    report["palindromic"] = is_palindromic(p)
    report["square_free_decomposition"] = [
        {"factor": poly_to_json(f), "multiplicity": k} for f, k in square_free_decomposition(p).parts
    ]
    nonsimple = all_roots_nonsimple(p)
    report["nonsimple"] = nonsimple
    if not nonsimple:
        raise StageError("all_roots_nonsimple", "the characteristic polynomial has a simple root", report)
    cert = certify_biperron(p, Mode.FULL_SPECTRUM, max_refinement)
    report["certificate"] = cert.to_json()
    if cert.verdict is not Verdict.BIPERRON:
        raise StageError("certify_biperron", cert.reason or cert.verdict.value, report)
    report["leading_root"] = classify_simplicity(p, cert.leading_bracket)
    report["verdict"] = cert.verdict.value
    return report


def nonsurjectivity_certificate(params: YFamilyParams, max_refinement: int = DEFAULT_MAX_REFINEMENT) -> dict:
    """Build A for the Y family and certify: symplectic, closed-form char poly,
    no simple eigenvalue, bi-Perron leading eigenvalue."""
    Y = build_Y(params)
    A = build_A_from_Y(Y)
    expected = expected_charpoly(params) if params.Z is None else None
    report = certify_matrix(A, SymplecticForm.standard(params.g), expected, max_refinement)
    report["params"] = {
        "g": params.g,
        "a": str(params.a),
        "b": str(params.b),
        "lambda_sq": str(params.lambda_sq),
        "Z": matrix_to_json(params.Z) if params.Z is not None else None,
    }
    report["Y"] = matrix_to_json(Y)
    return report


__all__ = [
    "YFamilyParams",
    "BlockDiagonalParams",
    "build_Y",
    "build_A_from_Y",
    "expected_charpoly",
    "build_block_diagonal",
    "random_symplectic",
    "certify_matrix",
    "nonsurjectivity_certificate",
    "z_spectrum_within",
]
