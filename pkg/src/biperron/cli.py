"""Command-line interface.

Every command returns a :class:`CommandResult`; ``main`` renders it and maps
the status to an exit code (ok 0, error 1, undecided 2).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import densitylab, families
from .errors import BiPerronError, StageError
from .exactmat import (
    IntMatrix,
    SymplecticForm,
    charpoly,
    det,
    format_matrix,
    is_symplectic,
    matrix_to_json,
    parse_matrix,
)
from .intpoly import format_poly, is_palindromic, parse_poly, poly_to_json
from .rootcert import DEFAULT_MAX_REFINEMENT, Mode, Verdict, certify_biperron

EXIT_CODES = {"ok": 0, "error": 1, "undecided": 2}


@dataclass
class CommandResult:
    status: str
    payload: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> str:
        return json.dumps({"status": self.status, **self.payload}, indent=2, sort_keys=False)


def _error(exc: Exception, **extra) -> CommandResult:
    code = getattr(exc, "code", type(exc).__name__)
    payload = {"error": {"code": code, "message": str(exc)}, **extra}
    if isinstance(exc, StageError):
        payload["error"]["stage"] = exc.stage
        payload["partial"] = exc.partial
    return CommandResult("error", payload)


def default_max_refinement() -> int:
    env = os.environ.get("BPS_MAX_REFINEMENT")
    return int(env) if env else DEFAULT_MAX_REFINEMENT


def _read(path) -> str:
    if str(path) == "-":
        return sys.stdin.read()
    return Path(path).read_text()


# -- commands -----------------------------------------------------------------


def cmd_verify(matrix_file, form_variant: str = "standard") -> CommandResult:
    try:
        A = parse_matrix(_read(matrix_file))
        if A.n % 2:
            raise BiPerronError("odd-dimension", f"dimension {A.n} is odd")
        form = SymplecticForm.named(form_variant, A.n // 2)
        p = charpoly(A)
        return CommandResult(
            "ok",
            {
                "form": form_variant,
                "dimension": A.n,
                "symplectic": is_symplectic(A, form),
                "det": str(det(A)),
                "charpoly": poly_to_json(p),
                "charpoly_text": format_poly(p),
                "palindromic": is_palindromic(p),
            },
        )
    except (BiPerronError, OSError) as exc:
        return _error(exc)


def cmd_charpoly(matrix_file) -> CommandResult:
    try:
        A = parse_matrix(_read(matrix_file))
        p = charpoly(A)
        return CommandResult("ok", {"charpoly": poly_to_json(p), "charpoly_text": format_poly(p)})
    except (BiPerronError, OSError) as exc:
        return _error(exc)


def parse_blocks(text: str) -> list:
    """A JSON array of matrices, or consecutive matrices in the text format."""
    stripped = text.strip()
    if stripped.startswith("["):
        data = json.loads(stripped)
        return [IntMatrix([[int(str(v)) for v in row] for row in blk]) for blk in data]
    lines = [ln for ln in text.splitlines() if ln.strip()]
    blocks, i = [], 0
    while i < len(lines):
        n = int(lines[i].split()[0])
        blocks.append(parse_matrix("\n".join(lines[i : i + n + 1])))
        i += n + 1
    return blocks


def cmd_construct(
    family: str,
    g: int | None = None,
    a: int | None = None,
    b: int | None = None,
    z_file=None,
    blocks_file=None,
    max_refinement: int | None = None,
) -> CommandResult:
    max_refinement = max_refinement or default_max_refinement()
    try:
        if family == "y":
            if g is None or a is None or b is None:
                raise BiPerronError("bad-params", "family y needs g, a and b")
            Z = parse_matrix(_read(z_file)) if z_file else None
            params = families.YFamilyParams(g, a, b, Z)
            report = families.nonsurjectivity_certificate(params, max_refinement)
            return CommandResult("ok", {"family": "y", **report})
        if family == "block":
            if blocks_file is None:
                raise BiPerronError("bad-params", "family block needs a blocks file")
            params = families.BlockDiagonalParams(parse_blocks(_read(blocks_file)))
            A = families.build_block_diagonal(params)
            form = SymplecticForm.pairwise(params.g)
            p = charpoly(A)
            cert = certify_biperron(p, Mode.FULL_SPECTRUM, max_refinement)
            return CommandResult(
                "ok",
                {
                    "family": "block",
                    "matrix": matrix_to_json(A),
                    "form": form.variant.value,
                    "symplectic": is_symplectic(A, form),
                    "charpoly": poly_to_json(p),
                    "charpoly_text": format_poly(p),
                    "certificate": cert.to_json(),
                },
            )
        raise BiPerronError("bad-params", f"unknown family {family!r}")
    except (BiPerronError, OSError, ValueError) as exc:
        return _error(exc)


def cmd_certify(poly_file, mode: str = "full-spectrum", max_refinement: int | None = None) -> CommandResult:
    max_refinement = max_refinement or default_max_refinement()
    try:
        p = parse_poly(_read(poly_file))
        if p.is_zero():
            raise BiPerronError("zero-polynomial", "cannot certify the zero polynomial")
        cert = certify_biperron(p, Mode(mode), max_refinement)
    except (BiPerronError, OSError, ValueError) as exc:
        return _error(exc)
    status = "undecided" if cert.verdict is Verdict.UNDECIDED else "ok"
    return CommandResult(status, {"certificate": cert.to_json()})


def cmd_density(Ks, jobs: int = 1) -> CommandResult:
    try:
        reports = densitylab.density_scan_many(Ks, jobs)
    except ValueError as exc:
        return _error(exc)
    return CommandResult("ok", {"rows": [r.row() for r in reports]})


def cmd_exceptional(scan_bound: int) -> CommandResult:
    try:
        pairs = densitylab.exceptional_set(scan_bound)
    except ValueError as exc:
        return _error(exc)
    return CommandResult("ok", {"scan_bound": scan_bound, "pairs": [{"n": q.n, "m": q.m} for q in pairs]})


def cmd_random(g: int, steps: int, seed: int, form_variant: str = "standard") -> CommandResult:
    try:
        A = families.random_symplectic(g, steps, seed)
    except BiPerronError as exc:
        return _error(exc)
    p = charpoly(A)
    return CommandResult(
        "ok",
        {
            "g": g,
            "steps": steps,
            "seed": seed,
            "matrix": matrix_to_json(A),
            "symplectic": is_symplectic(A, SymplecticForm.named(form_variant, g)),
            "form": form_variant,
            "charpoly": poly_to_json(p),
        },
    )


# -- rendering ----------------------------------------------------------------


def render(result: CommandResult, command: str, out: str) -> str:
    if out == "json" or result.status == "error":
        return result.to_json() + "\n"
    payload = result.payload
    if out == "csv":
        buf = io.StringIO()
        if command == "scan-density":
            w = csv.DictWriter(buf, fieldnames=densitylab.CSV_COLUMNS, lineterminator="\n")
            w.writeheader()
            w.writerows(payload["rows"])
        elif command == "exceptional-set":
            w = csv.DictWriter(buf, fieldnames=("n", "m"), lineterminator="\n")
            w.writeheader()
            w.writerows(payload["pairs"])
        else:
            raise BiPerronError("output", f"csv output is not available for {command}")
        return buf.getvalue()
    # text
    if "matrix" in payload and command in ("random-symplectic",):
        return format_matrix(IntMatrix(payload["matrix"]))
    if command == "scan-density":
        lines = ["K count_Q count_total fraction bound"]
        for r in payload["rows"]:
            lines.append(
                f"{r['K']} {r['count_Q']} {r['count_total']} "
                f"{r['fraction_num']}/{r['fraction_den']} {r['bound_num']}/{r['bound_den']}"
            )
        return "\n".join(lines) + "\n"
    if command == "exceptional-set":
        return "".join(f"{p['n']} {p['m']}\n" for p in payload["pairs"])
    if command == "charpoly":
        return " ".join(payload["charpoly"]) + "\n"
    lines = [f"status: {result.status}"]
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biperron", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=("json", "csv", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-symplectic", parents=[common], help="check A^t J A = J")
    p.add_argument("matrix_file")
    p.add_argument("--form", choices=("standard", "pairwise", "tridiagonal"), default="standard")

    p = sub.add_parser("charpoly", parents=[common], help="exact characteristic polynomial")
    p.add_argument("matrix_file")

    p = sub.add_parser("construct", parents=[common], help="build a family member and certify it")
    p.add_argument("--family", choices=("y", "block"), default="y")
    p.add_argument("--g", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--Z", dest="z_file", help="matrix file for the Z block")
    p.add_argument("--blocks", dest="blocks_file", help="file holding the diagonal blocks")
    p.add_argument("--max-refinement", type=int)

    p = sub.add_parser("certify-biperron", parents=[common], help="annulus certificate for a polynomial")
    p.add_argument("poly_file")
    p.add_argument("--mode", choices=("full-spectrum", "minimal-poly"), default="full-spectrum")
    p.add_argument("--max-refinement", type=int)

    p = sub.add_parser("scan-density", parents=[common], help="density of real-root-free quartics")
    p.add_argument("--K", type=int, nargs="+", required=True)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("exceptional-set", parents=[common], help="finite exceptional set of the lemma")
    p.add_argument("--scan-bound", type=int, default=10)

    p = sub.add_parser("random-symplectic", parents=[common], help="seeded random element of Sp(2g, Z)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--form", choices=("standard", "pairwise", "tridiagonal"), default="standard")
    return parser


def run(argv=None) -> tuple:
    args = build_parser().parse_args(argv)
    c = args.command
    if c == "verify-symplectic":
        result = cmd_verify(args.matrix_file, args.form)
    elif c == "charpoly":
        result = cmd_charpoly(args.matrix_file)
    elif c == "construct":
        result = cmd_construct(args.family, args.g, args.a, args.b, args.z_file, args.blocks_file, args.max_refinement)
    elif c == "certify-biperron":
        result = cmd_certify(args.poly_file, args.mode, args.max_refinement)
    elif c == "scan-density":
        result = cmd_density(args.K, args.jobs)
    elif c == "exceptional-set":
        result = cmd_exceptional(args.scan_bound)
    else:
        result = cmd_random(args.g, args.steps, args.seed, args.form)
    try:
        text = render(result, c, args.out)
    except BiPerronError as exc:
        result = _error(exc)
        text = result.to_json() + "\n"
    return result, text


def main(argv=None) -> int:
    result, text = run(argv)
    sys.stdout.write(text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
