"""Command-line driver.

Every command prints a tab-separated table with a one-line header, or with
``--json`` one JSON object per row. Domain errors exit with status 1 and
internal assertion failures with status 2, each with a single
``error<TAB>Kind<TAB>message`` line on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from .bvp import (
    BvpSpec,
    build_phi,
    reconstruct,
    sample_points_method1,
    sample_points_method2,
    transform,
)
from .charpoly import char_poly, spectrum_check
from .errors import DimensionMismatch, DomainError, InternalAssertion, SpectrumMismatch
from .linalg import QMatrix, is_normal, is_symmetric, normality_by_parts, right_eigen
from .poly import QPoly, zeros
from .quaternion import ONE, Quaternion
from .textio import format_quaternion, format_real, parse_quaternion, read_matrix, read_polynomial, read_spec, read_transform_data

COMMANDS = ("roots", "eig", "normal-check", "charpoly", "sample", "reconstruct", "verify")


class Table:
    """Collects rows and writes them as TSV or JSON lines."""

    def __init__(self, columns: Sequence[str], as_json: bool, out=None):
        self.columns = list(columns)
        self.as_json = as_json
        self.out = out or sys.stdout
        if not as_json:
            self.out.write("\t".join(self.columns) + "\n")

    def row(self, *values):
        cells = ["-" if v is None else str(v) for v in values]
        if self.as_json:
            self.out.write(json.dumps(dict(zip(self.columns, cells))) + "\n")
        else:
            self.out.write("\t".join(cells) + "\n")


def _digits(text: str) -> int:
    value = int(text)
    if not 1 <= value <= 17:
        raise argparse.ArgumentTypeError("digits must be in [1, 17]")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", default=[], metavar="PATH",
                        help="input file (reconstruct takes a BVP file, then a data file)")
    common.add_argument("--s", dest="s", metavar="LITERAL", help="override the normalisation s")
    common.add_argument("--method", type=int, choices=(1, 2), default=1, help="sample point construction")
    common.add_argument("--digits", type=_digits, default=6, help="significant digits, 1..17")
    common.add_argument("--json", action="store_true", help="one JSON object per line")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised checks")

    parser = argparse.ArgumentParser(prog="quatsample", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "roots": "zero classes of a simple quaternion polynomial",
        "eig": "standard right eigenvalues of a quaternion matrix",
        "normal-check": "normality tests for a quaternion matrix",
        "charpoly": "characteristic polynomial of a tridiagonal symmetric matrix",
        "sample": "sample points, basis vectors and interpolants of a boundary-value problem",
        "reconstruct": "compare the transform with its sampling reconstruction",
        "verify": "run the reference checks and seeded random checks",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _one_input(args) -> str:
    if len(args.input) != 1:
        raise DimensionMismatch(f"{args.command} takes exactly one --input, got {len(args.input)}")
    return args.input[0]


def _spec_and_s(path: str, override):
    sf = read_spec(path)
    spec = BvpSpec(sf.N, sf.a, sf.b, sf.h1, sf.h2)
    if override is not None:
        return spec, parse_quaternion(override)
    return spec, sf.s or ONE


def cmd_roots(args, fmt):
    p = QPoly(read_polynomial(_one_input(args)))
    table = Table(["kind", "representative", "re", "r"], args.json)
    for rep in zeros(p):
        table.row(rep.kind, fmt(rep.representative), fmt.real(rep.orbit.re), fmt.real(rep.orbit.r))


def cmd_eig(args, fmt):
    A = QMatrix(read_matrix(_one_input(args)))
    table = Table(["k", "value", "residual"], args.json)
    for k, pair in enumerate(right_eigen(A), start=1):
        table.row(k, fmt(pair.value), f"{pair.residual(A):.2e}")


def cmd_normal_check(args, fmt):
    A = QMatrix(read_matrix(_one_input(args)))
    table = Table(["test", "result"], args.json)
    table.row("direct", str(is_normal(A)).lower())
    if is_symmetric(A):
        table.row("parts", str(normality_by_parts(A)).lower())
    else:
        table.row("parts", "not-symmetric")


def cmd_charpoly(args, fmt):
    A = QMatrix(read_matrix(_one_input(args)))
    s = parse_quaternion(args.s) if args.s is not None else ONE
    poly = char_poly(A, s)
    table = Table(["record", "index", "kind", "value", "re", "r"], args.json)
    for j, c in enumerate(poly.coeffs):
        table.row("coeff", j, None, fmt(c), None, None)
    try:
        result = spectrum_check(A, s)
    except SpectrumMismatch:
        for k, rep in enumerate(zeros(poly), start=1):
            table.row("zero", k, rep.kind, fmt(rep.representative), fmt.real(rep.orbit.re), fmt.real(rep.orbit.r))
        table.row("check", None, None, "mismatch", None, None)
        raise
    for k, rep in enumerate(result.zero_classes, start=1):
        table.row("zero", k, rep.kind, fmt(rep.representative), fmt.real(rep.orbit.re), fmt.real(rep.orbit.r))
    table.row("check", None, None, "match", None, None)


def cmd_sample(args, fmt):
    spec, s = _spec_and_s(_one_input(args), args.s)
    exp = sample_points_method1(spec, s) if args.method == 1 else sample_points_method2(spec, s)
    table = Table(["record", "k", "j", "value"], args.json)
    for k, lam in enumerate(exp.points, start=1):
        table.row("point", k, None, fmt(lam))
    for k, vec in enumerate(exp.basis, start=1):
        for j, entry in enumerate(vec, start=1):
            table.row("basis", k, j, fmt(entry))
    for k, psi in enumerate(exp.interpolants, start=1):
        for j, c in enumerate(psi.coeffs):
            table.row("psi", k, j, fmt(c))


def cmd_reconstruct(args, fmt):
    if len(args.input) != 2:
        raise DimensionMismatch("reconstruct takes --input SPEC --input DATA")
    spec, s = _spec_and_s(args.input[0], args.s)
    F, points = read_transform_data(args.input[1])
    phi = build_phi(spec)
    exp = sample_points_method1(spec, s, phi) if args.method == 1 else sample_points_method2(spec, s, table=phi)
    samples = [transform(F, phi, s, lam) for lam in exp.points]
    table = Table(["index", "lambda", "transform", "reconstruction", "abs_error"], args.json)
    for k, lam in enumerate(points, start=1):
        direct = transform(F, phi, s, lam)
        approx = reconstruct(samples, exp, lam)
        table.row(k, fmt(lam), fmt(direct), fmt(approx), f"{(direct - approx).norm():.2e}")


def cmd_verify(args, fmt):
    from .golden import run_all

    table = Table(["check", "status", "detail"], args.json)
    failed = 0
    for name, passed, detail in run_all(args.seed):
        failed += not passed
        table.row(name, "pass" if passed else "FAIL", detail)
    if failed:
        raise _VerifyFailed(f"{failed} check(s) failed")


class _VerifyFailed(InternalAssertion):
    pass


class _Formatter:
    """Fixed-digit output; components below ``CLEAN_RTOL`` of the value's scale print as 0."""

    CLEAN_RTOL = 1e-12

    def __init__(self, digits: int):
        self.digits = digits

    def __call__(self, q) -> str:
        q = Quaternion.coerce(q)
        arr = q.to_array()
        arr[np.abs(arr) <= self.CLEAN_RTOL * max(1.0, q.norm())] = 0.0
        return format_quaternion(Quaternion.from_array(arr), self.digits)

    def real(self, x: float) -> str:
        return format_real(0.0 if abs(x) <= self.CLEAN_RTOL else x, self.digits)


HANDLERS = {
    "roots": cmd_roots,
    "eig": cmd_eig,
    "normal-check": cmd_normal_check,
    "charpoly": cmd_charpoly,
    "sample": cmd_sample,
    "reconstruct": cmd_reconstruct,
    "verify": cmd_verify,
}


def _report(kind: str, exc: Exception) -> None:
    message = " ".join(str(exc).split()) or kind
    sys.stderr.write(f"error\t{kind}\t{message}\n")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = _Formatter(args.digits)
    try:
        HANDLERS[args.command](args, fmt)
    except DomainError as exc:
        _report(type(exc).__name__, exc)
        return 1
    except OSError as exc:
        _report("InputError", exc)
        return 1
    except InternalAssertion as exc:
        _report(type(exc).__name__, exc)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
