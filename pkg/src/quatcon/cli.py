"""Command-line front end.

Every report starts with a status line; matrices are printed in the same
text format the parser reads, so outputs can be fed back in.

Exit codes: 0 success, 1 ``verify`` found a non-solution, 2 bad input
(parse, shape, I/O, automorphism), 3 eigenvalues outside Q(i),
4 inconsistent equation under ``--expect-solvable``.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .canonical import are_consimilar, canonical_consimilarity
from .equations import (
    EquationKind,
    classify_m_sigma,
    solve_general,
    solve_structured,
    solve_via_canonical,
    verify_solution,
)
from .errors import (
    EigenvaluesNotGaussianRational,
    ExactFrameUnavailable,
    NotInvolutive,
    ParseError,
    ShapeMismatch,
)
from .matrix import SolutionSet, Status, format_matrix, read_matrix
from .scalar import Automorphism, Frame, Sigma, parse_quat, reduce_automorphism

EXIT_OK = 0
EXIT_NOT_VERIFIED = 1
EXIT_INPUT = 2
EXIT_EIGEN = 3
EXIT_INCONSISTENT = 4


@dataclass(frozen=True)
class SigmaChoice:
    """A parsed ``--sigma`` value: the reduced sigma plus its frame."""

    text: str
    automorphism: Automorphism
    sigma: Sigma
    frame: Frame

    @classmethod
    def parse(cls, text):
        auto = Automorphism.from_quat(parse_quat(text))
        sigma, frame = reduce_automorphism(auto)
        return cls(text, auto, sigma, frame)

    def into_frame(self, m):
        if self.frame.is_standard:
            return m
        return m.map(self.frame.to_frame)

    def out_of_frame(self, m):
        if self.frame.is_standard:
            return m
        return m.map(self.frame.from_frame)

    def header(self):
        lines = [f"SIGMA {self.sigma}"]
        if not self.frame.is_standard:
            lines.append(f"FRAME {self.frame}")
        return lines


def _matrix_block(title, m):
    return [title, format_matrix(m)]


def _solution_lines(sols):
    lines = []
    if sols.status is Status.INCONSISTENT:
        return lines
    lines += _matrix_block("PARTICULAR", sols.particular)
    for t, y in enumerate(sols.basis, start=1):
        lines += _matrix_block(f"BASIS {t}", y)
    return lines


def cmd_canon(args):
    choice = SigmaChoice.parse(args.sigma)
    a = read_matrix(args.matrix)
    res = canonical_consimilarity(choice.into_frame(a), choice.sigma)
    lines = ["CANONICAL"] + choice.header() + ["SPEC"] + res.spec.lines()
    lines += _matrix_block("CERTIFICATE", choice.out_of_frame(res.certificate))
    lines += _matrix_block("FORM", choice.out_of_frame(res.canonical))
    return lines, EXIT_OK


def _cmd_check(args, sigma_text, word):
    choice = SigmaChoice.parse(sigma_text)
    p, q = read_matrix(args.first), read_matrix(args.second)
    same = are_consimilar(choice.into_frame(p), choice.into_frame(q), choice.sigma)
    status = word if same else f"NOT {word}"
    return [status] + choice.header(), EXIT_OK


def cmd_check_consimilar(args):
    return _cmd_check(args, args.sigma, "CONSIMILAR")


def cmd_check_similar(args):
    return _cmd_check(args, "1", "SIMILAR")


def _solve(method, a, b, c, sigma, kind):
    if method == "auto":
        method = "structured" if a.is_complex() and b.is_complex() else "general"
    if method == "structured":
        return method, solve_structured(a, b, c, sigma, kind)
    if method == "canonical":
        return method, solve_via_canonical(a, b, c, sigma, kind)
    return method, solve_general(a, b, c, sigma, kind)


def _m_sigma_line(a, b, sigma, kind):
    try:
        spec_a = canonical_consimilarity(a, sigma).spec
        spec_b = canonical_consimilarity(b, sigma).spec
    except EigenvaluesNotGaussianRational:
        return "M_SIGMA unavailable"
    return f"M_SIGMA {classify_m_sigma(spec_a, spec_b, sigma, kind)}"


def cmd_solve(args):
    choice = SigmaChoice.parse(args.sigma)
    kind = EquationKind(args.kind)
    a, b, c = (choice.into_frame(read_matrix(p)) for p in (args.a, args.b, args.c))
    if not a.is_square() or not b.is_square() or c.shape != (a.rows, b.rows):
        raise ShapeMismatch(f"shapes A {a.shape}, B {b.shape}, C {c.shape} do not conform")
    method, sols = _solve(args.method, a, b, c, choice.sigma, kind)
    if choice.frame.is_standard:
        out = sols
    else:
        out = SolutionSet(sols.status,
                          None if sols.particular is None else choice.out_of_frame(sols.particular),
                          tuple(choice.out_of_frame(y) for y in sols.basis))
    lines = [str(out)] + choice.header() + [f"KIND {kind}", f"METHOD {method}"]
    if args.classify and a.rows and b.rows:
        lines.append(_m_sigma_line(a, b, choice.sigma, kind))
    lines += _solution_lines(out)
    code = EXIT_OK
    if args.expect_solvable and out.status is Status.INCONSISTENT:
        code = EXIT_INCONSISTENT
    return lines, code


def cmd_verify(args):
    choice = SigmaChoice.parse(args.sigma)
    kind = EquationKind(args.kind)
    a, b, c, x = (choice.into_frame(read_matrix(p)) for p in (args.a, args.b, args.c, args.x))
    ok = verify_solution(a, b, c, x, choice.sigma, kind)
    return (["VERIFIED" if ok else "NOT VERIFIED"] + choice.header(),
            EXIT_OK if ok else EXIT_NOT_VERIFIED)


def cmd_reduce(args):
    choice = SigmaChoice.parse(args.sigma)
    frame = choice.frame
    lines = ["AUTOMORPHISM"] + [f"SIGMA {choice.sigma}"]
    lines += [f"I1 {frame.i1}", f"J1 {frame.j1}", f"K1 {frame.k1}"]
    return lines, EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quatcon",
        description="Consimilarity canonical forms and the equations "
                    "AX - X^s B = C, X - A X^s B = C over rational quaternions.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def sigma_opt(p):
        p.add_argument("--sigma", default="1",
                       help="1, i, or a pure quaternion literal such as j or 3/5i+4/5j")

    p = sub.add_parser("canon", help="canonical form under sigma-consimilarity")
    sigma_opt(p)
    p.add_argument("matrix")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("check-consimilar", help="decide sigma-consimilarity")
    sigma_opt(p)
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_check_consimilar)

    p = sub.add_parser("check-similar", help="decide similarity")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_check_similar)

    p = sub.add_parser("solve", help="solve AX - X^s B = C or X - A X^s B = C")
    sigma_opt(p)
    p.add_argument("--kind", choices=[k.value for k in EquationKind], default="sylvester")
    p.add_argument("--method", choices=["auto", "structured", "canonical", "general"],
                   default="auto")
    p.add_argument("--classify", action="store_true",
                   help="also report the eigenvalue collision set M_sigma")
    p.add_argument("--expect-solvable", action="store_true",
                   help="exit with status 4 when the equation has no solution")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a candidate solution by substitution")
    sigma_opt(p)
    p.add_argument("--kind", choices=[k.value for k in EquationKind], default="sylvester")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")
    p.add_argument("x")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce-automorphism", help="show the frame reducing an automorphism")
    sigma_opt(p)
    p.set_defaults(func=cmd_reduce)
    return parser


def run(argv):
    """Run one command; returns ``(report_text, exit_code, error_text)``."""
    args = build_parser().parse_args(argv)
    try:
        lines, code = args.func(args)
    except (ParseError, ShapeMismatch, NotInvolutive, ExactFrameUnavailable) as exc:
        return "", EXIT_INPUT, f"error: {exc}"
    except OSError as exc:
        return "", EXIT_INPUT, f"error: {exc}"
    except EigenvaluesNotGaussianRational as exc:
        return "", EXIT_EIGEN, f"error: {exc}"
    return "\n".join(lines) + "\n", code, ""


def main(argv=None):
    report, code, err = run(sys.argv[1:] if argv is None else argv)
    if report:
        sys.stdout.write(report)
    if err:
        print(err, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
