#!/usr/bin/env python3
"""
Command-line interface

Usage:
    xinner [--json] [--config FILE] [--verbose] COMMAND ...

    xinner validate weyl.qalg
    xinner nf weyl.qalg "x*y"
    xinner der-solve weyl.qalg --box 1
    xinner shape ex2_6.qalg --sigma "x=x + 1, y=y, z=q^-1*z"
    xinner fixtures run Ex4.1 --check pz_identity

FILE may be the bare name of a bundled presentation such as weyl.qalg.

Exit codes: 0 on success, 1 on mathematical rejection, 2 on usage or
parse errors.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from .core.automorphism import (
    Automorphism,
    aut_order,
    conjugation_automorphism,
    thm23_check,
    thm25_shape,
)
from .core.color import is_semi_invariant
from .core.errors import (
    EXIT_OK,
    EXIT_REJECTED,
    EXIT_USAGE,
    KernelError,
    MathematicalRejection,
    Rejection,
    XInnerError,
    exit_code_for,
)
from .core.ore import (
    NoneInBox,
    classify_stabilizing,
    p_conjugation,
    thm32_case1,
    thm32_case2,
    verify_inducing,
    xinner_derivation_solve,
)
from .core.presentation import AlgebraPresentation, load_presentation
from .core.quantum_space import central_factor, is_monotone, monotone_reduction_steps
from .core.rewrite import poly_conjugate
from .core.scalar import format_scalar
from .core.utils import configure_logging, load_config, to_json
from .core.validation import validate_presentation
from .examples.fixtures import FIXTURES, resolve_example, run_fixtures

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xinner",
        description="X-inner automorphisms of quantum spaces, Ore extensions "
        "and color enveloping algebras",
    )
    parser.add_argument("--json", action="store_true", help="Structured output")
    parser.add_argument("--config", metavar="FILE", help="JSON file overriding the defaults")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        if name != "fixtures":
            sub.add_argument("file", metavar="FILE", help=".qalg presentation")
        return sub

    command("validate", "Run the structural checks")
    sub = command("nf", "Normal form of an expression")
    sub.add_argument("expr", metavar="EXPR")
    sub = command("conj", "Conjugation by a Laurent monomial")
    sub.add_argument("mono", metavar="MONO")
    sub.add_argument("expr", metavar="EXPR", nargs="?")
    sub = command("monotone", "Monotone test and extraction in a quantum space")
    sub.add_argument("expr", metavar="EXPR")
    sub = command("central-factor", "Split a monotone element as Delta * f")
    sub.add_argument("expr", metavar="EXPR")
    sub = command("semiinv", "Semi-invariant test in a color enveloping algebra")
    sub.add_argument("expr", metavar="EXPR")
    sub = command("der-solve", "Search a witness for the Ore derivation")
    sub.add_argument("--box", type=int)
    sub = command("thm32", "Check an inducing candidate of an Ore extension")
    sub.add_argument("--case", type=int, choices=(1, 2), required=True)
    sub.add_argument("--w", metavar="MONO", required=True)
    sub.add_argument("--m", type=int, default=0)
    sub.add_argument("--box", type=int)
    sub = command("verify", "Certify that a^-1 b induces sigma")
    sub.add_argument("--a", metavar="EXPR", required=True)
    sub.add_argument("--b", metavar="EXPR", required=True)
    sub.add_argument("--sigma", metavar="MAP", required=True)
    sub = command("order", "Order of a triangular automorphism")
    sub.add_argument("--sigma", metavar="MAP", required=True)
    sub = command("shape", "Filtration and graded shape of an automorphism")
    sub.add_argument("--sigma", metavar="MAP", required=True)
    sub.add_argument("--samples", type=int)
    sub = command("classify", "Enumerate inducing candidates in a box")
    sub.add_argument("--box", type=int)
    sub = command("pconj", "Conjugation by a power of x - c")
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--box", type=int)
    sub = command("fixtures", "Worked examples")
    sub.add_argument("action", choices=("run", "list"))
    sub.add_argument("ids", nargs="*", metavar="ID")
    sub.add_argument("--check", action="append", metavar="NAME", help="Run only this check")
    return parser


class Session:
    """Parsed arguments plus the effective configuration."""

    def __init__(self, args: argparse.Namespace, config: Dict[str, Any]) -> None:
        self.args = args
        self.config = config

    @property
    def box(self) -> int:
        value = getattr(self.args, "box", None)
        return int(self.config["default_box"]) if value is None else value

    def presentation(self) -> AlgebraPresentation:
        path = resolve_example(self.args.file)
        return load_presentation(path, int(self.config["step_budget"]))

    def emit(self, payload: Dict[str, Any], text: str) -> None:
        if self.args.json:
            print(to_json(payload, int(self.config["schema"])))
        else:
            print(text)

    def witness(self, p: AlgebraPresentation):
        found = xinner_derivation_solve(p, self.box, int(self.config["max_box_unknowns"]))
        if isinstance(found, NoneInBox):
            raise MathematicalRejection(f"no witness with exponents in [-{self.box}, {self.box}]")
        return found


def cmd_validate(s: Session) -> int:
    report = validate_presentation(s.presentation())
    lines = [f"{report.name} ({report.kind or 'unclassified'})"]
    for c in report.checks:
        lines.append(f"  {c.status:<4} {c.check}" + (f": {c.detail}" if c.detail else ""))
    s.emit(report.to_dict(), "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_REJECTED


def cmd_nf(s: Session) -> int:
    p = s.presentation()
    value = p.element(s.args.expr)
    s.emit({"input": s.args.expr, "normal_form": str(value)}, str(value))
    return EXIT_OK


def cmd_conj(s: Session) -> int:
    p = s.presentation()
    mono = p.monomial(s.args.mono)
    if s.args.expr is None:
        sigma = conjugation_automorphism(mono, p)
        s.emit({"monomial": s.args.mono, "images": sigma.to_dict()}, str(sigma))
        return EXIT_OK
    laurent = p.system.laurent_extend(i for i, e in enumerate(mono) if e)
    value = poly_conjugate(mono, p.element(s.args.expr, laurent), laurent)
    s.emit({"monomial": s.args.mono, "input": s.args.expr, "conjugate": str(value)}, str(value))
    return EXIT_OK


def cmd_monotone(s: Session) -> int:
    p = s.presentation()
    w = p.element(s.args.expr)
    report = is_monotone(w, p)
    steps = monotone_reduction_steps(w, p)
    payload = report.to_dict()
    payload["steps"] = [str(v) for v in steps]
    payload["monotone_element"] = str(steps[-1])
    lines = [f"monotone: {report.is_monotone}"]
    if report.pi is not None:
        lines.append(f"pi: {report.pi}")
    lines += [f"  step {k}: {v}" for k, v in enumerate(steps)]
    s.emit(payload, "\n".join(lines))
    return EXIT_OK


def cmd_central_factor(s: Session) -> int:
    p = s.presentation()
    delta, f = central_factor(p.element(s.args.expr), p)
    text = p.system.monomial_text(delta)
    s.emit({"delta": text, "factor": str(f)}, f"Delta = {text}\nf = {f}")
    return EXIT_OK


def cmd_semiinv(s: Session) -> int:
    p = s.presentation()
    report = is_semi_invariant(p.element(s.args.expr), p)
    lines = [f"homogeneous: {report.homogeneous}", f"semi-invariant: {report.is_semi_invariant}"]
    if report.weights is not None:
        lines += [f"  ad {k}: {format_scalar(v)}" for k, v in report.weights.items()]
    s.emit(report.to_dict(), "\n".join(lines))
    return EXIT_OK if report.is_semi_invariant else EXIT_REJECTED


def cmd_der_solve(s: Session) -> int:
    p = s.presentation()
    found = xinner_derivation_solve(p, s.box, int(s.config["max_box_unknowns"]))
    if isinstance(found, NoneInBox):
        s.emit(found.to_dict(), f"no witness with exponents in [-{found.box}, {found.box}]")
        return EXIT_REJECTED
    text = f"c = {found.element}"
    if found.kernel:
        text += "\nkernel: " + ", ".join(str(k) for k in found.kernel)
    s.emit(found.to_dict(), text)
    return EXIT_OK


def cmd_thm32(s: Session) -> int:
    p = s.presentation()
    w = p.monomial(s.args.w)
    try:
        if s.args.case == 1:
            report = thm32_case1(w, p)
        else:
            report = thm32_case2(w, s.args.m, s.witness(p), p)
    except Rejection as exc:
        failed = exc.report
        lines = [f"rejected: {exc}"]
        lines += [f"  {k}: {failed.values[k]}" for k, ok in failed.closures.items() if not ok]
        s.emit(failed.to_dict(), "\n".join(lines))
        return EXIT_REJECTED
    lines = [f"case {report.case}, w = {report.w_text}"]
    lines += [f"  {k}: {report.values[k]}" for k in report.closures]
    lines.append(f"sigma: {report.automorphism}")
    if report.inducing is not None:
        lines.append(f"a = {report.inducing[0]}, b = {report.inducing[1]}")
    s.emit(report.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_verify(s: Session) -> int:
    p = s.presentation()
    sigma = Automorphism.from_text(p, s.args.sigma)
    ok = verify_inducing(p.element(s.args.a), p.element(s.args.b), sigma, p)
    s.emit({"induces": ok, "sigma": sigma.to_dict()}, "induced" if ok else "not induced")
    return EXIT_OK if ok else EXIT_REJECTED


def cmd_order(s: Session) -> int:
    p = s.presentation()
    order = aut_order(Automorphism.from_text(p, s.args.sigma))
    s.emit({"order": str(order)}, str(order))
    return EXIT_OK


def cmd_shape(s: Session) -> int:
    p = s.presentation()
    sigma = Automorphism.from_text(p, s.args.sigma)
    samples = s.args.samples
    report = thm23_check(
        sigma,
        p,
        int(s.config["shape_samples"]) if samples is None else samples,
        int(s.config["random_seed"]),
    )
    payload: Dict[str, Any] = {"filtration": report.to_dict()}
    lines = [f"filtration: {'PASS' if report.passed else 'FAIL'}"]
    lines += [
        f"  {e.generator}: degree preserved {e.degree_preserved}, leading {e.leading_scalar}"
        for e in report.entries
    ]
    passed = report.passed
    if p.is_color:
        graded = thm25_shape(sigma, p, int(s.config["grade_search_box"]))
        payload["graded"] = graded.to_dict()
        if graded.found:
            lines.append(f"graded: h = {graded.h}")
        else:
            lines.append(f"graded: none ({graded.detail})")
        passed = passed and graded.found
    s.emit(payload, "\n".join(lines))
    return EXIT_OK if passed else EXIT_REJECTED


def cmd_classify(s: Session) -> int:
    p = s.presentation()
    report = classify_stabilizing(p, s.box, int(s.config["max_box_unknowns"]))
    lines = [f"case {report.case}, box {report.box}, rejected {report.rejected}"]
    for r in report.accepted:
        label = f"w = {r.w_text}" + ("" if r.m is None else f", m = {r.m}")
        lines.append(f"  {label}: {r.automorphism}")
    s.emit(report.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_pconj(s: Session) -> int:
    p = s.presentation()
    sigma = p_conjugation(s.witness(p), s.args.m, p)
    s.emit({"m": s.args.m, "images": sigma.to_dict()}, str(sigma))
    return EXIT_OK


def cmd_fixtures(s: Session) -> int:
    if s.args.action == "list":
        payload = {
            "fixtures": [
                {"id": f.id, "source": f.source, "checks": [c.name for c in f.checks]}
                for f in FIXTURES.values()
            ]
        }
        text = "\n".join(f"{f.id:<6} {f.source:<12} {f.description}" for f in FIXTURES.values())
        s.emit(payload, text)
        return EXIT_OK
    summary = run_fixtures(s.args.ids, int(s.config["step_budget"]), s.args.check)
    lines = []
    for o in summary.outcomes:
        status = "PASS" if o.passed else "FAIL"
        lines.append(f"{status} {o.fixture} {o.check} [{o.provenance}]  $ {o.command}")
        if not o.passed:
            lines.append(f"    expected: {o.expected}")
            lines.append(f"    computed: {o.computed}")
    failed = sum(not o.passed for o in summary.outcomes)
    lines.append(f"{len(summary.outcomes) - failed} passed, {failed} failed")
    s.emit(summary.to_dict(), "\n".join(lines))
    return EXIT_OK if summary.passed else EXIT_REJECTED


COMMANDS = {
    "validate": cmd_validate,
    "nf": cmd_nf,
    "conj": cmd_conj,
    "monotone": cmd_monotone,
    "central-factor": cmd_central_factor,
    "semiinv": cmd_semiinv,
    "der-solve": cmd_der_solve,
    "thm32": cmd_thm32,
    "verify": cmd_verify,
    "order": cmd_order,
    "shape": cmd_shape,
    "classify": cmd_classify,
    "pconj": cmd_pconj,
    "fixtures": cmd_fixtures,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the ``xinner`` console script."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        config = load_config(args.config)
        configure_logging("DEBUG" if args.verbose else config["log_level"])
        return COMMANDS[args.command](Session(args, config))
    except XInnerError as exc:
        code = exit_code_for(exc)
        if isinstance(exc, KernelError):
            logger.error("%s", exc)
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return code
    except OSError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
