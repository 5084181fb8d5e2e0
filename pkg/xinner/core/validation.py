"""
Structural checks on a presentation before any computation runs
"""

import logging
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Dict, List, Optional

import numpy as np

from .algebra import weighted_degree
from .automorphism import SkewDerivation
from .errors import (
    InputError,
    MathematicalRejection,
    StepBudgetExceeded,
)
from .presentation import AlgebraPresentation, ColorData, Kind
from .rewrite import confluence_check
from .scalar import ONE, ZERO, format_scalar

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
WARN = "WARN"


@dataclass
class CheckResult:
    check: str
    status: str
    detail: str = ""

    def to_dict(self) -> Dict[str, str]:
        return {"check": self.check, "status": self.status, "detail": self.detail}


@dataclass
class ValidationReport:
    """Named PASS/WARN/FAIL entries; WARN does not fail the report."""

    name: str
    kind: Optional[str] = None
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def status(self, check: str) -> Optional[str]:
        for c in self.checks:
            if c.check == check:
                return c.status
        return None

    def add(self, check: str, ok: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(check, PASS if ok else FAIL, detail))

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "kind": self.kind,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def _check_termination(p: AlgebraPresentation, report: ValidationReport) -> None:
    sys = p.system
    offending = []
    for j, i in sys.lower_term_pairs():
        bound = sys.degrees[j] + sys.degrees[i]
        for word in sys.tail_words(j, i):
            mono = [0] * sys.n
            for idx, e in word:
                mono[idx] += e
            if weighted_degree(mono, sys.degrees) >= bound:
                offending.append(f"{sys.names[j]}*{sys.names[i]} -> {sys.monomial_text(mono)}")
    report.add(
        "termination",
        not offending,
        "; ".join(offending) or "every lower-order term has smaller degree",
    )


def _check_commutation(p: AlgebraPresentation, report: ValidationReport) -> None:
    matrix = p.commutation_matrix
    n = p.system.n
    bad = [
        f"q[{p.names[i]},{p.names[k]}]"
        for i in range(n)
        for k in range(n)
        if not matrix.entry(i, k) or matrix.entry(i, k) * matrix.entry(k, i) != 1
    ]
    report.add("commutation_matrix", not bad, ", ".join(bad))


def _check_ore(p: AlgebraPresentation, report: ValidationReport) -> None:
    ore = p.ore
    if ore.q_skew is None:
        report.checks.append(
            CheckResult("ore_qskew", WARN, "delta tau is not a scalar multiple of tau delta")
        )
    else:
        report.add("ore_qskew", True, f"Q = {format_scalar(ore.q_skew)}")
    try:
        derivation = SkewDerivation.from_ore(ore, p)
        derivation.twist.validate()
        derivation.validate()
    except MathematicalRejection as exc:
        report.add("ore_leibniz", False, str(exc))
    else:
        report.add("ore_leibniz", True)


def _check_color(p: AlgebraPresentation, color: ColorData, report: ValidationReport) -> None:
    names = p.declared_names
    eps = color.epsilon
    report.add(
        "epsilon_antisymmetry",
        bool(np.array_equal(eps, -eps.T)),
        "" if np.array_equal(eps, -eps.T) else f"E = {eps.tolist()}",
    )

    bad_anti = []
    for (a, b), value in color.brackets.items():
        if (b, a) in color.brackets and a < b:
            left = value.linear_part() or {}
            other = color.brackets[(b, a)].linear_part() or {}
            factor = -color.eps(color.grades[a], color.grades[b])
            expected = {k: factor * v for k, v in other.items()}
            if left != expected:
                bad_anti.append(f"[{a},{b}]")
    report.add("bracket_antisymmetry", not bad_anti, ", ".join(bad_anti))

    nonlinear = [f"[{a},{b}]" for (a, b), v in color.brackets.items() if v.linear_part() is None]
    report.add("bracket_linear", not nonlinear, ", ".join(nonlinear))

    incompatible = []
    for (a, b), value in color.brackets.items():
        target = color.grades[a] + color.grades[b]
        for name in (value.linear_part() or {}):
            if not np.array_equal(color.grades[name], target):
                incompatible.append(f"[{a},{b}] contains {name}")
    report.add("grade_compatibility", not incompatible, "; ".join(incompatible))

    if nonlinear:
        report.add("jacobi", False, "brackets must be linear")
    else:
        failures = _jacobi_failures(color, names)
        report.add("jacobi", not failures, "; ".join(failures))

    faithful = color.is_faithful(names)
    report.add(
        "proper_grading_faithful",
        faithful,
        "" if faithful else "the epsilon radical of the grades is nontrivial",
    )
    generated = color.is_generated(names)
    report.add(
        "proper_grading_generated",
        generated,
        "" if generated else f"grades do not span Z^{color.rank}",
    )


def _jacobi_failures(color: ColorData, names: List[str]) -> List[str]:
    """[[x,y],z] = [x,[y,z]] - eps(g_x, g_y) [y,[x,z]] on generator triples."""
    failures = []
    for x, y, z in permutations(names, 3):
        ux, uy, uz = {x: ONE}, {y: ONE}, {z: ONE}
        left = color.bracket_linear(color.bracket_linear(ux, uy), uz)
        first = color.bracket_linear(ux, color.bracket_linear(uy, uz))
        second = color.bracket_linear(uy, color.bracket_linear(ux, uz))
        factor = color.eps(color.grades[x], color.grades[y])
        right = dict(first)
        for name, c in second.items():
            right[name] = right.get(name, ZERO) - factor * c
        right = {k: v for k, v in right.items() if v}
        if left != right:
            failures.append(f"{x},{y},{z}")
    return failures


def _guarded(
    report: ValidationReport, check: str, step: Callable[[], None]
) -> None:
    try:
        step()
    except (StepBudgetExceeded, InputError, MathematicalRejection) as exc:
        report.add(check, False, str(exc))


def validate_presentation(p: AlgebraPresentation) -> ValidationReport:
    """
    Run every structural check that applies to the presentation.

    Findings never raise: a failing compile stops the report early,
    otherwise each check adds its own entry.

    Args:
        p (AlgebraPresentation): Parsed presentation

    Returns:
        ValidationReport: One entry per check
    """
    report = ValidationReport(p.name)
    try:
        system = p.system
    except (InputError, MathematicalRejection) as exc:
        report.add("compile", False, str(exc))
        return report
    report.add("compile", True, f"order {', '.join(system.names)}")

    if p.is_color:
        _check_color(p, p.color, report)
    kind = p.kind
    report.kind = kind.value if kind is not None else None
    report.add(
        "kind",
        kind is not None,
        kind.value if kind is not None else "unsupported presentation shape",
    )
    if kind is Kind.QUANTUM_SPACE:
        _check_commutation(p, report)
    _check_termination(p, report)
    if p.is_ore_shaped:
        _guarded(report, "ore_leibniz", lambda: _check_ore(p, report))

    def confluence() -> None:
        result = confluence_check(system)
        detail = "; ".join(f["triple"] for f in result.failures)
        report.add("confluence", result.passed, detail or f"{result.checked} overlaps")

    _guarded(report, "confluence", confluence)
    logger.info(
        "%s: %s", p.name, "passed" if report.passed else "failed"
    )
    return report
