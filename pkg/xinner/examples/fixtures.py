"""
Registry of worked examples with their expected values

Each fixture names a presentation file under this directory and a list of
checks. A check computes an expected and an observed text with the kernel;
it passes when the two agree. Every check carries a provenance tag:

    PRINTED  value printed with the example
    DERIVED  value computed by hand from the relations
    TRIVIAL  value forced by a definition
"""

import logging
import os
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..core.automorphism import (
    Automorphism,
    aut_order,
    compose,
    conjugation_automorphism,
    equal,
    thm23_check,
    thm25_shape,
)
from ..core.color import is_semi_invariant
from ..core.errors import InvalidArgument, Rejection, XInnerError
from ..core.ore import (
    InnerWitness,
    classify_stabilizing,
    coefficient_identity,
    invariant_polynomial_check,
    p_conjugation,
    thm32_case1,
    thm32_case2,
    verify_inducing,
    weyl_pz_identity,
    xinner_derivation_solve,
)
from ..core.presentation import AlgebraPresentation, load_presentation
from ..core.rewrite import poly_conjugate
from ..core.scalar import format_scalar, q
from ..core.validation import validate_presentation

logger = logging.getLogger(__name__)

EXAMPLES_DIR = os.path.dirname(os.path.abspath(__file__))

PRINTED = "PRINTED"
DERIVED = "DERIVED"
TRIVIAL = "TRIVIAL"

Outcome = Tuple[str, str]


@dataclass
class FixtureCheck:
    name: str
    provenance: str
    command: str
    run: Callable[[AlgebraPresentation], Outcome]


@dataclass
class Fixture:
    id: str
    source: str
    description: str
    checks: List[FixtureCheck] = field(default_factory=list)

    @property
    def path(self) -> str:
        return example_path(self.source)


@dataclass
class CheckOutcome:
    fixture: str
    check: str
    provenance: str
    command: str
    passed: bool
    expected: str
    computed: str

    def to_dict(self) -> Dict[str, object]:
        return {
            "fixture": self.fixture,
            "check": self.check,
            "provenance": self.provenance,
            "command": self.command,
            "status": "PASS" if self.passed else "FAIL",
            "expected": self.expected,
            "computed": self.computed,
        }


@dataclass
class FixtureSummary:
    outcomes: List[CheckOutcome]

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def to_dict(self) -> Dict[str, object]:
        return {
            "passed": self.passed,
            "total": len(self.outcomes),
            "failed": sum(not o.passed for o in self.outcomes),
            "checks": [o.to_dict() for o in self.outcomes],
        }


def example_path(filename: str) -> str:
    return os.path.join(EXAMPLES_DIR, filename)


def resolve_example(path: str) -> str:
    """The path itself when it exists, else the bundled file of that bare name."""
    if os.path.exists(path) or os.path.dirname(path):
        return path
    bundled = example_path(path)
    return bundled if os.path.exists(bundled) else path


def load_example(filename: str, step_budget: Optional[int] = None) -> AlgebraPresentation:
    """Load one of the bundled .qalg presentations."""
    if step_budget is None:
        return load_presentation(example_path(filename))
    return load_presentation(example_path(filename), step_budget)


# helpers shared by the checks


def power(p: AlgebraPresentation, text: str, n: int) -> Tuple[int, ...]:
    """Exponent vector of the monomial ``text`` raised to n."""
    return tuple(n * e for e in p.monomial(text))


def expected_map(
    p: AlgebraPresentation, images: Dict[str, str], laurent: bool = False
) -> str:
    """Text of the map given by ``gen -> expression`` in canonical order."""
    system = p.ore.laurent() if laurent else p.system
    parts = [
        f"{name} -> {p.element(images.get(name, name), system)}" for name in system.names
    ]
    return ", ".join(parts)


def qp(k: int) -> str:
    return f"q^{k}" if k else "1"


# Ex4.1: quantum Weyl algebra


def _weyl_nf(p: AlgebraPresentation) -> Outcome:
    return str(p.element("q*y*x + 1")), str(p.element("x*y"))


def _weyl_conj(p: AlgebraPresentation) -> Outcome:
    laurent = p.ore.laurent()
    computed = poly_conjugate(p.monomial("y"), p.element("x", laurent), laurent)
    return str(p.element("q*x + y^-1", laurent)), str(computed)


def _weyl_identity(p: AlgebraPresentation) -> Outcome:
    return format_scalar(q / (q - 1)), format_scalar(weyl_pz_identity(p))


def _weyl_witness(p: AlgebraPresentation) -> Outcome:
    found = xinner_derivation_solve(p, box=1)
    computed = str(found.element) if isinstance(found, InnerWitness) else "none in box"
    return str(p.element("y^-1/(1-q)", p.ore.laurent())), computed


def _weyl_case2(p: AlgebraPresentation) -> Outcome:
    witness = xinner_derivation_solve(p, box=1)
    expected, computed = [], []
    for n in range(-3, 4):
        accepted = []
        for m in range(-3, 4):
            try:
                thm32_case2(power(p, "y", n), m, witness, p)
                accepted.append(m)
            except Rejection:
                pass
        expected.append(f"{n}: [{n}]")
        computed.append(f"{n}: {accepted}")
    return "; ".join(expected), "; ".join(computed)


def _weyl_inducing(p: AlgebraPresentation) -> Outcome:
    commutator = p.element("x*y - y*x")
    one = p.element("1")
    expected, computed = [], []
    for n in range(-3, 4):
        sigma = Automorphism.from_text(p, f"x={qp(n)}*x, y={qp(-n)}*y", name=f"sigma_{n}")
        a, b = (one, commutator ** n) if n >= 0 else (commutator ** -n, one)
        expected.append(f"{n}: True")
        computed.append(f"{n}: {verify_inducing(a, b, sigma, p)}")
    return "; ".join(expected), "; ".join(computed)


def _weyl_order(p: AlgebraPresentation) -> Outcome:
    sigma = Automorphism.from_text(p, "x=q*x, y=q^-1*y")
    return "Infinite", str(aut_order(sigma))


def _weyl_pconj(p: AlgebraPresentation) -> Outcome:
    witness = xinner_derivation_solve(p, box=1)
    expected = expected_map(p, {"x": "x - y^-1", "y": "q^-1*y"}, laurent=True)
    return expected, str(p_conjugation(witness, 1, p))


def _weyl_coefficient(p: AlgebraPresentation) -> Outcome:
    report = coefficient_identity("y", 2, p)
    return str(p.element("q + 1")), f"{report.observed}" + ("" if report.passed else " (mismatch)")


# Ex4.2 / Ex2.6: color enveloping algebra


def _color_validate(p: AlgebraPresentation) -> Outcome:
    report = validate_presentation(p)
    failed = [c.check for c in report.checks if c.status == "FAIL"]
    return "no failures", ", ".join(failed) or "no failures"


def _color_conj(p: AlgebraPresentation) -> Outcome:
    expected, computed = [], []
    for n, m in product(range(-2, 3), repeat=2):
        d = tuple(a + b for a, b in zip(power(p, "y", n), power(p, "z", m)))
        sigma = conjugation_automorphism(d, p)
        expected.append(
            expected_map(p, {"x": f"x + ({n})", "y": f"{qp(m)}*y", "z": f"{qp(-n)}*z"})
        )
        computed.append(str(sigma))
    return "\n".join(expected), "\n".join(computed)


def _color_group(p: AlgebraPresentation) -> Outcome:
    maps = []
    for n, m in product(range(-2, 3), repeat=2):
        d = tuple(a + b for a, b in zip(power(p, "y", n), power(p, "z", m)))
        maps.append(conjugation_automorphism(d, p))
    commuting = all(
        equal(compose(a, b), compose(b, a)) for i, a in enumerate(maps) for b in maps[i + 1 :]
    )
    distinct = all(not equal(a, b) for i, a in enumerate(maps) for b in maps[i + 1 :])
    return "commute: True, distinct: True", f"commute: {commuting}, distinct: {distinct}"


def _color_no_witness(p: AlgebraPresentation) -> Outcome:
    found = xinner_derivation_solve(p, box=3)
    return "none in box 3", "none in box 3" if not found.found else str(found.element)


def _color_semi_invariants(p: AlgebraPresentation) -> Outcome:
    expected = "y: {x: 1, y: 0, z: 0}; z: {x: 0, y: 0, z: 0}"
    parts = []
    for name in ("y", "z"):
        report = is_semi_invariant(p.element(name), p)
        weights = report.weights or {}
        body = ", ".join(f"{k}: {format_scalar(weights[k])}" for k in sorted(weights))
        parts.append(f"{name}: {{{body}}}")
    return expected, "; ".join(parts)


def _color_shape(p: AlgebraPresentation) -> Outcome:
    fitted = []
    for n, m in product(range(-2, 3), repeat=2):
        d = tuple(a + b for a, b in zip(power(p, "y", n), power(p, "z", m)))
        shape = thm25_shape(conjugation_automorphism(d, p), p)
        fitted.append(shape.found)
    return "25 of 25", f"{sum(fitted)} of {len(fitted)}"


def _corrupted(filename: str, check: str) -> Callable[[AlgebraPresentation], Outcome]:
    def run(_: AlgebraPresentation) -> Outcome:
        report = validate_presentation(load_example(filename))
        return f"{check}: FAIL", f"{check}: {report.status(check)}"

    return run


# Ex4.3: delta not X-inner, tau delta = delta tau


def _q1_case1(p: AlgebraPresentation) -> Outcome:
    expected, computed = [], []
    for m in range(-3, 4):
        report = thm32_case1(power(p, "z", m), p)
        expected.append(expected_map(p, {"x": f"{qp(m)}*x", "y": f"{qp(-m)}*y"}))
        computed.append(str(report.automorphism))
    return "\n".join(expected), "\n".join(computed)


def _q1_no_witness(p: AlgebraPresentation) -> Outcome:
    found = xinner_derivation_solve(p, box=3)
    return "none in box 3", "none in box 3" if not found.found else str(found.element)


def _q1_rejects_y(p: AlgebraPresentation) -> Outcome:
    failing = []
    for n, m in ((1, 0), (-1, 2), (2, -1)):
        w = tuple(a + b for a, b in zip(power(p, "y", n), power(p, "z", m)))
        try:
            thm32_case1(w, p)
            failing.append("accepted")
        except Rejection as exc:
            failing.append(
                ",".join(k for k, ok in exc.report.closures.items() if not ok)
            )
    return "w_inv_delta_w; w_inv_delta_w; w_inv_delta_w", "; ".join(failing)


def _q1_classify(p: AlgebraPresentation) -> Outcome:
    report = classify_stabilizing(p, box=2)
    system = p.system
    expected = [system.monomial_text(power(p, "z", m)) for m in range(-2, 3)]
    return ", ".join(sorted(expected)), ", ".join(sorted(r.w_text for r in report.accepted))


# Ex4.4: delta X-inner, delta tau = q^2 tau delta


def _q2_witness(p: AlgebraPresentation) -> Outcome:
    found = xinner_derivation_solve(p, box=1)
    laurent = p.ore.laurent()
    expected = f"{p.element('q*y^-1*z/(1-q^2)', laurent)}; kernel {p.element('y^-1*z^-1', laurent)}"
    if not found.found:
        return expected, "none in box 1"
    kernel = found.kernel[0] if len(found.kernel) == 1 else None
    if kernel is None:
        kernel_text = f"{len(found.kernel)} vectors"
    else:
        kernel_text = str(kernel.scale(1 / kernel.leading_coefficient()))
    return expected, f"{found.element}; kernel {kernel_text}"


def _q2_case2(p: AlgebraPresentation) -> Outcome:
    witness = xinner_derivation_solve(p, box=1)
    expected, computed = [], []
    for n, m in product(range(-2, 3), repeat=2):
        w = tuple(a + b for a, b in zip(power(p, "y", m), power(p, "z", n)))
        report = thm32_case2(w, m, witness, p)
        expected.append(expected_map(p, {"x": f"{qp(m - n)}*x", "y": f"{qp(n - m)}*y"}))
        computed.append(str(report.automorphism))
    return "\n".join(expected), "\n".join(computed)


def _q2_pconj(p: AlgebraPresentation) -> Outcome:
    witness = xinner_derivation_solve(p, box=1)
    return (
        expected_map(p, {"x": "x - q*y^-1*z", "y": "q^-1*y", "z": "q*z"}, laurent=True),
        str(p_conjugation(witness, 1, p)),
    )


def _q2_coefficient(p: AlgebraPresentation) -> Outcome:
    outcomes = [coefficient_identity("y", n, p).passed for n in (1, 2, 3)]
    return "[True, True, True]", str(outcomes)


# Ex4.5 / Ex2.4: delta X-inner but not q-skew


def _skew_validate(p: AlgebraPresentation) -> Outcome:
    report = validate_presentation(p)
    statuses = f"passed {report.passed}, ore_qskew {report.status('ore_qskew')}"
    return "passed True, ore_qskew WARN", statuses


def _skew_conj(p: AlgebraPresentation) -> Outcome:
    sigma = conjugation_automorphism(p.monomial("y"), p)
    return expected_map(p, {"x": "q*x + z + y + 1"}), str(sigma)


def _skew_case1(p: AlgebraPresentation) -> Outcome:
    report = thm32_case1(p.monomial("y"), p)
    return str(conjugation_automorphism(p.monomial("y"), p)), str(report.automorphism)


def _skew_invariant(p: AlgebraPresentation) -> Outcome:
    witness = xinner_derivation_solve(p, box=1)
    laurent = p.ore.laurent()
    element = witness.element if witness.found else None
    return (
        f"{p.element('(z + y + 1)/(1-q)', laurent)}; True",
        f"{element}; {element is not None and invariant_polynomial_check(element, p)}",
    )


def _skew_table(p: AlgebraPresentation) -> Outcome:
    witness = xinner_derivation_solve(p, box=1)
    expected, computed = [], []
    for n, m in product(range(-2, 3), repeat=2):
        report = thm32_case2(power(p, "y", n), m, witness, p)
        x_image = (
            f"{qp(n)}*x + ({qp(n)} - 1)/(q - 1)*z"
            f" + ({qp(n)} - {qp(-m)})/(q - 1)*y + ({qp(n)} - 1)/(q - 1)"
        )
        expected.append(expected_map(p, {"x": x_image, "y": f"{qp(-m)}*y"}))
        computed.append(str(report.automorphism))
    return "\n".join(expected), "\n".join(computed)


def _skew_shape(p: AlgebraPresentation) -> Outcome:
    witness = xinner_derivation_solve(p, box=1)
    passed = [
        thm23_check(thm32_case2(power(p, "y", n), m, witness, p).automorphism, p).passed
        for n, m in product(range(-2, 3), repeat=2)
    ]
    return "25 of 25", f"{sum(passed)} of {len(passed)}"


def _skew_pconj(p: AlgebraPresentation) -> Outcome:
    witness = xinner_derivation_solve(p, box=1)
    return (
        expected_map(p, {"x": "x + q^-1*y", "y": "q^-1*y"}, laurent=True),
        str(p_conjugation(witness, 1, p)),
    )


def _check(name: str, provenance: str, command: str, run) -> FixtureCheck:
    return FixtureCheck(name, provenance, command, run)


FIXTURES: Dict[str, Fixture] = {
    fixture.id: fixture
    for fixture in [
        Fixture(
            "Ex2.4",
            "ex2_4.qalg",
            "Ore extension with a degree-2 Ore variable",
            [
                _check("validate", PRINTED, "xinner validate ex2_4.qalg", _skew_validate),
                _check(
                    "termination_with_flat_degree",
                    PRINTED,
                    "xinner validate bad_degree.qalg",
                    _corrupted("bad_degree.qalg", "termination"),
                ),
            ],
        ),
        Fixture(
            "Ex2.6",
            "ex2_6.qalg",
            "Color enveloping algebra graded by Z^2",
            [
                _check("validate", DERIVED, "xinner validate ex2_6.qalg", _color_validate),
                _check(
                    "grade_compatibility",
                    TRIVIAL,
                    "xinner validate bad_grade.qalg",
                    _corrupted("bad_grade.qalg", "grade_compatibility"),
                ),
                _check(
                    "jacobi",
                    DERIVED,
                    "xinner validate bad_jacobi.qalg",
                    _corrupted("bad_jacobi.qalg", "jacobi"),
                ),
                _check(
                    "confluence",
                    DERIVED,
                    "xinner validate bad_confluence.qalg",
                    _corrupted("bad_confluence.qalg", "confluence"),
                ),
                _check(
                    "semi_invariants",
                    DERIVED,
                    "xinner semiinv ex2_6.qalg y",
                    _color_semi_invariants,
                ),
            ],
        ),
        Fixture(
            "Ex4.1",
            "weyl.qalg",
            "Quantum Weyl algebra",
            [
                _check("normal_form", PRINTED, 'xinner nf weyl.qalg "x*y"', _weyl_nf),
                _check("conjugation_by_y", PRINTED, 'xinner conj weyl.qalg y "x"', _weyl_conj),
                _check(
                    "pz_identity",
                    DERIVED,
                    "xinner fixtures run Ex4.1 --check pz_identity",
                    _weyl_identity,
                ),
                _check("witness", PRINTED, "xinner der-solve weyl.qalg --box 1", _weyl_witness),
                _check(
                    "case2_accepts_m_equal_n",
                    PRINTED,
                    "xinner thm32 weyl.qalg --case 2 --w y --m 1",
                    _weyl_case2,
                ),
                _check(
                    "commutator_powers_induce",
                    PRINTED,
                    'xinner verify weyl.qalg --a 1 --b "x*y - y*x" --sigma "x=q*x, y=q^-1*y"',
                    _weyl_inducing,
                ),
                _check(
                    "infinite_order",
                    PRINTED,
                    'xinner order weyl.qalg --sigma "x=q*x, y=q^-1*y"',
                    _weyl_order,
                ),
                _check("p_conjugation", DERIVED, "xinner pconj weyl.qalg --m 1", _weyl_pconj),
                _check(
                    "coefficient_identity",
                    DERIVED,
                    "xinner fixtures run Ex4.1 --check coefficient_identity",
                    _weyl_coefficient,
                ),
            ],
        ),
        Fixture(
            "Ex4.2",
            "ex2_6.qalg",
            "Conjugations of the color enveloping algebra",
            [
                _check("conjugation_table", PRINTED, "xinner conj ex2_6.qalg y*z", _color_conj),
                _check(
                    "free_abelian",
                    PRINTED,
                    "xinner fixtures run Ex4.2 --check free_abelian",
                    _color_group,
                ),
                _check(
                    "no_witness", PRINTED, "xinner der-solve ex2_6.qalg --box 3", _color_no_witness
                ),
                _check(
                    "graded_shape",
                    PRINTED,
                    "xinner fixtures run Ex4.2 --check graded_shape",
                    _color_shape,
                ),
            ],
        ),
        Fixture(
            "Ex4.3",
            "ex4_3.qalg",
            "Ore extension whose derivation is not X-inner",
            [
                _check(
                    "case1_powers_of_z",
                    PRINTED,
                    "xinner thm32 ex4_3.qalg --case 1 --w z",
                    _q1_case1,
                ),
                _check(
                    "no_witness", PRINTED, "xinner der-solve ex4_3.qalg --box 3", _q1_no_witness
                ),
                _check(
                    "case1_rejects_y",
                    PRINTED,
                    "xinner thm32 ex4_3.qalg --case 1 --w y",
                    _q1_rejects_y,
                ),
                _check("classify", DERIVED, "xinner classify ex4_3.qalg --box 2", _q1_classify),
            ],
        ),
        Fixture(
            "Ex4.4",
            "ex4_4.qalg",
            "Ore extension with a q^2-skew X-inner derivation",
            [
                _check("witness", PRINTED, "xinner der-solve ex4_4.qalg --box 1", _q2_witness),
                _check(
                    "case2_table",
                    DERIVED,
                    "xinner thm32 ex4_4.qalg --case 2 --w y*z --m 1",
                    _q2_case2,
                ),
                _check("p_conjugation", PRINTED, "xinner pconj ex4_4.qalg --m 1", _q2_pconj),
                _check(
                    "coefficient_identity",
                    DERIVED,
                    "xinner fixtures run Ex4.4 --check coefficient_identity",
                    _q2_coefficient,
                ),
            ],
        ),
        Fixture(
            "Ex4.5",
            "ex2_4.qalg",
            "Automorphisms of the degree-2 Ore extension",
            [
                _check("conjugation_by_y", PRINTED, "xinner conj ex2_4.qalg y", _skew_conj),
                _check(
                    "invariant_polynomial",
                    PRINTED,
                    "xinner der-solve ex2_4.qalg --box 1",
                    _skew_invariant,
                ),
                _check(
                    "case2_table",
                    PRINTED,
                    "xinner fixtures run Ex4.5 --check case2_table",
                    _skew_table,
                ),
                _check(
                    "case1_accepts_y",
                    DERIVED,
                    "xinner thm32 ex2_4.qalg --case 1 --w y",
                    _skew_case1,
                ),
                _check(
                    "filtration_shape",
                    PRINTED,
                    "xinner fixtures run Ex4.5 --check filtration_shape",
                    _skew_shape,
                ),
                _check("p_conjugation", PRINTED, "xinner pconj ex2_4.qalg --m 1", _skew_pconj),
            ],
        ),
    ]
}


def run_fixtures(
    ids: Optional[Sequence[str]] = None,
    step_budget: Optional[int] = None,
    checks: Optional[Sequence[str]] = None,
) -> FixtureSummary:
    """
    Run the checks of the selected fixtures; all fixtures when ids is empty.

    ``checks`` keeps only the named checks. A check that raises counts as
    failed with the error as its observed value.
    """
    selected = list(ids) if ids else list(FIXTURES)
    unknown = [i for i in selected if i not in FIXTURES]
    if unknown:
        raise InvalidArgument(f"unknown fixture(s): {', '.join(unknown)}")
    wanted = set(checks or ())
    known = {c.name for i in selected for c in FIXTURES[i].checks}
    if wanted - known:
        raise InvalidArgument(f"unknown check(s): {', '.join(sorted(wanted - known))}")
    outcomes = []
    for fixture_id in selected:
        fixture = FIXTURES[fixture_id]
        picked = [c for c in fixture.checks if not wanted or c.name in wanted]
        if not picked:
            continue
        presentation = load_example(fixture.source, step_budget)
        for check in picked:
            try:
                expected, computed = check.run(presentation)
            except XInnerError as exc:
                expected, computed = "no error", f"{type(exc).__name__}: {exc}"
            outcome = CheckOutcome(
                fixture.id,
                check.name,
                check.provenance,
                check.command,
                expected == computed,
                expected,
                computed,
            )
            logger.info(
                "%s %s: %s", fixture.id, check.name, "PASS" if outcome.passed else "FAIL"
            )
            outcomes.append(outcome)
    return FixtureSummary(outcomes)
