"""
Tests for structural validation of presentations
"""

import pytest

from xinner.core.presentation import parse_presentation
from xinner.core.validation import FAIL, PASS, WARN, validate_presentation
from xinner.examples.fixtures import load_example


class TestValidation:
    """Test cases for validate_presentation"""

    @pytest.mark.parametrize(
        "filename, kind",
        [
            ("weyl.qalg", "OreExtension"),
            ("ex4_3.qalg", "OreExtension"),
            ("ex4_4.qalg", "OreExtension"),
            ("quantum_plane.qalg", "QuantumSpace"),
            ("quantum_space3.qalg", "QuantumSpace"),
            ("ex2_6.qalg", "ColorEnveloping"),
        ],
    )
    def test_bundled_presentations_pass(self, filename, kind):
        """Every bundled example validates"""
        report = validate_presentation(load_example(filename))
        assert report.passed, report.to_dict()
        assert report.kind == kind
        assert report.status("compile") == PASS
        assert report.status("termination") == PASS
        assert report.status("confluence") == PASS

    def test_quantum_space_commutation(self, space3):
        """Quantum spaces get a commutation matrix check"""
        report = validate_presentation(space3)
        assert report.status("commutation_matrix") == PASS
        assert report.status("ore_leibniz") == PASS

    def test_non_qskew_warns(self, ex2_4):
        """A missing Q is a warning, not a failure"""
        report = validate_presentation(ex2_4)
        assert report.passed
        assert report.status("ore_qskew") == WARN
        assert report.status("ore_leibniz") == PASS

    def test_color_checks(self, color):
        """All color checks pass on the Z^2-graded example"""
        report = validate_presentation(color)
        for check in (
            "epsilon_antisymmetry",
            "bracket_antisymmetry",
            "bracket_linear",
            "grade_compatibility",
            "jacobi",
            "proper_grading_faithful",
            "proper_grading_generated",
        ):
            assert report.status(check) == PASS, check

    @pytest.mark.parametrize(
        "filename, check",
        [
            ("bad_grade.qalg", "grade_compatibility"),
            ("bad_jacobi.qalg", "jacobi"),
            ("bad_degree.qalg", "termination"),
            ("bad_confluence.qalg", "confluence"),
        ],
    )
    def test_corrupted_presentations(self, filename, check):
        """Each corrupted example fails its own check"""
        report = validate_presentation(load_example(filename))
        assert not report.passed
        assert report.status(check) == FAIL

    def test_epsilon_must_be_antisymmetric(self):
        """A symmetric exponent matrix fails"""
        p = parse_presentation(
            "algebra A { gen x grade (1, 0); gen y grade (0, 1); epsilon [[0, 1], [1, 0]]; }"
        )
        report = validate_presentation(p)
        assert report.status("epsilon_antisymmetry") == FAIL

    def test_nonlinear_bracket(self):
        """Brackets must be linear in the generators"""
        p = parse_presentation(
            "algebra A { gen x grade (0); gen y grade (0); epsilon [[0]]; bracket x y = x*y; }"
        )
        report = validate_presentation(p)
        assert report.status("bracket_linear") == FAIL
        assert report.status("jacobi") == FAIL

    def test_compile_failure_stops_early(self):
        """A relation the compiler refuses ends the report"""
        p = parse_presentation("algebra A { gen x; gen y; rel x^2 - y; }")
        report = validate_presentation(p)
        assert report.status("compile") == FAIL
        assert [c.check for c in report.checks] == ["compile"]

    def test_to_dict(self, weyl):
        """Serialized reports list every check"""
        payload = validate_presentation(weyl).to_dict()
        assert payload["passed"] is True
        assert payload["kind"] == "OreExtension"
        assert {c["check"] for c in payload["checks"]} >= {"compile", "kind", "confluence"}
