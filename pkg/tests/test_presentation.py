"""
Tests for presentations, canonical order and the Ore and color views
"""

from itertools import permutations

import pytest

from xinner.core.errors import (
    InvalidArgument,
    InvalidPresentation,
    UnknownSymbol,
    WrongKind,
)
from xinner.core.presentation import Kind, parse_presentation, print_presentation
from xinner.core.scalar import q


class TestPresentation:
    """Test cases for AlgebraPresentation"""

    def test_kinds(self, weyl, plane, color, ex2_4):
        """Each bundled shape is recognized"""
        assert weyl.kind is Kind.ORE_EXTENSION
        assert ex2_4.kind is Kind.ORE_EXTENSION
        assert plane.kind is Kind.QUANTUM_SPACE
        assert color.kind is Kind.COLOR_ENVELOPING

    def test_ore_variable_goes_last(self, ex2_4, ex4_3):
        """Right factors of rules with lower terms come first"""
        assert ex2_4.names == ("y", "z", "x")
        assert ex4_3.names == ("y", "z", "x")
        assert ex2_4.system.degrees == (1, 1, 2)

    def test_ore_data(self, weyl):
        """tau and delta read off x*y = q*y*x + 1"""
        ore = weyl.ore
        assert ore.ore_name == "x"
        (b,) = ore.base
        assert ore.tau[b] == q
        assert ore.delta[b] == weyl.element("1")

    @pytest.mark.parametrize(
        "fixture, expected",
        [("weyl", q), ("ex4_3", q**0), ("ex4_4", q**2)],
    )
    def test_qskew_constant(self, request, fixture, expected):
        """delta tau = Q tau delta on the base generators"""
        assert request.getfixturevalue(fixture).ore.q_skew == expected

    def test_not_qskew(self, ex2_4):
        """Lower terms of mixed tau-weight leave Q undefined"""
        assert ex2_4.ore.q_skew is None

    def test_tau_apply(self, ex4_4):
        """tau scales base monomials"""
        laurent = ex4_4.ore.laurent()
        value = ex4_4.ore.tau_apply(ex4_4.element("y^-1*z", laurent))
        assert value == ex4_4.element("q^-2*y^-1*z", laurent)
        with pytest.raises(InvalidArgument):
            ex4_4.ore.tau_apply(ex4_4.element("x"))

    def test_quantum_space_has_no_color(self, plane):
        """Color data exists only for graded presentations"""
        with pytest.raises(WrongKind):
            plane.color

    def test_commutation_matrix(self, space3):
        """x_i x_k = q_ik x_k x_i for every pair"""
        matrix = space3.commutation_matrix
        sys = space3.system
        for i, k in permutations(range(sys.n), 2):
            assert matrix.entry(i, k) * matrix.entry(k, i) == 1
            left = sys.generator(i) * sys.generator(k)
            assert left == (sys.generator(k) * sys.generator(i)).scale(matrix.entry(i, k))

    def test_monomial(self, ex2_4):
        """Monomial text is order independent"""
        assert ex2_4.monomial("z*y") == ex2_4.monomial("y*z") == (1, 1, 0)
        with pytest.raises(InvalidArgument):
            ex2_4.monomial("y + z")
        with pytest.raises(InvalidArgument):
            ex2_4.monomial("2*y")

    def test_unknown_symbol(self, weyl):
        """Expressions name declared generators only"""
        with pytest.raises(UnknownSymbol):
            weyl.element("x*w")

    def test_assignments(self, weyl):
        """gen=EXPR pairs are keyed by canonical index"""
        images = weyl.assignments("x=q*x, y=q^-1*y")
        assert images[weyl.system.index("x")] == weyl.element("q*x")

    @pytest.mark.parametrize("filename", ["weyl.qalg", "ex2_6.qalg", "ex2_4.qalg"])
    def test_print_round_trip(self, filename):
        """Printed source parses back to an equal presentation"""
        from xinner.examples.fixtures import load_example

        p = load_example(filename)
        assert parse_presentation(print_presentation(p)) == p


class TestInvalidPresentation:
    """Test cases for presentations the compiler refuses"""

    def test_relation_without_quadratic_word(self):
        """Every relation needs a word a*b"""
        p = parse_presentation("algebra A { gen x; gen y; rel x^2 - y; }")
        with pytest.raises(InvalidPresentation):
            p.system

    def test_two_relations_for_one_pair(self):
        """A pair is rewritten by one relation only"""
        p = parse_presentation("algebra A { gen x; gen y; rel x*y - y*x; rel y*x - q*x*y; }")
        with pytest.raises(InvalidPresentation):
            p.system

    def test_color_needs_epsilon(self):
        """Grades without epsilon are incomplete"""
        p = parse_presentation("algebra A { gen x grade (1); gen y grade (0); }")
        with pytest.raises(InvalidPresentation):
            p.system

    def test_color_rejects_relations(self):
        """Color presentations use brackets"""
        p = parse_presentation(
            "algebra A { gen x grade (1); gen y grade (0); epsilon [[0]]; rel x*y - y*x; }"
        )
        with pytest.raises(InvalidPresentation):
            p.system

    def test_negative_power_in_relation(self):
        """Relations live in the free algebra"""
        p = parse_presentation("algebra A { gen x; gen y; rel x*y - y*x = x^-1; }")
        with pytest.raises(InvalidPresentation):
            p.system
