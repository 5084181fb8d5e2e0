"""
Tests for the .qalg tokenizer and parser
"""

import pytest

from xinner.core.errors import DuplicateGenerator, ParseError, UnknownSymbol
from xinner.core.parser import (
    BinOp,
    Gen,
    Num,
    Param,
    Pow,
    parse_assignments,
    parse_declarations,
    parse_expression,
    tokenize,
)

WEYL = """
# comment line
algebra Weyl {
    gen x;
    gen y deg 2;
    rel x*y - q*y*x = 1;
}
"""


class TestParser:
    """Test cases for the presentation language"""

    def test_tokenize_positions(self):
        """Tokens carry 1-based line and column, comments vanish"""
        tokens = tokenize("# c\n  gen x;")
        assert [t.text for t in tokens] == ["gen", "x", ";", ""]
        assert (tokens[0].line, tokens[0].column) == (2, 3)
        assert tokens[-1].kind == "eof"

    def test_tokenize_rejects_stray_character(self):
        """Unknown characters report their position"""
        with pytest.raises(ParseError) as exc:
            tokenize("x\n  @")
        assert (exc.value.line, exc.value.column) == (2, 3)

    def test_declarations(self):
        """Generators, degrees and relations are collected"""
        decl = parse_declarations(WEYL)
        assert decl.name == "Weyl"
        assert [g.name for g in decl.generators] == ["x", "y"]
        assert [g.degree for g in decl.generators] == [1, 2]
        assert len(decl.relations) == 1
        assert decl.relations[0].rhs == Num(1)

    def test_color_declarations(self):
        """Grades, epsilon and brackets parse"""
        decl = parse_declarations(
            "algebra C { gen x grade (0, -1); gen y grade (1, 0);"
            " epsilon [[0, 1], [-1, 0]]; bracket x y = y; }"
        )
        assert decl.generators[0].grade == (0, -1)
        assert decl.epsilon == [[0, 1], [-1, 0]]
        assert (decl.brackets[0].left, decl.brackets[0].right) == ("x", "y")

    def test_duplicate_generator(self):
        """A generator declared twice is rejected"""
        with pytest.raises(DuplicateGenerator):
            parse_declarations("algebra A { gen x; gen x; }")

    def test_reserved_parameter(self):
        """q cannot name a generator"""
        with pytest.raises(ParseError):
            parse_declarations("algebra A { gen q; }")

    def test_nonsquare_epsilon(self):
        """epsilon must be square"""
        with pytest.raises(ParseError):
            parse_declarations("algebra A { gen x grade (1); epsilon [[0, 1]]; }")

    def test_bad_degree(self):
        """Degrees are positive"""
        with pytest.raises(ParseError):
            parse_declarations("algebra A { gen x deg 0; }")

    def test_unknown_bracket_generator(self):
        """Brackets name declared generators"""
        with pytest.raises(UnknownSymbol):
            parse_declarations("algebra A { gen x grade (0); epsilon [[0]]; bracket x w = x; }")

    def test_expression_tree(self):
        """Precedence and signed exponents"""
        tree = parse_expression("q*x^-2 + y", ["x", "y"])
        assert tree == BinOp("+", BinOp("*", Param(), Pow(Gen("x"), -2)), Gen("y"))

    def test_unknown_symbol_in_expression(self):
        """Names outside the generator list are rejected"""
        with pytest.raises(UnknownSymbol):
            parse_expression("x*w", ["x"])

    def test_trailing_input(self):
        """Leftover tokens are an error"""
        with pytest.raises(ParseError):
            parse_expression("x y", ["x", "y"])

    def test_assignments(self):
        """gen=EXPR pairs map names to trees"""
        parsed = parse_assignments("x=q*x, y=y", ["x", "y"])
        assert set(parsed) == {"x", "y"}
        assert parsed["y"] == Gen("y")
        with pytest.raises(ParseError):
            parse_assignments("x=x, x=y", ["x", "y"])
