"""
Tokenizer and recursive-descent parser for the .qalg presentation language

    algebra NAME {
        gen NAME [deg INT] [grade (INT, ...)];
        rel EXPR [= EXPR];
        epsilon [[INT, ...], ...];
        bracket NAME NAME = EXPR;
        invert NAME, ...;
    }

Expressions use generator names, integers, the parameter ``q``, the
operators ``+ - * /``, ``^`` with a signed integer exponent, and
parentheses. ``#`` starts a comment.
"""

import re
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DuplicateGenerator, InvalidArgument, ParseError, UnknownSymbol
from .scalar import q

KEYWORDS = frozenset(
    {"algebra", "gen", "deg", "rel", "grade", "epsilon", "bracket", "invert"}
)
PARAMETER = "q"

TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^(){}\[\]=;,])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    """
    Split source text into tokens with 1-based positions.

    Args:
        text (str): Source text

    Returns:
        list: Tokens ending with an ``eof`` token
    """
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = match.lastgroup or ""
        if kind == "nl":
            line += 1
            line_start = match.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, match.group(), line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# expression tree


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Param:
    pass


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Any  # Num | Param | Gen | Neg | BinOp | Pow


def evaluate(node: Expr, factory: Any) -> Any:
    """
    Evaluate an expression tree with a factory.

    The factory supplies ``constant(value)`` and ``generator(name, exp)``;
    the values it returns must support ring arithmetic.
    """
    if isinstance(node, Num):
        return factory.constant(node.value)
    if isinstance(node, Param):
        return factory.constant(q)
    if isinstance(node, Gen):
        return factory.generator(node.name, 1)
    if isinstance(node, Neg):
        return -evaluate(node.operand, factory)
    if isinstance(node, Pow):
        if isinstance(node.base, Gen):
            return factory.generator(node.base.name, node.exponent)
        return evaluate(node.base, factory) ** node.exponent
    if isinstance(node, BinOp):
        left = evaluate(node.left, factory)
        right = evaluate(node.right, factory)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        return left / right
    raise InvalidArgument(f"not an expression node: {node!r}")


# declarations produced by the presentation parser


@dataclass
class GeneratorDecl:
    name: str
    degree: int = 1
    grade: Optional[Tuple[int, ...]] = None
    line: int = 0


@dataclass
class RelationDecl:
    lhs: Expr
    rhs: Optional[Expr]
    line: int = 0


@dataclass
class BracketDecl:
    left: str
    right: str
    value: Expr
    line: int = 0


@dataclass
class PresentationDecl:
    name: str
    generators: List[GeneratorDecl] = field(default_factory=list)
    relations: List[RelationDecl] = field(default_factory=list)
    brackets: List[BracketDecl] = field(default_factory=list)
    epsilon: Optional[List[List[int]]] = None
    inverted: List[str] = field(default_factory=list)


class Parser:
    """
    Recursive-descent parser over a token list.

    Args:
        text (str): Source text
        names (Iterable[str], optional): Generator names visible to expressions
    """

    def __init__(self, text: str, names: Optional[Iterable[str]] = None) -> None:
        self.tokens = tokenize(text)
        self.pos = 0
        self.names = list(names or [])

    # token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _error(self, message: str, token: Optional[Token] = None) -> ParseError:
        tok = token or self.current
        found = tok.text or "end of input"
        return ParseError(f"{message}, found '{found}'", tok.line, tok.column)

    def _advance(self) -> Token:
        tok = self.current
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def _check(self, text: str) -> bool:
        tok = self.current
        return tok.kind in ("op", "name") and tok.text == text

    def _expect(self, text: str) -> Token:
        if not self._check(text):
            raise self._error(f"expected '{text}'")
        return self._advance()

    def _expect_name(self, what: str) -> Token:
        tok = self.current
        if tok.kind != "name" or tok.text in KEYWORDS:
            raise self._error(f"expected {what}")
        return self._advance()

    def _expect_int(self, signed: bool = False) -> int:
        sign = 1
        if signed and self._check("-"):
            self._advance()
            sign = -1
        tok = self.current
        if tok.kind != "num":
            raise self._error("expected an integer")
        self._advance()
        return sign * int(tok.text)

    # expressions

    def parse_expression(self) -> Expr:
        node = self._term()
        while self._check("+") or self._check("-"):
            op = self._advance().text
            node = BinOp(op, node, self._term())
        return node

    def _term(self) -> Expr:
        node = self._unary()
        while self._check("*") or self._check("/"):
            op = self._advance().text
            node = BinOp(op, node, self._unary())
        return node

    def _unary(self) -> Expr:
        if self._check("-"):
            self._advance()
            return Neg(self._unary())
        if self._check("+"):
            self._advance()
            return self._unary()
        return self._power()

    def _power(self) -> Expr:
        base = self._atom()
        if self._check("^"):
            self._advance()
            if self._check("("):
                self._advance()
                exponent = self._expect_int(signed=True)
                self._expect(")")
            else:
                exponent = self._expect_int(signed=True)
            return Pow(base, exponent)
        return base

    def _atom(self) -> Expr:
        tok = self.current
        if tok.kind == "num":
            self._advance()
            return Num(int(tok.text))
        if tok.kind == "name":
            if tok.text == PARAMETER:
                self._advance()
                return Param()
            if tok.text in KEYWORDS:
                raise self._error("expected an expression")
            if tok.text not in self.names:
                raise UnknownSymbol(f"unknown symbol '{tok.text}'", tok.line, tok.column)
            self._advance()
            return Gen(tok.text)
        if self._check("("):
            self._advance()
            node = self.parse_expression()
            self._expect(")")
            return node
        raise self._error("expected an expression")

    def parse_full_expression(self) -> Expr:
        node = self.parse_expression()
        if self.current.kind != "eof":
            raise self._error("unexpected trailing input")
        return node

    # presentations

    def parse_presentation(self) -> PresentationDecl:
        self._expect("algebra")
        decl = PresentationDecl(self._expect_name("an algebra name").text)
        self._expect("{")
        while not self._check("}"):
            if self.current.kind == "eof":
                raise self._error("expected '}'")
            self._statement(decl)
        self._expect("}")
        if self.current.kind != "eof":
            raise self._error("only one presentation per file")
        return decl

    def _statement(self, decl: PresentationDecl) -> None:
        tok = self.current
        if tok.kind != "name" or tok.text not in KEYWORDS - {"algebra", "deg", "grade"}:
            raise self._error("expected a statement (gen, rel, epsilon, bracket, invert)")
        self._advance()
        getattr(self, f"_stmt_{tok.text}")(decl, tok)
        self._expect(";")

    def _stmt_gen(self, decl: PresentationDecl, start: Token) -> None:
        tok = self.current
        if tok.kind == "name" and tok.text == PARAMETER:
            raise self._error("'q' is reserved for the scalar parameter")
        name = self._expect_name("a generator name")
        if name.text in self.names:
            raise DuplicateGenerator(
                f"generator '{name.text}' declared twice", name.line, name.column
            )
        gen = GeneratorDecl(name.text, line=start.line)
        while self._check("deg") or self._check("grade"):
            if self._advance().text == "deg":
                at = self.current
                gen.degree = self._expect_int()
                if gen.degree < 1:
                    raise ParseError("degree must be positive", at.line, at.column)
            else:
                self._expect("(")
                values = [self._expect_int(signed=True)]
                while self._check(","):
                    self._advance()
                    values.append(self._expect_int(signed=True))
                self._expect(")")
                gen.grade = tuple(values)
        self.names.append(name.text)
        decl.generators.append(gen)

    def _stmt_rel(self, decl: PresentationDecl, start: Token) -> None:
        lhs = self.parse_expression()
        rhs = None
        if self._check("="):
            self._advance()
            rhs = self.parse_expression()
        decl.relations.append(RelationDecl(lhs, rhs, start.line))

    def _stmt_epsilon(self, decl: PresentationDecl, start: Token) -> None:
        if decl.epsilon is not None:
            raise self._error("epsilon given twice", start)
        self._expect("[")
        rows = [self._int_row()]
        while self._check(","):
            self._advance()
            rows.append(self._int_row())
        self._expect("]")
        if any(len(row) != len(rows) for row in rows):
            raise ParseError("epsilon must be a square matrix", start.line, start.column)
        decl.epsilon = rows

    def _int_row(self) -> List[int]:
        self._expect("[")
        row = [self._expect_int(signed=True)]
        while self._check(","):
            self._advance()
            row.append(self._expect_int(signed=True))
        self._expect("]")
        return row

    def _stmt_bracket(self, decl: PresentationDecl, start: Token) -> None:
        left = self._known_name()
        right = self._known_name()
        self._expect("=")
        decl.brackets.append(
            BracketDecl(left.text, right.text, self.parse_expression(), start.line)
        )

    def _stmt_invert(self, decl: PresentationDecl, start: Token) -> None:
        decl.inverted.append(self._known_name().text)
        while self._check(","):
            self._advance()
            decl.inverted.append(self._known_name().text)

    def _known_name(self) -> Token:
        tok = self._expect_name("a generator name")
        if tok.text not in self.names:
            raise UnknownSymbol(f"unknown generator '{tok.text}'", tok.line, tok.column)
        return tok


def parse_declarations(text: str) -> PresentationDecl:
    """Parse presentation source into raw declarations."""
    return Parser(text).parse_presentation()


def parse_expression(text: str, names: Sequence[str]) -> Expr:
    """
    Parse a standalone expression over the given generator names.

    Args:
        text (str): Expression text
        names: Generator names in scope

    Returns:
        Expr: Expression tree
    """
    return Parser(text, names).parse_full_expression()


def parse_assignments(text: str, names: Sequence[str]) -> Dict[str, Expr]:
    """
    Parse ``gen=EXPR`` pairs separated by commas.

    Args:
        text (str): e.g. ``"x=q*x, y=q^-1*y"``
        names: Generator names in scope

    Returns:
        dict: Generator name -> expression tree
    """
    parser = Parser(text, names)
    out: Dict[str, Expr] = {}
    while True:
        tok = parser._known_name()
        if tok.text in out:
            raise ParseError(f"'{tok.text}' assigned twice", tok.line, tok.column)
        parser._expect("=")
        out[tok.text] = parser.parse_expression()
        if parser.current.kind == "eof":
            return out
        parser._expect(",")
