"""
Monomials and polynomials over Q(q)

``QPolynomial`` holds canonical (normal-form) monomials and delegates
products to the ``RewriteSystem`` it belongs to. ``FreePolynomial`` holds
raw words of the free algebra and is what relation sources compile from.
"""

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DivisionByZero, InvalidArgument, NegativePowerOfNonInvertible
from .scalar import ONE, RationalFunction, ScalarLike, as_scalar, format_scalar, is_atomic

# Exponent vector in the generator order of a rewrite system.
QMonomial = Tuple[int, ...]
# Word of the free algebra: (generator name, nonzero exponent) factors.
Word = Tuple[Tuple[str, int], ...]

Terms = Dict[QMonomial, RationalFunction]


def weighted_degree(mono: QMonomial, degrees: Sequence[int]) -> int:
    """Assigned-degree-weighted total degree of a monomial."""
    return sum(e * d for e, d in zip(mono, degrees))


def _has_top_level_sum(text: str) -> bool:
    """True when text contains + or - at depth 0 past its first character."""
    depth = 0
    for index, char in enumerate(text):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif char in "+-" and depth == 0 and index > 0 and text[index - 1] != "^":
            return True
    return False


def format_term(coeff: RationalFunction, body: str, alone: bool) -> str:
    """
    Text of ``coeff * body`` where ``body`` is a monomial text or "1".

    Args:
        coeff: Nonzero coefficient
        body (str): Monomial text, "1" for the empty product
        alone (bool): True when the term is the whole polynomial

    Returns:
        str: Term text, signed when the coefficient is negative
    """
    text = format_scalar(coeff)
    if body == "1":
        if not alone and _has_top_level_sum(text):
            return f"({text})"
        return text
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    if is_atomic(coeff):
        return f"{text}*{body}"
    if _has_top_level_sum(text):
        return f"({text}) * {body}"
    return f"{text} * {body}"


def join_terms(parts: List[str]) -> str:
    """Join signed term texts with spaced binary operators."""
    if not parts:
        return "0"
    out = parts[0]
    for part in parts[1:]:
        if part.startswith("-"):
            out += " - " + part[1:]
        else:
            out += " + " + part
    return out


class QPolynomial:
    """
    Finite Q(q)-combination of canonical monomials.

    Args:
        system: RewriteSystem the monomials are canonical for
        terms (dict, optional): Mapping monomial -> coefficient
    """

    __slots__ = ("system", "terms")

    def __init__(self, system, terms: Optional[Dict] = None) -> None:
        self.system = system
        self.terms: Terms = {}
        for mono, coeff in (terms or {}).items():
            value = as_scalar(coeff)
            if value:
                self.terms[tuple(mono)] = value

    @classmethod
    def raw(cls, system, terms: Terms) -> "QPolynomial":
        """Wrap an already-canonical term dict without copying."""
        poly = cls.__new__(cls)
        poly.system = system
        poly.terms = terms
        return poly

    # arithmetic

    def _coerce(self, other) -> Optional["QPolynomial"]:
        if isinstance(other, QPolynomial):
            return other
        try:
            value = as_scalar(other)
        except InvalidArgument:
            return None
        return self.system.constant(value)

    def __add__(self, other) -> "QPolynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in rhs.terms.items():
            total = out.get(mono)
            total = coeff if total is None else total + coeff
            if total:
                out[mono] = total
            else:
                out.pop(mono, None)
        return QPolynomial.raw(self.system, out)

    __radd__ = __add__

    def __neg__(self) -> "QPolynomial":
        return QPolynomial.raw(self.system, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "QPolynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other) -> "QPolynomial":
        return (-self) + other

    def scale(self, value: ScalarLike) -> "QPolynomial":
        factor = as_scalar(value)
        if not factor:
            return QPolynomial.raw(self.system, {})
        return QPolynomial.raw(
            self.system, {m: c * factor for m, c in self.terms.items()}
        )

    def __mul__(self, other) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            return QPolynomial.raw(
                self.system, self.system.multiply(self.terms, other.terms)
            )
        try:
            return self.scale(other)
        except InvalidArgument:
            return NotImplemented

    def __rmul__(self, other) -> "QPolynomial":
        try:
            return self.scale(other)
        except InvalidArgument:
            return NotImplemented

    def __truediv__(self, other) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            if not other.is_constant():
                raise InvalidArgument("division by a non-scalar element")
            other = other.constant_value()
        divisor = as_scalar(other)
        if not divisor:
            raise DivisionByZero("division by zero")
        return self.scale(1 / divisor)

    def __pow__(self, exponent: int) -> "QPolynomial":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.system.constant(ONE)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def inverse(self) -> "QPolynomial":
        """Inverse of a single term c*m; m must be over invertible variables."""
        if not self.terms:
            raise DivisionByZero("inverse of the zero element")
        if len(self.terms) != 1:
            raise NegativePowerOfNonInvertible(
                f"cannot invert the non-monomial element {self}"
            )
        (mono, coeff), = self.terms.items()
        inv = self.system.monomial_inverse(mono)
        return QPolynomial.raw(
            self.system, {m: c / coeff for m, c in inv.items()}
        )

    # comparison

    def __eq__(self, other) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self.terms == rhs.terms

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> RationalFunction:
        """Coefficient of the monomial 1."""
        return self.terms.get(self.system.one_monomial, as_scalar(0))

    def coefficient(self, mono: Sequence[int]) -> RationalFunction:
        return self.terms.get(tuple(mono), as_scalar(0))

    def monomials(self) -> List[QMonomial]:
        """Support in graded-lex descending order."""
        degrees = self.system.degrees
        return sorted(
            self.terms, key=lambda m: (weighted_degree(m, degrees), m), reverse=True
        )

    def leading_monomial(self) -> QMonomial:
        if not self.terms:
            raise InvalidArgument("zero polynomial has no leading monomial")
        return self.monomials()[0]

    def leading_coefficient(self) -> RationalFunction:
        return self.terms[self.leading_monomial()]

    def degree(self) -> int:
        """Filtration degree: largest weighted degree in the support."""
        if not self.terms:
            raise InvalidArgument("zero polynomial has no degree")
        return max(weighted_degree(m, self.system.degrees) for m in self.terms)

    def homogeneous_part(self, degree: int) -> "QPolynomial":
        degrees = self.system.degrees
        return QPolynomial.raw(
            self.system,
            {m: c for m, c in self.terms.items() if weighted_degree(m, degrees) == degree},
        )

    def variables(self) -> Iterable[int]:
        """Indices of generators occurring in the support."""
        seen = set()
        for mono in self.terms:
            seen.update(i for i, e in enumerate(mono) if e)
        return sorted(seen)

    def ratio_to(self, other: "QPolynomial") -> Optional[RationalFunction]:
        """Scalar l with self == l * other, or None."""
        if not other.terms:
            return None if self.terms else as_scalar(0)
        lead = other.leading_monomial()
        factor = self.coefficient(lead) / other.terms[lead]
        return factor if self == other.scale(factor) else None

    def rebase(self, system) -> "QPolynomial":
        """Same terms viewed in another system over the same generators."""
        return QPolynomial.raw(system, dict(self.terms))

    def in_ring(self) -> bool:
        return self.system.in_ring(self.terms)

    def __str__(self) -> str:
        return self.system.format(self.terms)

    def __repr__(self) -> str:
        return f"QPolynomial({self})"


class FreeAlgebra:
    """Factory for elements of the free algebra over named generators."""

    def constant(self, value: ScalarLike) -> "FreePolynomial":
        return FreePolynomial({(): as_scalar(value)})

    def generator(self, name: str, exponent: int = 1) -> "FreePolynomial":
        if exponent == 0:
            return self.constant(1)
        return FreePolynomial({((name, exponent),): ONE})


class FreePolynomial:
    """
    Noncommutative polynomial on words, in the order the terms were written.

    Args:
        terms (dict): Mapping word -> coefficient
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Word, ScalarLike]] = None) -> None:
        self.terms: Dict[Word, RationalFunction] = {}
        for word, coeff in (terms or {}).items():
            value = as_scalar(coeff)
            if value:
                self.terms[word] = value

    def _coerce(self, other) -> Optional["FreePolynomial"]:
        if isinstance(other, FreePolynomial):
            return other
        try:
            return FreePolynomial({(): as_scalar(other)})
        except InvalidArgument:
            return None

    def __add__(self, other) -> "FreePolynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self.terms)
        for word, coeff in rhs.terms.items():
            out[word] = out.get(word, as_scalar(0)) + coeff
        return FreePolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "FreePolynomial":
        return FreePolynomial({w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "FreePolynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other) -> "FreePolynomial":
        return (-self) + other

    def __mul__(self, other) -> "FreePolynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out: Dict[Word, RationalFunction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in rhs.terms.items():
                word = concat_words(w1, w2)
                out[word] = out.get(word, as_scalar(0)) + c1 * c2
        return FreePolynomial(out)

    def __rmul__(self, other) -> "FreePolynomial":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs * self

    def __truediv__(self, other) -> "FreePolynomial":
        rhs = self._coerce(other)
        if rhs is None or not rhs.is_constant() or not rhs.terms:
            raise InvalidArgument("division by a non-scalar element")
        return self * (1 / rhs.terms[()])

    def __pow__(self, exponent: int) -> "FreePolynomial":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FreePolynomial({(): ONE})
        for _ in range(exponent):
            result = result * self
        return result

    def inverse(self) -> "FreePolynomial":
        if self.is_constant() and self.terms:
            return FreePolynomial({(): 1 / self.terms[()]})
        if len(self.terms) == 1:
            (word, coeff), = self.terms.items()
            if len(word) == 1:
                name, exp = word[0]
                return FreePolynomial({((name, -exp),): 1 / coeff})
        raise NegativePowerOfNonInvertible("only scalars and generators can be inverted")

    def __eq__(self, other) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self.terms == rhs.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not w for w in self.terms)

    def names(self) -> List[str]:
        seen: List[str] = []
        for word in self.terms:
            for name, _ in word:
                if name not in seen:
                    seen.append(name)
        return seen

    def linear_part(self) -> Optional[Dict[str, RationalFunction]]:
        """Coefficients when every word is a single generator, else None."""
        out: Dict[str, RationalFunction] = {}
        for word, coeff in self.terms.items():
            if len(word) != 1 or word[0][1] != 1:
                return None
            out[word[0][0]] = coeff
        return out

    def __str__(self) -> str:
        alone = len(self.terms) == 1
        parts = [
            format_term(c, word_text(w), alone) for w, c in self.terms.items()
        ]
        return join_terms(parts)

    def __repr__(self) -> str:
        return f"FreePolynomial({self})"


def word_text(word: Word) -> str:
    if not word:
        return "1"
    return "*".join(name if exp == 1 else f"{name}^{exp}" for name, exp in word)


def concat_words(left: Word, right: Word) -> Word:
    """Concatenate two words, merging and cancelling adjacent powers."""
    out = list(left)
    for name, exp in right:
        if out and out[-1][0] == name:
            total = out[-1][1] + exp
            out.pop()
            if total:
                out.append((name, total))
        else:
            out.append((name, exp))
    return tuple(out)
