"""
Exact arithmetic in the scalar field Q(q)

Scalars are elements of sympy's rational function field over ZZ in the
single transcendental ``q``. sympy keeps every element reduced with a
positive leading denominator, so equality of values is equality of
representations.
"""

from fractions import Fraction
from typing import Dict, Optional, Union

from sympy import ZZ
from sympy.polys.fields import FracElement, field

from .errors import DivisionByZero, InvalidArgument

FIELD, q = field("q", ZZ)
DOMAIN = FIELD.to_domain()

RationalFunction = FracElement
ScalarLike = Union[int, Fraction, FracElement]

ZERO = FIELD.zero
ONE = FIELD.one


def as_scalar(value: ScalarLike) -> RationalFunction:
    """
    Coerce an int, Fraction or field element into the scalar field.

    Args:
        value: Value to convert

    Returns:
        RationalFunction: The canonical field element
    """
    if isinstance(value, FracElement):
        return value
    if isinstance(value, bool):
        raise InvalidArgument(f"not a scalar: {value!r}")
    if isinstance(value, int):
        return FIELD(value)
    if isinstance(value, Fraction):
        return FIELD(value.numerator) / FIELD(value.denominator)
    raise InvalidArgument(f"not a scalar: {value!r}")


def q_power(k: int) -> RationalFunction:
    """Return q**k for any integer k."""
    return q**k


def rf_arith(a: ScalarLike, b: Optional[ScalarLike] = None, kind: str = "add"):
    """
    Field operations on canonical rational functions.

    Args:
        a: Left operand
        b: Right operand, unused for ``neg`` and ``inv``
        kind (str): One of add, sub, mul, div, neg, inv, eq

    Returns:
        RationalFunction or bool: Canonical result, or a bool for ``eq``
    """
    left = as_scalar(a)
    if kind == "neg":
        return -left
    if kind == "inv":
        if not left:
            raise DivisionByZero("inverse of zero")
        return 1 / left
    if b is None:
        raise InvalidArgument(f"operation {kind} needs two operands")
    right = as_scalar(b)
    if kind == "add":
        return left + right
    if kind == "sub":
        return left - right
    if kind == "mul":
        return left * right
    if kind == "div":
        if not right:
            raise DivisionByZero("division by zero")
        return left / right
    if kind == "eq":
        return bool(left == right)
    raise InvalidArgument(f"unknown operation {kind}")


def q_int(
    n: int, direction: str = "ascending", base: Optional[ScalarLike] = None
) -> RationalFunction:
    """
    The q-integer of n.

    Args:
        n (int): Positive integer
        direction (str): ``ascending`` gives 1 + b + ... + b^(n-1),
            ``descending`` gives 1 + b^-1 + ... + b^-(n-1)
        base: Ratio of the geometric sum, ``q`` when omitted

    Returns:
        RationalFunction: The sum
    """
    if isinstance(n, bool) or not isinstance(n, int) or n <= 0:
        raise InvalidArgument(f"q_int needs a positive integer, got {n!r}")
    if direction not in ("ascending", "descending"):
        raise InvalidArgument(f"unknown direction {direction}")
    ratio = q if base is None else as_scalar(base)
    if direction == "descending":
        ratio = rf_arith(ratio, kind="inv")
    total = ZERO
    term = ONE
    for _ in range(n):
        total += term
        term *= ratio
    return total


def q_exponent(value: RationalFunction) -> Optional[int]:
    """Return k when ``value == q**k``, otherwise None."""
    numer = _coefficients(value.numer)
    denom = _coefficients(value.denom)
    if len(numer) != 1 or len(denom) != 1:
        return None
    (ne, nc), (de, dc) = next(iter(numer.items())), next(iter(denom.items()))
    if nc != 1 or dc != 1:
        return None
    return ne - de


def scalar_order(value: RationalFunction) -> Optional[int]:
    """
    Multiplicative order in Q(q)*.

    The only roots of unity in Q(q) are 1 and -1.

    Returns:
        int or None: The order, None when it is infinite
    """
    if value == 1:
        return 1
    if value == -1:
        return 2
    return None


def evaluate(value: RationalFunction, point: Union[int, Fraction]) -> Fraction:
    """
    Specialize q to a rational number.

    Args:
        value: Scalar to evaluate
        point: Rational value substituted for q

    Returns:
        Fraction: The exact value
    """
    at = Fraction(point)
    numer = _evaluate_poly(_coefficients(value.numer), at)
    denom = _evaluate_poly(_coefficients(value.denom), at)
    if denom == 0:
        raise DivisionByZero(f"pole at q = {at}")
    return numer / denom


def is_atomic(value: RationalFunction) -> bool:
    """True when the scalar prints as a single signed term c*q^k."""
    denom = _coefficients(value.denom)
    return len(_coefficients(value.numer)) == 1 and len(denom) == 1


def format_scalar(value: RationalFunction) -> str:
    """
    Canonical text of a scalar, readable back by the expression parser.

    Denominators with a nonconstant part print as ``(1-q)^-1`` with
    positive constant term; powers of q in the denominator move into
    the numerator as negative exponents.
    """
    numer = _coefficients(value.numer)
    if not numer:
        return "0"
    denom = _coefficients(value.denom)
    shift = min(denom)
    laurent = {e - shift: c for e, c in numer.items()}
    rest = {e - shift: c for e, c in denom.items()}
    if len(rest) == 1:
        lead = rest[0]
        return _laurent_text({e: Fraction(c, lead) for e, c in laurent.items()})
    if rest[0] < 0:
        laurent = {e: -c for e, c in laurent.items()}
        rest = {e: -c for e, c in rest.items()}
    inverse = f"({_laurent_text(rest)})^-1"
    if laurent == {0: 1}:
        return inverse
    if laurent == {0: -1}:
        return "-" + inverse
    if len(laurent) == 1:
        return f"{_laurent_text(laurent)}*{inverse}"
    return f"({_laurent_text(laurent)})*{inverse}"


def _coefficients(poly) -> Dict[int, int]:
    return {monom[0]: int(coeff) for monom, coeff in poly.terms()}


def _evaluate_poly(coeffs: Dict[int, int], at: Fraction) -> Fraction:
    return sum((Fraction(c) * at**e for e, c in coeffs.items()), Fraction(0))


def _laurent_text(coeffs: Dict[int, Union[int, Fraction]]) -> str:
    parts = []
    for exp in sorted(coeffs):
        coeff = coeffs[exp]
        magnitude = abs(coeff)
        if exp == 0:
            body = str(magnitude)
        else:
            power = "q" if exp == 1 else f"q^{exp}"
            body = power if magnitude == 1 else f"{magnitude}*{power}"
        if not parts:
            parts.append("-" + body if coeff < 0 else body)
        else:
            parts.append(("-" if coeff < 0 else "+") + body)
    return "".join(parts)
