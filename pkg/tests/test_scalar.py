"""
Tests for exact scalar arithmetic in Q(q)
"""

from fractions import Fraction

import numpy as np
import pytest

from xinner.core.errors import DivisionByZero, InvalidArgument
from xinner.core.scalar import (
    ONE,
    ZERO,
    as_scalar,
    evaluate,
    format_scalar,
    q,
    q_exponent,
    q_int,
    q_power,
    rf_arith,
    scalar_order,
)


class TestScalar:
    """Test cases for the scalar field helpers"""

    def test_as_scalar(self):
        """Ints and fractions land in the field"""
        assert as_scalar(3) == 3
        assert as_scalar(Fraction(1, 2)) * 2 == 1
        with pytest.raises(InvalidArgument):
            as_scalar(True)
        with pytest.raises(InvalidArgument):
            as_scalar("q")

    def test_field_operations(self):
        """rf_arith agrees with the field operators"""
        assert rf_arith(q, 1, "add") == q + 1
        assert rf_arith(q, 1, "sub") == q - 1
        assert rf_arith(q, q, "mul") == q**2
        assert rf_arith(q**2, q, "div") == q
        assert rf_arith(q, kind="neg") == -q
        assert rf_arith(q, kind="inv") == q_power(-1)
        assert rf_arith((q**2 - 1) / (q - 1), q + 1, "eq") is True

    def test_division_by_zero(self):
        """Dividing by zero raises"""
        with pytest.raises(DivisionByZero):
            rf_arith(q, 0, "div")
        with pytest.raises(DivisionByZero):
            rf_arith(0, kind="inv")

    def test_unknown_operation(self):
        """Unknown operation names are rejected"""
        with pytest.raises(InvalidArgument):
            rf_arith(q, q, "pow")
        with pytest.raises(InvalidArgument):
            rf_arith(q, kind="add")

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_q_int(self, n):
        """Ascending and descending q-integers are geometric sums"""
        ascending = q_int(n)
        assert ascending == sum((q**k for k in range(n)), as_scalar(0))
        assert q_int(n, "descending") == ascending * q ** (1 - n)

    def test_q_int_with_base(self):
        """A custom base replaces q"""
        assert q_int(3, base=q**2) == 1 + q**2 + q**4

    def test_q_int_rejects_nonpositive(self):
        """Only positive integers have q-integers"""
        for bad in (0, -1, True):
            with pytest.raises(InvalidArgument):
                q_int(bad)
        with pytest.raises(InvalidArgument):
            q_int(2, "sideways")

    def test_q_exponent(self):
        """Pure powers of q are recognized"""
        assert q_exponent(q**3) == 3
        assert q_exponent(q_power(-2)) == -2
        assert q_exponent(as_scalar(1)) == 0
        assert q_exponent(2 * q) is None
        assert q_exponent(q + 1) is None

    def test_scalar_order(self):
        """Only 1 and -1 have finite order"""
        assert scalar_order(as_scalar(1)) == 1
        assert scalar_order(as_scalar(-1)) == 2
        assert scalar_order(q) is None

    def test_evaluate(self):
        """Specializing q gives exact rationals"""
        assert evaluate(q / (q - 1), 2) == Fraction(2)
        assert evaluate(q + 1, Fraction(1, 2)) == Fraction(3, 2)
        with pytest.raises(DivisionByZero):
            evaluate(1 / (q - 1), 1)

    def test_format_scalar(self):
        """Canonical text for common scalars"""
        assert format_scalar(as_scalar(0)) == "0"
        assert format_scalar(q_power(-2)) == "q^-2"
        assert format_scalar(2 * q) == "2*q"
        assert format_scalar(q + 1) == "1+q"
        assert format_scalar(1 / (1 - q)) == "(1-q)^-1"
        assert format_scalar(q / (q - 1)) == "-q*(1-q)^-1"


# the last three are never roots of an integer polynomial with coefficients in [-4, 4]
POINTS = (2, 3, 7, Fraction(1, 5), Fraction(-5, 3))


def random_scalar(rng):
    """Quotient of two integer polynomials in q of degree at most 3."""
    numer = ZERO + sum(int(c) * q**k for k, c in enumerate(rng.integers(-4, 5, size=4)))
    denom = ZERO
    while not denom:
        denom = ZERO + sum(int(c) * q**k for k, c in enumerate(rng.integers(-4, 5, size=3)))
    return numer / denom


def values_at(point, *scalars):
    """Evaluations at a point, or None when one of them has a pole there."""
    try:
        return [evaluate(s, point) for s in scalars]
    except DivisionByZero:
        return None


class TestFieldAxioms:
    """Field laws on random scalars, seen through evaluation at rational points"""

    @pytest.mark.parametrize("seed", range(20))
    def test_operations_are_homomorphic(self, seed):
        """Evaluating commutes with every field operation"""
        rng = np.random.default_rng(seed)
        a, b = random_scalar(rng), random_scalar(rng)
        results = {kind: rf_arith(a, b, kind) for kind in ("add", "sub", "mul")}
        if b:
            results["div"] = rf_arith(a, b, "div")
        checked = 0
        for point in POINTS:
            values = values_at(point, a, b, *results.values())
            if values is None:
                continue
            va, vb, *got = values
            expected = {"add": va + vb, "sub": va - vb, "mul": va * vb}
            if "div" in results:
                if vb == 0:
                    continue
                expected["div"] = va / vb
            assert dict(zip(results, got)) == expected
            checked += 1
        assert checked >= 3

    @pytest.mark.parametrize("seed", range(20))
    def test_ring_laws(self, seed):
        """Associativity, commutativity and distributivity hold exactly"""
        rng = np.random.default_rng(100 + seed)
        a, b, c = (random_scalar(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        for point in POINTS:
            values = values_at(point, a, b, c)
            if values is not None:
                va, vb, vc = values
                assert evaluate(a * (b + c), point) == va * (vb + vc)

    @pytest.mark.parametrize("seed", range(20))
    def test_inverses(self, seed):
        """Nonzero scalars have multiplicative inverses and every scalar a negative"""
        rng = np.random.default_rng(200 + seed)
        a = random_scalar(rng)
        assert a + rf_arith(a, kind="neg") == 0
        if not a:
            with pytest.raises(DivisionByZero):
                rf_arith(a, kind="inv")
            return
        inverse = rf_arith(a, kind="inv")
        assert a * inverse == ONE
        for point in POINTS:
            values = values_at(point, a, inverse)
            if values is not None:
                assert values[0] * values[1] == 1
