"""
Tests for the rewrite engine and the overlap check
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import product

import numpy as np
import pytest

from xinner.core.errors import (
    NegativePowerOfNonInvertible,
    NotInvertible,
    NotScalarClosed,
    StepBudgetExceeded,
)
from xinner.core.rewrite import confluence_check, poly_conjugate
from xinner.core.scalar import ONE, ZERO, q
from xinner.examples.fixtures import load_example


class TestRewrite:
    """Test cases for normal forms"""

    def test_weyl_order(self, weyl):
        """The rewritten word x*y puts y first"""
        assert weyl.names == ("y", "x")

    def test_weyl_product(self, weyl):
        """x*y rewrites to q*y*x + 1"""
        value = weyl.element("x*y")
        assert value.coefficient(weyl.monomial("y*x")) == q
        assert value.coefficient((0, 0)) == 1
        assert len(value.terms) == 2
        assert value == weyl.element("q*y*x + 1")

    def test_weyl_square(self, weyl):
        """x^2*y = q^2*y*x^2 + (q + 1)*x"""
        value = weyl.element("x^2*y")
        assert value.coefficient(weyl.monomial("y*x^2")) == q**2
        assert value.coefficient(weyl.monomial("x")) == q + 1
        assert len(value.terms) == 2

    def test_associativity(self, ex2_4):
        """Products of normal forms associate"""
        a = ex2_4.element("x + y")
        b = ex2_4.element("z*x - q*y")
        c = ex2_4.element("x^2 + z")
        assert (a * b) * c == a * (b * c)

    def test_quantum_space_monomials(self, plane):
        """mono_mul returns a single scaled monomial"""
        x, y = plane.monomial("x"), plane.monomial("y")
        coeff, mono = plane.system.mono_mul(x, y)
        assert mono == plane.monomial("x*y")
        assert plane.system.monomial(mono, coeff) == plane.element("x*y")

    def test_mono_mul_needs_scalar_rules(self, weyl):
        """mono_mul is only for quantum spaces and tori"""
        with pytest.raises(NotScalarClosed):
            weyl.system.mono_mul(weyl.monomial("x"), weyl.monomial("y"))

    def test_negative_power_needs_inversion(self, weyl):
        """y^-1 lives only in the Laurent system"""
        with pytest.raises(NegativePowerOfNonInvertible):
            weyl.element("y^-1")
        laurent = weyl.ore.laurent()
        assert weyl.element("y*y^-1", laurent) == weyl.element("1", laurent)
        assert weyl.element("x*y^-1*y", laurent) == weyl.element("x", laurent)

    def test_cannot_invert_ore_variable(self, weyl):
        """The head of a rule with lower terms stays non-invertible"""
        with pytest.raises(NotInvertible):
            weyl.system.laurent_extend(["x"])

    def test_conjugation_by_y(self, weyl):
        """y^-1 x y = q x + y^-1"""
        laurent = weyl.ore.laurent()
        value = poly_conjugate(weyl.monomial("y"), weyl.element("x", laurent), laurent)
        assert value == weyl.element("q*x + y^-1", laurent)

    def test_ring_membership(self, weyl):
        """Negative exponents on a Laurent-only variable leave the ring"""
        laurent = weyl.ore.laurent()
        assert weyl.element("y*x", laurent).in_ring()
        assert not weyl.element("y^-1", laurent).in_ring()

    def test_step_budget(self, weyl):
        """A tiny budget stops the rewriting"""
        tight = weyl.system.with_budget(1)
        with pytest.raises(StepBudgetExceeded):
            tight.normal_form("x^2*y^2")

    def test_step_budget_ignores_history(self, weyl):
        """Earlier calls never pay for later ones"""
        tight = weyl.system.with_budget(20)
        for _ in range(2):
            with pytest.raises(StepBudgetExceeded):
                tight.normal_form("x^6*y^6")
            assert tight.normal_form("x*y") == weyl.element("q*y*x + 1")
        weyl.system.normal_form("x^6*y^6")
        with pytest.raises(StepBudgetExceeded):
            tight.normal_form("x^6*y^6")

    def test_step_count_is_reproducible(self, weyl, caplog):
        """The same input always takes the same number of swaps"""
        caplog.set_level(logging.DEBUG, logger="xinner.core.rewrite")
        for _ in range(3):
            weyl.system.normal_form("x^3*y^4")
        counts = {r.getMessage() for r in caplog.records if "swap steps" in r.getMessage()}
        assert len(counts) == 1

    def test_threads_share_nothing(self, ex2_4):
        """Concurrent normal forms agree with sequential ones"""
        texts = ["x^2*y*z", "z*x^3", "(x + y)^2*z", "y*x^2*z*x"] * 4
        expected = [ex2_4.element(t) for t in texts]
        with ThreadPoolExecutor(max_workers=4) as pool:
            results = list(pool.map(ex2_4.element, texts))
        assert results == expected

    def test_laurent_extension_is_stable(self, weyl):
        """Inverting the same set twice gives the same system"""
        first = weyl.system.laurent_extend(["y"])
        assert weyl.system.laurent_extend(["y"]) is first
        assert first.laurent_extend(["y"]) is first


BUNDLED = ["weyl.qalg", "quantum_plane.qalg", "quantum_space3.qalg", "ex2_4.qalg", "ex2_6.qalg"]


def single_steps(system, word, rng):
    """
    Normal form of a word over generator indices by single rule applications.

    Each pass rewrites one out-of-order adjacent pair chosen at random.
    """
    pending = {tuple(word): ONE}
    done = {}

    def add(target, key, coeff):
        total = target.get(key, ZERO) + coeff
        if total:
            target[key] = total
        else:
            target.pop(key, None)

    while pending:
        current, coeff = pending.popitem()
        spots = [k for k in range(len(current) - 1) if current[k] > current[k + 1]]
        if not spots:
            mono = [0] * system.n
            for idx in current:
                mono[idx] += 1
            add(done, tuple(mono), coeff)
            continue
        k = spots[int(rng.integers(len(spots)))]
        j, i = current[k], current[k + 1]
        head, rest = current[:k], current[k + 2 :]
        add(pending, head + (i, j) + rest, coeff * system.scalar(j, i))
        for tail, c in system.tail_words(j, i).items():
            middle = tuple(idx for idx, exp in tail for _ in range(exp))
            add(pending, head + middle + rest, coeff * c)
    return system.polynomial(done)


def words(n, max_length):
    for length in range(max_length + 1):
        yield from product(range(n), repeat=length)


class TestBruteForce:
    """Normal forms against rewriting one pair at a time"""

    @pytest.mark.parametrize("filename", BUNDLED)
    def test_matches_single_steps(self, filename):
        """Every word of length at most 4 agrees with the engine"""
        system = load_example(filename).system
        rng = np.random.default_rng(7)
        for word in words(system.n, 4):
            engine = system.constant(1)
            for idx in word:
                engine = engine * system.generator(idx)
            assert single_steps(system, word, rng) == engine, word

    @pytest.mark.parametrize("filename", BUNDLED)
    def test_normal_form_is_multiplicative(self, filename):
        """nf(a) * nf(b) equals nf(a * b) on random words"""
        p = load_example(filename)
        rng = np.random.default_rng(11)
        for _ in range(20):
            a, b = (
                "*".join(p.names[int(i)] for i in rng.integers(0, len(p.names), size=3))
                for _ in range(2)
            )
            product_nf = p.element(f"{a}*{b}")
            assert p.element(a) * p.element(b) == product_nf


class TestConfluence:
    """Test cases for the overlap check"""

    def test_two_generators_have_no_overlaps(self, weyl):
        """Nothing to check with fewer than three generators"""
        report = confluence_check(weyl.system)
        assert report.passed
        assert report.checked == 0

    @pytest.mark.parametrize(
        "filename", ["quantum_space3.qalg", "ex2_4.qalg", "ex2_6.qalg", "ex4_3.qalg", "ex4_4.qalg"]
    )
    def test_bundled_presentations_are_confluent(self, filename):
        """Every bundled three-generator presentation resolves"""
        report = confluence_check(load_example(filename).system)
        assert report.passed
        assert report.checked == 1

    def test_failing_overlap(self):
        """A bracket breaking Jacobi leaves an unresolved overlap"""
        report = confluence_check(load_example("bad_confluence.qalg").system)
        assert not report.passed
        assert report.to_dict()["status"] == "FAIL"
        assert len(report.failures) == 1
