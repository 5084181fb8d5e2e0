"""
Tests for X-inner derivations, inducing elements and P-conjugation
"""

import pytest

from xinner.core.automorphism import (
    Automorphism,
    conjugation_automorphism,
    equal,
    thm23_check,
)
from xinner.core.errors import (
    BoxTooLarge,
    IdentityFails,
    InvalidArgument,
    Rejection,
    UnverifiedWitness,
    ZeroElement,
)
from xinner.core.ore import (
    InnerWitness,
    NoneInBox,
    classify_stabilizing,
    coefficient_identity,
    delta_of,
    inducing_pair,
    invariant_polynomial_check,
    ore_view,
    p_conjugation,
    qskew_constant,
    thm32_case1,
    thm32_case2,
    verify_inducing,
    weyl_pz_identity,
    xinner_derivation_solve,
)
from xinner.core.scalar import q


def scaled(p, name, n):
    return tuple(n * e for e in p.monomial(name))


class TestOreView:
    """Test cases for the Ore data of a presentation"""

    def test_color_is_ore_shaped(self, color):
        """The color example is an Ore extension in x with tau = 1"""
        ore = ore_view(color)
        assert ore.ore_name == "x"
        assert ore.delta[color.system.index("y")] == color.element("y")
        assert qskew_constant(ore) == 1

    @pytest.mark.parametrize("name, expected", [("weyl", q), ("ex4_4", q**2), ("ex2_4", None)])
    def test_qskew_constant(self, request, name, expected):
        """Q is read off the relations"""
        assert qskew_constant(ore_view(request.getfixturevalue(name))) == expected


class TestWitness:
    """Test cases for the X-inner witness search"""

    def test_weyl_witness(self, weyl):
        """c = y^-1 / (1 - q) with nothing in the kernel"""
        found = xinner_derivation_solve(weyl, box=1)
        assert isinstance(found, InnerWitness)
        assert found.element == weyl.element("y^-1/(1-q)", weyl.ore.laurent())
        assert found.kernel == []
        assert found.to_dict()["found"] is True

    def test_qsquared_witness(self, ex4_4):
        """The witness of the q^2-skew derivation has a one-dimensional kernel"""
        laurent = ex4_4.ore.laurent()
        found = xinner_derivation_solve(ex4_4, box=1)
        assert found.element == ex4_4.element("q*y^-1*z/(1-q^2)", laurent)
        (kernel,) = found.kernel
        assert kernel.ratio_to(ex4_4.element("y^-1*z^-1", laurent)) is not None

    def test_skew_witness(self, ex2_4):
        """The degree-2 example has c = (z + y + 1) / (1 - q)"""
        found = xinner_derivation_solve(ex2_4, box=1)
        assert found.element == ex2_4.element("(z + y + 1)/(1-q)", ex2_4.ore.laurent())

    @pytest.mark.parametrize("fixture", ["ex4_3", "color"])
    def test_none_in_box(self, request, fixture):
        """Derivations that are not X-inner have no witness"""
        found = xinner_derivation_solve(request.getfixturevalue(fixture), box=3)
        assert isinstance(found, NoneInBox)
        assert not found.found
        assert found.to_dict()["box"] == 3

    def test_box_limits(self, weyl):
        """The box is positive and capped"""
        with pytest.raises(InvalidArgument):
            xinner_derivation_solve(weyl, box=0)
        with pytest.raises(BoxTooLarge):
            xinner_derivation_solve(weyl, box=2, max_unknowns=4)

    def test_unverified_witness(self, weyl):
        """A wrong element cannot pose as a witness"""
        with pytest.raises(UnverifiedWitness):
            InnerWitness(weyl.element("y^-1", weyl.ore.laurent()), [], 1, weyl.ore)

    def test_delta_of(self, weyl, ex4_3):
        """delta(r) = x r - tau(r) x recovers the relation tails"""
        for p in (weyl, ex4_3):
            ore = p.ore
            for i in ore.base:
                r = ore.laurent().generator(i)
                assert delta_of(r, ore) == ore.delta[i]


class TestCase2:
    """Test cases for candidates (x - c)^m w"""

    @pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
    def test_weyl_accepts_m_equal_n(self, weyl, n):
        """w = y^n with m = n induces x -> q^n x, y -> q^-n y"""
        witness = xinner_derivation_solve(weyl, box=1)
        report = thm32_case2(scaled(weyl, "y", n), n, witness, weyl)
        assert report.accepted
        expected = Automorphism.from_text(weyl, f"x=q^{n}*x, y=q^{-n}*y")
        assert equal(report.automorphism, expected)
        a, b = report.inducing
        assert verify_inducing(a, b, report.automorphism, weyl)

    def test_weyl_rejects_other_m(self, weyl):
        """c fails to close when m differs from n"""
        witness = xinner_derivation_solve(weyl, box=1)
        with pytest.raises(Rejection) as exc:
            thm32_case2(scaled(weyl, "y", 1), 0, witness, weyl)
        assert exc.value.report.closures["c_closure"] is False
        assert not exc.value.report.accepted

    @pytest.mark.parametrize("m, n", [(1, 0), (0, 1), (-1, 2)])
    def test_qsquared_table(self, ex4_4, m, n):
        """w = y^m z^n gives x -> q^(m-n) x, y -> q^(n-m) y"""
        witness = xinner_derivation_solve(ex4_4, box=1)
        w = tuple(a + b for a, b in zip(scaled(ex4_4, "y", m), scaled(ex4_4, "z", n)))
        report = thm32_case2(w, m, witness, ex4_4)
        expected = Automorphism.from_text(ex4_4, f"x=q^{m - n}*x, y=q^{n - m}*y")
        assert equal(report.automorphism, expected)

    def test_skew_case_matches_conjugation(self, ex2_4):
        """w = y with m = 0 is conjugation by y"""
        witness = xinner_derivation_solve(ex2_4, box=1)
        report = thm32_case2(ex2_4.monomial("y"), 0, witness, ex2_4)
        assert equal(report.automorphism, conjugation_automorphism(ex2_4.monomial("y"), ex2_4))
        assert thm23_check(report.automorphism, ex2_4).passed

    def test_skew_table_entry(self, ex2_4):
        """n = 1, m = -1 drops the y-term of x"""
        witness = xinner_derivation_solve(ex2_4, box=1)
        report = thm32_case2(ex2_4.monomial("y"), -1, witness, ex2_4)
        expected = Automorphism.from_text(ex2_4, "x=q*x + z + 1, y=q*y")
        assert equal(report.automorphism, expected)

    def test_case2_rejects_ore_variable(self, weyl):
        """w is a monomial over the base"""
        witness = xinner_derivation_solve(weyl, box=1)
        with pytest.raises(InvalidArgument):
            thm32_case2(weyl.monomial("x"), 0, witness, weyl)

    def test_case2_checks_witness(self, weyl):
        """A plain element is verified before use"""
        with pytest.raises(UnverifiedWitness):
            thm32_case2(weyl.monomial("y"), 1, weyl.element("y^-1", weyl.ore.laurent()), weyl)


class TestCase1:
    """Test cases for monomial candidates when delta is not X-inner"""

    @pytest.mark.parametrize("m", [-2, -1, 0, 1, 3])
    def test_powers_of_z(self, ex4_3, m):
        """w = z^m gives x -> q^m x, y -> q^-m y"""
        report = thm32_case1(scaled(ex4_3, "z", m), ex4_3)
        expected = Automorphism.from_text(ex4_3, f"x=q^{m}*x, y=q^{-m}*y")
        assert equal(report.automorphism, expected)
        assert report.to_dict()["accepted"] is True

    def test_rejects_y(self, ex4_3):
        """A y-part leaves w^-1 delta(w) outside R"""
        with pytest.raises(Rejection) as exc:
            thm32_case1(ex4_3.monomial("y"), ex4_3)
        failing = [k for k, ok in exc.value.report.closures.items() if not ok]
        assert failing == ["w_inv_delta_w"]

    def test_accepts_y_in_skew_extension(self, ex2_4):
        """y^-1 delta(y) = z + y + 1 lies in R, so w = y is conjugation by y"""
        y = ex2_4.monomial("y")
        report = thm32_case1(y, ex2_4)
        assert all(report.closures.values())
        assert equal(report.automorphism, conjugation_automorphism(y, ex2_4))
        x = ex2_4.system.index("x")
        assert report.automorphism.images[x] == ex2_4.element("q*x + z + y + 1")

    def test_classify(self, ex4_3):
        """Box 2 accepts exactly the powers of z"""
        report = classify_stabilizing(ex4_3, box=2)
        assert report.case == 1
        assert report.witness is None
        expected = {ex4_3.system.monomial_text(scaled(ex4_3, "z", m)) for m in range(-2, 3)}
        assert {r.w_text for r in report.accepted} == expected
        assert report.rejected == 25 - 5


class TestInducing:
    """Test cases for inducing pairs and their verification"""

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_commutator_powers(self, weyl, n):
        """(xy - yx)^n induces x -> q^n x, y -> q^-n y"""
        sigma = Automorphism.from_text(weyl, f"x=q^{n}*x, y=q^{-n}*y")
        b = weyl.element("x*y - y*x") ** n
        assert verify_inducing(weyl.element("1"), b, sigma, weyl)

    def test_wrong_power(self, weyl):
        """The commutator does not induce the square map"""
        sigma = Automorphism.from_text(weyl, "x=q^2*x, y=q^-2*y")
        assert not verify_inducing(weyl.element("1"), weyl.element("x*y - y*x"), sigma, weyl)

    def test_zero_inputs(self, weyl):
        """a and b are nonzero"""
        sigma = Automorphism.identity(weyl)
        with pytest.raises(ZeroElement):
            verify_inducing(weyl.element("0"), weyl.element("1"), sigma, weyl)

    def test_pair_for_negative_m(self, weyl):
        """m < 0 moves the power of E into a"""
        witness = xinner_derivation_solve(weyl, box=1)
        a, b = inducing_pair(scaled(weyl, "y", -1), -1, witness.element, weyl.ore)
        assert a.in_ring() and b.in_ring()
        sigma = Automorphism.from_text(weyl, "x=q^-1*x, y=q*y")
        assert verify_inducing(a, b, sigma, weyl)

    def test_pz_identity(self, weyl):
        """(x - c) y = q/(q - 1) (xy - yx)"""
        assert weyl_pz_identity(weyl) == q / (q - 1)

    def test_pz_identity_fails(self, weyl):
        """c = y^-1 is off by the factor 1 - q"""
        with pytest.raises(IdentityFails):
            weyl_pz_identity(weyl, weyl.element("y^-1", weyl.ore.laurent()))


class TestPConjugation:
    """Test cases for conjugation by powers of P = x - c"""

    def test_weyl(self, weyl):
        """m = 1 gives x -> x - y^-1, y -> q^-1 y"""
        laurent = weyl.ore.laurent()
        sigma = p_conjugation(xinner_derivation_solve(weyl, box=1), 1, weyl)
        assert sigma.images[laurent.index("x")] == weyl.element("x - y^-1", laurent)
        assert sigma.images[laurent.index("y")] == weyl.element("q^-1*y", laurent)

    def test_qsquared(self, ex4_4):
        """m = 1 gives x -> x - q y^-1 z, y -> q^-1 y, z -> q z"""
        laurent = ex4_4.ore.laurent()
        sigma = p_conjugation(xinner_derivation_solve(ex4_4, box=1), 1, ex4_4)
        assert sigma.images[laurent.index("x")] == ex4_4.element("x - q*y^-1*z", laurent)
        assert sigma.images[laurent.index("z")] == ex4_4.element("q*z", laurent)

    def test_skew(self, ex2_4):
        """m = 1 gives x -> x + q^-1 y"""
        laurent = ex2_4.ore.laurent()
        sigma = p_conjugation(xinner_derivation_solve(ex2_4, box=1), 1, ex2_4)
        assert sigma.images[laurent.index("x")] == ex2_4.element("x + q^-1*y", laurent)

    def test_zero_power_is_identity(self, weyl):
        """P^0 fixes everything"""
        sigma = p_conjugation(xinner_derivation_solve(weyl, box=1), 0, weyl)
        assert sigma.is_identity()

    def test_invariant_polynomial(self, weyl, ex2_4):
        """P r = tau(r) P holds for the witness and fails for c = 0"""
        for p in (weyl, ex2_4):
            assert invariant_polynomial_check(xinner_derivation_solve(p, box=1), p)
        assert not invariant_polynomial_check(weyl.element("0"), weyl)


class TestCoefficientIdentity:
    """Test cases for the x^(n-1) coefficient of x^n s"""

    def test_weyl_square(self, weyl):
        """x^2 y has x-coefficient q + 1"""
        report = coefficient_identity("y", 2, weyl)
        assert report.observed == weyl.element("q + 1")
        assert report.passed

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_qskew_examples(self, weyl, ex4_3, ex4_4, n):
        """Both q-integer predictions agree when Q exists"""
        for p in (weyl, ex4_3, ex4_4):
            assert coefficient_identity("y", n, p).passed

    def test_not_qskew(self, ex2_4):
        """Without Q there is no prediction"""
        report = coefficient_identity("y", 2, ex2_4)
        assert report.ascending is None
        assert not report.passed
        assert report.to_dict()["status"] == "FAIL"

    def test_arguments(self, weyl):
        """s is a base generator and n is positive"""
        with pytest.raises(InvalidArgument):
            coefficient_identity("x", 2, weyl)
        with pytest.raises(InvalidArgument):
            coefficient_identity("y", 0, weyl)
