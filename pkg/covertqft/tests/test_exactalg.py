import random
from fractions import Fraction

from django.test import SimpleTestCase
from sympy.polys.domains import QQ_I

from covertqft.exactalg import (
    I, BivariatePoly, BivariateRatFunc, GaussianRational, QRatFunc, SFactor, SLaurent, USeries,
    cot_half, parse_gaussian, q_to_u, sin_half,
)
from covertqft.exceptions import NonInvertibleError, SeriesDomainError
from covertqft.partitions import enumerate_partitions, q_dim


def random_gaussian(rng):
    return GaussianRational(Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                            Fraction(rng.randint(-9, 9), rng.randint(1, 5)))


class GaussianRationalTestCase(SimpleTestCase):
    """Test cases for GaussianRational."""

    def setUp(self):
        """Set up test data."""
        self.rng = random.Random(7)

    def test_i_squared_is_minus_one(self):
        """Test that i*i equals -1."""
        self.assertEqual(I * I, -1)

    def test_field_axioms_on_random_values(self):
        """Test that distributivity and inverses hold exactly on random values."""
        for _ in range(50):
            a, b, c = (random_gaussian(self.rng) for _ in range(3))
            self.assertEqual(a * (b + c), a * b + a * c)
            self.assertEqual((a + b) - b, a)
            if a:
                self.assertEqual(a * a.inverse(), 1)

    def test_zero_inverse_raises(self):
        """Test that inverting zero raises NonInvertibleError."""
        with self.assertRaises(NonInvertibleError):
            GaussianRational(0).inverse()

    def test_text_rendering(self):
        """Test the canonical text forms."""
        self.assertEqual(str(GaussianRational(3)), '3')
        self.assertEqual(str(I), 'i')
        self.assertEqual(str(-I), '-i')
        self.assertEqual(str(GaussianRational(Fraction(3, 2), Fraction(1, 2))), '3/2 + 1/2*i')
        self.assertEqual(str(GaussianRational(1, -2)), '1 - 2*i')

    def test_parse_inverts_rendering(self):
        """Test that rendered values parse back."""
        for _ in range(20):
            value = random_gaussian(self.rng)
            self.assertEqual(parse_gaussian(str(value)), value)
        self.assertEqual(parse_gaussian('-i'), -I)

    def test_hash_matches_rational(self):
        """Test that a real Gaussian rational hashes like the Fraction it equals."""
        self.assertEqual(hash(GaussianRational(Fraction(1, 2))), hash(Fraction(1, 2)))

    def test_values_live_in_gaussian_rational_field(self):
        """Test that scalars are backed by elements of QQ_I."""
        value = GaussianRational(Fraction(1, 3), -2)
        self.assertTrue(QQ_I.of_type(value.value))
        self.assertEqual(GaussianRational.coerce(QQ_I(1, 1)), 1 + I)
        self.assertEqual((value.re, value.im), (Fraction(1, 3), Fraction(-2)))


class USeriesTestCase(SimpleTestCase):
    """Test cases for truncated Laurent series in u."""

    def test_sin_half_coefficients(self):
        """Test that 2 sin(u/2) = u - u^3/24 + u^5/1920 + ..."""
        series = sin_half(1, 6)
        self.assertEqual(series.coefficient(1), 1)
        self.assertEqual(series.coefficient(3), Fraction(-1, 24))
        self.assertEqual(series.coefficient(5), Fraction(1, 1920))
        self.assertEqual(series.coefficient(2), 0)

    def test_cot_half_leading_terms(self):
        """Test that cot(u/2) = 2/u - u/6 - u^3/360 + ..."""
        series = cot_half(1, 6)
        self.assertEqual(series.valuation, -1)
        self.assertEqual(series.order, 6)
        self.assertEqual(series.coefficient(-1), 2)
        self.assertEqual(series.coefficient(1), Fraction(-1, 6))
        self.assertEqual(series.coefficient(3), Fraction(-1, 360))

    def test_cot_half_leading_term_is_two_over_k(self):
        """Test that cot(ku/2) starts with 2/k."""
        for k in range(1, 6):
            self.assertEqual(cot_half(k, 4).coefficient(-1), Fraction(2, k))

    def test_inverse(self):
        """Test that a * inv(a) is one to the truncation order."""
        a = USeries([1, 2, 3], 0, 6)
        self.assertEqual(a * a.inverse(), USeries.one(6))
        b = sin_half(3, 9)
        product = b * b.inverse()
        self.assertEqual(product, USeries.one(product.order))

    def test_inverse_of_zero_raises(self):
        """Test that the zero series is not invertible."""
        with self.assertRaises(NonInvertibleError):
            USeries.zero(5).inverse()

    def test_order_bookkeeping(self):
        """Test that sums keep the smaller order and products the min-consistent one."""
        a = sin_half(1, 6)
        b = sin_half(1, 10)
        self.assertEqual((a + b).order, 6)
        self.assertEqual((a * b).order, 7)
        self.assertEqual(b.inverse().order, 8)

    def test_exp_log_round_trip(self):
        """Test that exp(log(f)) = f and log(exp(g)) = g exactly."""
        f = USeries([1, 1, Fraction(1, 3)], 0, 8)
        self.assertEqual(f.log().exp(), f)
        g = USeries([0, 2, -1, I], 0, 8)
        self.assertEqual(g.exp().log(), g)

    def test_log_outside_domain_raises(self):
        """Test that log needs constant term 1."""
        with self.assertRaises(SeriesDomainError):
            USeries([2, 1], 0, 5).log()

    def test_exp_outside_domain_raises(self):
        """Test that exp needs a zero constant term."""
        with self.assertRaises(SeriesDomainError):
            USeries([1, 1], 0, 5).exp()

    def test_coefficient_beyond_order_raises(self):
        """Test that unknown coefficients are not invented."""
        with self.assertRaises(ValueError):
            sin_half(1, 4).coefficient(4)

    def test_text_rendering_and_parse(self):
        """Test the canonical rendering and that it parses back."""
        series = USeries.from_terms({-1: GaussianRational(Fraction(3, 2), Fraction(1, 2)), 1: 2}, 4)
        text = str(series)
        self.assertEqual(text, '(3/2 + 1/2*i)*u^-1 + 2*u + O(u^4)')
        self.assertEqual(USeries.parse(text), series)
        self.assertEqual(str(sin_half(1, 4)), 'u - 1/24*u^3 + O(u^4)')
        self.assertEqual(USeries.parse(str(sin_half(2, 9))), sin_half(2, 9))

    def test_agrees_with(self):
        """Test comparison up to the common truncation order."""
        self.assertTrue(sin_half(1, 10).agrees_with(sin_half(1, 6)))
        self.assertFalse(sin_half(1, 10).agrees_with(sin_half(2, 6)))


class QRatFuncTestCase(SimpleTestCase):
    """Test cases for rational functions of q."""

    def test_canonical_form(self):
        """Test that equal functions have equal canonical forms."""
        one_minus_q2 = QRatFunc.q_terms({0: 1, 2: -1})
        one_minus_q = QRatFunc.q_terms({0: 1, 1: -1})
        self.assertEqual(one_minus_q2 / one_minus_q, QRatFunc.q_terms({0: 1, 1: 1}))
        self.assertEqual(QRatFunc.Q_power(-1) * QRatFunc.Q_power(1), 1)

    def test_common_factors_cancel_on_construction(self):
        """Test that a quotient sharing a factor reduces to lowest terms."""
        f = QRatFunc.Q_terms({0: 1, 2: -1}) / QRatFunc.Q_terms({0: 1, 1: 1})
        self.assertEqual(str(f), '1 - q^2')
        self.assertEqual(f.denominator, ((0, QQ_I.one),))

    def test_field_operations(self):
        """Test that (f + g) / g = f / g + 1."""
        f = QRatFunc.q_terms({1: 2, 3: -1})
        g = QRatFunc.q_terms({0: 1, 2: 1}) / QRatFunc.q_terms({0: 1, 1: -3})
        self.assertEqual((f + g) / g, f / g + 1)
        self.assertEqual(g * g.inverse(), 1)

    def test_zero_inverse_raises(self):
        """Test that the zero function is not invertible."""
        with self.assertRaises(NonInvertibleError):
            QRatFunc(0).inverse()

    def test_q_dim_at_one_is_dim(self):
        """Test that q_dim evaluated at Q = 1 equals dim for d <= 6."""
        from covertqft.partitions import dim

        for d in range(1, 7):
            for rho in enumerate_partitions(d):
                self.assertEqual(q_dim(rho).evaluate_at_one(), dim(rho))

    def test_q_to_u_is_multiplicative(self):
        """Test that q_to_u respects products and inverses."""
        q = QRatFunc.q_power(1)
        self.assertEqual(q_to_u(q * q, 8), q_to_u(q, 8) * q_to_u(q, 8))
        f = QRatFunc.q_terms({0: 1, 1: 1})
        self.assertEqual(q_to_u(f.inverse(), 6) * q_to_u(f, 6), USeries.one(6))

    def test_evaluation_matches_constant_term(self):
        """Test that the value at q = 1 is the constant term of the u-series."""
        for rho in enumerate_partitions(4):
            f = q_dim(rho)
            self.assertEqual(q_to_u(f, 4).coefficient(0), f.evaluate_at_one())

    def test_text_rendering_and_parse(self):
        """Test that rendered functions parse back."""
        f = q_dim(enumerate_partitions(4)[1])
        self.assertEqual(str(f), '24/(1 + 2*q^2 + 2*q^4 + 2*q^6 + q^8)')
        self.assertEqual(QRatFunc.parse(str(f)), f)


class SParametersTestCase(SimpleTestCase):
    """Test cases for SLaurent, SFactor and the bivariate functions of s1, s2."""

    def test_monomial_inverse(self):
        """Test that monomials invert."""
        self.assertEqual(SLaurent.monomial(2, 3).inverse(), SLaurent.monomial(Fraction(1, 2), -3))

    def test_non_monomial_inverse_raises(self):
        """Test that only monomials in s are invertible."""
        with self.assertRaises(NonInvertibleError):
            SLaurent({0: 1, 1: 1}).inverse()

    def test_sfactor_rendering(self):
        """Test the text form of s-monomials."""
        self.assertEqual(str(SFactor(-2, -1)), '-s^-2')
        self.assertEqual(str(SFactor(1)), 's')
        self.assertEqual(str(SFactor(0)), '1')
        self.assertEqual(SFactor(1, I) * SFactor(1, I), SFactor(2, -1))

    def test_sfactor_rejects_non_units(self):
        """Test that the sign of an SFactor is a unit."""
        with self.assertRaises(ValueError):
            SFactor(1, 2)

    def test_bivariate_equality_by_cross_multiplication(self):
        """Test that s1/s1^2 equals 1/s1."""
        self.assertEqual(BivariateRatFunc(BivariatePoly.s1(), BivariatePoly.s1(2)),
                         BivariateRatFunc(1, BivariatePoly.s1()))

    def test_antidiagonal_substitution(self):
        """Test that (s1 + s2)/(2 s1 s2) vanishes at s1 = -s2."""
        generator = BivariateRatFunc(BivariatePoly.s1() + BivariatePoly.s2(), BivariatePoly({(1, 1): 2}))
        self.assertTrue(generator.antidiagonal().is_zero())
        self.assertEqual(BivariateRatFunc(1, BivariatePoly.s2(3)).antidiagonal(), SLaurent.monomial(-1, -3))
