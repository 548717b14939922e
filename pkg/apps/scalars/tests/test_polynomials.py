from django.test import SimpleTestCase
from hypothesis import given, settings
from sympy import QQ

from apps.core.exceptions import CourantError, DegreeError
from apps.core.tests.strategies import polynomials, rationals
from apps.scalars.services.polynomials import (
    format_polynomial, format_rational, monomials_up_to, parse_gaussian, parse_polynomial,
    parse_rational, poly_partial, polynomial_ring, to_exact, total_degree,
)

R2 = polynomial_ring(["x", "y"])
R3 = polynomial_ring(["x", "y", "z"])


class PolyPartialTests(SimpleTestCase):
    def test_power_rule(self):
        x, y = R2.gens
        self.assertEqual(poly_partial(x**2 * y, 0), 2 * x * y)

    def test_independent_variable(self):
        x, _ = R2.gens
        self.assertEqual(poly_partial(x, 1), R2.zero)

    def test_term_by_term(self):
        x, y = R2.gens
        self.assertEqual(poly_partial(x**3 + x * y, 0), 3 * x**2 + y)

    def test_index_out_of_range(self):
        with self.assertRaises(DegreeError):
            poly_partial(R2.gens[0], 2)
        with self.assertRaises(DegreeError):
            poly_partial(R2.gens[0], -1)

    @settings(max_examples=50, derandomize=True)
    @given(polynomials(R3), polynomials(R3))
    def test_leibniz_rule(self, p, q):
        for i in range(3):
            self.assertEqual(
                poly_partial(p * q, i),
                poly_partial(p, i) * q + p * poly_partial(q, i),
            )


class PolynomialRingTests(SimpleTestCase):
    @settings(max_examples=100, derandomize=True)
    @given(polynomials(R2), polynomials(R2), polynomials(R2))
    def test_ring_axioms(self, p, q, r):
        self.assertEqual((p * q) * r, p * (q * r))
        self.assertEqual(p * (q + r), p * q + p * r)
        self.assertEqual(p * q, q * p)

    @settings(max_examples=50, derandomize=True)
    @given(polynomials(R2), polynomials(R2))
    def test_degree_of_product(self, p, q):
        if p and q:
            self.assertEqual(total_degree(p * q), total_degree(p) + total_degree(q))

    def test_no_zero_coefficients_stored(self):
        x, y = R2.gens
        p = (x + y) - y
        self.assertEqual(dict(p), {(1, 0): QQ(1)})

    def test_monomial_family(self):
        family = monomials_up_to(R2, 2)
        self.assertEqual(len(family), 6)
        self.assertEqual(family[0], R2.one)
        self.assertEqual(len(set(map(format_polynomial, family))), 6)


class TextFormTests(SimpleTestCase):
    def test_rationals(self):
        self.assertEqual(parse_rational("-3/6"), QQ(-1, 2))
        self.assertEqual(parse_rational("4"), QQ(4))
        self.assertEqual(format_rational(QQ(6, 4)), "3/2")
        self.assertEqual(format_rational(QQ(-2)), "-2")
        with self.assertRaises(CourantError):
            parse_rational("1/0")
        with self.assertRaises(CourantError):
            parse_rational("0.5")

    def test_gaussian_rationals(self):
        self.assertEqual(parse_gaussian("1+2i"), (QQ(1), QQ(2)))
        self.assertEqual(parse_gaussian("1/2 - 3i"), (QQ(1, 2), QQ(-3)))
        self.assertEqual(parse_gaussian("-i"), (QQ(0), QQ(-1)))
        self.assertEqual(parse_gaussian("4"), (QQ(4), QQ(0)))
        for bad in ("0.5", "x", "1+"):
            with self.assertRaises(CourantError):
                parse_gaussian(bad)

    @settings(max_examples=50, derandomize=True)
    @given(rationals)
    def test_rational_text_is_exact(self, q):
        self.assertEqual(parse_rational(format_rational(q)), q)

    def test_polynomials(self):
        x, y, z = R3.gens
        self.assertEqual(parse_polynomial("x*y - 1/2*z**2", R3), x * y - QQ(1, 2) * z**2)
        self.assertEqual(parse_polynomial(3, R3), 3 * R3.one)
        p = x**2 * y + QQ(2, 3) * z
        self.assertEqual(parse_polynomial(format_polynomial(p), R3), p)

    def test_polynomial_errors(self):
        with self.assertRaises(CourantError):
            parse_polynomial("w + x", R3)
        with self.assertRaises(CourantError):
            parse_polynomial("1/x", R3)

    def test_inexact_scalars_refused(self):
        with self.assertRaises(CourantError):
            to_exact(0.5)
        self.assertEqual(to_exact("2/4"), QQ(1, 2))
