from django.test import SimpleTestCase
from hypothesis import given, settings

from apps.cartan.services.fields import PolyVectorField, lie_bracket_vf
from apps.cartan.services.forms import (
    PolyForm, exterior_derivative, interior_product, lie_derivative,
    lie_derivative_transport, wedge,
)
from apps.cartan.services.patch import Patch
from apps.cartan.services.sampling import make_rng, random_form, random_vector_field
from apps.cartan.tests.strategies import forms, vector_fields
from apps.core.exceptions import CourantError, DegreeError, PatchMismatchError

R2 = Patch.euclidean(2)
R3 = Patch.euclidean(3)
R4 = Patch.euclidean(4)


def dx(patch, *names, coeff=1):
    return PolyForm.basis(patch, *(patch.index(n) for n in names), coeff=coeff)


def d_dx(patch, name):
    return PolyVectorField.coordinate(patch, patch.index(name))


class PatchTests(SimpleTestCase):
    def test_euclidean_names(self):
        self.assertEqual(R3.names, ("x", "y", "z"))
        self.assertEqual(R4.names, ("x1", "x2", "x3", "x4"))

    def test_repeated_names_rejected(self):
        with self.assertRaises(CourantError):
            Patch(("x", "x"))

    def test_foreign_polynomial_rejected(self):
        with self.assertRaises(PatchMismatchError):
            R3.poly(R2.coordinates[0])

    def test_mixing_patches_fails(self):
        with self.assertRaises(PatchMismatchError):
            dx(R2, "x") + dx(R3, "x")


class WedgeTests(SimpleTestCase):
    def test_repeated_one_form_vanishes(self):
        self.assertTrue(wedge(dx(R3, "x"), dx(R3, "x")).is_zero())

    def test_antisymmetry(self):
        self.assertEqual(wedge(dx(R3, "x"), dx(R3, "y")), -wedge(dx(R3, "y"), dx(R3, "x")))

    def test_coefficients_multiply(self):
        self.assertEqual(wedge(dx(R3, "y", coeff="x"), dx(R3, "z")), dx(R3, "y", "z", coeff="x"))

    def test_unsorted_keys_are_canonicalized(self):
        alpha = PolyForm(R3, 2, {(1, 0): R3.one})
        self.assertEqual(alpha, dx(R3, "x", "y", coeff=-1))

    def test_degree_above_dimension_is_rejected(self):
        with self.assertRaises(DegreeError):
            PolyForm.zero(R2, 3)

    @settings(max_examples=40, derandomize=True)
    @given(forms(R3, 1), forms(R3, 2))
    def test_graded_commutativity(self, a, b):
        self.assertEqual(wedge(a, b), wedge(b, a))


class ExteriorDerivativeTests(SimpleTestCase):
    def test_one_form(self):
        self.assertEqual(exterior_derivative(dx(R3, "y", coeff="x")), dx(R3, "x", "y"))

    def test_constant(self):
        self.assertTrue(exterior_derivative(PolyForm.scalar(R3, 5)).is_zero())

    def test_two_form(self):
        # d(xy) ^ dx ^ dz = x dy ^ dx ^ dz
        alpha = dx(R3, "x", "z", coeff="x*y")
        self.assertEqual(exterior_derivative(alpha), dx(R3, "x", "y", "z", coeff="-x"))

    def test_top_degree(self):
        self.assertTrue(exterior_derivative(dx(R2, "x", "y", coeff="x*y")).is_zero())

    @settings(max_examples=50, derandomize=True)
    @given(forms(R3, 0))
    def test_d_squared_on_functions(self, f):
        self.assertTrue(exterior_derivative(exterior_derivative(f)).is_zero())

    @settings(max_examples=50, derandomize=True)
    @given(forms(R4, 1))
    def test_d_squared_on_one_forms(self, alpha):
        self.assertTrue(exterior_derivative(exterior_derivative(alpha)).is_zero())

    @settings(max_examples=30, derandomize=True)
    @given(forms(R4, 2))
    def test_d_squared_on_two_forms(self, alpha):
        self.assertTrue(exterior_derivative(exterior_derivative(alpha)).is_zero())

    @settings(max_examples=40, derandomize=True)
    @given(forms(R3, 1), forms(R3, 1))
    def test_graded_leibniz(self, a, b):
        self.assertEqual(
            exterior_derivative(wedge(a, b)),
            wedge(exterior_derivative(a), b) - wedge(a, exterior_derivative(b)),
        )


class InteriorProductTests(SimpleTestCase):
    def test_first_slot(self):
        self.assertEqual(interior_product(d_dx(R3, "x"), dx(R3, "x", "y")), dx(R3, "y"))

    def test_second_slot_sign(self):
        self.assertEqual(interior_product(d_dx(R3, "y"), dx(R3, "x", "y")), -dx(R3, "x"))

    def test_coefficient(self):
        self.assertEqual(
            interior_product(d_dx(R3, "z"), dx(R3, "y", "z", coeff="x")),
            dx(R3, "y", coeff="-x"),
        )

    def test_zero_form_rejected(self):
        with self.assertRaises(DegreeError):
            interior_product(d_dx(R3, "x"), PolyForm.scalar(R3, "x"))

    def test_evaluation_matches_contractions(self):
        alpha = dx(R3, "x", "y", coeff="z")
        X = PolyVectorField.from_mapping(R3, {"x": "1", "y": "x"})
        Y = d_dx(R3, "y")
        expected = interior_product(Y, interior_product(X, alpha)).function()
        self.assertEqual(alpha(X, Y), expected)
        self.assertEqual(alpha(X, Y), -alpha(Y, X))

    def test_evaluation_arity(self):
        with self.assertRaises(DegreeError):
            dx(R3, "x", "y")(d_dx(R3, "x"))

    @settings(max_examples=40, derandomize=True)
    @given(vector_fields(R3), forms(R3, 2))
    def test_contracting_twice_vanishes(self, X, alpha):
        self.assertTrue(interior_product(X, interior_product(X, alpha)).is_zero())


class LieBracketTests(SimpleTestCase):
    def test_coordinate_field_and_linear_field(self):
        X = d_dx(R3, "x")
        Y = PolyVectorField.from_mapping(R3, {"y": "x"})
        self.assertEqual(lie_bracket_vf(X, Y), d_dx(R3, "y"))

    def test_r4_example(self):
        X = d_dx(R4, "x1")
        Y = PolyVectorField.from_mapping(R4, {"x2": "1", "x3": "x1"})
        self.assertEqual(lie_bracket_vf(X, Y), d_dx(R4, "x3"))

    @settings(max_examples=30, derandomize=True)
    @given(vector_fields(R2), vector_fields(R2), vector_fields(R2))
    def test_jacobi_identity(self, X, Y, Z):
        total = (
            lie_bracket_vf(X, lie_bracket_vf(Y, Z))
            + lie_bracket_vf(Y, lie_bracket_vf(Z, X))
            + lie_bracket_vf(Z, lie_bracket_vf(X, Y))
        )
        self.assertTrue(total.is_zero())


class LieDerivativeTests(SimpleTestCase):
    def test_translation(self):
        self.assertEqual(lie_derivative(d_dx(R3, "x"), dx(R3, "y", coeff="x")), dx(R3, "y"))

    def test_invariant_form(self):
        self.assertTrue(lie_derivative(d_dx(R3, "y"), dx(R3, "y", coeff="-x")).is_zero())

    def test_function(self):
        X = PolyVectorField.from_mapping(R3, {"x": "y"})
        f = PolyForm.scalar(R3, "x**2")
        self.assertEqual(lie_derivative(X, f).function(), R3.poly("2*x*y"))

    def test_top_degree(self):
        X = PolyVectorField.from_mapping(R2, {"x": "x"})
        self.assertEqual(lie_derivative(X, dx(R2, "x", "y")), dx(R2, "x", "y"))

    def test_cartan_matches_transport_on_seeded_samples(self):
        rng = make_rng(20240601)
        for _ in range(25):
            X = random_vector_field(R3, rng)
            for degree in (0, 1, 2, 3):
                alpha = random_form(R3, rng, degree)
                with self.subTest(degree=degree, X=str(X), alpha=str(alpha)):
                    self.assertEqual(lie_derivative(X, alpha), lie_derivative_transport(X, alpha))

    @settings(max_examples=30, derandomize=True)
    @given(vector_fields(R3), vector_fields(R3), forms(R3, 1))
    def test_commutator_is_bracket(self, X, Y, alpha):
        lhs = lie_derivative(X, lie_derivative(Y, alpha)) - lie_derivative(Y, lie_derivative(X, alpha))
        self.assertEqual(lhs, lie_derivative(lie_bracket_vf(X, Y), alpha))
