from django.test import SimpleTestCase
from hypothesis import given, settings
from sympy import QQ

from apps.cartan.services.fields import PolyVectorField
from apps.cartan.services.forms import PolyForm, exterior_derivative, interior_product
from apps.cartan.services.frames import EigenFrame
from apps.cartan.services.patch import Patch
from apps.cartan.services.sampling import make_rng, random_form, split_basis
from apps.cartan.services.types import (
    ParaComplexForm, del_minus, del_plus, del_plus_minus, dolbeault, kahler_potential_form,
    para_holomorphic_check, phi_inverse, phi_isomorphism, pure_type, type_leak,
    type_project, types_of,
)
from apps.cartan.tests.strategies import forms
from apps.core.exceptions import TypeMismatchError
from apps.scalars.services.paracomplex import J as UNIT_J

R2 = Patch.euclidean(2)
R4 = Patch.euclidean(4)
SPLIT_R2 = EigenFrame.coordinate_split(R2, plus=["x"])
SPLIT_R4 = EigenFrame.coordinate_split(R4, plus=["x1", "x2"])


def dx(patch, *names, coeff=1):
    return PolyForm.basis(patch, *(patch.index(n) for n in names), coeff=coeff)


def twisted_r4() -> EigenFrame:
    fields = [{"x1": "1"}, {"x2": "1", "x3": "x1"}, {"x3": "1"}, {"x4": "1"}]
    return EigenFrame(R4, tuple(PolyVectorField.from_mapping(R4, m) for m in fields))


class TypeDecompositionTests(SimpleTestCase):
    def test_coordinate_types(self):
        self.assertEqual(pure_type(dx(R2, "x"), SPLIT_R2), (1, 0))
        self.assertEqual(pure_type(dx(R2, "y"), SPLIT_R2), (0, 1))
        self.assertEqual(pure_type(dx(R2, "x", "y"), SPLIT_R2), (1, 1))
        self.assertEqual(pure_type(PolyForm.scalar(R2, "x"), SPLIT_R2), (0, 0))

    def test_mixed_form(self):
        alpha = dx(R2, "x", coeff="x") + dx(R2, "y")
        self.assertIsNone(pure_type(alpha, SPLIT_R2))
        self.assertEqual(types_of(alpha, SPLIT_R2), {(1, 0), (0, 1)})

    def test_zero_form_has_no_type(self):
        self.assertEqual(types_of(PolyForm.zero(R2, 1), SPLIT_R2), set())

    def test_contraction_lowers_plus_degree(self):
        omega = dx(R4, "x1", "x3", coeff="x1") + dx(R4, "x2", "x4")
        X = PolyVectorField.from_mapping(R4, {"x1": "1", "x2": "x3"})
        contracted = interior_product(X, omega)
        self.assertEqual(pure_type(omega, SPLIT_R4), (1, 1))
        self.assertEqual(contracted, dx(R4, "x3", coeff="x1") + dx(R4, "x4", coeff="x3"))
        self.assertEqual(pure_type(contracted, SPLIT_R4), (0, 1))

    def test_twisted_coframe_types(self):
        J = twisted_r4()
        self.assertEqual(pure_type(dx(R4, "x3") - dx(R4, "x2", coeff="x1"), J), (0, 1))
        self.assertIsNone(pure_type(dx(R4, "x3"), J))

    @settings(max_examples=30, derandomize=True)
    @given(forms(R4, 2))
    def test_components_sum_back(self, alpha):
        J = twisted_r4()
        total = PolyForm.zero(R4, 2)
        for part in type_project(alpha, J).values():
            total = total + part
        self.assertEqual(total, alpha)


class DelOperatorTests(SimpleTestCase):
    def test_product_of_coordinates(self):
        f = PolyForm.scalar(R2, "x*y")
        plus, minus = del_plus_minus(f, SPLIT_R2)
        self.assertEqual(plus, dx(R2, "x", coeff="y"))
        self.assertEqual(minus, dx(R2, "y", coeff="x"))

    def test_function_of_minus_coordinate(self):
        plus, _ = del_plus_minus(PolyForm.scalar(R2, "y**3 + 2"), SPLIT_R2)
        self.assertTrue(plus.is_zero())

    def test_zero_input(self):
        plus, minus = del_plus_minus(PolyForm.zero(R2, 1), SPLIT_R2)
        self.assertTrue(plus.is_zero())
        self.assertTrue(minus.is_zero())

    def test_mixed_input_rejected(self):
        with self.assertRaises(TypeMismatchError):
            del_plus_minus(dx(R2, "x") + dx(R2, "y"), SPLIT_R2)

    def test_no_leak_on_coordinate_split(self):
        alpha = dx(R4, "x3", coeff="x1*x2 + x4")
        self.assertTrue(type_leak(alpha, SPLIT_R4).is_zero())

    def test_leak_on_twisted_frame(self):
        J = twisted_r4()
        theta = J.coframe[2]
        self.assertEqual(type_leak(theta, J), dx(R4, "x1", "x2", coeff=-1))

    @settings(max_examples=30, derandomize=True)
    @given(forms(R4, 1))
    def test_squares_vanish(self, alpha):
        self.assertTrue(del_plus(del_plus(alpha, SPLIT_R4), SPLIT_R4).is_zero())
        self.assertTrue(del_minus(del_minus(alpha, SPLIT_R4), SPLIT_R4).is_zero())

    @settings(max_examples=30, derandomize=True)
    @given(forms(R4, 1))
    def test_anticommute(self, alpha):
        total = del_plus(del_minus(alpha, SPLIT_R4), SPLIT_R4) + del_minus(del_plus(alpha, SPLIT_R4), SPLIT_R4)
        self.assertTrue(total.is_zero())

    @settings(max_examples=30, derandomize=True)
    @given(forms(R4, 2))
    def test_d_splits(self, alpha):
        self.assertEqual(exterior_derivative(alpha), del_plus(alpha, SPLIT_R4) + del_minus(alpha, SPLIT_R4))


class ParaHolomorphicTests(SimpleTestCase):
    def test_coordinates(self):
        self.assertTrue(para_holomorphic_check("x", "y", SPLIT_R2))

    def test_mixed_components(self):
        self.assertFalse(para_holomorphic_check("x + y", "x - y", SPLIT_R2))

    def test_constants(self):
        self.assertTrue(para_holomorphic_check(3, 5, SPLIT_R2))

    def test_r4_products(self):
        self.assertTrue(para_holomorphic_check("x1*x2", "x3**2", SPLIT_R4))
        self.assertFalse(para_holomorphic_check("x1*x3", "x4", SPLIT_R4))

    def test_kahler_potential(self):
        F = kahler_potential_form(R4.poly("x1*x3 + x2**2*x4**2"), SPLIT_R4)
        self.assertEqual(F, dx(R4, "x1", "x3") + dx(R4, "x2", "x4", coeff="4*x2*x4"))
        self.assertEqual(pure_type(F, SPLIT_R4), (1, 1))
        self.assertTrue(exterior_derivative(F).is_zero())


class PhiTests(SimpleTestCase):
    def test_equal_arguments(self):
        omega = phi_isomorphism(dx(R2, "x"), dx(R2, "x"))
        self.assertEqual(omega.re, dx(R2, "x"))
        self.assertTrue(omega.im.is_zero())

    def test_coordinate_pair(self):
        omega = phi_isomorphism(dx(R2, "x"), dx(R2, "y"), SPLIT_R2)
        half = QQ(1, 2)
        self.assertEqual(omega.re, (dx(R2, "x") + dx(R2, "y")).scale(half))
        self.assertEqual(omega.im, (dx(R2, "x") - dx(R2, "y")).scale(half))

    def test_round_trip(self):
        eta, eta_prime = dx(R2, "x", coeff="y"), dx(R2, "y", coeff="x**2")
        self.assertEqual(phi_inverse(phi_isomorphism(eta, eta_prime)), (eta, eta_prime))

    def test_type_mismatch(self):
        with self.assertRaises(TypeMismatchError):
            phi_isomorphism(dx(R2, "x"), dx(R2, "x"), SPLIT_R2)

    def test_times_unit(self):
        omega = ParaComplexForm(dx(R2, "x"), dx(R2, "y"))
        swapped = omega.times(UNIT_J)
        self.assertEqual((swapped.re, swapped.im), (dx(R2, "y"), dx(R2, "x")))

    def test_dolbeault_sums_to_d(self):
        omega = ParaComplexForm(PolyForm.scalar(R2, "x*y"), PolyForm.scalar(R2, "x**2"))
        holo, anti = dolbeault(omega, SPLIT_R2)
        total = holo + anti
        self.assertEqual(total.re, exterior_derivative(omega.re))
        self.assertEqual(total.im, exterior_derivative(omega.im))

    def test_diagram_on_seeded_pairs(self):
        rng = make_rng(20240601)
        plus, minus = (0, 1), (2, 3)
        for _ in range(25):
            p, q = int(rng.integers(0, 3)), int(rng.integers(0, 3))
            eta = random_form(R4, rng, p + q, allowed=split_basis(plus, minus, p, q))
            eta_prime = random_form(R4, rng, p + q, allowed=split_basis(plus, minus, q, p))
            with self.subTest(p=p, q=q, eta=str(eta), eta_prime=str(eta_prime)):
                omega = phi_isomorphism(eta, eta_prime, SPLIT_R4)
                self.assertEqual(phi_inverse(omega), (eta, eta_prime))
                _, anti = dolbeault(omega, SPLIT_R4)
                expected = phi_isomorphism(del_minus(eta, SPLIT_R4), del_plus(eta_prime, SPLIT_R4))
                self.assertEqual((anti.re, anti.im), (expected.re, expected.im))
