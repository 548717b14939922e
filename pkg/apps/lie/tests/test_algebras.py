from django.test import SimpleTestCase
from sympy import QQ

from apps.core.exceptions import StructureError, UnknownNameError
from apps.lie.models_lib.registry import get_algebra, list_algebras
from apps.lie.services.algebras import (
    BilinearFormData, LieAlgebraData, ad_invariance_check, direct_sum, jacobi_check,
    killing_form, negative_definite_check, subalgebra, unit,
)


class RegistryTests(SimpleTestCase):
    def test_list(self):
        self.assertEqual(list_algebras(), ["abelian", "b2", "broken-jacobi", "sl2r", "su2"])

    def test_unknown_name(self):
        with self.assertRaises(UnknownNameError) as ctx:
            get_algebra("so5")
        self.assertIn("Available: ['abelian', 'b2'", str(ctx.exception))

    def test_abelian_dimension(self):
        self.assertEqual(get_algebra("abelian", dimension=4).dimension, 4)


class LieAlgebraDataTests(SimpleTestCase):
    def test_antisymmetry_filled_in(self):
        L = get_algebra("b2")
        self.assertEqual(L.basis_bracket(1, 0), [QQ(0), QQ(-1)])

    def test_non_antisymmetric_table_rejected(self):
        table = [[[0, 0], [0, 1]], [[0, 1], [0, 0]]]
        with self.assertRaises(StructureError):
            LieAlgebraData(2, table)

    def test_inconsistent_brackets_rejected(self):
        with self.assertRaises(StructureError):
            LieAlgebraData.from_brackets(2, {(0, 1): {1: 1}, (1, 0): {1: 1}})

    def test_bracket_is_bilinear(self):
        L = get_algebra("su2")
        x = [QQ(1), QQ(2), QQ(0)]
        y = [QQ(0), QQ(1), QQ(3)]
        # [e1 + 2e2, e2 + 3e3] = e3 - 3e2 + 6e1
        self.assertEqual(L.bracket(x, y), [QQ(6), QQ(-3), QQ(1)])

    def test_ad_matrix(self):
        L = get_algebra("sl2r")
        self.assertEqual(L.ad(unit(3, 0)), [[0, 0, 0], [0, 2, 0], [0, 0, -2]])


class JacobiTests(SimpleTestCase):
    def test_abelian(self):
        self.assertTrue(jacobi_check(get_algebra("abelian", dimension=3)).passed)

    def test_catalog_algebras(self):
        for name in ("su2", "sl2r", "b2"):
            with self.subTest(algebra=name):
                self.assertTrue(jacobi_check(get_algebra(name)))

    def test_broken_jacobi_witness(self):
        result = jacobi_check(get_algebra("broken-jacobi"))
        self.assertFalse(result.passed)
        self.assertEqual(result.witness, ("e1", "e2", "e3"))
        self.assertEqual(result.value, [QQ(0), QQ(0), QQ(1)])

    def test_direct_sum_keeps_jacobi(self):
        self.assertTrue(jacobi_check(direct_sum(get_algebra("su2"), get_algebra("b2"))))

    def test_subalgebra_constants(self):
        L = get_algebra("sl2r")
        borel = subalgebra(L, [unit(3, 0), unit(3, 1)])
        self.assertEqual(borel.basis_bracket(0, 1), [QQ(0), QQ(2)])

    def test_subalgebra_must_be_closed(self):
        L = get_algebra("sl2r")
        with self.assertRaises(StructureError):
            subalgebra(L, [unit(3, 1), unit(3, 2)])


class KillingFormTests(SimpleTestCase):
    def test_abelian_is_zero(self):
        kappa = killing_form(get_algebra("abelian", dimension=2))
        self.assertEqual(kappa.matrix, ((0, 0), (0, 0)))
        self.assertFalse(negative_definite_check(kappa))

    def test_su2(self):
        kappa = killing_form(get_algebra("su2"))
        self.assertEqual(kappa.matrix, ((-12, 0, 0), (0, -12, 0), (0, 0, -12)))
        self.assertTrue(negative_definite_check(kappa))

    def test_sl2r(self):
        kappa = killing_form(get_algebra("sl2r"))
        self.assertEqual(kappa.matrix[0][0], 48)
        self.assertEqual(kappa.matrix[1][2], 24)
        self.assertFalse(negative_definite_check(kappa))

    def test_ad_invariance(self):
        for name in ("su2", "sl2r", "b2"):
            L = get_algebra(name)
            with self.subTest(algebra=name):
                self.assertTrue(ad_invariance_check(L, killing_form(L)))

    def test_non_invariant_pairing(self):
        L = get_algebra("su2")
        B = BilinearFormData(((1, 0, 0), (0, 2, 0), (0, 0, 3)))
        result = ad_invariance_check(L, B)
        self.assertFalse(result.passed)
        self.assertIsNotNone(result.witness)


class BilinearFormTests(SimpleTestCase):
    def test_asymmetric_rejected(self):
        with self.assertRaises(StructureError):
            BilinearFormData(((0, 1), (2, 0)))

    def test_determinant(self):
        B = BilinearFormData(((0, 1), (1, 0)))
        self.assertEqual(B.determinant(), -1)
        self.assertTrue(B.is_nondegenerate())

    def test_restriction(self):
        B = BilinearFormData(((0, 1), (1, 0)))
        self.assertEqual(B.restricted([[1, 1]]).matrix, ((2,),))
