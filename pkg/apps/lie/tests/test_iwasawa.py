import numpy as np
from django.test import SimpleTestCase
from sympy import QQ, QQ_I

from apps.core.exceptions import StructureError
from apps.lie.services.algebras import jacobi_check, killing_form, negative_definite_check
from apps.lie.services.bialgebras import bialgebra_check, bialgebra_from_manin_triple, manin_double_agreement
from apps.lie.services.iwasawa import (
    RealifiedMatrixAlgebra, complex_killing, complex_matrix, iwasawa_decompose,
    iwasawa_membership_check, minus_im_killing,
)
from apps.lie.services.quadratic import QuadraticLieAlgebra, lagrangian_check, manin_triple_check

SL2 = RealifiedMatrixAlgebra(2)
SL3 = RealifiedMatrixAlgebra(3)

H = complex_matrix([[1, 0], [0, -1]])
E = complex_matrix([[0, 1], [0, 0]])
F = complex_matrix([[0, 0], [1, 0]])
ZERO = complex_matrix([[0, 0], [0, 0]])
I = QQ_I(0, 1)


def random_traceless(n, rng):
    entries = [[(int(rng.integers(-9, 10)), int(rng.integers(-9, 10))) for _ in range(n)] for _ in range(n)]
    re = -sum(entries[k][k][0] for k in range(n - 1))
    im = -sum(entries[k][k][1] for k in range(n - 1))
    entries[n - 1][n - 1] = (re, im)
    return complex_matrix(entries)


class RealifiedAlgebraTests(SimpleTestCase):
    def test_dimensions(self):
        for A in (SL2, SL3):
            with self.subTest(n=A.n):
                self.assertEqual(A.dimension, 2 * (A.n ** 2 - 1))
                self.assertEqual(len(A.su_basis()) + len(A.a_basis()) + len(A.n_basis()), A.dimension)

    def test_closed_under_bracket(self):
        self.assertTrue(jacobi_check(SL2.algebra))

    def test_i_operator_squares_to_minus_identity(self):
        m = SL2.dimension
        for a in range(m):
            v = [QQ.one if b == a else QQ.zero for b in range(m)]
            self.assertEqual(SL2.apply_i(SL2.apply_i(v)), [-c for c in v])

    def test_vector_round_trip(self):
        X = complex_matrix([[(1, 2), (3, 0)], [(0, -1), (-1, -2)]])
        self.assertEqual(SL2.from_vector(SL2.to_vector(X)).to_list(), X.to_list())

    def test_trace_required(self):
        with self.assertRaises(StructureError):
            SL2.to_vector(complex_matrix([[1, 0], [0, 0]]))

    def test_su_killing_negative_definite(self):
        for A in (SL2, SL3):
            with self.subTest(n=A.n):
                self.assertTrue(negative_definite_check(killing_form(A.su())))


class IwasawaDecompositionTests(SimpleTestCase):
    def _parts(self, X):
        parts = iwasawa_decompose(SL2, X)
        return parts.k.to_list(), parts.a.to_list(), parts.n.to_list()

    def test_cartan_element(self):
        self.assertEqual(self._parts(H), (ZERO.to_list(), H.to_list(), ZERO.to_list()))

    def test_raising_element(self):
        self.assertEqual(self._parts(E), (ZERO.to_list(), ZERO.to_list(), E.to_list()))

    def test_lowering_element(self):
        self.assertEqual(self._parts(F), ((F - E).to_list(), ZERO.to_list(), E.to_list()))

    def test_imaginary_lowering_element(self):
        k, a, n = self._parts(F * I)
        self.assertEqual(k, ((E + F) * I).to_list())
        self.assertEqual(a, ZERO.to_list())
        self.assertEqual(n, (E * (-I)).to_list())

    def test_non_traceless_rejected(self):
        with self.assertRaises(StructureError):
            iwasawa_decompose(SL2, complex_matrix([[1, 0], [0, 1]]))

    def test_seeded_round_trip(self):
        rng = np.random.default_rng(20240601)
        for A in (SL2, SL3):
            for _ in range(100):
                X = random_traceless(A.n, rng)
                parts = iwasawa_decompose(A, X)
                with self.subTest(n=A.n, X=X.to_list()):
                    self.assertEqual((parts.k + parts.a + parts.n).to_list(), X.to_list())
                    self.assertTrue(iwasawa_membership_check(A, parts))


class MinusImKillingTests(SimpleTestCase):
    def setUp(self):
        self.B = minus_im_killing(SL2)

    def test_complex_killing_normalization(self):
        self.assertEqual(complex_killing(SL2, H, H), QQ_I(48, 0))

    def test_values(self):
        # real basis: H, E12, E21, iH, iE12, iE21
        self.assertEqual(self.B.matrix[0][0], 0)
        self.assertEqual(self.B.matrix[0][3], -48)

    def test_nondegenerate(self):
        self.assertTrue(self.B.is_nondegenerate())

    def test_su2_is_isotropic(self):
        su = SL2.su_basis()
        self.assertTrue(all(self.B(x, y) == 0 for x in su for y in su))

    def test_iwasawa_manin_triple(self):
        for A in (SL2, SL3):
            with self.subTest(n=A.n):
                Q = QuadraticLieAlgebra(A.algebra, minus_im_killing(A))
                self.assertTrue(lagrangian_check(A.su_basis(), Q))
                self.assertTrue(lagrangian_check(A.an_basis(), Q))
                self.assertTrue(manin_triple_check(Q, A.su_basis(), A.an_basis()))

    def test_transported_bialgebra(self):
        Q = QuadraticLieAlgebra(SL2.algebra, self.B)
        transported = bialgebra_from_manin_triple(Q, SL2.su_basis(), SL2.an_basis())
        self.assertTrue(manin_double_agreement(Q, transported))
        self.assertTrue(bialgebra_check(transported.bialgebra))
