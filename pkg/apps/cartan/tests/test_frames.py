from django.test import SimpleTestCase

from apps.cartan.services.fields import PolyVectorField
from apps.cartan.services.forms import PolyForm
from apps.cartan.services.frames import (
    EigenFrame, PolyMetric, involutivity, metric_fundamental_form, nijenhuis_tm,
    nijenhuis_vanishes, para_hermitian_metric_check, para_kahler_check,
)
from apps.cartan.services.patch import Patch
from apps.core.exceptions import FrameError, StructureError

R2 = Patch.euclidean(2)
R4 = Patch.euclidean(4)


def vf(patch, **mapping):
    return PolyVectorField.from_mapping(patch, mapping)


def twisted_r4() -> EigenFrame:
    """T+ = <d/dx1, d/dx2 + x1 d/dx3>, T- = <d/dx3, d/dx4>."""
    return EigenFrame(R4, (vf(R4, x1="1"), vf(R4, x2="1", x3="x1"), vf(R4, x3="1"), vf(R4, x4="1")))


class EigenFrameTests(SimpleTestCase):
    def test_coordinate_split_order(self):
        J = EigenFrame.coordinate_split(R4, plus=["x1", "x3"])
        self.assertEqual(J.plus, (vf(R4, x1="1"), vf(R4, x3="1")))
        self.assertEqual(J.minus, (vf(R4, x2="1"), vf(R4, x4="1")))

    def test_odd_dimension_rejected(self):
        R3 = Patch.euclidean(3)
        with self.assertRaises(FrameError):
            EigenFrame(R3, tuple(PolyVectorField.coordinate(R3, i) for i in range(3)))

    def test_non_constant_determinant_rejected(self):
        with self.assertRaises(FrameError):
            EigenFrame(R2, (vf(R2, x="x"), vf(R2, y="1")))

    def test_singular_frame_rejected(self):
        with self.assertRaises(FrameError):
            EigenFrame(R2, (vf(R2, x="1"), vf(R2, x="2")))

    def test_coframe_is_dual(self):
        J = twisted_r4()
        for a, theta in enumerate(J.coframe):
            for b, X in enumerate(J.frame):
                self.assertEqual(theta(X), R4.one if a == b else R4.zero)

    def test_projections(self):
        J = twisted_r4()
        X = vf(R4, x2="1")
        self.assertEqual(J.plus_part(X), vf(R4, x2="1", x3="x1"))
        self.assertEqual(J.minus_part(X), vf(R4, x3="-x1"))
        self.assertEqual(J.apply(X), vf(R4, x2="1", x3="2*x1"))
        self.assertTrue(J.in_plus(J.frame[1]))
        self.assertFalse(J.in_minus(X))

    def test_apply_squares_to_identity(self):
        J = twisted_r4()
        X = vf(R4, x1="x2", x3="1", x4="x1**2")
        self.assertEqual(J.apply(J.apply(X)), X)


class NijenhuisTests(SimpleTestCase):
    def test_constant_split_vanishes(self):
        J = EigenFrame.coordinate_split(R2, plus=["x"])
        self.assertTrue(nijenhuis_vanishes(J))
        self.assertTrue(involutivity(J).integrable)

    def test_twisted_witness(self):
        J = twisted_r4()
        self.assertEqual(nijenhuis_tm(J, J.frame[0], J.frame[1]), vf(R4, x3="1"))
        self.assertFalse(nijenhuis_vanishes(J))

    def test_involutivity_report(self):
        report = involutivity(twisted_r4())
        self.assertFalse(report.plus)
        self.assertTrue(report.minus)
        self.assertEqual(report.witness, (0, 1))
        self.assertFalse(report.integrable)

    def test_nijenhuis_agrees_with_involutivity(self):
        frames = [
            EigenFrame.coordinate_split(R4, plus=["x1", "x2"]),
            EigenFrame.coordinate_split(R4, plus=["x2", "x4"]),
            twisted_r4(),
            EigenFrame(R4, (vf(R4, x1="1", x3="x2"), vf(R4, x2="1"), vf(R4, x3="1"), vf(R4, x4="1"))),
        ]
        for J in frames:
            with self.subTest(frame=[str(X) for X in J.frame]):
                self.assertEqual(nijenhuis_vanishes(J), involutivity(J).integrable)

    def test_tensorial(self):
        J = twisted_r4()
        X, Y = J.frame[0], J.frame[1]
        f = R4.poly("x2**2 + x4")
        self.assertEqual(nijenhuis_tm(J, X.scale(f), Y), nijenhuis_tm(J, X, Y).scale(f))


class MetricTests(SimpleTestCase):
    def setUp(self):
        self.J2 = EigenFrame.coordinate_split(R2, plus=["x"])
        self.J4 = EigenFrame.coordinate_split(R4, plus=["x1", "x2"])

    def _pairing_metric(self, off_diagonal):
        rows = [[0] * 4 for _ in range(4)]
        for (i, j), value in off_diagonal.items():
            rows[i][j] = rows[j][i] = value
        return PolyMetric(R4, rows)

    def test_split_metric_is_compatible(self):
        g = PolyMetric(R2, [[0, 1], [1, 0]])
        self.assertEqual(para_hermitian_metric_check(g, self.J2), (True, None))

    def test_euclidean_metric_is_not_compatible(self):
        g = PolyMetric(R2, [[1, 0], [0, 1]])
        self.assertEqual(para_hermitian_metric_check(g, self.J2), (False, (0, 0)))

    def test_asymmetric_matrix_rejected(self):
        with self.assertRaises(StructureError):
            PolyMetric(R2, [[0, 1], [0, 0]])

    def test_fundamental_form(self):
        g = PolyMetric(R2, [[0, 1], [1, 0]])
        self.assertEqual(metric_fundamental_form(g, self.J2), PolyForm.basis(R2, 0, 1, coeff=-1))
        self.assertTrue(para_kahler_check(g, self.J2))

    def test_para_kahler_r4(self):
        g = self._pairing_metric({(0, 2): 1, (1, 3): 1})
        self.assertTrue(para_kahler_check(g, self.J4))

    def test_compatible_but_not_closed(self):
        g = self._pairing_metric({(0, 2): "1 + x2", (1, 3): 1})
        self.assertTrue(para_hermitian_metric_check(g, self.J4)[0])
        self.assertFalse(para_kahler_check(g, self.J4))
