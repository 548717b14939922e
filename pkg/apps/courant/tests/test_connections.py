from django.test import SimpleTestCase

from apps.cartan.services.frames import PolyMetric
from apps.core.exceptions import DegreeError, StructureError
from apps.courant.services.connections import (
    ConnectionMap, connection_check, curvature, decomposition_check, flatness_check,
    para_complex_connection_check, split_check, standard_K,
)
from apps.courant.services.models import CourantPatchModel
from apps.courant.services.para import integrability
from apps.courant.tests.structures import (
    R2, R3, R4, cov, form, para_kahler_r4, rotated_r2, split_r2, vec, vf,
)


class ConnectionMapTests(SimpleTestCase):
    def test_graph_images(self):
        A = ConnectionMap.graph(R2, form(R2, {"x,y": "x"}, 2))
        self.assertEqual(A(vf(R2, x="1")), vec(R2, x="1") + cov(R2, y="x"))
        self.assertEqual(A(vf(R2, y="y")), vec(R2, y="y") + cov(R2, x="-x*y"))

    def test_graph_needs_a_two_form(self):
        with self.assertRaises(DegreeError):
            ConnectionMap.graph(R2, form(R2, {"x": "1"}, 1))

    def test_image_count(self):
        with self.assertRaises(StructureError):
            ConnectionMap.from_images(R2, [vec(R2, x="1")])


class ConnectionCheckTests(SimpleTestCase):
    def test_graph_connections(self):
        E = CourantPatchModel.standard(R3)
        for omega in (form(R3, {"x,y": "z"}, 2), form(R3, {"y,z": "x"}, 2)):
            self.assertTrue(connection_check(E, ConnectionMap.graph(R3, omega)))

    def test_metric_graph_is_not_isotropic(self):
        E = CourantPatchModel.standard(R2)
        A = ConnectionMap.from_metric(PolyMetric(R2, ((1, 0), (0, 1))))
        result = connection_check(E, A)
        self.assertFalse(result)
        self.assertEqual(result.witness[0], "isotropy")

    def test_zero_map(self):
        E = CourantPatchModel.standard(R2)
        result = connection_check(E, ConnectionMap.zero(R2))
        self.assertEqual(result.witness, ("anchor", "x"))
        with self.assertRaises(StructureError):
            flatness_check(E, ConnectionMap.zero(R2))


class CurvatureTests(SimpleTestCase):
    def test_closed_form_is_flat(self):
        E = CourantPatchModel.standard(R3)
        self.assertTrue(flatness_check(E, ConnectionMap.graph(R3, form(R3, {"x,y": "x", "y,z": "y"}, 2))))

    def test_curvature_is_the_differential(self):
        E = CourantPatchModel.standard(R3)
        A = ConnectionMap.graph(R3, form(R3, {"y,z": "x"}, 2))
        self.assertEqual(curvature(E, A, vf(R3, y="1"), vf(R3, z="1")), cov(R3, x="1"))
        result = flatness_check(E, A)
        self.assertFalse(result)
        self.assertEqual(result.witness, ("d/dx", "d/dy"))

    def test_standard_K_of_curved_connection(self):
        E = CourantPatchModel.standard(R3)
        K = standard_K(E, ConnectionMap.graph(R3, form(R3, {"y,z": "x"}, 2)))
        report = integrability(E, K)
        self.assertFalse(report.plus)
        self.assertTrue(report.minus)


class ParaComplexConnectionTests(SimpleTestCase):
    def test_para_kahler_graph(self):
        E, J_TM, J, omega = para_kahler_r4()
        self.assertEqual(omega, form(R4, {"x1,x3": "-1", "x2,x4": "-1"}, 2))
        A = ConnectionMap.graph(R4, omega)
        result = para_complex_connection_check(E, A, J, J_TM)
        self.assertTrue(result)
        self.assertEqual(result.value, {"graph_criterion": True})
        self.assertTrue(split_check(E, J, standard_K(E, A)))

    def test_wrong_type(self):
        E, J_TM, J, _ = para_kahler_r4()
        A = ConnectionMap.graph(R4, form(R4, {"x1,x2": "1"}, 2))
        result = para_complex_connection_check(E, A, J, J_TM)
        self.assertFalse(result)
        self.assertEqual(result.value, {"graph_criterion": False})
        self.assertFalse(split_check(E, J, standard_K(E, A)))

    def test_zero_form_is_para_complex(self):
        E, J_TM, J = split_r2()
        A = ConnectionMap.graph(R2, form(R2, {}, 2))
        self.assertTrue(para_complex_connection_check(E, A, J, J_TM))


class DecompositionTests(SimpleTestCase):
    def test_para_kahler(self):
        E, J_TM, J, omega = para_kahler_r4()
        result = decomposition_check(E, J, ConnectionMap.graph(R4, omega), J_TM)
        self.assertTrue(result)
        self.assertEqual(result.value["plus_rank"], 4)
        self.assertEqual(result.value["minus_rank"], 4)

    def test_rotated_structure(self):
        E, J = rotated_r2()
        _, J_TM, _ = split_r2()
        A = ConnectionMap.graph(R2, form(R2, {}, 2))
        result = decomposition_check(E, J, A, J_TM)
        self.assertFalse(result)
