from django.test import SimpleTestCase
from sympy import QQ

from apps.cartan.services.forms import PolyForm
from apps.cartan.services.sampling import make_rng, random_form, random_vector_field
from apps.core.exceptions import DegreeError, PatchMismatchError, StructureError
from apps.courant.services.models import (
    ConstantCourantModel, CourantPatchModel, bialgebroid_to_courant, courant_bracket,
    exactness_check, twisted_bracket,
)
from apps.courant.services.sections import ConstantSection, GeneralizedSection
from apps.courant.tests.structures import R2, R3, R4, cov, form, vec
from apps.lie.models_lib.registry import get_algebra
from apps.lie.services.algebras import LieAlgebraData, unit
from apps.lie.services.bialgebras import LieBialgebraData, double_bracket


def random_sections(patch, seed, count):
    rng = make_rng(seed)
    return [
        GeneralizedSection(random_vector_field(patch, rng, 2), random_form(patch, rng, 1))
        for _ in range(count)
    ]


class GeneralizedSectionTests(SimpleTestCase):
    def test_form_part_must_be_a_one_form(self):
        with self.assertRaises(DegreeError):
            GeneralizedSection(vec(R2, x="1").vf, form(R2, {"x,y": "1"}, 2))

    def test_zero_form_of_other_degree_is_normalized(self):
        e = GeneralizedSection(vec(R2, x="1").vf, PolyForm.zero(R2, 2))
        self.assertEqual(e.form.degree, 1)

    def test_components(self):
        e = vec(R2, x="y") + cov(R2, y="x")
        self.assertEqual(e.components(), [R2.poly("y"), R2.zero, R2.zero, R2.poly("x")])
        self.assertEqual(GeneralizedSection.from_components(R2, e.components()), e)

    def test_patch_mismatch(self):
        with self.assertRaises(PatchMismatchError):
            GeneralizedSection(vec(R2, x="1").vf, PolyForm.zero(R3, 1))


class StandardBracketTests(SimpleTestCase):
    def setUp(self):
        self.E = CourantPatchModel.standard(R3)

    def test_vector_fields_bracket_as_lie_bracket(self):
        out = courant_bracket(self.E, vec(R3, x="1"), vec(R3, y="x"))
        self.assertEqual(out, vec(R3, y="1"))

    def test_forms_bracket_to_zero(self):
        self.assertTrue(courant_bracket(self.E, cov(R3, x="y"), cov(R3, z="x*y")).is_zero())

    def test_exact_term(self):
        out = courant_bracket(self.E, vec(R3, x="1"), cov(R3, x="y"))
        self.assertEqual(out, GeneralizedSection.covector(form(R3, {"y": "-1/2"}, 1)))

    def test_antisymmetric_on_random_sections(self):
        sections = random_sections(R3, 11, 6)
        for a, b in zip(sections, sections[1:]):
            self.assertTrue((courant_bracket(self.E, a, b) + courant_bracket(self.E, b, a)).is_zero())

    def test_pairing_has_no_half(self):
        self.assertEqual(self.E.pair(vec(R3, x="1"), cov(R3, x="y")), R3.poly("y"))
        self.assertEqual(self.E.pair(vec(R3, x="1") + cov(R3, x="1"), vec(R3, x="1") + cov(R3, x="1")), R3.poly(2))

    def test_patch_mismatch(self):
        with self.assertRaises(PatchMismatchError):
            courant_bracket(self.E, vec(R2, x="1"), vec(R2, y="1"))

    def test_standard_bracket_refuses_twisted_model(self):
        E = CourantPatchModel.twisted(R3, form(R3, {"x,y,z": "1"}, 3))
        with self.assertRaises(StructureError):
            courant_bracket(E, vec(R3, x="1"), vec(R3, y="1"))


class TwistedBracketTests(SimpleTestCase):
    def test_volume_twist(self):
        E = CourantPatchModel.twisted(R3, form(R3, {"x,y,z": "1"}, 3))
        out = twisted_bracket(E, vec(R3, x="1"), vec(R3, y="1"))
        self.assertEqual(out, cov(R3, z="-1"))

    def test_zero_twist_is_standard(self):
        E = CourantPatchModel.twisted(R3, PolyForm.zero(R3, 3))
        S = CourantPatchModel.standard(R3)
        sections = random_sections(R3, 5, 5)
        for a, b in zip(sections, sections[1:]):
            self.assertEqual(twisted_bracket(E, a, b), courant_bracket(S, a, b))

    def test_twist_needs_vector_parts(self):
        E = CourantPatchModel.twisted(R3, form(R3, {"x,y,z": "x"}, 3))
        self.assertTrue(twisted_bracket(E, cov(R3, x="1"), cov(R3, y="z")).is_zero())

    def test_non_closed_twist_rejected(self):
        with self.assertRaises(StructureError):
            CourantPatchModel.twisted(R4, form(R4, {"x1,x2,x3": "x4"}, 3))

    def test_validation_can_be_bypassed(self):
        E = CourantPatchModel.twisted(R4, form(R4, {"x1,x2,x3": "x4"}, 3), validate=False)
        self.assertEqual(E.mode, "twisted")

    def test_twist_must_be_a_three_form(self):
        with self.assertRaises(DegreeError):
            CourantPatchModel.twisted(R3, form(R3, {"x,y": "1"}, 2))

    def test_standard_model_has_no_twist(self):
        with self.assertRaises(StructureError):
            twisted_bracket(CourantPatchModel.standard(R3), vec(R3, x="1"), vec(R3, y="1"))


class ExactnessTests(SimpleTestCase):
    def test_standard_model_is_exact(self):
        self.assertTrue(exactness_check(CourantPatchModel.standard(R3)))

    def test_constant_model_is_not_exact(self):
        bi = LieBialgebraData(get_algebra("b2"), get_algebra("abelian", dimension=2))
        result = exactness_check(ConstantCourantModel(bi))
        self.assertFalse(result)
        self.assertEqual(result.witness, "anchor")


class FamilyTests(SimpleTestCase):
    def test_sizes_and_labels(self):
        E = CourantPatchModel.standard(R2)
        family = E.family(degree=1, seed=3, random_count=4)
        self.assertEqual(len(family.frame), 4)
        self.assertEqual(len(family.scaled), 8)
        self.assertEqual(len(family.random), 4)
        self.assertEqual(family.label(family.frame[0]), "d/dx")
        self.assertEqual(family.label(family.frame[3]), "dy")
        self.assertEqual(family.label(family.scaled[0]), "(x)*d/dx")
        self.assertEqual(family.label(family.random[2]), "random[2]")

    def test_seeded_family_is_reproducible(self):
        E = CourantPatchModel.standard(R2)
        first = E.family(degree=2, seed=9, random_count=3)
        second = E.family(degree=2, seed=9, random_count=3)
        self.assertEqual(list(first.random), list(second.random))


def b2_abelian():
    return LieBialgebraData(get_algebra("b2"), get_algebra("abelian", dimension=2))


class ConstantModelTests(SimpleTestCase):
    def test_matches_double_bracket(self):
        for bi in (b2_abelian(), LieBialgebraData(get_algebra("su2"), get_algebra("abelian", dimension=3))):
            E = bialgebroid_to_courant(bi)
            m = E.rank
            for a in range(m):
                for b in range(m):
                    expected = double_bracket(bi, unit(m, a), unit(m, b))
                    self.assertEqual(E.bracket(E.frame()[a], E.frame()[b]).components(), expected)

    def test_b2_mixed_bracket(self):
        E = bialgebroid_to_courant(b2_abelian())
        out = E.bracket(ConstantSection.unit(4, 0), ConstantSection.unit(4, 3))
        self.assertEqual(out, ConstantSection((0, 0, 0, -1)))

    def test_abelian_double_is_trivial(self):
        bi = LieBialgebraData(get_algebra("abelian", dimension=2), get_algebra("abelian", dimension=2))
        E = bialgebroid_to_courant(bi)
        for a in E.frame():
            for b in E.frame():
                self.assertTrue(E.bracket(a, b).is_zero())

    def test_b2_with_b2_dual_matches_double(self):
        bi = LieBialgebraData(get_algebra("b2"), get_algebra("b2"))
        E = bialgebroid_to_courant(bi)
        for a in range(4):
            for b in range(4):
                self.assertEqual(
                    E.bracket(E.frame()[a], E.frame()[b]).components(), double_bracket(bi, unit(4, a), unit(4, b))
                )

    def test_pairing_is_canonical(self):
        E = bialgebroid_to_courant(b2_abelian())
        self.assertEqual(E.pair(ConstantSection.unit(4, 1), ConstantSection.unit(4, 3)), QQ.one)
        self.assertEqual(E.pair(ConstantSection.unit(4, 0), ConstantSection.unit(4, 1)), QQ.zero)

    def test_invalid_bialgebra_rejected(self):
        dual = LieAlgebraData.from_brackets(3, {(0, 1): {1: 1}})
        with self.assertRaises(StructureError):
            bialgebroid_to_courant(LieBialgebraData(get_algebra("su2"), dual))

    def test_functions_are_constants(self):
        E = bialgebroid_to_courant(b2_abelian())
        self.assertTrue(E.d_E(QQ(3)).is_zero())
        self.assertEqual(E.rho_apply(ConstantSection.unit(4, 0), QQ(3)), QQ.zero)
        self.assertEqual(E.coordinate_functions(), ())
