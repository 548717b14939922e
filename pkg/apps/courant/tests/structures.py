"""Courant models and para-complex structures shared by the courant tests."""
from __future__ import annotations

from apps.cartan.services.fields import PolyVectorField
from apps.cartan.services.forms import PolyForm
from apps.cartan.services.frames import EigenFrame, PolyMetric, metric_fundamental_form
from apps.cartan.services.patch import Patch
from apps.courant.services.models import CourantPatchModel
from apps.courant.services.para import ParaStructure, lifted
from apps.courant.services.sections import GeneralizedSection

R2 = Patch.euclidean(2)
R3 = Patch.euclidean(3)
R4 = Patch.euclidean(4)


def vf(patch, **mapping):
    return PolyVectorField.from_mapping(patch, mapping)


def form(patch, terms, degree):
    return PolyForm.from_names(patch, terms, degree)


def vec(patch, **mapping):
    return GeneralizedSection.vector(vf(patch, **mapping))


def cov(patch, **mapping):
    """0 + sum f_i dx^i from {"x": "y"} style keywords."""
    return GeneralizedSection.covector(form(patch, mapping, 1))


def split_r2() -> tuple[CourantPatchModel, EigenFrame, ParaStructure]:
    """T+ = d/dx; lifted E+ = <d/dx, dy>, E- = <d/dy, dx>."""
    E = CourantPatchModel.standard(R2)
    J_TM = EigenFrame.coordinate_split(R2, plus=["x"])
    return E, J_TM, lifted(E, J_TM)


def rotated_r2() -> tuple[CourantPatchModel, ParaStructure]:
    """E+ = <d/dx + dy, d/dy - dx>, E- = <d/dx - dy, d/dy + dx>."""
    E = CourantPatchModel.standard(R2)
    plus = (vec(R2, x="1") + cov(R2, y="1"), vec(R2, y="1") + cov(R2, x="-1"))
    minus = (vec(R2, x="1") + cov(R2, y="-1"), vec(R2, y="1") + cov(R2, x="1"))
    return E, ParaStructure(E, plus, minus)


def twisted_r4_frame() -> EigenFrame:
    """T+ = <d/dx1, d/dx2 + x1 d/dx3>, T- = <d/dx3, d/dx4>."""
    return EigenFrame(R4, (vf(R4, x1="1"), vf(R4, x2="1", x3="x1"), vf(R4, x3="1"), vf(R4, x4="1")))


def nonintegrable_r4() -> tuple[CourantPatchModel, EigenFrame, ParaStructure]:
    E = CourantPatchModel.standard(R4)
    J_TM = twisted_r4_frame()
    return E, J_TM, lifted(E, J_TM)


def para_kahler_r4() -> tuple[CourantPatchModel, EigenFrame, ParaStructure, PolyForm]:
    """Split x1, x2 | x3, x4 with g = dx1 dx3 + dx2 dx4; omega = g(., J.) = -dx1^dx3 - dx2^dx4."""
    E = CourantPatchModel.standard(R4)
    J_TM = EigenFrame.coordinate_split(R4, plus=["x1", "x2"])
    g = PolyMetric(R4, ((0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0)))
    return E, J_TM, lifted(E, J_TM), metric_fundamental_form(g, J_TM)
