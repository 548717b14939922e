from __future__ import annotations
import copy
from functools import lru_cache
from typing import Any, Dict, Optional

from apps.core.exceptions import UnknownNameError
from apps.scenarios.pipelines.loader import Scenario, scenario_load


def _passes(source: str, **extra: Any) -> dict:
    return {"passed": True, "source": source, **extra}


def _fails(source: str, **extra: Any) -> dict:
    return {"passed": False, "source": source, **extra}


def _doc(name: str, kind: str, suites: list, construction: dict, expected: dict, description: str, anchor: str) -> dict:
    return {
        "schema_version": 1,
        "name": name,
        "kind": kind,
        "description": description,
        "anchor": anchor,
        "suites": suites,
        "construction": construction,
        "expected": expected,
    }


_AXIOMS = ("antisymmetry", "axiom1", "axiom2", "axiom3", "axiom4", "axiom5")

R4 = ["x1", "x2", "x3", "x4"]

_U6 = [["1" if i == j else "0" for i in range(6)] for j in range(6)]
_ZERO2 = [["0", "0"], ["0", "0"]]

_DOCUMENTS: Dict[str, dict] = {}


def _register(document: dict) -> None:
    _DOCUMENTS[document["name"]] = document


# -----------------
# Scalars and Cartan calculus
# -----------------
_register(_doc(
    "calculus-R3", "patch-model", ["calculus"],
    {
        "coordinates": ["x", "y", "z"],
        "calculus": [
            {"label": "pc-product", "op": "paracomplex-product", "left": ["2", "1"], "right": ["1", "-1"],
             "expect": ["1", "-1"]},
            {"label": "partial-power", "op": "partial", "polynomial": "x**2*y", "variable": "x", "expect": "2*x*y"},
            {"label": "partial-sum", "op": "partial", "polynomial": "x**3 + x*y", "variable": "x",
             "expect": "3*x**2 + y"},
            {"label": "d-xy-dxdz", "op": "d", "form": {"x,z": "x*y"}, "degree": 2, "expect": {"x,y,z": "-x"}},
            {"label": "interior-dz", "op": "interior", "vector": {"z": "1"}, "form": {"y,z": "x"}, "degree": 2,
             "expect": {"y": "-x"}},
            {"label": "bracket-x-xdy", "op": "lie-bracket", "left": {"x": "1"}, "right": {"y": "x"},
             "expect": {"y": "1"}},
            {"label": "bracket-nonintegrable", "op": "lie-bracket", "left": {"x": "1"}, "right": {"y": "1", "z": "x"},
             "expect": {"z": "1"}},
            {"label": "lie-x-xdy", "op": "lie-derivative", "vector": {"x": "1"}, "form": {"y": "x"},
             "expect": {"y": "1"}},
            {"label": "lie-y-xdy", "op": "lie-derivative", "vector": {"y": "1"}, "form": {"y": "-x"}, "expect": {}},
            {"label": "schouten-linear", "op": "schouten", "left": {"y,z": "x"}, "right": {"y,z": "x"}, "degree": 2,
             "expect": {}},
            {"label": "schouten-non-poisson", "op": "schouten", "left": {"x,y": "1", "x,z": "x"},
             "right": {"x,y": "1", "x,z": "x"}, "degree": 2, "expect": {"x,y,z": "-2"}},
        ],
    },
    {
        "calculus.pc-product": _passes("derived", value=["1", "-1"]),
        "calculus.partial-power": _passes("trivial", value="2*x*y"),
        "calculus.partial-sum": _passes("derived", value="3*x**2 + y"),
        "calculus.d-xy-dxdz": _passes("derived", value={"x,y,z": "-x"}),
        "calculus.interior-dz": _passes("derived", value={"y": "-x"}),
        "calculus.bracket-x-xdy": _passes("derived", value={"y": "1"}),
        "calculus.bracket-nonintegrable": _passes("derived", value={"z": "1"}),
        "calculus.lie-x-xdy": _passes("derived", value={"y": "1"}),
        "calculus.lie-y-xdy": _passes("derived", value={}),
        "calculus.schouten-linear": _passes("derived", value={}),
        "calculus.schouten-non-poisson": _passes("derived", value={"x,y,z": "-2"}),
    },
    "Para-complex arithmetic, exterior derivative, contractions, brackets and Lie derivatives on R3.",
    "Cartan calculus and the Schouten bracket",
))

_register(_doc(
    "calculus-R2", "patch-model", ["calculus"],
    {
        "coordinates": ["x", "y"],
        "tangent": {"plus": ["x"]},
        "calculus": [
            {"label": "del-plus-xy", "op": "del-plus", "form": {"": "x*y"}, "degree": 0, "expect": {"x": "y"}},
            {"label": "del-minus-xy", "op": "del-minus", "form": {"": "x*y"}, "degree": 0, "expect": {"y": "x"}},
            {"label": "del-plus-of-y", "op": "del-plus", "form": {"": "y**2"}, "degree": 0, "expect": {}},
            {"label": "phi-diagonal", "op": "phi", "left": {"x": "1"}, "right": {"x": "1"},
             "expect": {"re": {"x": "1"}, "im": {}}},
            {"label": "phi-mixed", "op": "phi", "left": {"x": "1"}, "right": {"y": "1"},
             "expect": {"re": {"x": "1/2", "y": "1/2"}, "im": {"x": "1/2", "y": "-1/2"}}},
            {"label": "phi-inverse-real", "op": "phi-inverse", "left": {"x": "1"}, "right": {},
             "expect": [{"x": "1"}, {"x": "1"}]},
        ],
    },
    {
        "calculus.del-plus-xy": _passes("derived", value={"x": "y"}),
        "calculus.del-minus-xy": _passes("derived", value={"y": "x"}),
        "calculus.del-plus-of-y": _passes("trivial", value={}),
        "calculus.phi-diagonal": _passes("trivial", value={"im": {}, "re": {"x": "1"}}),
        "calculus.phi-mixed": _passes("derived", value={"im": {"x": "1/2", "y": "-1/2"}, "re": {"x": "1/2", "y": "1/2"}}),
        "calculus.phi-inverse-real": _passes("published", value=[{"x": "1"}, {"x": "1"}]),
    },
    "Type operators and the para-complexification isomorphism for the split x | y of R2.",
    "d+/d- and the identification of para-complex forms with pairs of real forms",
))

_register(_doc(
    "symmetric-graph-R2", "patch-model", ["calculus"],
    {
        "coordinates": ["x", "y"],
        "calculus": [{"label": "identity-metric", "op": "metric-connection", "metric": [[1, 0], [0, 1]]}],
    },
    {"calculus.identity-metric": _fails("derived", witness=["isotropy", ["x", "x"]], value="2")},
    "Witness scenario: X + g(X, .) for a symmetric g is not isotropic, since <AX, AX> = 2 g(X, X).",
    "connections have isotropic images",
))

# -----------------
# Standard and twisted models
# -----------------
_register(_doc(
    "std-R2", "patch-model", ["courant-axioms", "para", "bivector"],
    {"coordinates": ["x", "y"], "tangent": {"plus": ["x"]}, "structure": "lifted"},
    {
        **{f"courant-axioms.{a}": _passes("published") for a in _AXIOMS},
        "courant-axioms.exact": _passes("published"),
        "para.integrable": _passes("derived", value={"minus": True, "plus": True}),
        "bivector.pi": _passes("derived", value={}),
        "bivector.rank-law": _passes("derived", value=0),
    },
    "Standard Courant algebroid on R2 with the coordinate split lifted to E.",
    "standard bracket on TM + T*M",
))

_register(_doc(
    "std-R3", "patch-model", ["courant-axioms", "brackets", "dirac"],
    {
        "coordinates": ["x", "y", "z"],
        "brackets": [
            {"left": {"vector": {"x": "1"}}, "right": {"form": {"x": "y"}}, "expect": {"form": {"y": "-1/2"}}},
        ],
        "dirac": [
            {"label": "dxdy", "omega": {"x,y": "1"}},
            {"label": "mixed", "omega": {"x,y": "x", "y,z": "1"}},
        ],
    },
    {
        **{f"courant-axioms.{a}": _passes("published") for a in _AXIOMS},
        "courant-axioms.exact": _passes("published"),
        "brackets.0": _passes("derived", value={"form": {"y": "-1/2"}}),
        "dirac.dxdy": _passes("published"),
        "dirac.dxdy.closedness": _passes("published", value={"closed": True, "dirac": True}),
        "dirac.mixed": _passes("derived"),
        "dirac.mixed.closedness": _passes("derived", value={"closed": True, "dirac": True}),
    },
    "Standard Courant algebroid on R3: a bracket spot value and graphs of closed 2-forms.",
    "skew-symmetric bracket; graphs of closed forms are Dirac",
))

_register(_doc(
    "twisted-R3", "patch-model", ["courant-axioms", "brackets"],
    {
        "coordinates": ["x", "y", "z"],
        "model": "twisted",
        "twist": {"x,y,z": "1"},
        "brackets": [
            {"left": {"vector": {"x": "1"}}, "right": {"vector": {"y": "1"}}, "expect": {"form": {"z": "-1"}}},
        ],
    },
    {
        **{f"courant-axioms.{a}": _passes("published") for a in _AXIOMS},
        "courant-axioms.exact": _passes("published"),
        "brackets.0": _passes("derived", value={"form": {"z": "-1"}}),
    },
    "Courant algebroid on R3 twisted by the volume form.",
    "twisted bracket by a closed 3-form",
))

_register(_doc(
    "nonclosed-twist-R4", "patch-model", ["courant-axioms"],
    {
        "coordinates": R4,
        "model": "twisted",
        "twist": {"x1,x2,x3": "x4"},
        "validate_twist": False,
    },
    {
        "courant-axioms.axiom1": _fails("derived", witness=["d/dx1", "d/dx2", "d/dx3"]),
        "courant-axioms.axiom2": _passes("derived"),
    },
    "Negative control: twisting by a 3-form that is not closed breaks the Jacobi-type axiom.",
    "twist must be closed",
))

_register(_doc(
    "broken-axiom5", "patch-model", ["courant-axioms"],
    {"coordinates": ["x", "y"], "model": "broken-axiom5"},
    {
        "courant-axioms.antisymmetry": _passes("invented"),
        "courant-axioms.axiom2": _passes("invented"),
        "courant-axioms.axiom4": _passes("invented"),
        "courant-axioms.axiom5": _fails("invented"),
    },
    "Negative control: a bracket whose pairing compatibility is deliberately wrong.",
    "pairing compatibility axiom",
))

# -----------------
# Para-Hermitian and para-Kahler structures
# -----------------
_register(_doc(
    "para-hermitian-R4", "patch-model", ["para", "nijenhuis"],
    {
        "coordinates": R4,
        "tangent": {"frame": [{"x1": "1"}, {"x2": "1"}, {"x3": "1", "x4": "x2"}, {"x4": "1"}]},
        "structure": "lifted",
    },
    {
        "para.isotropic": _passes("derived"),
        "para.compatible": _passes("derived"),
        "para.integrable": _passes("derived", value={"minus": True, "plus": True}),
        "para.anchor": _passes("derived"),
        "nijenhuis.frame": _passes("derived"),
        "nijenhuis.equivalence": _passes("published", value={"integrable": True, "vanishes": True}),
        "nijenhuis.obstruction": _passes("derived", value={"phi": {}, "psi": {}}),
    },
    "Integrable split of TM by a non-coordinate frame, lifted to a para-Hermitian structure on E.",
    "lift of an integrable para-complex structure on M",
))

_register(_doc(
    "nonintegrable-R4", "patch-model", ["para", "nijenhuis"],
    {
        "coordinates": R4,
        "tangent": {"frame": [{"x1": "1"}, {"x2": "1", "x3": "x1"}, {"x3": "1"}, {"x4": "1"}]},
        "structure": "lifted",
        "nijenhuis": [
            {"left": {"x1": "1"}, "right": {"x2": "1", "x3": "x1"}, "expect": {"x3": "1"}},
        ],
    },
    {
        "para.isotropic": _passes("derived"),
        "para.compatible": _passes("derived"),
        "para.integrable": _fails("derived", value={"minus": True, "plus": False}, witness=["T+[0]", "T+[1]"]),
        "nijenhuis.frame": _fails("derived", witness=["T+[0]", "T+[1]"]),
        "nijenhuis.tangent.0": _passes("derived", value={"x3": "1"}),
        "nijenhuis.equivalence": _passes("published", value={"integrable": False, "vanishes": False}),
        "nijenhuis.courant-equivalence": _passes("published", value={"integrable": False, "vanishes": False}),
        "nijenhuis.obstruction": _fails("derived", value={"phi": {"0,1,2": "1"}, "psi": {}}, witness="phi"),
        "nijenhuis.cyclic": _passes("published"),
        "nijenhuis.closed": _passes("published"),
    },
    "Witness scenario: T+ is not involutive, so the lifted structure is not integrable.",
    "Nijenhuis tensor and its obstruction 3-forms",
))

_register(_doc(
    "para-kahler-R4", "patch-model", ["para", "nijenhuis", "bivector", "kahler", "types"],
    {
        "coordinates": R4,
        "tangent": {"plus": ["x1", "x2"]},
        "structure": "lifted",
        "metric": [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
        "connection": {"x1,x3": "-1", "x2,x4": "-1"},
    },
    {
        "para.integrable": _passes("derived", value={"minus": True, "plus": True}),
        "nijenhuis.frame": _passes("derived"),
        "nijenhuis.obstruction": _passes("derived", value={"phi": {}, "psi": {}}),
        "bivector.pi": _passes("derived", value={}),
        "bivector.half-square": _passes("derived"),
        "bivector.rank-law": _passes("derived", value=0),
        "kahler.metric": _passes("published"),
        "kahler.closed": _passes("published"),
        "kahler.graph-is-fundamental-form": _passes("derived"),
        "kahler.connection": _passes("published"),
        "kahler.flat": _passes("published"),
        "kahler.para-complex": _passes("published", value={"graph_criterion": True}),
        "kahler.anchor": _passes("published"),
        "kahler.split": _passes("published"),
        "kahler.decomposition": _passes("published"),
        "kahler.rank": _passes("trivial", value=8),
        "kahler.pde": _passes("published"),
        "types.phi-diagram": _passes("published"),
        "types.d-squared": _passes("trivial"),
        "types.del-squared": _passes("published"),
        "types.kahler-potential": _passes("published"),
    },
    "Flat para-Kahler R4: the graph of the fundamental form is a flat para-complex connection.",
    "para-Kahler structures as flat Dirac connections",
))

_register(_doc(
    "rotated-R2", "patch-model", ["para", "bivector"],
    {
        "coordinates": ["x", "y"],
        "structure": {
            "plus": [{"vector": {"x": "1"}, "form": {"y": "1"}}, {"vector": {"y": "1"}, "form": {"x": "-1"}}],
            "minus": [{"vector": {"x": "1"}, "form": {"y": "-1"}}, {"vector": {"y": "1"}, "form": {"x": "1"}}],
        },
    },
    {
        "para.isotropic": _passes("derived"),
        "para.compatible": _passes("derived"),
        "para.integrable": _passes("derived", value={"minus": True, "plus": True}),
        "bivector.pi": _passes("derived", value={"x,y": "1/2"}),
        "bivector.half-square": _passes("derived"),
        "bivector.rank-law": _passes("derived", value=2),
    },
    "Eigenbundles mixing vectors and forms, so the induced bivector is nonzero.",
    "induced Poisson bivector",
))

# -----------------
# Constant models: Lie bialgebras and doubles
# -----------------
_register(_doc(
    "b2-double", "constant-model", ["courant-axioms", "brackets", "para", "dirac", "double"],
    {
        "k": {"name": "b2"},
        "dual": {"name": "abelian", "params": {"dimension": 2}},
        "structure": {
            "plus": [["1", "0", "0", "0"], ["0", "1", "0", "0"]],
            "minus": [["0", "0", "1", "0"], ["0", "0", "0", "1"]],
        },
        "dirac": [{"label": "k", "generators": [["1", "0", "0", "0"], ["0", "1", "0", "0"]]}],
        "brackets": [
            {"left": ["1", "0", "0", "0"], "right": ["0", "0", "0", "1"], "expect": ["0", "0", "0", "-1"]},
            {"left": ["0", "1", "0", "0"], "right": ["0", "0", "0", "1"], "expect": ["0", "0", "1", "0"]},
        ],
    },
    {
        **{f"courant-axioms.{a}": _passes("published") for a in _AXIOMS},
        "brackets.0": _passes("derived", value=["0", "0", "0", "-1"]),
        "brackets.1": _passes("derived", value=["0", "0", "1", "0"]),
        "para.isotropic": _passes("published"),
        "para.integrable": _passes("published", value={"minus": True, "plus": True}),
        "dirac.k": _passes("published"),
        "double.bialgebra": _passes("trivial"),
        "double.jacobi": _passes("published"),
        "double.pairing-invariant": _passes("published"),
        "double.agreement": _passes("derived"),
        "double.derivation": _passes("published"),
        "double.r-matrix": _passes("published"),
        "double.r-matrix-contraction": _passes("derived", value=["1/2", "0", "0", "0"]),
        "double.d-epsilon": _passes("published", value={"eps1": {}, "eps2": {"0,1": "-1"}}),
    },
    "Double of the two-dimensional non-abelian algebra with the trivial cobracket.",
    "Lie bialgebras as Courant algebroids over a point",
))

_register(_doc(
    "su2-double", "constant-model", ["courant-axioms", "para", "dirac", "double"],
    {
        "k": {"name": "su2"},
        "dual": {"name": "abelian", "params": {"dimension": 3}},
        "structure": {"plus": _U6[:3], "minus": _U6[3:]},
        "dirac": [{"label": "k", "generators": _U6[:3]}, {"label": "k-dual", "generators": _U6[3:]}],
    },
    {
        **{f"courant-axioms.{a}": _passes("derived") for a in _AXIOMS},
        "para.isotropic": _passes("derived"),
        "para.compatible": _passes("derived"),
        "para.integrable": _passes("derived", value={"minus": True, "plus": True}),
        "dirac.k": _passes("derived"),
        "dirac.k-dual": _passes("derived"),
        "double.bialgebra": _passes("trivial"),
        "double.jacobi": _passes("derived"),
        "double.pairing-invariant": _passes("published"),
        "double.agreement": _passes("derived"),
        "double.derivation": _passes("published"),
        "double.r-matrix": _passes("published"),
        "double.d-epsilon": _passes("derived", value={
            "eps1": {"1,2": "-1"},
            "eps2": {"0,2": "1"},
            "eps3": {"0,1": "-1"},
        }),
    },
    "Double of su(2) with the trivial cobracket; k and its dual are both closed, so the split is para-Hermitian.",
    "Lie bialgebras as Courant algebroids over a point",
))

_register(_doc(
    "su2-iwasawa-double", "constant-model", ["courant-axioms", "double"],
    {"manin_triple": {"iwasawa": 2}},
    {
        **{f"courant-axioms.{a}": _passes("published") for a in _AXIOMS},
        "double.bialgebra": _passes("published"),
        "double.jacobi": _passes("published"),
        "double.pairing-invariant": _passes("published"),
        "double.agreement": _passes("derived"),
        "double.derivation": _passes("published"),
        "double.r-matrix": _passes("published"),
    },
    "Lie bialgebra su(2) with the cobracket transported from the Iwasawa Manin triple of sl(2,C).",
    "standard Lie bialgebra structure on su(2)",
))

# -----------------
# Lie structures
# -----------------
_register(_doc(
    "iwasawa-sl2", "lie-structure", ["manin-triple"],
    {
        "iwasawa": {
            "n": 2,
            "samples": 100,
            "decompositions": [
                {"label": "H", "matrix": [["1", "0"], ["0", "-1"]],
                 "expect": {"k": _ZERO2, "a": [["1", "0"], ["0", "-1"]], "n": _ZERO2}},
                {"label": "E12", "matrix": [["0", "1"], ["0", "0"]],
                 "expect": {"k": _ZERO2, "a": _ZERO2, "n": [["0", "1"], ["0", "0"]]}},
                {"label": "F21", "matrix": [["0", "0"], ["1", "0"]],
                 "expect": {"k": [["0", "-1"], ["1", "0"]], "a": _ZERO2, "n": [["0", "1"], ["0", "0"]]}},
                {"label": "iF21", "matrix": [["0", "0"], ["i", "0"]],
                 "expect": {"k": [["0", "i"], ["i", "0"]], "a": _ZERO2, "n": [["0", "-i"], ["0", "0"]]}},
                {"label": "E12+F21", "matrix": [["0", "1"], ["1", "0"]],
                 "expect": {"k": [["0", "-1"], ["1", "0"]], "a": _ZERO2, "n": [["0", "2"], ["0", "0"]]}},
            ],
        },
    },
    {
        "manin-triple.round-trip": _passes("published", value=100),
        "manin-triple.decompose.H": _passes("trivial", value={"a": [["1", "0"], ["0", "-1"]], "k": _ZERO2, "n": _ZERO2}),
        "manin-triple.decompose.E12": _passes("trivial", value={"a": _ZERO2, "k": _ZERO2, "n": [["0", "1"], ["0", "0"]]}),
        "manin-triple.decompose.F21": _passes("derived", value={
            "a": _ZERO2, "k": [["0", "-1"], ["1", "0"]], "n": [["0", "1"], ["0", "0"]],
        }),
        "manin-triple.decompose.iF21": _passes("derived", value={
            "a": _ZERO2, "k": [["0", "i"], ["i", "0"]], "n": [["0", "-i"], ["0", "0"]],
        }),
        "manin-triple.decompose.E12+F21": _passes("derived", value={
            "a": _ZERO2, "k": [["0", "-1"], ["1", "0"]], "n": [["0", "2"], ["0", "0"]],
        }),
        "manin-triple.su-compact": _passes("published"),
        "manin-triple.lagrangian-su": _passes("published"),
        "manin-triple.lagrangian-an": _passes("published"),
        "manin-triple.triple": _passes("published"),
        "manin-triple.transported": _passes("derived"),
        "manin-triple.transported-bialgebra": _passes("published"),
        "manin-triple.para-compatible": _passes("published"),
        "manin-triple.para-integrable": _passes("published"),
    },
    "Iwasawa decomposition sl(2,C) = su(2) + an as a Manin triple.",
    "Iwasawa Manin triple",
))

_register(_doc(
    "iwasawa-sl3", "lie-structure", ["manin-triple"],
    {"iwasawa": {"n": 3, "samples": 100}},
    {
        "manin-triple.round-trip": _passes("published", value=100),
        "manin-triple.su-compact": _passes("published"),
        "manin-triple.triple": _passes("published"),
        "manin-triple.transported-bialgebra": _passes("published"),
        "manin-triple.para-integrable": _passes("published"),
    },
    "Iwasawa decomposition sl(3,C) = su(3) + an as a Manin triple.",
    "Iwasawa Manin triple",
))

_register(_doc(
    "cartan-dirac-sl2", "lie-structure", ["lie", "cartan-dirac"],
    {"algebra": {"name": "sl2r"}},
    {
        "lie.jacobi": _passes("trivial"),
        "lie.killing": _passes("published", value={
            "matrix": [["48", "0", "0"], ["0", "0", "24"], ["0", "24", "0"]],
            "negative_definite": False,
            "nondegenerate": True,
        }),
        "lie.ad-invariance": _passes("published"),
        "cartan-dirac.nondegenerate": _passes("published"),
        "cartan-dirac.diagonal": _passes("published"),
        "cartan-dirac.transverse": _passes("derived", value={"antidiagonal_subalgebra": False}),
    },
    "Cartan-Dirac splitting of sl(2,R) + sl(2,R) along the diagonal.",
    "Cartan-Dirac structure of a quadratic Lie algebra",
))

_register(_doc(
    "su2-compact", "lie-structure", ["lie", "cartan-dirac"],
    {"algebra": {"name": "su2"}},
    {
        "lie.jacobi": _passes("trivial"),
        "lie.killing": _passes("published", value={
            "matrix": [["-12", "0", "0"], ["0", "-12", "0"], ["0", "0", "-12"]],
            "negative_definite": True,
            "nondegenerate": True,
        }),
        "lie.ad-invariance": _passes("published"),
        "cartan-dirac.diagonal": _passes("published"),
        "cartan-dirac.transverse": _passes("derived", value={"antidiagonal_subalgebra": False}),
    },
    "su(2) has a negative definite Killing form.",
    "compact real form",
))

_register(_doc(
    "broken-jacobi", "lie-structure", ["lie"],
    {
        "algebra": {
            "dimension": 3,
            "brackets": {"e1,e2": {"e3": "1"}, "e2,e3": {"e1": "1"}, "e3,e1": {"e1": "1"}},
            "declared_valid": False,
        },
    },
    {"lie.jacobi": _fails("invented", witness=["e1", "e2", "e3"])},
    "Negative control: antisymmetric structure constants violating the Jacobi identity.",
    "Jacobi identity",
))

# -----------------
# Morphisms
# -----------------
_register(_doc(
    "bfield-morphism", "patch-model", ["morphism", "dirac"],
    {
        "coordinates": ["x", "y", "z"],
        "bfield": {"y,z": "x"},
        "target_twist": {"x,y,z": "1"},
        "dirac": [
            {
                "label": "x-dydz",
                "omega": {"y,z": "x"},
                "curvature": [{"left": {"y": "1"}, "right": {"z": "1"}, "expect": {"form": {"x": "1"}}}],
            },
        ],
    },
    {
        "morphism.isometry": _passes("published"),
        "morphism.anchor": _passes("published"),
        "morphism.differential": _passes("published"),
        "morphism.tensorial": _passes("published"),
        "morphism.in-cotangent": _passes("published"),
        "morphism.deviation": _passes("derived", value={
            "bracket_preserved": False,
            "pairs": ["d/dx,d/dy", "d/dx,d/dz", "d/dy,d/dz"],
        }),
        "morphism.twisted-target": _passes("published"),
        "dirac.x-dydz": _fails("published", witness=["A(d/dx)", "A(d/dy)"], value=[
            ["A(d/dx)", "A(d/dy)"], ["A(d/dx)", "A(d/dz)"], ["A(d/dy)", "A(d/dz)"],
        ]),
        "dirac.x-dydz.closedness": _passes("published", value={"closed": False, "dirac": False}),
        "dirac.x-dydz.curvature.0": _passes("derived", value={"form": {"x": "1"}}),
    },
    "Witness scenario: a B-field with nonzero differential fails to be a symmetry and its graph is not Dirac.",
    "B-field transforms and twisting",
))


# -----------------
# Public API
# -----------------
def get_document(name: str) -> dict:
    """A fresh copy of the catalog document; callers may edit it."""
    key = (name or "").lower()
    if key not in _DOCUMENTS:
        raise UnknownNameError("scenario", name, list(_DOCUMENTS))
    return copy.deepcopy(_DOCUMENTS[key])


@lru_cache(maxsize=None)
def _loaded(key: str) -> Scenario:
    return scenario_load(_DOCUMENTS[key])


def get_scenario(name: str) -> Scenario:
    get_document(name)
    return _loaded(name.lower())


def list_scenarios(kind: Optional[str] = None) -> list[str]:
    return sorted(name for name, doc in _DOCUMENTS.items() if kind is None or doc["kind"] == kind)
