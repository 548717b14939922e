# FILE: apps/courant/services/algebroids.py
"""
Lie algebroids in a local frame and the Cartan-formula differential.

An algebroid of rank r is described by its frame s_1..s_r: anchors rho(s_a) (polynomial
vector fields on a patch, or nothing at constant sections) and structure functions
[s_a, s_b] = sum_c C^c_ab s_c. Forms are stored by their values on increasing frame
index tuples.

The same machinery carries the local data of a split Courant algebroid E = E+ + E-
(frame e_1+..e_r+, e_1-..e_r-), its operators d+/- and the fundamental-form equations.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Mapping, Optional, Sequence

from sympy import QQ

from apps.cartan.services.alternating import Index, sort_sign
from apps.cartan.services.fields import PolyVectorField, lie_bracket_vf
from apps.cartan.services.forms import PolyForm
from apps.cartan.services.patch import Patch
from apps.core.conf import resolve_degree
from apps.core.exceptions import DegreeError, StructureError
from apps.core.results import CheckResult
from apps.lie.services.algebras import LieAlgebraData
from apps.lie.services.bialgebras import LieBialgebraData
from apps.scalars.services.polynomials import monomials_up_to, to_exact

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class AlgebroidData:
    rank: int
    structure: tuple
    anchor: tuple = ()
    patch: Optional[Patch] = None
    names: tuple = ()

    def __post_init__(self):
        r = self.rank
        if self.patch is None and self.anchor:
            raise StructureError("anchors need a patch")
        if self.patch is not None and len(self.anchor) != r:
            raise StructureError(f"{len(self.anchor)} anchors for rank {r}")
        try:
            table = tuple(
                tuple(tuple(self.coerce(c) for c in self.structure[a][b]) for b in range(r)) for a in range(r)
            )
        except IndexError:
            raise StructureError(f"structure functions do not have shape {r}x{r}x{r}") from None
        for a in range(r):
            for b in range(r):
                if len(table[a][b]) != r:
                    raise StructureError(f"structure functions do not have shape {r}x{r}x{r}")
                if any(x != -y for x, y in zip(table[a][b], table[b][a])):
                    raise StructureError(f"bracket is not antisymmetric at ({a},{b})", witness=(a, b))
        object.__setattr__(self, "structure", table)
        object.__setattr__(self, "anchor", tuple(self.anchor))
        object.__setattr__(self, "names", tuple(self.names) or tuple(f"s{a + 1}" for a in range(r)))

    # -----------------
    # Constructors
    # -----------------
    @classmethod
    def tangent(cls, patch: Patch) -> AlgebroidData:
        """TM over itself: coordinate frame, identity anchor, vanishing structure functions."""
        n = patch.dimension
        zero = [[[patch.zero] * n for _ in range(n)] for _ in range(n)]
        anchor = tuple(PolyVectorField.coordinate(patch, i) for i in range(n))
        return cls(n, zero, anchor, patch, tuple(f"d/d{name}" for name in patch.names))

    @classmethod
    def from_lie_algebra(cls, L: LieAlgebraData) -> AlgebroidData:
        """A Lie algebra as an algebroid over a point."""
        return cls(L.dimension, L.constants, (), None, L.names)

    @classmethod
    def action(cls, L: LieAlgebraData) -> AlgebroidData:
        """g acting on g* with coordinates xi_1..xi_n: rho(e_i) = sum C^k_ij xi_k d/dxi_j."""
        n = L.dimension
        patch = Patch(tuple(f"xi{i + 1}" for i in range(n)))
        xi = patch.coordinates
        anchor = []
        for i in range(n):
            comps = []
            for j in range(n):
                acc = patch.zero
                for k in range(n):
                    if L.constants[i][j][k]:
                        acc = acc + xi[k] * L.constants[i][j][k]
                comps.append(acc)
            anchor.append(PolyVectorField(patch, tuple(comps)))
        return cls(n, L.constants, tuple(anchor), patch, L.names)

    # -----------------
    # Functions and sections
    # -----------------
    @property
    def zero(self):
        return self.patch.zero if self.patch is not None else QQ.zero

    def coerce(self, f):
        return self.patch.poly(f) if self.patch is not None else to_exact(f)

    def rho_apply(self, a: int, f):
        if self.patch is None:
            return QQ.zero
        return self.anchor[a].apply(f)

    def anchor_of(self, u: Sequence) -> PolyVectorField:
        out = PolyVectorField.zero(self.patch)
        for c, X in zip(u, self.anchor):
            if c:
                out = out + X.scale(c)
        return out

    def unit(self, a: int) -> list:
        return [self.coerce(1) if b == a else self.zero for b in range(self.rank)]

    def bracket(self, u: Sequence, v: Sequence) -> list:
        """[sum u_a s_a, sum v_b s_b], extended from the frame by the Leibniz rule."""
        r = self.rank
        out = [self.zero] * r
        for a in range(r):
            if not u[a]:
                continue
            for b in range(r):
                if v[b]:
                    for c, C in enumerate(self.structure[a][b]):
                        if C:
                            out[c] = out[c] + u[a] * v[b] * C
        if self.patch is not None:
            for a in range(r):
                for b in range(r):
                    if u[a] and v[b]:
                        out[b] = out[b] + u[a] * self.rho_apply(a, v[b])
                    if v[a] and u[b]:
                        out[b] = out[b] - v[a] * self.rho_apply(a, u[b])
        return out


# -----------------
# Forms on an algebroid
# -----------------
@dataclass(frozen=True, eq=False)
class AlgebroidForm:
    data: AlgebroidData
    degree: int
    coeffs: Mapping[Index, object]

    def __post_init__(self):
        if self.degree < 0:
            raise DegreeError(f"negative degree {self.degree}")
        clean = {}
        for idx, c in self.coeffs.items():
            idx = tuple(idx)
            if len(idx) != self.degree or any(not 0 <= i < self.data.rank for i in idx):
                raise DegreeError(f"index {idx} does not fit degree {self.degree}")
            sign, key = sort_sign(idx)
            if not sign:
                continue
            value = clean.get(key, self.data.zero) + sign * self.data.coerce(c)
            if value:
                clean[key] = value
            else:
                clean.pop(key, None)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def zero(cls, data: AlgebroidData, degree: int) -> AlgebroidForm:
        return cls(data, degree, {})

    @classmethod
    def from_poly_form(cls, data: AlgebroidData, alpha: PolyForm) -> AlgebroidForm:
        """A differential form read on the frame of the tangent algebroid."""
        return cls(data, alpha.degree, dict(alpha.items()))

    def to_poly_form(self) -> PolyForm:
        return PolyForm(self.data.patch, self.degree, dict(self.coeffs))

    def value(self, *indices: int):
        sign, key = sort_sign(indices)
        if not sign:
            return self.data.zero
        return sign * self.coeffs.get(key, self.data.zero)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebroidForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __add__(self, other: AlgebroidForm) -> AlgebroidForm:
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DegreeError(f"degree mismatch {self.degree} vs {other.degree}")
        merged = dict(self.coeffs)
        for k, v in other.coeffs.items():
            merged[k] = merged.get(k, self.data.zero) + v
        return AlgebroidForm(self.data, self.degree, merged)

    def __neg__(self) -> AlgebroidForm:
        return AlgebroidForm(self.data, self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: AlgebroidForm) -> AlgebroidForm:
        return self + (-other)

    def type_part(self, plus_count: int, split: int) -> AlgebroidForm:
        """Components on index tuples with exactly ``plus_count`` indices below ``split``."""
        kept = {k: v for k, v in self.coeffs.items() if sum(1 for i in k if i < split) == plus_count}
        return AlgebroidForm(self.data, self.degree, kept)

    def __str__(self) -> str:
        parts = [f"({c})*{'^'.join(self.data.names[i] + '*' for i in k) or '1'}" for k, c in self.coeffs.items()]
        return " + ".join(parts) or "0"


def lie_algebroid_d(data: AlgebroidData, sigma: AlgebroidForm) -> AlgebroidForm:
    """d sigma(s_0..s_k) = sum_i (-1)^i rho(s_i) sigma(..^i..)
    + sum_{i<j} (-1)^(i+j) sigma([s_i, s_j], ..^i..^j..), on increasing frame tuples."""
    k = sigma.degree
    if k + 1 > data.rank:
        return AlgebroidForm.zero(data, k + 1)
    out = {}
    for idx in combinations(range(data.rank), k + 1):
        acc = data.zero
        for i, a in enumerate(idx):
            term = data.rho_apply(a, sigma.value(*(idx[:i] + idx[i + 1:])))
            if term:
                acc = acc + term if i % 2 == 0 else acc - term
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                rest = idx[:i] + idx[i + 1:j] + idx[j + 1:]
                term = data.zero
                for c, C in enumerate(data.structure[idx[i]][idx[j]]):
                    if C:
                        term = term + C * sigma.value(c, *rest)
                if term:
                    acc = acc + term if (i + j) % 2 == 0 else acc - term
        if acc:
            out[idx] = acc
    return AlgebroidForm(data, k + 1, out)


def lie_algebroid_check(data: AlgebroidData, degree: Optional[int] = None) -> CheckResult:
    """Anchor homomorphism, Jacobi and the Leibniz rule on the frame (and monomials)."""
    r = data.rank
    units = [data.unit(a) for a in range(r)]
    if data.patch is not None:
        for a, b in combinations(range(r), 2):
            lhs = data.anchor_of(data.structure[a][b])
            rhs = lie_bracket_vf(data.anchor[a], data.anchor[b])
            if lhs != rhs:
                return CheckResult.fail(("anchor", data.names[a], data.names[b]), str(lhs - rhs))
    for a, b, c in combinations(range(r), 3):
        terms = [
            data.bracket(data.bracket(units[x], units[y]), units[z])
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b))
        ]
        jac = [p + q + s for p, q, s in zip(*terms)]
        if any(jac):
            logger.warning("algebroid Jacobi fails on (%s, %s, %s)", data.names[a], data.names[b], data.names[c])
            return CheckResult.fail(("jacobi", data.names[a], data.names[b], data.names[c]), [str(v) for v in jac])
    if data.patch is not None:
        for f in monomials_up_to(data.patch.ring, resolve_degree(degree))[1:]:
            for a in range(r):
                for b in range(r):
                    lhs = data.bracket(units[a], [f * x for x in units[b]])
                    base = data.bracket(units[a], units[b])
                    rhs = [f * x for x in base]
                    rhs[b] = rhs[b] + data.rho_apply(a, f)
                    if lhs != rhs:
                        return CheckResult.fail(("leibniz", data.names[a], data.names[b], str(f)))
    return CheckResult.ok(f"rank {r} algebroid")


# -----------------
# Lie bialgebras as constant bialgebroids
# -----------------
Bivector = dict[tuple[int, int], object]


def _ce_d(L: LieAlgebraData, xi: Sequence) -> Bivector:
    """Chevalley-Eilenberg differential of a 1-form: d xi(e_a, e_b) = -xi([e_a, e_b])."""
    out = {}
    for a, b in combinations(range(L.dimension), 2):
        value = -sum((x * c for x, c in zip(xi, L.constants[a][b])), QQ.zero)
        if value:
            out[(a, b)] = value
    return out


def _wedge_add(out: Bivector, u: Sequence, v: Sequence, coeff) -> None:
    """out += coeff * u ^ v on increasing index pairs."""
    n = len(u)
    for a in range(n):
        for b in range(a + 1, n):
            value = coeff * (u[a] * v[b] - u[b] * v[a])
            if value:
                out[(a, b)] = out.get((a, b), QQ.zero) + value


def _ad_bivector(L: LieAlgebraData, x: Sequence, P: Bivector) -> Bivector:
    """ad_x on a 2-vector: [x, u ^ v] = [x, u] ^ v + u ^ [x, v]."""
    n = L.dimension
    out: Bivector = {}
    for (a, b), c in P.items():
        ua = [QQ.one if i == a else QQ.zero for i in range(n)]
        ub = [QQ.one if i == b else QQ.zero for i in range(n)]
        _wedge_add(out, L.bracket(x, ua), ub, c)
        _wedge_add(out, ua, L.bracket(x, ub), c)
    return {k: v for k, v in out.items() if v}


def bialgebroid_derivation_check(bi: LieBialgebraData) -> CheckResult:
    """d_k [xi, eta] = [d_k xi, eta] + [xi, d_k eta] in the Schouten algebra of k*.

    With graded antisymmetry [P, eta] = -[eta, P] for a 2-vector P, the right-hand side
    reads ad_xi(d eta) - ad_eta(d xi).
    """
    n = bi.dimension
    eps = [[QQ.one if i == j else QQ.zero for i in range(n)] for j in range(n)]
    for i, j in combinations(range(n), 2):
        lhs = _ce_d(bi.k, bi.dual.bracket(eps[i], eps[j]))
        rhs = dict(_ad_bivector(bi.dual, eps[i], _ce_d(bi.k, eps[j])))
        for key, value in _ad_bivector(bi.dual, eps[j], _ce_d(bi.k, eps[i])).items():
            rhs[key] = rhs.get(key, QQ.zero) - value
        rhs = {k: v for k, v in rhs.items() if v}
        if lhs != rhs:
            return CheckResult.fail((f"eps{i + 1}", f"eps{j + 1}"), (lhs, rhs))
    return CheckResult.ok()


# -----------------
# Split Courant algebroids in a local frame
# -----------------
@dataclass(frozen=True, eq=False)
class LocalBialgebroidData:
    """Frame e_1+..e_r+, e_1-..e_r- of E = E+ + E-.

    ``anchor`` lists the 2r anchor images (A_i then A_i-bar), ``structure`` the 2r x 2r x 2r
    structure functions of the Courant bracket on the frame, ``pairing`` the Gram matrix.
    """

    rank: int
    anchor: tuple
    structure: tuple
    pairing: tuple
    patch: Optional[Patch] = None

    def __post_init__(self):
        m = 2 * self.rank
        if len(self.pairing) != m or any(len(row) != m for row in self.pairing):
            raise StructureError(f"pairing must be {m}x{m}")
        if len(self.structure) != m:
            raise StructureError(f"structure functions must have first dimension {m}")
        coerce = self.patch.poly if self.patch is not None else to_exact
        G = tuple(tuple(coerce(c) for c in row) for row in self.pairing)
        r = self.rank
        for a in range(m):
            for b in range(m):
                if (a < r) == (b < r) and G[a][b]:
                    raise StructureError("eigenbundles are not isotropic", witness=(a, b))
        object.__setattr__(self, "pairing", G)
        self.algebroid  # builds and validates the frame data

    @property
    def split(self) -> int:
        return self.rank

    @cached_property
    def algebroid(self) -> AlgebroidData:
        r = self.rank
        names = tuple(f"e{i + 1}+" for i in range(r)) + tuple(f"e{i + 1}-" for i in range(r))
        return AlgebroidData(2 * r, self.structure, self.anchor, self.patch, names)

    def flat_form(self, sigma: Sequence, block: str) -> AlgebroidForm:
        """<sigma_block, .> as a 1-form on E, for the plus or minus part of ``sigma``."""
        r, m = self.rank, 2 * self.rank
        alg = self.algebroid
        which = range(r) if block == "plus" else range(r, m)
        values = {}
        for b in range(m):
            acc = alg.zero
            for a in which:
                if sigma[a] and self.pairing[a][b]:
                    acc = acc + sigma[a] * self.pairing[a][b]
            if acc:
                values[(b,)] = acc
        return AlgebroidForm(alg, 1, values)


def _check_section(data: LocalBialgebroidData, sigma: Sequence) -> list:
    if len(sigma) != 2 * data.rank:
        raise StructureError(f"section has {len(sigma)} components, expected {2 * data.rank}")
    return [data.algebroid.coerce(s) for s in sigma]


def d_plus_minus_local(data: LocalBialgebroidData, sigma: Sequence) -> tuple[AlgebroidForm, AlgebroidForm]:
    """(d+ sigma, d- sigma) from the coordinate formulas.

    sigma- pairs with E+ and is a (1,0)-form: d+ gives its (2,0) part, d- its (1,1) part.
    sigma+ is a (0,1)-form: d+ gives its (1,1) part, d- its (0,2) part.
    """
    sigma = _check_section(data, sigma)
    alg = data.algebroid
    r, m = data.rank, 2 * data.rank
    C = alg.structure
    plus, minus = range(r), range(r, m)
    theta_minus = data.flat_form(sigma, "minus")
    theta_plus = data.flat_form(sigma, "plus")
    tm = [theta_minus.value(b) for b in range(m)]
    tp = [theta_plus.value(b) for b in range(m)]

    def A(a, f):
        return alg.rho_apply(a, f)

    def contract(i, j, theta, block):
        acc = alg.zero
        for k in block:
            if C[i][j][k] and theta[k]:
                acc = acc + C[i][j][k] * theta[k]
        return acc

    d_plus, d_minus = {}, {}
    for i, j in combinations(plus, 2):
        d_plus[(i, j)] = A(i, tm[j]) - A(j, tm[i]) - contract(i, j, tm, plus)
    for i in plus:
        for j in minus:
            d_plus[(i, j)] = A(i, tp[j]) - contract(i, j, tp, minus)
            d_minus[(i, j)] = -A(j, tm[i]) - contract(i, j, tm, plus)
    for i, j in combinations(minus, 2):
        d_minus[(i, j)] = A(i, tp[j]) - A(j, tp[i]) - contract(i, j, tp, minus)
    return AlgebroidForm(alg, 2, d_plus), AlgebroidForm(alg, 2, d_minus)


def cartan_d_plus_minus(data: LocalBialgebroidData, sigma: Sequence) -> tuple[AlgebroidForm, AlgebroidForm]:
    """The same pair read off the Cartan-formula differential, split by type."""
    sigma = _check_section(data, sigma)
    alg = data.algebroid
    r = data.rank
    d_minus_part = lie_algebroid_d(alg, data.flat_form(sigma, "minus"))
    d_plus_part = lie_algebroid_d(alg, data.flat_form(sigma, "plus"))
    d_plus = d_minus_part.type_part(2, r) + d_plus_part.type_part(1, r)
    d_minus = d_minus_part.type_part(1, r) + d_plus_part.type_part(0, r)
    return d_plus, d_minus


def d_e_splits(data: LocalBialgebroidData, sigma: Sequence) -> bool:
    """d_E sigma = d+ sigma + d- sigma (holds when both eigenbundles are closed)."""
    sigma = _check_section(data, sigma)
    alg = data.algebroid
    full = lie_algebroid_d(alg, data.flat_form(sigma, "plus") + data.flat_form(sigma, "minus"))
    d_plus, d_minus = d_plus_minus_local(data, sigma)
    return full == d_plus + d_minus


# -----------------
# Fundamental form equations
# -----------------
@dataclass
class PDEResidual:
    printed_plus: dict
    printed_minus: dict
    cartan_plus: AlgebroidForm
    cartan_minus: AlgebroidForm

    @property
    def printed_vanishes(self) -> bool:
        return not self.printed_plus and not self.printed_minus

    @property
    def cartan_vanishes(self) -> bool:
        return self.cartan_plus.is_zero() and self.cartan_minus.is_zero()

    @property
    def discrepancy(self) -> bool:
        return self.printed_vanishes != self.cartan_vanishes


def fundamental_form_coefficients(data: LocalBialgebroidData, omega: Sequence[Sequence]) -> AlgebroidForm:
    """The (1,1)-form with omega(e_i+, e_j-) = omega[i][j]."""
    r = data.rank
    if len(omega) != r or any(len(row) != r for row in omega):
        raise StructureError(f"omega coefficients must be {r}x{r}")
    return AlgebroidForm(data.algebroid, 2, {(i, r + j): omega[i][j] for i in range(r) for j in range(r)})


def para_kahler_pde_check(data: LocalBialgebroidData, omega: Sequence[Sequence]) -> PDEResidual:
    """Both coefficient equations as printed, next to d+ omega and d- omega from the Cartan formula."""
    form = fundamental_form_coefficients(data, omega)
    alg = data.algebroid
    r = data.rank
    C = alg.structure

    def w(a, b):
        return form.value(a, b)

    def A(a, f):
        return alg.rho_apply(a, f)

    first, second = {}, {}
    for i in range(r):
        for j in range(r):
            for k in range(r):
                shared = alg.zero
                for l in range(r):
                    shared = shared - C[i][j][l] * w(l, r + k)
                    shared = shared + C[i][r + k][r + l] * w(r + l, j)
                    shared = shared - C[j][r + k][r + l] * w(r + l, i)
                eq1 = A(r + i, w(r + j, k)) - A(r + j, w(r + i, k)) + shared
                eq2 = A(i, w(j, r + k)) - A(j, w(i, r + k)) + shared
                if eq1:
                    first[(i, j, k)] = eq1
                if eq2:
                    second[(i, j, k)] = eq2
    d_omega = lie_algebroid_d(alg, form)
    residual = PDEResidual(first, second, d_omega.type_part(2, r), d_omega.type_part(1, r))
    if residual.discrepancy:
        logger.warning("printed fundamental-form equations disagree with the Cartan formula")
    return residual
