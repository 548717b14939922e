# FILE: apps/cartan/services/alternating.py
"""
Shared storage for graded antisymmetric tensors over a patch.

Coefficients live on strictly increasing index tuples only; any other tuple is brought
to canonical order with the sign of the sorting permutation (or dropped when an index
repeats). Forms and multivectors are the two concrete subclasses.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence, TypeVar

from apps.cartan.services.patch import Patch
from apps.core.exceptions import DegreeError
from apps.scalars.services.polynomials import Polynomial

Index = tuple[int, ...]
T = TypeVar("T", bound="Alternating")


def sort_sign(indices: Sequence[int]) -> tuple[int, Optional[Index]]:
    """(sign, sorted tuple); sign 0 and None when an index repeats."""
    if len(set(indices)) != len(indices):
        return 0, None
    inversions = sum(
        1 for a in range(len(indices)) for b in range(a + 1, len(indices)) if indices[a] > indices[b]
    )
    return (-1 if inversions % 2 else 1), tuple(sorted(indices))


@dataclass(frozen=True, eq=False)
class Alternating:
    patch: Patch
    degree: int
    coeffs: Mapping[Index, Polynomial]

    def __post_init__(self):
        if not 0 <= self.degree <= self.patch.dimension:
            raise DegreeError(f"degree {self.degree} outside 0..{self.patch.dimension}")
        clean: dict[Index, Polynomial] = {}
        for idx, c in self.coeffs.items():
            idx = tuple(idx)
            if len(idx) != self.degree or any(not 0 <= i < self.patch.dimension for i in idx):
                raise DegreeError(f"index {idx} does not fit degree {self.degree}")
            sign, key = sort_sign(idx)
            if not sign:
                continue
            value = clean.get(key, self.patch.zero) + sign * self.patch.poly(c)
            if value:
                clean[key] = value
            else:
                clean.pop(key, None)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    # -----------------
    # Constructors
    # -----------------
    @classmethod
    def zero(cls: type[T], patch: Patch, degree: int) -> T:
        return cls(patch, degree, {})

    @classmethod
    def basis(cls: type[T], patch: Patch, *indices: int, coeff=1) -> T:
        return cls(patch, len(indices), {tuple(indices): patch.poly(coeff)})

    @classmethod
    def scalar(cls: type[T], patch: Patch, f) -> T:
        return cls(patch, 0, {(): patch.poly(f)})

    @classmethod
    def from_names(cls: type[T], patch: Patch, terms: Mapping[str, object], degree: int) -> T:
        """{"x,y": "z"} -> z dx^dy (or z d/dx^d/dy for multivectors)."""
        coeffs = {}
        for key, coeff in terms.items():
            names = [n.strip() for n in key.split(",") if n.strip()]
            coeffs[tuple(patch.index(n) for n in names)] = patch.poly(coeff)
        return cls(patch, degree, coeffs)

    def _new(self: T, degree: int, coeffs: Mapping[Index, Polynomial]) -> T:
        return type(self)(self.patch, degree, coeffs)

    # -----------------
    # Linear structure
    # -----------------
    def items(self) -> Iterator[tuple[Index, Polynomial]]:
        return iter(self.coeffs.items())

    def component(self, *indices: int) -> Polynomial:
        sign, key = sort_sign(indices)
        if not sign:
            return self.patch.zero
        return sign * self.coeffs.get(key, self.patch.zero)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Alternating) or type(other) is not type(self):
            return NotImplemented
        if self.patch != other.patch:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def _check(self, other: Alternating) -> None:
        self.patch.check_same(other.patch)
        if type(other) is not type(self):
            raise DegreeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise DegreeError(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self: T, other: T) -> T:
        self._check(other)
        degree = self.degree if not self.is_zero() else other.degree
        merged = dict(self.coeffs)
        for k, v in other.items():
            merged[k] = merged.get(k, self.patch.zero) + v
        return self._new(degree, merged)

    def __neg__(self: T) -> T:
        return self._new(self.degree, {k: -v for k, v in self.items()})

    def __sub__(self: T, other: T) -> T:
        return self + (-other)

    def scale(self: T, f) -> T:
        f = self.patch.poly(f)
        return self._new(self.degree, {k: f * v for k, v in self.items()})

    def __rmul__(self: T, f) -> T:
        return self.scale(f)

    def map_coefficients(self: T, fn) -> T:
        return self._new(self.degree, {k: fn(v) for k, v in self.items()})

    # -----------------
    # Algebra
    # -----------------
    def wedge(self: T, other: T) -> T:
        self.patch.check_same(other.patch)
        degree = self.degree + other.degree
        if degree > self.patch.dimension:
            return self._new(min(degree, self.patch.dimension), {})
        out: dict[Index, Polynomial] = {}
        for i, a in self.items():
            for j, b in other.items():
                sign, key = sort_sign(i + j)
                if sign:
                    out[key] = out.get(key, self.patch.zero) + sign * a * b
        return self._new(degree, out)

    def contract(self: T, slot_values: Sequence[Polynomial]) -> T:
        """First-slot contraction against a dual element given by its components.

        For forms the components are those of a vector field; for multivectors those
        of a 1-form. iota(e ^ f) = <., e> f - <., f> e.
        """
        if self.degree == 0:
            raise DegreeError("cannot contract a degree-0 element")
        out: dict[Index, Polynomial] = {}
        for idx, c in self.items():
            for pos, i in enumerate(idx):
                v = slot_values[i]
                if not v:
                    continue
                rest = idx[:pos] + idx[pos + 1:]
                term = c * v if pos % 2 == 0 else -(c * v)
                out[rest] = out.get(rest, self.patch.zero) + term
        return self._new(self.degree - 1, out)

    def evaluate_slots(self, slots: Iterable[Sequence[Polynomial]]) -> Polynomial:
        """Full evaluation; slot k receives the k-th dual element (by components)."""
        current = self
        for values in slots:
            current = current.contract(values)
        if current.degree != 0:
            raise DegreeError(f"{current.degree} slots left unfilled")
        return current.coeffs.get((), self.patch.zero)

    def partial(self: T, index: int) -> T:
        """Coefficient-wise partial derivative d/dx^index."""
        return self.map_coefficients(lambda c: c.diff(index))

    def max_coefficient_degree(self) -> int:
        degrees = [sum(m) for c in self.coeffs.values() for m in c.itermonoms()]
        return max(degrees, default=-1)

    def _str_terms(self, symbol: str) -> str:
        parts = []
        for idx, c in self.items():
            basis = "^".join(f"{symbol}{self.patch.names[i]}" for i in idx) or "1"
            parts.append(f"({c})*{basis}")
        return " + ".join(parts) or "0"
