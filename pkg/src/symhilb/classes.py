"""Linear combinations of basis labels bound to a surface."""
from __future__ import annotations

from typing import Iterable, Mapping

from .exactnum import ZERO, Scalar, scalar
from .partitions import MultiPartition
from .toric import ToricSurface

BASIS_KINDS = ("hilb_fixed", "nakajima", "orb_fixed")


class BindingError(ValueError):
    """Classes bound to different surfaces, sizes or basis kinds."""


class CohClass:
    """Finite combination of multipartition labels with Scalar coefficients."""

    __slots__ = ("surface", "n", "basis_kind", "coeffs")

    def __init__(self, surface: ToricSurface, n: int, basis_kind: str, coeffs: Mapping | Iterable = ()):
        if basis_kind not in BASIS_KINDS:
            raise ValueError(f"unknown basis kind {basis_kind!r}")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict[MultiPartition, Scalar] = {}
        for label, c in items:
            label = label if isinstance(label, MultiPartition) else MultiPartition(label)
            if len(label) != surface.s or label.size != n:
                raise BindingError(f"label {label.to_json()} does not fit s={surface.s}, n={n}")
            c = scalar(c)
            total = clean.get(label, ZERO) + c
            if total.is_zero():
                clean.pop(label, None)
            else:
                clean[label] = total
        self.surface = surface
        self.n = n
        self.basis_kind = basis_kind
        self.coeffs = clean

    @classmethod
    def basis(cls, surface: ToricSurface, label, basis_kind: str) -> CohClass:
        label = label if isinstance(label, MultiPartition) else MultiPartition(label)
        return cls(surface, label.size, basis_kind, {label: 1})

    def same_binding(self, other: CohClass) -> bool:
        return self.surface == other.surface and self.n == other.n

    def _check(self, other: CohClass):
        if not self.same_binding(other):
            raise BindingError("classes are bound to different surfaces or sizes")
        if self.basis_kind != other.basis_kind:
            raise BindingError(f"basis kinds differ: {self.basis_kind} vs {other.basis_kind}")

    def __add__(self, other: CohClass) -> CohClass:
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return CohClass(self.surface, self.n, self.basis_kind, out)

    def __sub__(self, other: CohClass) -> CohClass:
        return self + other.scale(-1)

    def scale(self, c) -> CohClass:
        c = scalar(c)
        return CohClass(self.surface, self.n, self.basis_kind, {k: v * c for k, v in self.coeffs.items()})

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.same_binding(other) and self.basis_kind == other.basis_kind and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.basis_kind, frozenset(self.coeffs.items())))

    def __repr__(self):
        body = " + ".join(f"({v})*{k.to_json()}" for k, v in sorted(self.coeffs.items(), reverse=True))
        return f"CohClass[{self.basis_kind}]({body or '0'})"
