"""The map L from orbifold classes to Nakajima classes and structural checks
relating the two sides."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .classes import BindingError, CohClass
from .exactnum import IUNIT, ZERO, ExactArithmeticError, QSeries, Scalar, normalize_rational
from .hilb import (LocalTheoryProvider, chow_degree, cup_three_point_deg0, extremal_three_point,
                   nakajima_class, pairing_hilb, vanishing_check)
from .orb import (ExtendedSeries, extended_three_point, orb_class, orb_fixed_classes, orb_pairing,
                  orb_three_point_deg0, orbifold_degree)
from .partitions import MultiPartition
from .toric import ToricSurface

MINUS_I = -IUNIT


def age_phase(age: int) -> Scalar:
    """(-i)^age, reduced mod 4."""
    return MINUS_I ** (age % 4)


def L_map(a: CohClass) -> CohClass:
    """lam~ -> (-i)^age(lam~) times the Nakajima class of lam~."""
    if a.basis_kind != "orb_fixed":
        raise BindingError("L_map takes an orb_fixed class")
    return CohClass(a.surface, a.n, "nakajima", {lab: c * age_phase(lab.age) for lab, c in a.coeffs.items()})


def L_inverse(b: CohClass) -> CohClass:
    if b.basis_kind != "nakajima":
        raise BindingError("L_inverse takes a Nakajima-basis class")
    return CohClass(b.surface, b.n, "orb_fixed", {lab: c / age_phase(lab.age) for lab, c in b.coeffs.items()})


@dataclass
class Report:
    """Check records {check, label(s), lhs, rhs, status}."""

    records: list[dict] = field(default_factory=list)

    def add(self, check: str, labels, lhs, rhs, status: str | None = None) -> None:
        if status is None:
            status = "pass" if lhs == rhs else "fail"
        rec = {"check": check}
        if isinstance(labels, MultiPartition):
            rec["label"] = labels.to_json()
        elif labels is not None:
            rec["labels"] = [x.to_json() if isinstance(x, MultiPartition) else x for x in labels]
        rec["lhs"] = str(lhs) if lhs is not None else None
        rec["rhs"] = str(rhs) if rhs is not None else None
        rec["status"] = status
        self.records.append(rec)

    def extend(self, other: Report) -> Report:
        self.records.extend(other.records)
        return self

    def count(self, status: str) -> int:
        return sum(1 for r in self.records if r["status"] == status)

    @property
    def ok(self) -> bool:
        return self.count("fail") == 0

    def failures(self) -> list[dict]:
        return [r for r in self.records if r["status"] == "fail"]

    def to_json(self) -> str:
        return json.dumps(self.records, indent=1)


def verify_isometry(surface: ToricSurface, n: int) -> Report:
    rep = Report()
    for lab in orb_fixed_classes(surface, n):
        a = orb_class(surface, lab)
        rep.add("isometry", lab, orb_pairing(a, a), pairing_hilb(L_map(a), L_map(a)))
    return rep


def verify_degree_match(surface: ToricSurface, n: int) -> Report:
    rep = Report()
    for lab in orb_fixed_classes(surface, n):
        rep.add("degree", lab, orbifold_degree(lab), chow_degree(lab))
    return rep


class EForm:
    """Rational function in E = exp(i u) with Scalar coefficients (ascending powers)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num, self.den = normalize_rational(num, den)

    def __eq__(self, other):
        return isinstance(other, EForm) and (self.num, self.den) == (other.num, other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        return f"({_poly_in(self.num, 'exp(i*u)')})/({_poly_in(self.den, 'exp(i*u)')})"

    __repr__ = __str__


def _poly_in(coeffs, var: str) -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if c.is_zero():
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        terms.append(f"({c})" + (f"*{mono}" if mono else ""))
    return " + ".join(terms) or "0"


def _flip_odd(coeffs):
    return tuple(-c if k % 2 else c for k, c in enumerate(coeffs))


def substitute_q(series: ExtendedSeries | QSeries) -> EForm:
    """Rewrite the exact q-form through q = -E."""
    s = series.series if isinstance(series, ExtendedSeries) else series
    if s.exact is None:
        raise ExactArithmeticError("exact form required")
    num, den = s.exact
    return EForm(_flip_odd(num), _flip_odd(den))


def substitute_q_inverse(form: EForm, order: int = 10) -> ExtendedSeries:
    """Back from E = -q to an exact q-series."""
    return ExtendedSeries(QSeries.from_rational(_flip_odd(form.num), _flip_odd(form.den), order))


def _triples(surface: ToricSurface, n: int):
    labels = orb_fixed_classes(surface, n)
    for a in labels:
        for b in labels:
            for c in labels:
                yield a, b, c


def verify_theorem_structure(surface: ToricSurface, n: int, orb_provider: LocalTheoryProvider,
                             hilb_provider: LocalTheoryProvider, order: int = 10,
                             include_pairings: bool = True) -> Report:
    """Structural checks of the orbifold/Hilbert correspondence.

    Sections: isometry and degree per label; vanishing of size-mismatched
    triples on both sides; q^0 consistency of both product series with the
    direct degree-zero computations; and the q -> 0 limit comparison, which
    needs genuine full local series and is otherwise reported as skipped.
    """
    rep = Report()
    if include_pairings:
        rep.extend(verify_isometry(surface, n))
        rep.extend(verify_degree_match(surface, n))
    full = bool(getattr(orb_provider, "full_series", False)) and bool(getattr(hilb_provider, "full_series", False))
    for a, b, c in _triples(surface, n):
        labels = (a, b, c)
        ext = extended_three_point(a, b, c, surface, orb_provider, order)
        ex = extremal_three_point(a, b, c, surface, hilb_provider, order)
        if not vanishing_check(a, b, c):
            rep.add("vanishing", labels, ext.series.is_zero(), True)
            rep.add("vanishing", labels, ex.is_zero(), True)
            continue
        hilb_args = [nakajima_class(surface, x) for x in labels]
        cup = cup_three_point_deg0(*hilb_args)
        rep.add("hilb-q0", labels, ex.coeff(0), cup)
        if not getattr(orb_provider, "full_series", False):
            rep.add("orb-q0", labels, ext.coeff(0), orb_three_point_deg0(a, b, c, surface))
        if full:
            phase = IUNIT ** ((a.age + b.age + c.age) % 4)
            try:
                orb_at_zero = _value_at_q_zero(ext.series)
                rep.add("precup", labels, phase * orb_at_zero, cup)
            except ExactArithmeticError as exc:
                rep.add("precup", labels, str(exc), None, "fail")
        else:
            rep.add("precup", labels, None, None, "skipped")
    return rep


def _value_at_q_zero(s: QSeries) -> Scalar:
    if s.exact is not None:
        return s.evaluate(ZERO)
    return s.coeff(0)

