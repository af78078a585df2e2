"""Orbifold side: fixed-point classes of [Sym^n S], the orbifold pairing and a
brute-force degree-zero Chen-Ruan engine for [Sym^n C^2]."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .classes import BindingError, CohClass
from .exactnum import DEFAULT_Q_ORDER, ONE, ZERO, QSeries, Scalar, scalar
from .hilb import LocalTheoryProvider, vanishing_check
from .partitions import MultiPartition, Partition, cycle_type, enumerate_multipartitions, enumerate_partitions, z_of
from .toric import ToricSurface

DEFAULT_ENGINE_BOUND = 6


class CalibrationError(AssertionError):
    """The degree-zero engine disagrees with the orbifold pairing."""


def orb_fixed_classes(surface: ToricSurface, n: int) -> list[MultiPartition]:
    return enumerate_multipartitions(n, surface.s)


def orb_class(surface: ToricSurface, label) -> CohClass:
    return CohClass.basis(surface, label, "orb_fixed")


def orbifold_degree(label: MultiPartition) -> int:
    """Complex degree 2*len + age, with the twisted-sector age n - len."""
    return 2 * label.length + label.age


def euler_orb_tangent(label: MultiPartition, surface: ToricSurface) -> Scalar:
    out = ONE
    for ch, lam in zip(surface.charts, label):
        out = out * ch.euler ** len(lam)
    return out


def orb_norm(surface: ToricSurface, label: MultiPartition) -> Scalar:
    """prod_k (L_k R_k)^len(s_k) / z(s_k)."""
    out = ONE
    for ch, sigma in zip(surface.charts, label):
        out = out * ch.euler ** len(sigma) * Fraction(1, z_of(sigma))
    return out


def _check_orb(a: CohClass, b: CohClass):
    if a.basis_kind != "orb_fixed" or b.basis_kind != "orb_fixed":
        raise BindingError("orbifold pairing needs orb_fixed classes")
    if not a.same_binding(b):
        raise BindingError("classes are bound to different surfaces or sizes")


def orb_pairing(a: CohClass, b: CohClass) -> Scalar:
    _check_orb(a, b)
    total = ZERO
    for label, c in a.coeffs.items():
        d = b.coeffs.get(label)
        if d is not None:
            total = total + c * d * orb_norm(a.surface, label)
    return total


# -- degree-zero engine ------------------------------------------------------

def _compose(a, b):
    """(a*b)(x) = a(b(x))."""
    return tuple(a[x] for x in b)


def _inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _orbit_count(a, b) -> int:
    n = len(a)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in (a, b):
        for x in range(n):
            ra, rb = find(x), find(g[x])
            if ra != rb:
                parent[ra] = rb
    return sum(1 for x in range(n) if find(x) == x)


def _representative(lam: Partition) -> tuple[int, ...]:
    perm, start = [], 0
    for part in lam:
        cycle = list(range(start, start + part))
        perm.extend(cycle[1:] + cycle[:1])
        start += part
    return tuple(perm)


@lru_cache(maxsize=None)
def _factorization_counts(n: int) -> dict[tuple[Partition, Partition, Partition], Counter]:
    """For a fixed representative a of each class lam, count b in S_n by
    (type b, type (ab)^-1, number of orbits of <a, b>)."""
    perms = list(permutations(range(n)))
    out: dict[tuple[Partition, Partition, Partition], Counter] = {}
    for lam in enumerate_partitions(n):
        a = _representative(lam)
        for b in perms:
            mu = cycle_type(b)
            nu = cycle_type(_inverse(_compose(a, b)))
            out.setdefault((lam, mu, nu), Counter())[_orbit_count(a, b)] += 1
    return out


def factorization_genus(lam, mu, nu, orbits: int) -> Fraction:
    """h^1 of the cover: (age sum)/2 - (n - orbits)."""
    n = Partition(lam).size
    ages = Partition(lam).age + Partition(mu).age + Partition(nu).age
    return Fraction(ages, 2) - (n - orbits)


def cr_three_point_deg0_c2(lam, mu, nu, L, R, bound: int = DEFAULT_ENGINE_BOUND) -> Scalar:
    """Degree-zero orbifold three-point function on [Sym^n C^2].

    Sums over factorizations a*b*c = 1 with a, b, c of the given types; each
    contributes (LR)^(len lam + len mu + len nu - r + h1) / n!, where r counts
    orbits of <a, b>: the insertions restrict to (LR)^len, the fixed locus
    divides by (LR)^r, and the obstruction bundle adds (LR)^h1.
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    n = lam.size
    if not (mu.size == nu.size == n):
        raise ValueError("partitions of different sizes")
    if n > bound:
        raise ValueError(f"n = {n} exceeds the engine bound {bound}")
    if n == 0:
        return ONE
    if (lam.age + mu.age + nu.age) % 2:
        return ZERO
    euler = scalar(L) * scalar(R)
    counts = _factorization_counts(n).get((lam, mu, nu))
    if not counts:
        return ZERO
    class_size = factorial(n) // z_of(lam)
    total = ZERO
    for r, k in sorted(counts.items()):
        h1 = factorization_genus(lam, mu, nu, r)
        if h1 < 0 or h1.denominator != 1:
            continue
        exponent = len(lam) + len(mu) + len(nu) - r + int(h1)
        total = total + euler ** exponent * Fraction(k * class_size, factorial(n))
    return total


def orb_three_point_deg0(lam, mu, nu, surface: ToricSurface, bound: int = DEFAULT_ENGINE_BOUND) -> Scalar:
    """Global degree-zero value: the slotwise product of chart engine values."""
    lam, mu, nu = (x if isinstance(x, MultiPartition) else MultiPartition(x) for x in (lam, mu, nu))
    if not vanishing_check(lam, mu, nu):
        return ZERO
    out = ONE
    for ch, a, b, c in zip(surface.charts, lam, mu, nu):
        if a:
            out = out * cr_three_point_deg0_c2(a, b, c, ch.weight_L, ch.weight_R, bound)
    return out


def orb_unit(surface: ToricSurface, n: int) -> CohClass:
    """Sum over untwisted labels of label / prod_k (L_k R_k)^(n_k)."""
    coeffs = {}
    for label in orb_fixed_classes(surface, n):
        if all(all(p == 1 for p in lam) for lam in label):
            coeffs[label] = euler_orb_tangent(label, surface).inverse()
    return CohClass(surface, n, "orb_fixed", coeffs)


def orb_three_point_classes(a: CohClass, b: CohClass, c: CohClass, bound: int = DEFAULT_ENGINE_BOUND) -> Scalar:
    _check_orb(a, b)
    _check_orb(a, c)
    total = ZERO
    for x, cx in a.coeffs.items():
        for y, cy in b.coeffs.items():
            if x.slot_sizes != y.slot_sizes:
                continue
            for z, cz in c.coeffs.items():
                if z.slot_sizes == x.slot_sizes:
                    total = total + cx * cy * cz * orb_three_point_deg0(x, y, z, a.surface, bound)
    return total


def orb_product(a: CohClass, b: CohClass, bound: int = DEFAULT_ENGINE_BOUND) -> CohClass:
    """Degree-zero product: a*b = sum_nu <a, b, nu> nu / <nu|nu>."""
    _check_orb(a, b)
    out = {}
    for nu in orb_fixed_classes(a.surface, a.n):
        v = orb_three_point_classes(a, b, orb_class(a.surface, nu), bound)
        if not v.is_zero():
            out[nu] = v / orb_norm(a.surface, nu)
    return CohClass(a.surface, a.n, "orb_fixed", out)


def calibration_failures(n: int, L, R, bound: int = DEFAULT_ENGINE_BOUND) -> list[tuple]:
    """Pairs where <lam, mu, unit> differs from the orbifold pairing on C^2."""
    euler = scalar(L) * scalar(R)
    unit = Partition([1] * n)
    bad = []
    for lam in enumerate_partitions(n):
        for mu in enumerate_partitions(n):
            lhs = cr_three_point_deg0_c2(lam, mu, unit, L, R, bound) / euler ** n
            rhs = euler ** len(lam) * Fraction(1, z_of(lam)) if lam == mu else ZERO
            if lhs != rhs:
                bad.append((lam, mu, lhs, rhs))
    return bad


def require_calibrated(n: int, L, R, bound: int = DEFAULT_ENGINE_BOUND) -> None:
    bad = calibration_failures(n, L, R, bound)
    if bad:
        lam, mu, lhs, rhs = bad[0]
        raise CalibrationError(f"engine calibration fails at n={n}: <{list(lam)}, {list(mu)}, unit> = {lhs}, "
                               f"pairing gives {rhs}")


# -- extended series ----------------------------------------------------------

class ExtendedSeries:
    """A q-series read through q = -exp(i u)."""

    __slots__ = ("series",)
    variable = "q = -exp(i*u)"

    def __init__(self, series: QSeries):
        self.series = series

    def coeff(self, d: int) -> Scalar:
        return self.series.coeff(d)

    def u_form(self):
        from .bridge import substitute_q
        return substitute_q(self)

    def __repr__(self):
        return f"ExtendedSeries({self.series!r})"


class DegreeZeroOrbProvider:
    """Local series carrying only the engine value as constant term."""

    full_series = False

    def __init__(self, order: int = DEFAULT_Q_ORDER, bound: int = DEFAULT_ENGINE_BOUND):
        self.order = order
        self.bound = bound

    def __call__(self, lam, mu, nu, L, R) -> QSeries:
        if not (Partition(lam).size == Partition(mu).size == Partition(nu).size):
            return QSeries.zero(self.order)
        return QSeries.constant(cr_three_point_deg0_c2(lam, mu, nu, L, R, self.bound), self.order)


def extended_three_point(lam, mu, nu, surface: ToricSurface, provider: LocalTheoryProvider,
                         order: int = DEFAULT_Q_ORDER) -> ExtendedSeries:
    lam, mu, nu = (x if isinstance(x, MultiPartition) else MultiPartition(x) for x in (lam, mu, nu))
    if not vanishing_check(lam, mu, nu):
        return ExtendedSeries(QSeries.zero(order))
    out = QSeries.one(order)
    for ch, a, b, c in zip(surface.charts, lam, mu, nu):
        if not a:
            continue
        out = out * provider(a, b, c, ch.weight_L, ch.weight_R)
    return ExtendedSeries(out)


def orb_structure_constants(surface: ToricSurface, n: int, bound: int = DEFAULT_ENGINE_BOUND) -> list[dict]:
    labels = orb_fixed_classes(surface, n)
    records = []
    for lhs in labels:
        for mhs in labels:
            if lhs.slot_sizes != mhs.slot_sizes:
                continue
            for rhs in labels:
                if rhs.slot_sizes != lhs.slot_sizes:
                    continue
                v = orb_three_point_deg0(lhs, mhs, rhs, surface, bound)
                if not v.is_zero():
                    records.append({"basis": "orb_fixed", "lhs": lhs.to_json(), "mhs": mhs.to_json(),
                                    "rhs": rhs.to_json(), "value": str(v)})
    return records
