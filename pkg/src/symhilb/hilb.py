"""Equivariant cohomology of Hilbert schemes of points on toric surfaces.

Fixed points of Hilb^n(S) are multipartitions; fixed-point classes I and
Nakajima classes are related chart by chart through Jack functions with
alpha = -R/L.  Integrals are evaluated by localization at the isolated fixed
points, where fixed-point classes multiply diagonally.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Protocol, Sequence

from .classes import BindingError, CohClass
from .exactnum import DEFAULT_Q_ORDER, ONE, ZERO, QSeries, Scalar, scalar
from .partitions import MultiPartition, Partition, enumerate_multipartitions, z_of
from .symfun import BasisChangeTable, basis_change_table
from .toric import ToricSurface

DEFAULT_ORACLE_BOUND = 6


class TangentCharacter:
    """Multiset of torus weights (linear forms) of a tangent space."""

    __slots__ = ("weights",)

    def __init__(self, weights: Sequence[Scalar]):
        ws = tuple(scalar(w) for w in weights)
        if any(w.is_zero() for w in ws):
            raise ValueError("zero weight: the fixed point would not be isolated")
        self.weights = tuple(sorted(ws, key=str))

    def euler(self) -> Scalar:
        out = ONE
        for w in self.weights:
            out = out * w
        return out

    def __len__(self):
        return len(self.weights)

    def __eq__(self, other):
        if not isinstance(other, TangentCharacter):
            return NotImplemented
        return self.weights == other.weights

    def __hash__(self):
        return hash(self.weights)

    def __repr__(self):
        return "TangentCharacter{" + ", ".join(map(str, self.weights)) + "}"


def tangent_weights_hilb(lam, L, R) -> TangentCharacter:
    """Arm/leg character, rows of lam running along the coordinate of weight L."""
    lam = Partition(lam)
    L, R = scalar(L), scalar(R)
    ws = []
    for box in lam.boxes():
        a, l = lam.arm_leg(box)
        ws.append(L * (a + 1) - R * l)
        ws.append(R * (l + 1) - L * a)
    return TangentCharacter(ws)


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows if any(r)]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def monomial_ideal_generators(lam) -> list[tuple[int, int]]:
    """Exponents (i, j) of u^i v^j generating (u^lam1, v u^lam2, ..., v^len)."""
    lam = Partition(lam)
    return [(lam[j], j) for j in range(len(lam))] + [(0, len(lam))]


def hom_character_degrees(lam) -> dict[tuple[int, int], int]:
    """Dimensions of the graded pieces of Hom(I, O/I) for the monomial ideal of lam.

    Keys are bidegrees (du, dv): a homomorphism of that degree sends the
    generator u^i v^j to a multiple of u^(i+du) v^(j+dv).  The dimension of
    each piece is (number of admissible generator images) minus the rank of
    the syzygy constraints, found by exact elimination.
    """
    lam = Partition(lam)
    gens = monomial_ideal_generators(lam)
    n = lam.size

    def standard(i, j):
        return i >= 0 and j >= 0 and j < len(lam) and i < lam[j]

    out = {}
    span = range(-n - 1, n + 2)
    for du in span:
        for dv in span:
            unknowns = [g for g in gens if standard(g[0] + du, g[1] + dv)]
            if not unknowns:
                continue
            index = {g: k for k, g in enumerate(unknowns)}
            rows = []
            for a in range(len(gens)):
                for b in range(a + 1, len(gens)):
                    ga, gb = gens[a], gens[b]
                    lcm = (max(ga[0], gb[0]), max(ga[1], gb[1]))
                    # (lcm/ga) phi(ga) = (lcm/gb) phi(gb) in O/I, compared at lcm * x^d
                    if not standard(lcm[0] + du, lcm[1] + dv):
                        continue
                    row = [Fraction(0)] * len(unknowns)
                    if ga in index:
                        row[index[ga]] += 1
                    if gb in index:
                        row[index[gb]] -= 1
                    rows.append(row)
            dim = len(unknowns) - (_rank(rows) if rows else 0)
            if dim:
                out[(du, dv)] = dim
    return out


def tangent_weights_oracle(lam, L, R, bound: int = DEFAULT_ORACLE_BOUND) -> TangentCharacter:
    """Tangent character at the monomial ideal by explicit linear algebra.

    The ideal is (u^lam1, v u^lam2, ..., v^len) with u of weight L and v of
    weight R in the point convention; a homomorphism of bidegree (du, dv)
    then has weight -du*L - dv*R.
    """
    lam = Partition(lam)
    if lam.size > bound:
        raise ValueError(f"|lambda| = {lam.size} exceeds the oracle bound {bound}")
    L, R = scalar(L), scalar(R)
    ws = []
    for (du, dv), dim in hom_character_degrees(lam).items():
        ws.extend([-(L * du) - R * dv] * dim)
    return TangentCharacter(ws)


# -- per-chart data ------------------------------------------------------

def chart_euler(lam, L, R) -> Scalar:
    """Euler class of the tangent space at the fixed point lam of Hilb(C^2).

    The partition's rows lie along the chart coordinate of weight R, which is
    the orientation under which I_mu corresponds to L^|mu| J_mu at alpha = -R/L.
    """
    lam = Partition(lam)
    if not lam:
        return ONE
    return tangent_weights_hilb(lam, R, L).euler()


class HilbertScheme:
    """Fixed-point data and basis changes for Hilb^n of a bound surface."""

    def __init__(self, surface: ToricSurface, n: int):
        if n < 0:
            raise ValueError("n must be nonnegative")
        self.surface = surface
        self.n = n
        self._tables: dict[tuple[int, int], BasisChangeTable] = {}
        self._euler_cache: dict[tuple[int, Partition], Scalar] = {}
        self._n2f: dict[MultiPartition, dict[MultiPartition, Scalar]] = {}
        self._f2n: dict[MultiPartition, dict[MultiPartition, Scalar]] = {}

    @property
    def fixed_points(self) -> list[MultiPartition]:
        return enumerate_multipartitions(self.n, self.surface.s)

    def table(self, k: int, m: int) -> BasisChangeTable:
        key = (k, m)
        if key not in self._tables:
            ch = self.surface.charts[k]
            self._tables[key] = basis_change_table(m, ch.alpha, ch.weight_L)
        return self._tables[key]

    def slot_euler(self, k: int, lam: Partition) -> Scalar:
        key = (k, lam)
        if key not in self._euler_cache:
            ch = self.surface.charts[k]
            self._euler_cache[key] = chart_euler(lam, ch.weight_L, ch.weight_R)
        return self._euler_cache[key]

    def euler(self, label: MultiPartition) -> Scalar:
        out = ONE
        for k, lam in enumerate(label):
            out = out * self.slot_euler(k, lam)
        return out

    def nakajima_to_fixed(self, label: MultiPartition) -> dict[MultiPartition, Scalar]:
        """Coordinates of the Nakajima class of label in the fixed-point basis."""
        if label not in self._n2f:
            factors = []
            for k, lam in enumerate(label):
                if not lam:
                    factors.append([(Partition(), ONE)])
                    continue
                row = self.table(k, lam.size).row(lam)
                factors.append(sorted(row.items(), reverse=True))
            self._n2f[label] = _tensor(factors)
        return self._n2f[label]

    def fixed_to_nakajima(self, label: MultiPartition) -> dict[MultiPartition, Scalar]:
        if label not in self._f2n:
            factors = []
            for k, mu in enumerate(label):
                if not mu:
                    factors.append([(Partition(), ONE)])
                    continue
                tab = self.table(k, mu.size)
                factors.append(sorted(((lam, v) for (m, lam), v in tab.inverse.items() if m == mu), reverse=True))
            self._f2n[label] = _tensor(factors)
        return self._f2n[label]


def _tensor(factors) -> dict[MultiPartition, Scalar]:
    out = {}
    for combo in product(*factors):
        c = ONE
        for _, v in combo:
            c = c * v
        if not c.is_zero():
            out[MultiPartition(p for p, _ in combo)] = c
    return out


_SCHEMES: dict[tuple[ToricSurface, int], HilbertScheme] = {}


def hilbert_scheme(surface: ToricSurface, n: int) -> HilbertScheme:
    key = (surface, n)
    if key not in _SCHEMES:
        _SCHEMES[key] = HilbertScheme(surface, n)
    return _SCHEMES[key]


def hilb_fixed_points(surface: ToricSurface, n: int) -> list[MultiPartition]:
    return enumerate_multipartitions(n, surface.s)


def fixed_class(surface: ToricSurface, label) -> CohClass:
    return CohClass.basis(surface, label, "hilb_fixed")


def nakajima_class(surface: ToricSurface, label) -> CohClass:
    return CohClass.basis(surface, label, "nakajima")


def to_fixed(a: CohClass) -> CohClass:
    if a.basis_kind == "hilb_fixed":
        return a
    if a.basis_kind != "nakajima":
        raise BindingError(f"cannot read a {a.basis_kind} class on the Hilbert scheme side")
    hs = hilbert_scheme(a.surface, a.n)
    out: dict[MultiPartition, Scalar] = {}
    for label, c in a.coeffs.items():
        for f, v in hs.nakajima_to_fixed(label).items():
            out[f] = out.get(f, ZERO) + c * v
    return CohClass(a.surface, a.n, "hilb_fixed", out)


def to_nakajima(a: CohClass) -> CohClass:
    if a.basis_kind == "nakajima":
        return a
    if a.basis_kind != "hilb_fixed":
        raise BindingError(f"cannot read a {a.basis_kind} class on the Hilbert scheme side")
    hs = hilbert_scheme(a.surface, a.n)
    out: dict[MultiPartition, Scalar] = {}
    for label, c in a.coeffs.items():
        for f, v in hs.fixed_to_nakajima(label).items():
            out[f] = out.get(f, ZERO) + c * v
    return CohClass(a.surface, a.n, "nakajima", out)


# -- pairings and three-point functions ------------------------------------

def nakajima_norm(surface: ToricSurface, label: MultiPartition) -> Scalar:
    """prod_k (-1)^(|s_k| - len s_k) (L_k R_k)^len(s_k) / z(s_k)."""
    out = ONE
    for ch, sigma in zip(surface.charts, label):
        sign = -1 if sigma.age % 2 else 1
        out = out * (ch.euler ** len(sigma)) * Fraction(sign, z_of(sigma))
    return out


def _check_pair(a: CohClass, b: CohClass):
    if not a.same_binding(b):
        raise BindingError("classes are bound to different surfaces or sizes")


def pairing_hilb(a: CohClass, b: CohClass) -> Scalar:
    """Poincare pairing from the diagonal Nakajima-basis formula."""
    _check_pair(a, b)
    a, b = to_nakajima(a), to_nakajima(b)
    total = ZERO
    for label, c in a.coeffs.items():
        d = b.coeffs.get(label)
        if d is not None:
            total = total + c * d * nakajima_norm(a.surface, label)
    return total


def pairing_hilb_localized(a: CohClass, b: CohClass) -> Scalar:
    """Poincare pairing as a sum over fixed points: sum A_f B_f e_f."""
    _check_pair(a, b)
    hs = hilbert_scheme(a.surface, a.n)
    a, b = to_fixed(a), to_fixed(b)
    total = ZERO
    for label, c in a.coeffs.items():
        d = b.coeffs.get(label)
        if d is not None:
            total = total + c * d * hs.euler(label)
    return total


def identity_class(surface: ToricSurface, n: int) -> CohClass:
    """The unit: sum of I_f / e_f over fixed points f."""
    hs = hilbert_scheme(surface, n)
    return CohClass(surface, n, "hilb_fixed", {f: hs.euler(f).inverse() for f in hs.fixed_points})


def cup_three_point_deg0(a: CohClass, b: CohClass, c: CohClass) -> Scalar:
    """Triple localization integral: sum_f A_f B_f C_f e_f^2."""
    _check_pair(a, b)
    _check_pair(a, c)
    hs = hilbert_scheme(a.surface, a.n)
    fa, fb, fc = to_fixed(a).coeffs, to_fixed(b).coeffs, to_fixed(c).coeffs
    total = ZERO
    for label, x in fa.items():
        y = fb.get(label)
        z = fc.get(label) if y is not None else None
        if z is not None:
            e = hs.euler(label)
            total = total + x * y * z * e * e
    return total


def cup_product(a: CohClass, b: CohClass) -> CohClass:
    """a cup b in the fixed-point basis (coordinates multiply pointwise times e_f)."""
    _check_pair(a, b)
    hs = hilbert_scheme(a.surface, a.n)
    fa, fb = to_fixed(a).coeffs, to_fixed(b).coeffs
    out = {}
    for label, x in fa.items():
        y = fb.get(label)
        if y is not None:
            out[label] = x * y * hs.euler(label)
    return CohClass(a.surface, a.n, "hilb_fixed", out)


def vanishing_check(lam, mu, nu) -> bool:
    """True iff the three labels have equal sizes slot by slot."""
    lam, mu, nu = (x if isinstance(x, MultiPartition) else MultiPartition(x) for x in (lam, mu, nu))
    if not (len(lam) == len(mu) == len(nu)):
        raise ValueError("labels have different slot counts")
    return lam.slot_sizes == mu.slot_sizes == nu.slot_sizes


def chow_degree(label: MultiPartition) -> int:
    """Complex degree of the Nakajima class: each creation operator p_{-k}
    applied to the point class of a chart adds (k - 1) + 2."""
    return sum((part - 1) + 2 for lam in label for part in lam)


def local_cup(lam, mu, nu, L, R) -> Scalar:
    """Degree-zero three-point function of Nakajima classes on Hilb(C^2)."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if not (lam.size == mu.size == nu.size):
        return ZERO
    if lam.size == 0:
        return ONE
    return _local_cup_cached(lam, mu, nu, str(scalar(L)), str(scalar(R)))


@lru_cache(maxsize=None)
def _local_cup_cached(lam, mu, nu, L_s, R_s) -> Scalar:
    surf = ToricSurface.from_weights([(scalar(L_s), scalar(R_s))], name="chart")
    args = [nakajima_class(surf, MultiPartition([x])) for x in (lam, mu, nu)]
    return cup_three_point_deg0(*args)


# -- series providers --------------------------------------------------------

class LocalTheoryProvider(Protocol):
    """Chart-local three-point series (lam, mu, nu, L, R) -> QSeries.

    Implementations must be symmetric in the three partitions, return the
    degree-zero value as the q^0 coefficient, and give 1 for empty slots.
    ``full_series`` tells verifiers whether positive-degree coefficients are
    genuine data or merely absent.
    """

    full_series: bool

    def __call__(self, lam: Partition, mu: Partition, nu: Partition, L: Scalar, R: Scalar) -> QSeries: ...


class DegreeZeroHilbProvider:
    """Ships only the q^0 term (local cup values); higher terms are zero."""

    full_series = False

    def __init__(self, order: int = DEFAULT_Q_ORDER):
        self.order = order

    def __call__(self, lam, mu, nu, L, R) -> QSeries:
        return QSeries.constant(local_cup(lam, mu, nu, L, R), self.order)


class CallableProvider:
    """Wrap a plain function as a provider."""

    def __init__(self, fn: Callable[..., QSeries], full_series: bool = True):
        self.fn = fn
        self.full_series = full_series

    def __call__(self, lam, mu, nu, L, R) -> QSeries:
        return self.fn(lam, mu, nu, L, R)


def extremal_three_point(lam, mu, nu, surface: ToricSurface, provider: LocalTheoryProvider,
                         order: int = DEFAULT_Q_ORDER) -> QSeries:
    """Product over charts of the provider's local series (zero unless sizes match)."""
    lam, mu, nu = (x if isinstance(x, MultiPartition) else MultiPartition(x) for x in (lam, mu, nu))
    if not vanishing_check(lam, mu, nu):
        return QSeries.zero(order)
    out = QSeries.one(order)
    for ch, a, b, c in zip(surface.charts, lam, mu, nu):
        if not a:
            continue
        out = out * provider(a, b, c, ch.weight_L, ch.weight_R)
    return out


# -- structure constants ------------------------------------------------------

def nakajima_fixed_coords(surface: ToricSurface, n: int) -> dict[MultiPartition, dict[MultiPartition, Scalar]]:
    hs = hilbert_scheme(surface, n)
    return {lab: hs.nakajima_to_fixed(lab) for lab in hs.fixed_points}


def structure_constants(surface: ToricSurface, n: int) -> list[dict]:
    """All nonzero degree-zero three-point functions of Nakajima classes.

    Records are ordered by (lhs, mhs, rhs) in descending lexicographic order,
    with every ordered triple listed.
    """
    hs = hilbert_scheme(surface, n)
    labels = hs.fixed_points
    coords = nakajima_fixed_coords(surface, n)
    by_sizes: dict[tuple[int, ...], list[MultiPartition]] = {}
    for lab in labels:
        by_sizes.setdefault(lab.slot_sizes, []).append(lab)
    values: dict[tuple, Scalar] = {}
    for group in by_sizes.values():
        for i, a in enumerate(group):
            for j in range(i, len(group)):
                b = group[j]
                for k in range(j, len(group)):
                    c = group[k]
                    v = _triple(hs, coords[a], coords[b], coords[c])
                    if not v.is_zero():
                        values[(a, b, c)] = v
    records = []
    for lhs in labels:
        for mhs in by_sizes[lhs.slot_sizes]:
            for rhs in by_sizes[lhs.slot_sizes]:
                key = tuple(sorted((lhs, mhs, rhs), reverse=True))
                v = values.get(key)
                if v is not None:
                    records.append({"basis": "nakajima", "lhs": lhs.to_json(), "mhs": mhs.to_json(),
                                    "rhs": rhs.to_json(), "value": str(v)})
    return records


def _triple(hs: HilbertScheme, fa, fb, fc) -> Scalar:
    total = ZERO
    for label, x in fa.items():
        y = fb.get(label)
        z = fc.get(label) if y is not None else None
        if z is not None:
            e = hs.euler(label)
            total = total + x * y * z * e * e
    return total
