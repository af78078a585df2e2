"""Smooth toric surfaces: fan files, validation and per-chart tangent weights."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path

from .exactnum import ZERO, Scalar, t1, t2


class FanError(ValueError):
    """Invalid fan input; the message names the offending location."""


class NonSmoothConeError(FanError):
    pass


@dataclass(frozen=True)
class Fan:
    rays: tuple[tuple[int, int], ...]
    cones: tuple[tuple[int, int], ...]

    def covers_plane(self) -> bool:
        """True when the 2D cones form a complete fan (surface is compact)."""
        return _is_complete(self)


def _cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class Chart:
    cone_index: int
    fixed_point_id: int
    weight_L: Scalar
    weight_R: Scalar

    @property
    def alpha(self) -> Scalar:
        """Jack parameter -R/L of the chart."""
        return -self.weight_R / self.weight_L

    @property
    def euler(self) -> Scalar:
        return self.weight_L * self.weight_R


def parse_fan(text: str) -> Fan:
    """Parse fan JSON text and check rays and cones."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FanError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise FanError("fan file must contain a JSON object with 'rays' and 'cones'")
    for key in ("rays", "cones"):
        if key not in data:
            raise FanError(f"missing key '{key}'")
        if not isinstance(data[key], list):
            raise FanError(f"'{key}' must be a list")
    rays = []
    for k, r in enumerate(data["rays"]):
        if not (isinstance(r, list) and len(r) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in r)):
            raise FanError(f"rays[{k}]: expected a pair of integers, got {r!r}")
        if gcd(r[0], r[1]) != 1:
            raise FanError(f"rays[{k}]: non-primitive ray {r}")
        rays.append((r[0], r[1]))
    if len(set(rays)) != len(rays):
        raise FanError("duplicate ray")
    cones = []
    for k, c in enumerate(data["cones"]):
        if not (isinstance(c, list) and len(c) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in c)):
            raise FanError(f"cones[{k}]: expected a pair of ray indices, got {c!r}")
        for idx in c:
            if not 0 <= idx < len(rays):
                raise FanError(f"cones[{k}]: ray index {idx} out of range")
        if c[0] == c[1] or _cross(rays[c[0]], rays[c[1]]) == 0:
            raise FanError(f"cones[{k}]: degenerate cone {c}")
        cones.append((c[0], c[1]))
    fan = Fan(tuple(rays), tuple(cones))
    _check_overlaps(fan)
    return fan


def _strictly_inside(x, a, b) -> bool:
    if _cross(a, b) < 0:
        a, b = b, a
    return _cross(a, x) > 0 and _cross(x, b) > 0


def _check_overlaps(fan: Fan) -> None:
    for i, (a, b) in enumerate(fan.cones):
        for j in range(i + 1, len(fan.cones)):
            c, d = fan.cones[j]
            ra, rb, rc, rd = (fan.rays[k] for k in (a, b, c, d))
            if {a, b} == {c, d}:
                raise FanError(f"cones[{i}] and cones[{j}] coincide")
            if (_strictly_inside(rc, ra, rb) or _strictly_inside(rd, ra, rb)
                    or _strictly_inside(ra, rc, rd) or _strictly_inside(rb, rc, rd)):
                raise FanError(f"cones[{i}] and cones[{j}] overlap beyond a common face")


def _dual_weights(v1, v2) -> tuple[Scalar, Scalar]:
    det = _cross(v1, v2)
    # rows of the inverse transpose of [[v1], [v2]]: m1 = (v2y, -v2x)/det, m2 = (-v1y, v1x)/det
    m1 = (Fraction(v2[1], det), Fraction(-v2[0], det))
    m2 = (Fraction(-v1[1], det), Fraction(v1[0], det))
    return m1[0] * t1 + m1[1] * t2, m2[0] * t1 + m2[1] * t2


def validate_smooth(fan: Fan) -> list[Chart]:
    """One chart per 2D cone with weights (L, R) taken in the cone's ray order."""
    charts = []
    for k, (a, b) in enumerate(fan.cones):
        det = _cross(fan.rays[a], fan.rays[b])
        if abs(det) != 1:
            raise NonSmoothConeError(f"cones[{k}]: non-smooth cone {[a, b]} (determinant {det})")
        L, R = _dual_weights(fan.rays[a], fan.rays[b])
        charts.append(Chart(k, k, L, R))
    return charts


@dataclass(frozen=True)
class ToricSurface:
    """A validated surface: its charts and whether the fan is complete."""

    name: str
    charts: tuple[Chart, ...]
    compact: bool = False
    fan: Fan | None = field(default=None, compare=False)

    @property
    def s(self) -> int:
        return len(self.charts)

    @property
    def weights(self) -> tuple[tuple[Scalar, Scalar], ...]:
        return tuple((c.weight_L, c.weight_R) for c in self.charts)

    @classmethod
    def from_fan(cls, fan: Fan, name: str = "fan") -> ToricSurface:
        charts = validate_smooth(fan)
        return cls(name, tuple(charts), _is_complete(fan), fan)

    @classmethod
    def from_weights(cls, pairs, name: str = "local") -> ToricSurface:
        """Disjoint union of affine charts with prescribed weights (non-compact)."""
        charts = tuple(Chart(k, k, Scalar(L) if not isinstance(L, Scalar) else L,
                             Scalar(R) if not isinstance(R, Scalar) else R)
                       for k, (L, R) in enumerate(pairs))
        for c in charts:
            if c.weight_L.is_zero() or c.weight_R.is_zero():
                raise FanError("tangent weights must be nonzero")
        return cls(name, charts, False, None)

    def integral_of_one(self) -> Scalar:
        return sum((1 / c.euler for c in self.charts), ZERO)

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.name, self.weights))
            object.__setattr__(self, "_hash", h)
        return h


def _is_complete(fan: Fan) -> bool:
    # with overlaps already excluded, the fan is complete iff the cones form
    # a single cycle through shared rays, each ray lying on exactly two cones
    if len(fan.cones) < 3:
        return False
    count: dict[int, int] = {}
    for a, b in fan.cones:
        count[a] = count.get(a, 0) + 1
        count[b] = count.get(b, 0) + 1
    if any(v != 2 for v in count.values()):
        return False
    # walk the cycle of cones through shared rays
    adj: dict[int, list[int]] = {}
    for a, b in fan.cones:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = fan.cones[0][0]
    seen, prev, cur = {start}, None, start
    while True:
        nxt = [r for r in adj[cur] if r != prev]
        if not nxt:
            return False
        prev, cur = cur, nxt[0]
        if cur == start:
            break
        if cur in seen:
            return False
        seen.add(cur)
    return len(seen) == len(count)


BUILTIN_FANS = {
    "c2": {"rays": [[1, 0], [0, 1]], "cones": [[0, 1]]},
    "p2": {"rays": [[1, 0], [0, 1], [-1, -1]], "cones": [[0, 1], [1, 2], [2, 0]]},
    "p1xp1": {"rays": [[1, 0], [0, 1], [-1, 0], [0, -1]], "cones": [[0, 1], [1, 2], [2, 3], [3, 0]]},
}


def builtin_fan_json(name: str) -> str:
    if name in BUILTIN_FANS:
        return json.dumps(BUILTIN_FANS[name])
    if name.startswith("hirzebruch:"):
        try:
            a = int(name.split(":", 1)[1])
        except ValueError:
            raise FanError(f"bad Hirzebruch index in {name!r}") from None
        if a < 0:
            raise FanError("Hirzebruch index must be nonnegative")
        return json.dumps({"rays": [[1, 0], [0, 1], [-1, a], [0, -1]],
                           "cones": [[0, 1], [1, 2], [2, 3], [3, 0]]})
    raise FanError(f"unknown builtin fan {name!r}")


def is_builtin(name: str) -> bool:
    return name in BUILTIN_FANS or name.startswith("hirzebruch:")


def load_fan(source: str) -> Fan:
    """Builtin name or path to a fan file."""
    if is_builtin(source):
        return parse_fan(builtin_fan_json(source))
    path = Path(source)
    if not path.exists():
        raise FanError(f"no builtin fan or file named {source!r}")
    return parse_fan(path.read_text())


def load_surface(source: str) -> ToricSurface:
    return ToricSurface.from_fan(load_fan(source), name=source)


def c2(L=None, R=None) -> ToricSurface:
    """The affine plane, optionally with custom weights."""
    if L is None and R is None:
        return load_surface("c2")
    return ToricSurface.from_weights([(L, R)], name="c2")


def p2() -> ToricSurface:
    return load_surface("p2")


def localization_checks(surface: ToricSurface) -> dict[str, Scalar]:
    """Equivariant integrals of 1, c1, c1^2 and c2 via the charts."""
    ch = surface.charts
    return {
        "one": sum((1 / c.euler for c in ch), ZERO),
        "c1": sum(((c.weight_L + c.weight_R) / c.euler for c in ch), ZERO),
        "c1^2": sum(((c.weight_L + c.weight_R) ** 2 / c.euler for c in ch), ZERO),
        "c2": sum((c.euler / c.euler for c in ch), ZERO),
    }

