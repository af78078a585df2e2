"""Symmetric functions of a fixed degree over the Scalar field.

Elements are stored as coefficient maps in one of three bases: power sums,
monomials, or integral-form Jack functions.  Jack functions are built by
Gram-Schmidt in power-sum coordinates, where the alpha-deformed Hall pairing
is diagonal, and cached per (degree, alpha) in memory and optionally on disk.
"""
from __future__ import annotations

import hashlib
import json
import os
import threading
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping

from filelock import FileLock

from .exactnum import ONE, ZERO, Scalar, parse_scalar, scalar
from .partitions import Partition, enumerate_partitions, z_of

BASES = ("powersum", "monomial", "jack")
CACHE_ENV = "SYMHILB_CACHE"


class SymFunc:
    """Homogeneous symmetric function of degree n in a named basis."""

    __slots__ = ("degree", "coeffs", "basis", "alpha")

    def __init__(self, degree: int, coeffs: Mapping, basis: str = "powersum", alpha: Scalar | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        if basis == "jack" and alpha is None:
            raise ValueError("a Jack-basis function needs its alpha")
        clean = {}
        for lam, c in coeffs.items():
            lam = lam if isinstance(lam, Partition) else Partition(lam)
            if lam.size != degree:
                raise ValueError(f"{list(lam)} is not a partition of {degree}")
            c = scalar(c)
            if not c.is_zero():
                clean[lam] = c
        self.degree = degree
        self.coeffs = clean
        self.basis = basis
        self.alpha = alpha

    def coeff(self, lam) -> Scalar:
        return self.coeffs.get(Partition(lam), ZERO)

    def __add__(self, other: SymFunc) -> SymFunc:
        self._check_compatible(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return SymFunc(self.degree, out, self.basis, self.alpha)

    def __sub__(self, other: SymFunc) -> SymFunc:
        return self + other.scale(-ONE)

    def scale(self, c) -> SymFunc:
        c = scalar(c)
        return SymFunc(self.degree, {k: v * c for k, v in self.coeffs.items()}, self.basis, self.alpha)

    def _check_compatible(self, other: SymFunc):
        if self.degree != other.degree or self.basis != other.basis:
            raise ValueError("symmetric functions of different degree or basis")
        if self.basis == "jack" and self.alpha != other.alpha:
            raise ValueError("Jack functions with different alpha")

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        return (self.degree, self.basis, self.coeffs) == (other.degree, other.basis, other.coeffs) and \
            (self.basis != "jack" or self.alpha == other.alpha)

    def __repr__(self):
        terms = " + ".join(f"({v})*{self.basis[0]}{list(k)}" for k, v in sorted(self.coeffs.items(), reverse=True))
        return f"SymFunc[{self.basis}]({terms or '0'})"


def powersum(lam) -> SymFunc:
    lam = Partition(lam)
    return SymFunc(lam.size, {lam: ONE}, "powersum")


def monomial(lam) -> SymFunc:
    lam = Partition(lam)
    return SymFunc(lam.size, {lam: ONE}, "monomial")


# -- power sums <-> monomials over the integers ---------------------------

def _p_in_m(rho: Partition, n: int) -> dict[Partition, int]:
    """Coefficients of p_rho in the monomial basis.

    The m_lambda coefficient counts maps from the parts of rho to the rows of
    lambda whose fibre sums equal the row lengths.
    """
    out = {}
    for lam in enumerate_partitions(n):
        if len(lam) <= len(rho):
            c = _fill_count(tuple(rho), tuple(lam))
            if c:
                out[lam] = c
    return out


@lru_cache(maxsize=None)
def _fill_count(parts: tuple[int, ...], capacity: tuple[int, ...]) -> int:
    if not parts:
        return 1 if all(c == 0 for c in capacity) else 0
    first, rest = parts[0], parts[1:]
    total = 0
    for i, c in enumerate(capacity):
        if c >= first:
            total += _fill_count(rest, capacity[:i] + (c - first,) + capacity[i + 1:])
    return total


@lru_cache(maxsize=None)
def p_to_m_matrix(n: int) -> dict[Partition, dict[Partition, int]]:
    return {rho: _p_in_m(rho, n) for rho in enumerate_partitions(n)}


@lru_cache(maxsize=None)
def m_to_p_matrix(n: int) -> dict[Partition, dict[Partition, Fraction]]:
    """Inverse of p_to_m_matrix by triangular solve.

    p_rho involves only m_lambda with lambda dominating rho, so solving from
    the top of the lexicographic order downward expresses each m_lambda.
    """
    pm = p_to_m_matrix(n)
    out: dict[Partition, dict[Partition, Fraction]] = {}
    for lam in enumerate_partitions(n):  # descending lex
        diag = Fraction(pm[lam][lam])
        # m_lam = (p_lam - sum_{mu > lam} pm[lam][mu] m_mu) / diag
        acc: dict[Partition, Fraction] = {lam: Fraction(1)}
        for mu, c in pm[lam].items():
            if mu == lam:
                continue
            for rho, d in out[mu].items():
                acc[rho] = acc.get(rho, Fraction(0)) - c * d
        out[lam] = {rho: v / diag for rho, v in acc.items() if v}
    return out


def powersum_to_monomial(f: SymFunc) -> SymFunc:
    if f.basis != "powersum":
        raise ValueError("expected a power-sum basis function")
    pm = p_to_m_matrix(f.degree)
    out: dict[Partition, Scalar] = {}
    for rho, c in f.coeffs.items():
        for lam, k in pm[rho].items():
            out[lam] = out.get(lam, ZERO) + c * k
    return SymFunc(f.degree, out, "monomial")


def monomial_to_powersum(f: SymFunc) -> SymFunc:
    if f.basis != "monomial":
        raise ValueError("expected a monomial basis function")
    mp = m_to_p_matrix(f.degree)
    out: dict[Partition, Scalar] = {}
    for lam, c in f.coeffs.items():
        for rho, k in mp[lam].items():
            out[rho] = out.get(rho, ZERO) + c * k
    return SymFunc(f.degree, out, "powersum")


def to_powersum(f: SymFunc) -> SymFunc:
    if f.basis == "powersum":
        return f
    if f.basis == "monomial":
        return monomial_to_powersum(f)
    table = default_store().jack_powersum(f.degree, f.alpha)
    out: dict[Partition, Scalar] = {}
    for mu, c in f.coeffs.items():
        for rho, v in table[mu].items():
            out[rho] = out.get(rho, ZERO) + c * v
    return SymFunc(f.degree, out, "powersum")


def _pair_weight(rho: Partition, alpha: Scalar) -> Scalar:
    return alpha ** len(rho) * z_of(rho)


def inner_product_alpha(f: SymFunc, g: SymFunc, alpha) -> Scalar:
    """Deformed Hall pairing: <p_rho, p_sigma> = delta * z_rho * alpha^len(rho)."""
    alpha = scalar(alpha)
    if alpha.is_zero():
        raise ValueError("alpha must be nonzero")
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} vs {g.degree}")
    fp, gp = to_powersum(f), to_powersum(g)
    total = ZERO
    for rho, c in fp.coeffs.items():
        d = gp.coeffs.get(rho)
        if d is not None:
            total = total + c * d * _pair_weight(rho, alpha)
    return total


# -- Jack functions -------------------------------------------------------

def _jack_powersum_table(n: int, alpha: Scalar) -> dict[Partition, dict[Partition, Scalar]]:
    """Integral-form Jack functions of degree n in power-sum coordinates."""
    weights = {rho: _pair_weight(rho, alpha) for rho in enumerate_partitions(n)}
    mp = m_to_p_matrix(n)

    def pair(u, v):
        acc = ZERO
        for rho, c in u.items():
            d = v.get(rho)
            if d is not None:
                acc = acc + c * d * weights[rho]
        return acc

    monic: dict[Partition, dict[Partition, Scalar]] = {}
    norms: dict[Partition, Scalar] = {}
    # ascending lex order extends dominance order, smallest partition (1^n) first
    for lam in reversed(enumerate_partitions(n)):
        vec = {rho: scalar(c) for rho, c in mp[lam].items()}
        for mu, pm_vec in monic.items():
            coef = pair(vec, pm_vec)
            if coef.is_zero():
                continue
            coef = coef / norms[mu]
            for rho, c in pm_vec.items():
                vec[rho] = vec.get(rho, ZERO) - coef * c
        vec = {rho: c for rho, c in vec.items() if not c.is_zero()}
        monic[lam] = vec
        norms[lam] = pair(vec, vec)
    out = {}
    for lam, vec in monic.items():
        # only p_{1^n} contains m_{1^n}, with coefficient n!
        factor = vec[Partition([1] * n)].inverse()
        out[lam] = {rho: c * factor for rho, c in vec.items()}
    return out


def _alpha_key(alpha: Scalar) -> str:
    return hashlib.sha256(str(alpha).encode()).hexdigest()[:24]


class JackStore:
    """Memory cache of Jack tables with an optional JSON disk cache.

    Disk files hold monomial-basis coefficients as canonical strings, one file
    per (degree, alpha); writes take a file lock.
    """

    def __init__(self, cache_dir: str | os.PathLike | None = None):
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self._mem: dict[tuple[int, str], dict] = {}
        self._lock = threading.Lock()
        self.disk_hits = 0
        self.computed = 0

    def _path(self, n: int, alpha: Scalar) -> Path:
        return self.cache_dir / f"jack_n{n}_{_alpha_key(alpha)}.json"

    def jack_powersum(self, n: int, alpha) -> dict[Partition, dict[Partition, Scalar]]:
        alpha = scalar(alpha)
        if alpha.is_zero():
            raise ValueError("alpha must be nonzero")
        key = (n, str(alpha))
        with self._lock:
            hit = self._mem.get(key)
        if hit is not None:
            return hit
        table = self._load(n, alpha) if self.cache_dir else None
        if table is None:
            table = _jack_powersum_table(n, alpha)
            self.computed += 1
            if self.cache_dir:
                self._save(n, alpha, table)
        with self._lock:
            self._mem[key] = table
        return table

    def _load(self, n: int, alpha: Scalar):
        path = self._path(n, alpha)
        if not path.exists():
            return None
        with FileLock(str(path) + ".lock"):
            data = json.loads(path.read_text())
        if data.get("alpha") != str(alpha) or data.get("n") != n:
            return None
        table = {}
        for mu_s, coeffs in data["jack"].items():
            mono = SymFunc(n, {_key_partition(k): parse_scalar(v) for k, v in coeffs.items()}, "monomial")
            table[_key_partition(mu_s)] = monomial_to_powersum(mono).coeffs
        self.disk_hits += 1
        return table

    def _save(self, n: int, alpha: Scalar, table) -> None:
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        path = self._path(n, alpha)
        payload = {"n": n, "alpha": str(alpha), "jack": {}}
        for mu in enumerate_partitions(n):
            mono = powersum_to_monomial(SymFunc(n, table[mu], "powersum"))
            payload["jack"][_partition_key(mu)] = {
                _partition_key(lam): str(mono.coeffs[lam]) for lam in sorted(mono.coeffs, reverse=True)}
        text = json.dumps(payload, indent=1, sort_keys=False)
        with FileLock(str(path) + ".lock"):
            tmp = path.with_suffix(".tmp")
            tmp.write_text(text)
            tmp.replace(path)


def _partition_key(lam: Partition) -> str:
    return ",".join(map(str, lam))


def _key_partition(key: str) -> Partition:
    return Partition(int(x) for x in key.split(",")) if key else Partition()


_DEFAULT_STORE: JackStore | None = None


def default_store() -> JackStore:
    global _DEFAULT_STORE
    if _DEFAULT_STORE is None:
        _DEFAULT_STORE = JackStore(os.environ.get(CACHE_ENV) or None)
    return _DEFAULT_STORE


def set_default_store(store: JackStore) -> None:
    global _DEFAULT_STORE
    _DEFAULT_STORE = store


def jack_integral(mu, alpha, store: JackStore | None = None) -> SymFunc:
    """Integral-form Jack function J_mu^(alpha) in the power-sum basis."""
    mu = Partition(mu)
    alpha = scalar(alpha)
    table = (store or default_store()).jack_powersum(mu.size, alpha)
    return SymFunc(mu.size, table[mu], "powersum")


def jack_norm(mu, alpha) -> Scalar:
    """Closed form of <J_mu, J_mu>: product over boxes of (a*alpha + l + 1)(a*alpha + l + alpha)."""
    mu = Partition(mu)
    alpha = scalar(alpha)
    out = ONE
    for box in mu.boxes():
        a, l = mu.arm_leg(box)
        out = out * (alpha * a + l + 1) * (alpha * a + l + alpha)
    return out


class BasisChangeTable:
    """Coefficients c[lam, mu] with L^len(lam) pbar_lam = sum_mu c[lam, mu] L^n J_mu.

    ``inverse[mu, lam]`` gives the reverse expansion
    L^n J_mu = sum_lam inverse[mu, lam] L^len(lam) pbar_lam.
    """

    def __init__(self, n: int, alpha: Scalar, L: Scalar, entries, inverse):
        self.n = n
        self.alpha = alpha
        self.L = L
        self.entries: dict[tuple[Partition, Partition], Scalar] = entries
        self.inverse: dict[tuple[Partition, Partition], Scalar] = inverse

    def row(self, lam) -> dict[Partition, Scalar]:
        lam = Partition(lam)
        return {mu: v for (l, mu), v in self.entries.items() if l == lam}

    def __getitem__(self, key) -> Scalar:
        lam, mu = key
        return self.entries.get((Partition(lam), Partition(mu)), ZERO)


def basis_change_table(n: int, alpha, L, store: JackStore | None = None) -> BasisChangeTable:
    alpha, L = scalar(alpha), scalar(L)
    table = (store or default_store()).jack_powersum(n, alpha)
    parts = enumerate_partitions(n)
    norms = {mu: inner_product_alpha(SymFunc(n, table[mu]), SymFunc(n, table[mu]), alpha) for mu in parts}
    entries, inverse = {}, {}
    for lam in parts:
        pref = L ** (len(lam) - n) * alpha ** len(lam)
        for mu in parts:
            m = table[mu].get(lam)
            if m is None:
                continue
            entries[(lam, mu)] = pref * m / norms[mu]
            inverse[(mu, lam)] = L ** (n - len(lam)) * m * z_of(lam)
    return BasisChangeTable(n, alpha, L, entries, inverse)
