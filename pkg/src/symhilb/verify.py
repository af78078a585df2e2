"""Verification suites shared by the command line and the test suite.

Every suite returns a Report whose records carry pass/fail/skipped status.
Suites taking ``n`` check every size from 1 through n.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from math import factorial

from .bridge import L_map, Report, verify_degree_match, verify_isometry, verify_theorem_structure
from .classes import CohClass
from .exactnum import IUNIT, ONE, ZERO, Scalar, scalar, t1, t2
from .hilb import (DegreeZeroHilbProvider, chow_degree, cup_three_point_deg0, extremal_three_point,
                   identity_class, local_cup, nakajima_class, nakajima_norm,
                   pairing_hilb, pairing_hilb_localized, structure_constants, tangent_weights_hilb,
                   tangent_weights_oracle, to_fixed, vanishing_check)
from .orb import (DegreeZeroOrbProvider, calibration_failures, cr_three_point_deg0_c2,
                  extended_three_point, orb_class, orb_fixed_classes, orb_norm, orb_pairing,
                  orb_product, orb_three_point_deg0, orb_unit)
from .partitions import MultiPartition, Partition, enumerate_multipartitions, enumerate_partitions, hook_product
from .symfun import (basis_change_table, inner_product_alpha, jack_integral,
                     powersum_to_monomial)
from .toric import ToricSurface

ORACLE_HARD_CAP = 8


def _sizes(n: int, start: int = 1):
    return range(start, n + 1)


# -- pairings -----------------------------------------------------------------

def suite_pairings(surface: ToricSurface, n: int) -> Report:
    """Gram matrices on both sides against the closed-form diagonal products.

    The Hilbert side is evaluated by localization, independently of the
    closed form it is compared with.
    """
    rep = Report()
    for m in _sizes(n):
        labels = enumerate_multipartitions(m, surface.s)
        for a in labels:
            for b in labels:
                oa, ob = orb_class(surface, a), orb_class(surface, b)
                rep.add("orb-pairing", (a, b), orb_pairing(oa, ob), orb_norm(surface, a) if a == b else ZERO)
                ha, hb = nakajima_class(surface, a), nakajima_class(surface, b)
                rep.add("hilb-pairing", (a, b), pairing_hilb_localized(ha, hb),
                        nakajima_norm(surface, a) if a == b else ZERO)
    return rep


def suite_cross_pairing(surface: ToricSurface, n: int) -> Report:
    rep = Report()
    for m in _sizes(n):
        labels = enumerate_multipartitions(m, surface.s)
        for a in labels:
            for b in labels:
                ha, hb = nakajima_class(surface, a), nakajima_class(surface, b)
                rep.add("cross-pairing", (a, b), pairing_hilb(ha, hb), pairing_hilb_localized(ha, hb))
    return rep


def random_scalar(rng: random.Random) -> Scalar:
    re = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    im = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    lin = rng.randint(-2, 2) * t1 + rng.randint(-2, 2) * t2
    val = re + IUNIT * im + lin
    if rng.random() < 0.3:
        den = t1 + rng.randint(1, 3) * t2
        val = val / den
    return val if not val.is_zero() else ONE


def random_orb_class(surface: ToricSurface, n: int, rng: random.Random, terms: int = 3) -> CohClass:
    labels = orb_fixed_classes(surface, n)
    picks = rng.sample(labels, min(terms, len(labels)))
    return CohClass(surface, n, "orb_fixed", {lab: random_scalar(rng) for lab in picks})


def suite_isometry(surface: ToricSurface, n: int, random_pairs: int = 20, seed: int = 0) -> Report:
    rep = Report()
    rng = random.Random(seed)
    for m in _sizes(n):
        rep.extend(verify_isometry(surface, m))
        for _ in range(random_pairs):
            a = random_orb_class(surface, m, rng)
            b = random_orb_class(surface, m, rng)
            rep.add("isometry-bilinear", None, orb_pairing(a, b), pairing_hilb(L_map(a), L_map(b)))
    return rep


def suite_degrees(surface: ToricSurface, n: int) -> Report:
    rep = Report()
    for m in _sizes(n):
        rep.extend(verify_degree_match(surface, m))
    return rep


# -- tangent oracle -------------------------------------------------------------

def suite_tangent_oracle(n: int, bound: int = 6, weights=None) -> Report:
    rep = Report()
    L, R = weights if weights is not None else (t1, t2)
    top = min(n, bound, ORACLE_HARD_CAP)
    for m in _sizes(top):
        for lam in enumerate_partitions(m):
            formula = tangent_weights_hilb(lam, L, R)
            oracle = tangent_weights_oracle(lam, L, R, bound=top)
            rep.add("tangent-oracle", [list(lam)], formula.weights, oracle.weights,
                    "pass" if formula == oracle else "fail")
    if n > top:
        rep.add("tangent-oracle", [f"|lambda| in {top + 1}..{n}"], None, None, "skipped")
    return rep


# -- Jack functions ---------------------------------------------------------

def schur_bialternant(lam: Partition, nvars: int):
    """Schur polynomial as a sympy expression via a_{lam+delta}/a_delta."""
    import sympy
    xs = sympy.symbols(f"x0:{nvars}")
    parts = list(lam) + [0] * (nvars - len(lam))
    num = sympy.Matrix(nvars, nvars, lambda i, j: xs[i] ** (parts[j] + nvars - 1 - j)).det(method="berkowitz")
    vdm = sympy.Matrix(nvars, nvars, lambda i, j: xs[i] ** (nvars - 1 - j)).det(method="berkowitz")
    q, r = sympy.div(sympy.Poly(num, *xs), sympy.Poly(vdm, *xs))
    if not r.is_zero:
        raise ArithmeticError("bialternant division left a remainder")
    return q, xs


def monomial_coeffs_of_poly(poly, nvars: int, n: int) -> dict[Partition, Fraction]:
    """Read m_lambda coefficients from a symmetric polynomial in nvars variables."""
    out = {}
    for lam in enumerate_partitions(n):
        if len(lam) > nvars:
            continue
        exps = tuple(list(lam) + [0] * (nvars - len(lam)))
        c = poly.as_dict().get(exps, 0)
        if c:
            out[lam] = Fraction(int(c.p), int(c.q)) if hasattr(c, "p") else Fraction(c)
    return out


def suite_jack(n: int, alpha=None, orth_max: int = 8, schur_max: int = 5, roundtrip_max: int = 6,
               L=None) -> Report:
    rep = Report()
    alpha = scalar(alpha) if alpha is not None else t1
    L = scalar(L) if L is not None else t1
    for m in _sizes(min(n, orth_max)):
        parts = enumerate_partitions(m)
        jacks = {mu: jack_integral(mu, alpha) for mu in parts}
        for i, a in enumerate(parts):
            for b in parts[i + 1:]:
                rep.add("jack-orthogonality", [list(a), list(b)], inner_product_alpha(jacks[a], jacks[b], alpha), ZERO)
            mono = powersum_to_monomial(jacks[a])
            bad = [mu for mu in mono.coeffs if not a.dominates(mu)]
            rep.add("jack-triangularity", [list(a)], len(bad), 0)
            rep.add("jack-normalization", [list(a)], mono.coeff([1] * m), Fraction(factorial(m)))
    for m in _sizes(min(n, schur_max)):
        for lam in enumerate_partitions(m):
            mono = powersum_to_monomial(jack_integral(lam, ONE))
            poly, _ = schur_bialternant(lam, m)
            schur = monomial_coeffs_of_poly(poly, m, m)
            expected = {mu: scalar(c * hook_product(lam)) for mu, c in schur.items()}
            rep.add("jack-schur", [list(lam)], mono.coeffs == expected, True)
    for m in _sizes(min(n, roundtrip_max)):
        tab = basis_change_table(m, alpha, L)
        parts = enumerate_partitions(m)
        for lam in parts:
            for nu in parts:
                acc = ZERO
                for mu in parts:
                    c = tab.entries.get((lam, mu))
                    d = tab.inverse.get((mu, nu))
                    if c is not None and d is not None:
                        acc = acc + c * d
                rep.add("jack-roundtrip", [list(lam), list(nu)], acc, ONE if lam == nu else ZERO)
    return rep


# -- three-point functions --------------------------------------------------------

def suite_product_formula(surface: ToricSurface, n: int) -> Report:
    """Global localization equals the slotwise product of chart-local values."""
    rep = Report()
    provider = DegreeZeroHilbProvider()
    for m in _sizes(n):
        for rec in structure_constants(surface, m):
            a, b, c = (MultiPartition(rec[k]) for k in ("lhs", "mhs", "rhs"))
            local = ONE
            for ch, x, y, z in zip(surface.charts, a, b, c):
                if x:
                    local = local * local_cup(x, y, z, ch.weight_L, ch.weight_R)
            rep.add("product-formula", (a, b, c), scalar(rec["value"]), local)
            series = extremal_three_point(a, b, c, surface, provider)
            rep.add("product-series-q0", (a, b, c), series.coeff(0), local)
    return rep


def suite_vanishing(surface: ToricSurface, n: int) -> Report:
    rep = Report()
    hp, op = DegreeZeroHilbProvider(), DegreeZeroOrbProvider()
    for m in _sizes(n):
        labels = enumerate_multipartitions(m, surface.s)
        coords = {lab: to_fixed(nakajima_class(surface, lab)) for lab in labels}
        for a, b, c in product(labels, repeat=3):
            if vanishing_check(a, b, c):
                continue
            hv = cup_three_point_deg0(coords[a], coords[b], coords[c])
            ov = orb_three_point_deg0(a, b, c, surface)
            ok = hv.is_zero() and ov.is_zero() and extremal_three_point(a, b, c, surface, hp).is_zero() \
                and extended_three_point(a, b, c, surface, op).series.is_zero()
            rep.add("vanishing", (a, b, c), ok, True)
    return rep


def _orb_structure(n: int, L, R):
    parts = enumerate_partitions(n)
    euler = scalar(L) * scalar(R)
    norms = {p: euler ** len(p) * Fraction(1, p.z) for p in parts}
    table = {}
    for a in parts:
        for b in parts:
            row = {}
            for c in parts:
                v = cr_three_point_deg0_c2(a, b, c, L, R)
                if not v.is_zero():
                    row[c] = v / norms[c]
            table[(a, b)] = row
    return parts, table


def _mul(table, x: dict, y: dict) -> dict:
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for c, v in table[(a, b)].items():
                out[c] = out.get(c, ZERO) + ca * cb * v
    return {k: v for k, v in out.items() if not v.is_zero()}


def suite_cr_calibration(n: int, weights=None, assoc_max: int = 4, sym_max: int = 5) -> Report:
    rep = Report()
    L, R = weights if weights is not None else (t1, t2)
    euler = scalar(L) * scalar(R)
    for m in _sizes(n):
        bad = calibration_failures(m, L, R)
        unit = Partition([1] * m)
        for lam in enumerate_partitions(m):
            for mu in enumerate_partitions(m):
                lhs = cr_three_point_deg0_c2(lam, mu, unit, L, R) / euler ** m
                rhs = euler ** len(lam) * Fraction(1, lam.z) if lam == mu else ZERO
                rep.add("cr-calibration", [list(lam), list(mu)], lhs, rhs)
        if bad:
            rep.add("cr-calibration-summary", [m], len(bad), 0)
        if m <= sym_max:
            parts = enumerate_partitions(m)
            for a, b, c in product(parts, repeat=3):
                if not (a >= b >= c):
                    continue
                base = cr_three_point_deg0_c2(a, b, c, L, R)
                for perm in {(b, a, c), (a, c, b), (c, b, a), (b, c, a), (c, a, b)}:
                    rep.add("cr-symmetry", [list(x) for x in perm], cr_three_point_deg0_c2(*perm, L, R), base)
                if not base.is_zero():
                    deg = base.homogeneous_degree()
                    expected = sum(m + len(x) for x in (a, b, c)) - 2 * m
                    rep.add("cr-grading", [list(a), list(b), list(c)], deg, expected)
        if m <= assoc_max:
            parts, table = _orb_structure(m, L, R)
            for a, b, c in product(parts, repeat=3):
                left = _mul(table, _mul(table, {a: ONE}, {b: ONE}), {c: ONE})
                right = _mul(table, {a: ONE}, _mul(table, {b: ONE}, {c: ONE}))
                rep.add("cr-associativity", [list(a), list(b), list(c)], left == right, True)
    return rep


def suite_cup_table(surface: ToricSurface, n: int) -> Report:
    """Unit axiom, commutativity, grading and associativity of exported constants."""
    rep = Report()
    for m in _sizes(n):
        labels = enumerate_multipartitions(m, surface.s)
        records = structure_constants(surface, m)
        values = {(tuple(map(tuple, r["lhs"])), tuple(map(tuple, r["mhs"])), tuple(map(tuple, r["rhs"]))): scalar(r["value"])
                  for r in records}
        key = lambda lab: tuple(tuple(p) for p in lab)  # noqa: E731
        for (a, b, c), v in values.items():
            for perm in {(b, a, c), (a, c, b), (c, b, a)}:
                rep.add("cup-commutativity", [list(map(list, x)) for x in perm], values.get(perm, ZERO), v)
            A, B, C = (MultiPartition(x) for x in (a, b, c))
            deg = v.homogeneous_degree()
            rep.add("cup-grading", (A, B, C), deg, chow_degree(A) + chow_degree(B) + chow_degree(C) - 2 * m)
        one = identity_class(surface, m)
        for a in labels:
            ha = nakajima_class(surface, a)
            for b in labels:
                if a.slot_sizes != b.slot_sizes:
                    continue
                hb = nakajima_class(surface, b)
                pair = pairing_hilb(ha, hb)
                rep.add("cup-unit", (a, b), cup_three_point_deg0(one, ha, hb), pair)
                rep.add("cup-unit", (b, a), cup_three_point_deg0(ha, hb, one), pair)
        ounit = orb_unit(surface, m)
        for a in labels:
            prod_a = orb_product(orb_class(surface, a), ounit)
            rep.add("orb-unit", a, prod_a == orb_class(surface, a), True)
        if m <= 3:
            norms = {lab: nakajima_norm(surface, lab) for lab in labels}
            table = {}
            for (a, b, c), v in values.items():
                table.setdefault((a, b), {})[c] = v / norms[MultiPartition(c)]
            for a, b, c in product(labels, repeat=3):
                ka, kb, kc = key(a), key(b), key(c)
                x = {ka: ONE}
                left = _mul_keyed(table, _mul_keyed(table, x, {kb: ONE}), {kc: ONE})
                right = _mul_keyed(table, x, _mul_keyed(table, {kb: ONE}, {kc: ONE}))
                rep.add("cup-associativity", (a, b, c), left == right, True)
    return rep


def _mul_keyed(table, x: dict, y: dict) -> dict:
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for c, v in table.get((a, b), {}).items():
                out[c] = out.get(c, ZERO) + ca * cb * v
    return {k: v for k, v in out.items() if not v.is_zero()}


def suite_theorem(surface: ToricSurface, n: int, order: int = 10) -> Report:
    rep = Report()
    for m in _sizes(n):
        rep.extend(verify_theorem_structure(surface, m, DegreeZeroOrbProvider(order), DegreeZeroHilbProvider(order),
                                            order=order, include_pairings=False))
    return rep


SUITES = ("pairings", "isometry", "degrees", "tangent-oracle", "jack", "product-formula", "cr-calibration",
          "cross-pairing", "vanishing", "cup-table", "theorem")


def run_suite(name: str, surface: ToricSurface, n: int, oracle_bound: int = 6, q_order: int = 10) -> Report:
    if name == "pairings":
        return suite_pairings(surface, n)
    if name == "cross-pairing":
        return suite_cross_pairing(surface, n)
    if name == "isometry":
        return suite_isometry(surface, n)
    if name == "degrees":
        return suite_degrees(surface, n)
    if name == "tangent-oracle":
        return suite_tangent_oracle(n, bound=oracle_bound)
    if name == "jack":
        rep = Report()
        for ch in surface.charts:
            rep.extend(suite_jack(n, alpha=ch.alpha, L=ch.weight_L, orth_max=min(n, 8), schur_max=min(n, 5),
                                  roundtrip_max=min(n, 6)))
        return rep
    if name == "product-formula":
        return suite_product_formula(surface, n)
    if name == "cr-calibration":
        rep = Report()
        for ch in surface.charts:
            rep.extend(suite_cr_calibration(n, (ch.weight_L, ch.weight_R)))
        return rep
    if name == "vanishing":
        return suite_vanishing(surface, n)
    if name == "cup-table":
        return suite_cup_table(surface, n)
    if name == "theorem":
        return suite_theorem(surface, n, q_order)
    raise ValueError(f"unknown suite {name!r}")
