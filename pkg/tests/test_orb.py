from fractions import Fraction
from itertools import permutations, product
from math import factorial

import pytest

from symhilb.exactnum import ZERO, t1, t2
from symhilb.orb import (CalibrationError, DegreeZeroOrbProvider, calibration_failures, cr_three_point_deg0_c2,
                         euler_orb_tangent, extended_three_point, orb_class, orb_fixed_classes, orb_pairing,
                         orb_product, orb_three_point_deg0, orb_unit, orbifold_degree, require_calibrated)
from symhilb.partitions import MultiPartition, Partition, cycle_type, enumerate_partitions
from symhilb.toric import c2, load_surface, p2

L, R = t1, t2
LR = L * R


def test_fixed_classes():
    assert orb_fixed_classes(c2(), 2) == [((2,),), ((1, 1),)]
    assert len(orb_fixed_classes(p2(), 1)) == 3
    assert len(orb_fixed_classes(load_surface("p1xp1"), 2)) == 14


def test_pairing_examples():
    S = c2()
    x, y = orb_class(S, [[2]]), orb_class(S, [[1, 1]])
    assert orb_pairing(x, x) == LR / 2
    assert orb_pairing(y, y) == LR ** 2 / 2
    assert orb_pairing(x, y) == ZERO


def test_euler_examples():
    S = c2()
    assert euler_orb_tangent(MultiPartition([[2]]), S) == LR
    assert euler_orb_tangent(MultiPartition([[1, 1]]), S) == LR ** 2
    P = p2()
    c = P.charts
    assert euler_orb_tangent(MultiPartition([[1], [1], []]), P) == c[0].euler * c[1].euler


def test_orbifold_degree():
    for lam in enumerate_partitions(5):
        lab = MultiPartition([lam])
        assert orbifold_degree(lab) == 5 + len(lam)


def test_engine_examples():
    unit2 = Partition([1, 1])
    assert cr_three_point_deg0_c2([2], [2], unit2, L, R) / LR ** 2 == LR / 2
    assert cr_three_point_deg0_c2([2], [2], [2], L, R) == ZERO  # odd total age
    base = cr_three_point_deg0_c2([2, 1], [2, 1], [3], L, R)
    for perm in permutations([[2, 1], [2, 1], [3]]):
        assert cr_three_point_deg0_c2(*perm, L, R) == base


def brute_triple_count(lam, mu, nu):
    """Independent count of (a, b) in S_n^2 with a, b, (ab)^-1 of the given types."""
    n = sum(lam)
    perms = list(permutations(range(n)))
    count = 0
    for a in perms:
        if cycle_type(a) != tuple(lam):
            continue
        for b in perms:
            if cycle_type(b) != tuple(mu):
                continue
            ab = tuple(a[b[x]] for x in range(n))
            inv = [0] * n
            for i, v in enumerate(ab):
                inv[v] = i
            if cycle_type(inv) == tuple(nu):
                count += 1
    return count


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_engine_against_plain_count(n):
    # every term carries (LR)^((n + total length)/2), so the value is count/n! times that power
    parts = enumerate_partitions(n)
    for lam, mu, nu in product(parts, repeat=3):
        ages = lam.age + mu.age + nu.age
        got = cr_three_point_deg0_c2(lam, mu, nu, L, R)
        if ages % 2:
            assert got == ZERO
            continue
        power = (n + len(lam) + len(mu) + len(nu)) // 2
        assert got == LR ** power * Fraction(brute_triple_count(lam, mu, nu), factorial(n))


@pytest.mark.parametrize("n", range(1, 6))
def test_calibration(n):
    assert calibration_failures(n, L, R) == []
    require_calibrated(n, L, R)


def test_engine_bound():
    with pytest.raises(ValueError):
        cr_three_point_deg0_c2([7], [7], [7], L, R)


def test_require_calibrated_fails_loudly(monkeypatch):
    import symhilb.orb as orb
    real = orb.cr_three_point_deg0_c2
    monkeypatch.setattr(orb, "cr_three_point_deg0_c2", lambda *a, **k: 2 * real(*a, **k))
    with pytest.raises(CalibrationError):
        orb.require_calibrated(2, L, R)


@pytest.mark.parametrize("surface,n", [(c2(), 2), (c2(), 3), (p2(), 2)])
def test_unit_and_commutativity(surface, n):
    one = orb_unit(surface, n)
    labels = orb_fixed_classes(surface, n)
    for lab in labels:
        x = orb_class(surface, lab)
        assert orb_product(x, one) == x
        assert orb_product(one, x) == x
    for a, b in product(labels, repeat=2):
        x, y = orb_class(surface, a), orb_class(surface, b)
        assert orb_product(x, y) == orb_product(y, x)


def test_associativity_c2_n3():
    S = c2()
    labels = orb_fixed_classes(S, 3)
    for a, b, c in product(labels, repeat=3):
        x, y, z = (orb_class(S, v) for v in (a, b, c))
        assert orb_product(orb_product(x, y), z) == orb_product(x, orb_product(y, z))


def test_global_factorizes():
    S = p2()
    a = MultiPartition([[2], [], [1]])
    b = MultiPartition([[1, 1], [], [1]])
    c0, c2_ = S.charts[0], S.charts[2]
    expected = cr_three_point_deg0_c2([2], [1, 1], [2], c0.weight_L, c0.weight_R) * \
        cr_three_point_deg0_c2([1], [1], [1], c2_.weight_L, c2_.weight_R)
    assert orb_three_point_deg0(a, b, a, S) == expected
    assert orb_three_point_deg0(a, b, MultiPartition([[3], [], []]), S) == ZERO


def test_extended_examples():
    S = p2()
    prov = DegreeZeroOrbProvider(order=3)
    assert extended_three_point([[2], [], []], [[1], [1], []], [[2], [], []], S, prov, order=3).series.is_zero()
    a = MultiPartition([[2], [1], []])
    b = MultiPartition([[1, 1], [1], []])
    s = extended_three_point(a, b, a, S, prov, order=3)
    assert s.coeff(0) == orb_three_point_deg0(a, b, a, S)
    single = extended_three_point([[], [], [2]], [[], [], [2]], [[], [], [1, 1]], S, prov, order=3)
    ch = S.charts[2]
    assert single.series == prov([2], [2], [1, 1], ch.weight_L, ch.weight_R)
