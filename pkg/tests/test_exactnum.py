from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from symhilb.exactnum import (IUNIT, ONE, ZERO, ExactArithmeticError, GaussRat, Poly2, QSeries, ScalarParseError, T1, T2, parse_scalar, qseries_mul, scalar, scalar_normalize,
                              t1, t2)


def test_normalize_examples():
    assert scalar_normalize(T1 * T2, T2) == t1
    assert scalar_normalize(2 * T1, Poly2.constant(4)) == t1 / 2
    assert scalar_normalize(T1 ** 2 - T2 ** 2, T1 - T2) == t1 + t2
    assert str(scalar_normalize(2 * T1, Poly2.constant(4))) == "t1/2"


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        scalar_normalize(T1, Poly2())
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_i_squared():
    assert IUNIT * IUNIT + 1 == ZERO
    assert GaussRat(0, 1) * GaussRat(0, 1) == GaussRat(-1)


def test_gaussian_denominator_is_made_real():
    x = 1 / (t1 + IUNIT * t2)
    assert x.den.is_real
    assert str(x) == "(t1 - i*t2)/(t1^2 + t2^2)"
    assert x * (t1 + IUNIT * t2) == ONE


def test_gaussian_factors_cancel_in_products():
    a = parse_scalar("(2*t1*t2 + i*t1^2)/(t1 - t2)")
    assert a * a.inverse() == ONE
    assert a / a == ONE


def test_canonical_string_example():
    s = parse_scalar("(2*t1*t2 + i*t1^2)/(t1 - t2)")
    assert str(s) == "(i*t1^2 + 2*t1*t2)/(t1 - t2)"
    assert parse_scalar(str(s)) == s


@pytest.mark.parametrize("text", [
    "0", "1", "-1", "i", "-i", "3*i", "t1", "-t1*t2/2", "(1 + i)*t1 - i", "(2 - 3*i)/7",
    "(t1^2 + 2*t1*t2)/(t1 - t2)", "1/(t1*t2)", "(t1 + t2)^3/(2*t1 - t2)^2",
])
def test_string_round_trip(text):
    s = parse_scalar(text)
    assert parse_scalar(str(s)) == s
    assert str(parse_scalar(str(s))) == str(s)


@pytest.mark.parametrize("text", ["t3", "1 +", "(t1", "t1^x", "2 $ 3"])
def test_parse_errors(text):
    with pytest.raises(ScalarParseError):
        parse_scalar(text)


def test_denominator_sign_convention():
    # the lexicographically leading denominator coefficient is 1
    assert str(1 / (t2 - t1)) == "-1/(t1 - t2)"
    assert str(t1 / (-2 * t1 - 4 * t2)) == "-t1/(2*t1 + 4*t2)"


def test_homogeneous_degree():
    assert (t1 * t2 / (t1 - t2)).homogeneous_degree() == 1
    assert (t1 + 1).homogeneous_degree() is None
    assert scalar(5).homogeneous_degree() == 0


small_int = st.integers(min_value=-4, max_value=4)


@st.composite
def scalars(draw):
    def poly():
        out = ZERO
        for a in range(2):
            for b in range(2):
                re, im = draw(small_int), draw(st.integers(-1, 1))
                out = out + (re + im * IUNIT) * t1 ** a * t2 ** b
        return out
    num = poly()
    den = poly()
    if den.is_zero():
        den = ONE
    return num / den


@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO


@given(scalars())
def test_inverses(a):
    if not a.is_zero():
        assert a * a.inverse() == ONE


@given(scalars(), scalars())
def test_canonical_form_is_syntactic(a, b):
    d = b + 1
    if d.is_zero():
        return
    x = (a * b + a) / d
    y = a * b / d + a / d
    assert x == y and str(x) == str(y) and hash(x) == hash(y)
    assert parse_scalar(str(a)) == a


@given(scalars())
def test_conjugate_and_parts(a):
    assert a.real + IUNIT * a.imag == a
    assert a.conjugate().conjugate() == a


def test_scalar_pickle_round_trip():
    import pickle
    a = parse_scalar("(t1 + i)/(t2 - 3)")
    assert pickle.loads(pickle.dumps(a)) == a


# -- q-series --------------------------------------------------------------

def test_qseries_examples():
    a = QSeries.from_rational([1, 1], [1], order=5)
    b = QSeries.from_rational([1, -1], [1], order=5)
    prod = qseries_mul(a, b)
    assert prod.coeffs == tuple(scalar(x) for x in (1, 0, -1, 0, 0, 0))
    assert prod.exact == ((ONE, ZERO, scalar(-1)), (ONE,))
    assert qseries_mul(a, QSeries.one(5)) == a


def test_qseries_geometric_square():
    geo = QSeries.from_rational([1], [1, -1], order=3)
    assert geo.coeffs == tuple(scalar(x) for x in (1, 1, 1, 1))
    sq = qseries_mul(geo, geo)
    assert sq.coeffs == tuple(scalar(x) for x in (1, 2, 3, 4))
    # cross-check against a direct convolution of the coefficient lists
    direct = [sum(1 for i in range(k + 1)) for k in range(4)]
    assert [c.constant_value().re for c in sq.coeffs] == direct


def test_qseries_truncates_at_min_order():
    a = QSeries([1, 1, 1], order=2)
    b = QSeries([1, 1, 1, 1, 1], order=4)
    assert qseries_mul(a, b).order == 2
    assert qseries_mul(a, b).exact is None


def test_qseries_exact_mismatch_rejected():
    with pytest.raises(ExactArithmeticError):
        QSeries([1, 2], order=1, exact=([1], [1, -1]))


def test_qseries_exact_form_is_reduced():
    s = QSeries.from_rational([1, -1], [1, -2, 1], order=4)  # (1-q)/(1-q)^2
    assert s.exact == ((ONE,), (ONE, scalar(-1)))
    assert s.evaluate(scalar(2)) == scalar(-1)


def test_fraction_interop():
    assert t1 * Fraction(1, 2) == Fraction(1, 2) * t1 == t1 / 2
    assert GaussRat(1, 2) / GaussRat(1, 2) == GaussRat(1)
