"""Exact coefficients: Gaussian rationals, polynomials in t1, t2, rational
functions over Q(i), and truncated power series in q.

Polynomial arithmetic and gcd over Q are delegated to sympy's sparse
polynomial rings.  A Gaussian polynomial is carried as a pair of real
polynomials ``re + i*im``; a :class:`Scalar` keeps a Gaussian numerator over a
real, monic denominator, which makes the stored form canonical.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

_RING, _T1, _T2 = ring("t1,t2", QQ)
_ZERO = _RING.zero
_ONE = _RING.one

DEFAULT_Q_ORDER = 10


class ExactArithmeticError(ArithmeticError):
    pass


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class GaussRat:
    """A Gaussian rational ``re + im*i`` with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational | int = 0, im: Rational | int = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> GaussRat:
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return cls(x)
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact")
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    def __add__(self, other):
        o = GaussRat.coerce(other)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussRat.coerce(other))

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __mul__(self, other):
        o = GaussRat.coerce(other)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> GaussRat:
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = GaussRat.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        p = self * o.conjugate()
        return GaussRat(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussRat(1) / (self ** -k)
        out = GaussRat(1)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        return str(Scalar(self))


I = GaussRat(0, 1)


class Poly2:
    """Polynomial in t1, t2 with Gaussian rational coefficients.

    Stored as two real sympy polynomials; zero coefficients never appear.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        re_terms, im_terms = {}, {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in monomial {(a, b)}")
            g = GaussRat.coerce(c)
            if g.re:
                re_terms[(a, b)] = QQ(g.re.numerator, g.re.denominator)
            if g.im:
                im_terms[(a, b)] = QQ(g.im.numerator, g.im.denominator)
        self._re = _RING.from_dict(re_terms) if re_terms else _ZERO
        self._im = _RING.from_dict(im_terms) if im_terms else _ZERO

    @classmethod
    def _wrap(cls, re_part, im_part) -> Poly2:
        p = cls.__new__(cls)
        p._re = re_part
        p._im = im_part
        return p

    @classmethod
    def constant(cls, c) -> Poly2:
        return cls({(0, 0): c})

    @property
    def is_real(self) -> bool:
        return not self._im

    def is_zero(self) -> bool:
        return not self._re and not self._im

    def coeffs(self) -> dict[tuple[int, int], GaussRat]:
        out: dict[tuple[int, int], GaussRat] = {}
        for m, c in self._re.items():
            out[m] = GaussRat(_to_fraction(c))
        for m, c in self._im.items():
            out[m] = GaussRat(out[m].re if m in out else 0, _to_fraction(c))
        return out

    def total_degree(self) -> int:
        monoms = list(self._re.keys()) + list(self._im.keys())
        if not monoms:
            return -1
        return max(a + b for a, b in monoms)

    def is_homogeneous(self) -> bool:
        monoms = list(self._re.keys()) + list(self._im.keys())
        return len({a + b for a, b in monoms}) <= 1

    def __add__(self, other):
        o = _as_poly(other)
        return Poly2._wrap(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __neg__(self):
        return Poly2._wrap(-self._re, -self._im)

    def __sub__(self, other):
        o = _as_poly(other)
        return Poly2._wrap(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        o = _as_poly(other)
        return Poly2._wrap(*_gmul(self._re, self._im, o._re, o._im))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly2.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            o = _as_poly(other)
        except TypeError:
            return NotImplemented
        return self._re == o._re and self._im == o._im

    def __hash__(self):
        return hash((frozenset(self._re.items()), frozenset(self._im.items())))

    def __repr__(self):
        return f"Poly2({_poly_str(self._re, self._im)!r})"

    def __str__(self):
        return _poly_str(self._re, self._im)


def _as_poly(x) -> Poly2:
    if isinstance(x, Poly2):
        return x
    return Poly2.constant(x)


def _gmul(ar, ai, br, bi):
    if not ai and not bi:
        return ar * br, _ZERO
    return ar * br - ai * bi, ar * bi + ai * br


def _gcd3(a, b, d):
    g = d.gcd(a)
    if b and not g.is_ground:
        g = g.gcd(b)
    return g


T1 = Poly2({(1, 0): 1})
T2 = Poly2({(0, 1): 1})


class Scalar:
    """Element of Q(i, t1, t2) in canonical form.

    The numerator is a Gaussian polynomial, the denominator a real polynomial
    whose lexicographically leading coefficient is 1, and no non-constant real
    polynomial divides both.  Two Scalars are equal iff their stored parts are.
    """

    __slots__ = ("_re", "_im", "_den")

    def __init__(self, num=0, den=1):
        s = scalar_normalize(_as_poly(num) if not isinstance(num, Scalar) else num,
                             _as_poly(den) if not isinstance(den, Scalar) else den)
        self._re, self._im, self._den = s._re, s._im, s._den

    @classmethod
    def _raw(cls, re_part, im_part, den) -> Scalar:
        s = cls.__new__(cls)
        s._re, s._im, s._den = re_part, im_part, den
        return s

    @classmethod
    def _reduce(cls, re_part, im_part, den) -> Scalar:
        if not re_part and not im_part:
            return _SZERO
        if not den.is_ground:
            g = _gcd3(re_part, im_part, den)
            if not g.is_ground:
                re_part = re_part.exquo(g)
                im_part = im_part.exquo(g) if im_part else _ZERO
                den = den.exquo(g)
        lc = den.LC
        if lc != 1:
            re_part = re_part.quo_ground(lc)
            if im_part:
                im_part = im_part.quo_ground(lc)
            den = den.quo_ground(lc)
        return cls._raw(re_part, im_part, den)

    # -- accessors -------------------------------------------------------
    @property
    def num(self) -> Poly2:
        return Poly2._wrap(self._re, self._im)

    @property
    def den(self) -> Poly2:
        return Poly2._wrap(self._den, _ZERO)

    @property
    def real(self) -> Scalar:
        return Scalar._reduce(self._re, _ZERO, self._den)

    @property
    def imag(self) -> Scalar:
        return Scalar._reduce(self._im, _ZERO, self._den)

    def is_zero(self) -> bool:
        return not self._re and not self._im

    def is_constant(self) -> bool:
        return self._re.is_ground and self._im.is_ground and self._den.is_ground

    def is_polynomial(self) -> bool:
        return self._den.is_ground

    def constant_value(self) -> GaussRat:
        if not self.is_constant():
            raise ExactArithmeticError(f"{self} is not a constant")
        return GaussRat(_to_fraction(self._re.LC) if self._re else 0,
                        _to_fraction(self._im.LC) if self._im else 0)

    def homogeneous_degree(self) -> int | None:
        """Degree deg(num) - deg(den) if both are homogeneous, else None.

        Zero is homogeneous of every degree; None is returned for it as well.
        """
        if self.is_zero():
            return None
        num = self.num
        if not num.is_homogeneous() or not self.den.is_homogeneous():
            return None
        return num.total_degree() - self.den.total_degree()

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = _as_scalar(other)
        if o is NotImplemented:
            return o
        if not o._re and not o._im:
            return self
        if not self._re and not self._im:
            return o
        if self._den == o._den:
            return Scalar._reduce(self._re + o._re, self._im + o._im, self._den)
        d1, d2 = self._den, o._den
        g = d1.gcd(d2)
        if not g.is_ground:
            d1q, d2q = d1.exquo(g), d2.exquo(g)
        else:
            d1q, d2q = d1, d2
        re_part = self._re * d2q + o._re * d1q
        im_part = (self._im * d2q if self._im else _ZERO) + (o._im * d1q if o._im else _ZERO)
        return Scalar._reduce(re_part, im_part, d1q * d2)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self._re, -self._im, self._den)

    def __sub__(self, other):
        o = _as_scalar(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _as_scalar(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = _as_scalar(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return _SZERO
        ar, ai, ad = self._re, self._im, self._den
        br, bi, bd = o._re, o._im, o._den
        if not bd.is_ground:
            g = _gcd3(ar, ai, bd)
            if not g.is_ground:
                ar, ai, bd = ar.exquo(g), (ai.exquo(g) if ai else _ZERO), bd.exquo(g)
        if not ad.is_ground:
            g = _gcd3(br, bi, ad)
            if not g.is_ground:
                br, bi, ad = br.exquo(g), (bi.exquo(g) if bi else _ZERO), ad.exquo(g)
        re_part, im_part = _gmul(ar, ai, br, bi)
        den = ad * bd
        if ai or bi:
            # Gaussian factors can pair into real ones, so cross-cancellation is not enough
            return Scalar._reduce(re_part, im_part, den)
        lc = den.LC
        if lc != 1:
            re_part = re_part.quo_ground(lc)
            if im_part:
                im_part = im_part.quo_ground(lc)
            den = den.quo_ground(lc)
        return Scalar._raw(re_part, im_part, den)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero Scalar")
        if not self._im:
            return Scalar._reduce(self._den, _ZERO, self._re)
        # multiply through by the conjugate numerator to keep the denominator real
        norm = self._re * self._re + self._im * self._im
        return Scalar._reduce(self._den * self._re, -(self._den * self._im), norm)

    def __truediv__(self, other):
        o = _as_scalar(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _as_scalar(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = _SONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self) -> Scalar:
        """Complex conjugate (i -> -i); t1, t2 are treated as real."""
        return Scalar._raw(self._re, -self._im, self._den)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        o = _as_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return self._re == o._re and self._im == o._im and self._den == o._den

    def __hash__(self):
        return hash((frozenset(self._re.items()), frozenset(self._im.items()),
                     frozenset(self._den.items())))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __str__(self):
        return scalar_to_string(self)

    def __reduce__(self):
        return (parse_scalar, (str(self),))


def _as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, Poly2):
        return Scalar._reduce(x._re, x._im, _ONE)
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, (int, Fraction, Rational)):
        f = Fraction(x)
        if not f:
            return _SZERO
        return Scalar._raw(_RING.ground_new(QQ(f.numerator, f.denominator)), _ZERO, _ONE)
    if isinstance(x, GaussRat):
        return Scalar._raw(_RING.ground_new(QQ(x.re.numerator, x.re.denominator)),
                           _RING.ground_new(QQ(x.im.numerator, x.im.denominator)), _ONE) \
            if x else _SZERO
    return NotImplemented


def scalar(x) -> Scalar:
    """Coerce an int, Fraction, GaussRat, Poly2, Scalar or canonical string."""
    if isinstance(x, str):
        return parse_scalar(x)
    s = _as_scalar(x)
    if s is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a Scalar")
    return s


def scalar_normalize(num: Poly2 | Scalar, den: Poly2 | Scalar) -> Scalar:
    """Canonical representative of ``num/den``.

    Raises ZeroDivisionError for a zero denominator.
    """
    if isinstance(num, Scalar) or isinstance(den, Scalar):
        return scalar(num) / scalar(den)
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    nr, ni = num._re, num._im
    dr, di = den._re, den._im
    if di:
        # n/d = n*conj(d) / |d|^2 with a real denominator
        nr, ni = _gmul(nr, ni, dr, -di)
        dr = dr * dr + di * di
    return Scalar._reduce(nr, ni, dr)


_SZERO = Scalar._raw(_ZERO, _ZERO, _ONE)
_SONE = Scalar._raw(_ONE, _ZERO, _ONE)
ZERO = _SZERO
ONE = _SONE
IUNIT = Scalar._raw(_ZERO, _ONE, _ONE)
t1 = Scalar._raw(_T1, _ZERO, _ONE)
t2 = Scalar._raw(_T2, _ZERO, _ONE)


# -- canonical string form ---------------------------------------------

def _int_form(parts):
    """Scale real polynomials by a common positive rational to coprime integers."""
    denoms, nums = [], []
    for p in parts:
        for c in p.values():
            denoms.append(int(c.denominator))
            nums.append(int(c.numerator))
    from math import gcd, lcm
    scale_den = reduce(lcm, denoms, 1)
    g = reduce(gcd, (abs(n) * (scale_den // d) for n, d in zip(nums, denoms)), 0) or 1
    factor = Fraction(scale_den, g)
    return [{m: int(_to_fraction(c) * factor) for m, c in p.items()} for p in parts]


def _mono_str(m):
    a, b = m
    bits = []
    if a:
        bits.append("t1" if a == 1 else f"t1^{a}")
    if b:
        bits.append("t2" if b == 1 else f"t2^{b}")
    return "*".join(bits)


def _coef_str(a: int, b: int) -> str:
    if b == 0:
        return str(a)
    ib = "i" if b == 1 else ("-i" if b == -1 else f"{b}*i")
    if a == 0:
        return ib
    sign = "+" if b > 0 else "-"
    mag = "i" if abs(b) == 1 else f"{abs(b)}*i"
    return f"({a} {sign} {mag})"


def _terms_str(re_terms: dict, im_terms: dict) -> tuple[str, int]:
    monoms = sorted(set(re_terms) | set(im_terms), key=lambda m: (-(m[0] + m[1]), -m[0]))
    if not monoms:
        return "0", 1
    out = []
    for m in monoms:
        a, b = re_terms.get(m, 0), im_terms.get(m, 0)
        ms = _mono_str(m)
        cs = _coef_str(a, b)
        if not ms:
            term = cs
        elif cs == "1":
            term = ms
        elif cs == "-1":
            term = "-" + ms
        else:
            term = f"{cs}*{ms}"
        if not out:
            out.append(term)
        elif term.startswith("-"):
            out.append(" - " + term[1:])
        else:
            out.append(" + " + term)
    return "".join(out), len(monoms)


def _poly_str(re_part, im_part) -> str:
    re_terms = {m: _to_fraction(c) for m, c in re_part.items()}
    im_terms = {m: _to_fraction(c) for m, c in im_part.items()}
    if all(c.denominator == 1 for c in list(re_terms.values()) + list(im_terms.values())):
        return _terms_str({m: int(c) for m, c in re_terms.items()},
                          {m: int(c) for m, c in im_terms.items()})[0]
    return scalar_to_string(Scalar._reduce(re_part, im_part, _ONE))


def scalar_to_string(s: Scalar) -> str:
    """Canonical string with integer coefficients and one top-level '/'."""
    if s.is_zero():
        return "0"
    re_i, im_i, den_i = _int_form([s._re, s._im, s._den])
    num_s, num_terms = _terms_str(re_i, im_i)
    den_s, den_terms = _terms_str(den_i, {})
    if den_s == "1":
        return num_s
    if num_terms > 1:
        num_s = f"({num_s})"
    if not (den_terms == 1 and re.fullmatch(r"\d+", den_s)):
        den_s = f"({den_s})"
    return f"{num_s}/{den_s}"


_TOKEN = re.compile(r"\s*(?:(\d+)|(t1|t2|i)|([-+*/^()]))")


class ScalarParseError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if not m:
                raise ScalarParseError(f"unexpected character at offset {pos} in {text!r}")
            kind = "int" if m.group(1) else ("name" if m.group(2) else "op")
            self.tokens.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value=None):
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value):
            where = tok[2] if tok else len(self.text)
            raise ScalarParseError(f"expected {value or 'token'} at offset {where} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> Scalar:
        v = self.expr()
        if self.peek() is not None:
            raise ScalarParseError(f"trailing input at offset {self.peek()[2]} in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while (tok := self.peek()) and tok[1] in "+-" and tok[0] == "op":
            self.take()
            v = v + self.term() if tok[1] == "+" else v - self.term()
        return v

    def term(self):
        v = self.factor()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "*/":
            self.take()
            v = v * self.factor() if tok[1] == "*" else v / self.factor()
        return v

    def factor(self):
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            v = self.factor()
            return -v if tok[1] == "-" else v
        base = self.atom()
        if (tok := self.peek()) and tok[1] == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "int":
                raise ScalarParseError(f"integer exponent expected at offset {exp_tok[2]}")
            base = base ** int(exp_tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return scalar(int(val))
        if kind == "name":
            return {"t1": t1, "t2": t2, "i": IUNIT}[val]
        if val == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ScalarParseError(f"unexpected {val!r} at offset {tok[2]} in {self.text!r}")


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical string grammar (and any well-formed expression in it)."""
    return _Parser(text).parse()


# -- q-series ------------------------------------------------------------

def _poly_trim(p: Sequence[Scalar]) -> tuple[Scalar, ...]:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return tuple(p)


def _poly_mul(a: Sequence[Scalar], b: Sequence[Scalar]) -> tuple[Scalar, ...]:
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return _poly_trim(out)


def _poly_divmod(a: Sequence[Scalar], b: Sequence[Scalar]):
    a, b = list(_poly_trim(a)), _poly_trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    lead_inv = b[-1].inverse()
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] * lead_inv
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] = a[k + j] - c * y
        a = list(_poly_trim(a))
    return _poly_trim(q), tuple(a)


def _poly_gcd(a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return a


def normalize_rational(num: Sequence[Scalar], den: Sequence[Scalar]):
    """Reduce num/den (coefficient lists in ascending powers) to lowest terms.

    The denominator's lowest-order nonzero coefficient is made 1.
    """
    num, den = _poly_trim(num), _poly_trim(den)
    if not den:
        raise ZeroDivisionError("zero denominator in rational function")
    if not num:
        return (), (ONE,)
    g = _poly_gcd(num, den)
    if len(g) > 1:
        num, _ = _poly_divmod(num, g)
        den, _ = _poly_divmod(den, g)
    lead = next(c for c in den if not c.is_zero()).inverse()
    return tuple(c * lead for c in num), tuple(c * lead for c in den)


def expand_rational(num: Sequence[Scalar], den: Sequence[Scalar], order: int) -> tuple[Scalar, ...]:
    """Power-series coefficients of num/den up to q^order (needs den(0) != 0)."""
    den = list(den) + [ZERO] * (order + 1)
    num = list(num) + [ZERO] * (order + 1)
    if den[0].is_zero():
        raise ExactArithmeticError("rational function has a pole at q = 0")
    inv0 = den[0].inverse()
    out: list[Scalar] = []
    for k in range(order + 1):
        acc = num[k]
        for j in range(1, k + 1):
            if not den[j].is_zero() and not out[k - j].is_zero():
                acc = acc - den[j] * out[k - j]
        out.append(acc * inv0)
    return tuple(out)


class QSeries:
    """Truncated power series in q with Scalar coefficients.

    ``coeffs[d]`` is the q^d coefficient for d = 0..order.  ``exact`` is an
    optional (num, den) pair of ascending coefficient tuples giving the exact
    rational function; when present its expansion must agree with coeffs.
    """

    __slots__ = ("coeffs", "order", "exact")

    def __init__(self, coeffs: Iterable, order: int | None = None, exact=None):
        cs = [scalar(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        cs += [ZERO] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order
        if exact is not None:
            num = _poly_trim([scalar(c) for c in exact[0]])
            den = _poly_trim([scalar(c) for c in exact[1]])
            if den != (ONE,):
                num, den = normalize_rational(num, den)
            elif not num:
                num = ()
            expansion = num[: order + 1] + (ZERO,) * (order + 1 - len(num)) if den == (ONE,) \
                else expand_rational(num, den, order)
            if expansion != self.coeffs:
                raise ExactArithmeticError("exact form does not match the series coefficients")
            exact = (num, den)
        self.exact = exact

    @classmethod
    def from_rational(cls, num: Sequence, den: Sequence, order: int = DEFAULT_Q_ORDER) -> QSeries:
        num = [scalar(c) for c in num]
        den = [scalar(c) for c in den]
        return cls(expand_rational(num, den, order), order, exact=(num, den))

    @classmethod
    def constant(cls, c, order: int = DEFAULT_Q_ORDER) -> QSeries:
        c = scalar(c)
        return cls([c], order, exact=((c,), (ONE,)))

    @classmethod
    def zero(cls, order: int = DEFAULT_Q_ORDER) -> QSeries:
        return cls.constant(ZERO, order)

    @classmethod
    def one(cls, order: int = DEFAULT_Q_ORDER) -> QSeries:
        return cls.constant(ONE, order)

    def coeff(self, d: int) -> Scalar:
        if d < 0 or d > self.order:
            raise IndexError(f"q^{d} outside truncation order {self.order}")
        return self.coeffs[d]

    def is_zero(self) -> bool:
        if self.exact is not None:
            return not self.exact[0]
        return all(c.is_zero() for c in self.coeffs)

    def __mul__(self, other: QSeries) -> QSeries:
        return qseries_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs and self.exact == other.exact

    def __hash__(self):
        return hash((self.coeffs, self.exact))

    def evaluate(self, q) -> Scalar:
        """Value of the exact rational form at a Scalar point."""
        if self.exact is None:
            raise ExactArithmeticError("exact form required")
        q = scalar(q)
        num = _horner(self.exact[0], q)
        den = _horner(self.exact[1], q)
        if den.is_zero():
            raise ZeroDivisionError(f"pole at q = {q}")
        return num / den

    def __repr__(self):
        body = " + ".join(f"({c})*q^{d}" for d, c in enumerate(self.coeffs) if not c.is_zero()) or "0"
        return f"QSeries({body}, order={self.order})"


def _horner(coeffs: Sequence[Scalar], x: Scalar) -> Scalar:
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def qseries_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product truncated at min(order_a, order_b)."""
    order = min(a.order, b.order)
    out = [ZERO] * (order + 1)
    for i in range(order + 1):
        x = a.coeffs[i]
        if x.is_zero():
            continue
        for j in range(order + 1 - i):
            y = b.coeffs[j]
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    exact = None
    if a.exact is not None and b.exact is not None:
        exact = (_poly_mul(a.exact[0], b.exact[0]), _poly_mul(a.exact[1], b.exact[1]))
        if not exact[0]:
            exact = ((), (ONE,))
    return QSeries(out, order, exact=exact)
