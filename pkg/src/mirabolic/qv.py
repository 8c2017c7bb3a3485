"""Exact arithmetic in Q(v), the field of rational functions in one variable.

All coefficients in the package live here.  A LaurentPolynomial is a sparse
map from integer exponents to rational coefficients, so elements such as
v^-3 + 2 + v^5 are first class.  A RationalFunction is a quotient of Laurent
polynomials kept in a canonical form, which makes structural equality agree
with equality in the field.

Quantum integers use the balanced convention

    [m] = (v^m - v^-m) / (v - v^-1) = v^(m-1) + v^(m-3) + ... + v^(1-m),

and the one-sided convention [m]_q = (q^m - 1)/(q - 1) = 1 + q + ... + q^(m-1)
is available for counting arguments; the two are related through q = v^2 by
[m]_q |_{q=v^2} = v^(m-1) [m].

>>> quantum_integer(3) == parse_coeff("v^2+1+v^-2")
True
>>> arithmetic(parse_coeff("v^2-v^-2"), parse_coeff("v-v^-1"), "div")
RationalFunction(v+v^-1)
"""

from __future__ import annotations

import re
from fractions import Fraction


def _norm_rat(x):
    """Coerce to int when integral, Fraction otherwise; assumes x rational."""
    if isinstance(x, int):
        return x
    f = Fraction(x)
    if f.denominator == 1:
        return f.numerator
    return f


class LaurentPolynomial:
    """Sparse Laurent polynomial over Q: dict {exponent: coefficient}.

    Zero coefficients are never stored, and integral coefficients are stored
    as plain ints, so two equal polynomials always have identical dicts.
    """

    __slots__ = ("c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, val in coeffs.items():
                val = _norm_rat(val)
                if val:
                    c[int(k)] = val
        self.c = c
        self._hash = None

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.c.items()))
        return self._hash

    def __neg__(self):
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.c = {k: -v for k, v in self.c.items()}
        out._hash = None
        return out

    def __add__(self, other):
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        c = dict(a)
        for k, val in b.items():
            s = c.get(k, 0) + val
            if s:
                c[k] = _norm_rat(s)
            else:
                c.pop(k, None)
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.c = c
        out._hash = None
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.c, other.c
        if not a or not b:
            return LP_ZERO
        c = {}
        for k1, v1 in a.items():
            for k2, v2 in b.items():
                k = k1 + k2
                s = c.get(k, 0) + v1 * v2
                if s:
                    c[k] = s
                else:
                    del c[k]
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.c = {k: _norm_rat(v) for k, v in c.items()}
        out._hash = None
        return out

    def scale(self, r):
        r = _norm_rat(r)
        if not r:
            return LP_ZERO
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.c = {k: _norm_rat(v * r) for k, v in self.c.items()}
        out._hash = None
        return out

    def shift(self, n):
        """Multiply by v^n."""
        if n == 0:
            return self
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.c = {k + n: v for k, v in self.c.items()}
        out._hash = None
        return out

    def min_exp(self):
        return min(self.c)

    def max_exp(self):
        return max(self.c)

    def evaluate(self, x):
        """Exact value at a nonzero rational point (zero allowed if no
        negative exponents appear)."""
        x = Fraction(x)
        total = Fraction(0)
        for k, v in self.c.items():
            total += Fraction(v) * x ** k
        return total

    def stretch(self, m):
        """Substitute v -> v^m (exponent dilation)."""
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.c = {k * m: v for k, v in self.c.items()}
        out._hash = None
        return out

    def __repr__(self):
        return f"LaurentPolynomial({_format_laurent(self)})"


LP_ZERO = LaurentPolynomial()
LP_ONE = LaurentPolynomial({0: 1})


def lp_v_power(n):
    return LaurentPolynomial({n: 1})


# ---------------------------------------------------------------------------
# Integer polynomial helpers (dense lists, index = degree, trimmed, used only
# inside RationalFunction normalisation).
# ---------------------------------------------------------------------------

def _ip_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _ip_primitive(a):
    """Divide by the gcd of the coefficients; sign is preserved."""
    from math import gcd
    g = 0
    for x in a:
        g = gcd(g, abs(x))
    if g > 1:
        a = [x // g for x in a]
    return a


def _ip_prem(a, b):
    """Pseudo-remainder of a by b (both trimmed, b nonzero)."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        a = [x * lb for x in a]
        for i in range(db + 1):
            a[da - db + i] -= la * b[i]
        _ip_trim(a)
    return a


def _ip_gcd(a, b):
    """Gcd of primitive integer polynomials, primitive with positive lead."""
    a = _ip_primitive(_ip_trim(list(a)))
    b = _ip_primitive(_ip_trim(list(b)))
    while b:
        a, b = b, _ip_primitive(_ip_prem(a, b))
    if a and a[-1] < 0:
        a = [-x for x in a]
    return a if a else [1]


def _ip_exact_div(a, g):
    """Exact quotient a / g over Z (raises if the division is not exact).

    When the quotient is integral, every leading coefficient met by the
    top-down elimination is divisible by g's leading coefficient, so the
    whole computation stays in int arithmetic.
    """
    a = list(a)
    q = [0] * (len(a) - len(g) + 1)
    lg = g[-1]
    for i in range(len(q) - 1, -1, -1):
        top = a[i + len(g) - 1]
        coef, rem = divmod(top, lg)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        q[i] = coef
        if coef:
            for j, gj in enumerate(g):
                a[i + j] -= coef * gj
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


def _laurent_to_int_poly(p):
    """Split a Laurent polynomial as content * v^shift * primitive int poly.

    Returns (content: Fraction, shift: int, poly: list[int]).
    """
    from math import gcd, lcm
    shift = min(p.c)
    deg = max(p.c) - shift
    den = 1
    for v in p.c.values():
        if not isinstance(v, int):
            den = lcm(den, v.denominator)
    ints = {}
    g = 0
    for k, v in p.c.items():
        n = v * den if isinstance(v, int) else v.numerator * (den // v.denominator)
        ints[k - shift] = n
        g = gcd(g, abs(n))
    coeffs = [0] * (deg + 1)
    for k, n in ints.items():
        coeffs[k] = n // g
    return Fraction(g, den), shift, coeffs


def _int_poly_to_laurent(coeffs, shift=0):
    return LaurentPolynomial({i + shift: c for i, c in enumerate(coeffs) if c})


class RationalFunction:
    """Element of Q(v) in canonical form.

    Invariants: `den` is an ordinary polynomial in v (no negative exponents)
    with integer coefficients, nonzero constant term, positive leading
    coefficient and coprime coefficient gcd; `num` is a Laurent polynomial
    sharing no nonconstant factor with `den` (pure v-power factors are kept in
    the numerator).  Zero is 0/1.  Under these constraints the pair (num, den)
    is unique, so == on the pairs is equality in Q(v).
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if isinstance(num, RationalFunction):
            if den is not None:
                raise TypeError("unexpected denominator")
            self.num, self.den = num.num, num.den
            self._hash = None
            return
        num = _as_laurent(num)
        den = LP_ONE if den is None else _as_laurent(den)
        n, d = _rf_canonical(num, den)
        self.num, self.den = n, d
        self._hash = None

    @staticmethod
    def _raw(num, den):
        out = RationalFunction.__new__(RationalFunction)
        out.num, out.den, out._hash = num, den, None
        return out

    def is_zero(self):
        return not self.num.c

    def __bool__(self):
        return bool(self.num.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = rf_const(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __add__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            if self.den == LP_ONE:
                return RationalFunction._raw(self.num + other.num, LP_ONE)
            num = self.num + other.num
            if not num:
                return RF_ZERO
            n, d = _rf_canonical(num, self.den)
            return RationalFunction._raw(n, d)
        num = self.num * other.den + other.num * self.den
        if not num:
            return RF_ZERO
        n, d = _rf_canonical(num, self.den * other.den)
        return RationalFunction._raw(n, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num.c or not other.num.c:
            return RF_ZERO
        if self.den == LP_ONE and other.den == LP_ONE:
            return RationalFunction._raw(self.num * other.num, LP_ONE)
        # a monomial factor is a unit, so the reduced form survives as is
        if self.den == LP_ONE and len(self.num.c) == 1:
            return RationalFunction._raw(self.num * other.num, other.den)
        if other.den == LP_ONE and len(other.num.c) == 1:
            return RationalFunction._raw(self.num * other.num, self.den)
        n, d = _rf_canonical(self.num * other.num, self.den * other.den)
        return RationalFunction._raw(n, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def inverse(self):
        if not self.num.c:
            raise ZeroDivisionError("division by zero in Q(v)")
        n, d = _rf_canonical(self.den, self.num)
        return RationalFunction._raw(n, d)

    def evaluate(self, x):
        """Exact value at a rational point; the point must not be a pole."""
        x = Fraction(x)
        dv = self.den.evaluate(x)
        if dv == 0:
            raise ZeroDivisionError(f"pole at v = {x}")
        return self.num.evaluate(x) / dv

    def substitute_v_squared(self):
        """The image under v -> v^2 (used to go from q-expressions to v)."""
        if self.den == LP_ONE:
            return RationalFunction._raw(self.num.stretch(2), LP_ONE)
        return RationalFunction(self.num.stretch(2), self.den.stretch(2))

    def is_laurent(self):
        return self.den == LP_ONE

    def __repr__(self):
        return f"RationalFunction({format_coeff(self)})"


def _as_laurent(x):
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, dict):
        return LaurentPolynomial(x)
    if isinstance(x, (int, Fraction)):
        return LaurentPolynomial({0: x})
    raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")


def _coerce_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)):
        return rf_const(x)
    return NotImplemented


def _rf_canonical(num, den):
    """Reduce num/den to the canonical pair described on RationalFunction."""
    if not den.c:
        raise ZeroDivisionError("division by zero in Q(v)")
    if not num.c:
        return LP_ZERO, LP_ONE
    if den.c == {0: 1}:
        return num, LP_ONE
    cn, sn, pn = _laurent_to_int_poly(num)
    cd, sd, pd = _laurent_to_int_poly(den)
    g = _ip_gcd(pn, pd)
    if len(g) > 1:
        pn = _ip_exact_div(pn, g)
        pd = _ip_exact_div(pd, g)
    scalar = cn / cd
    if pd[-1] < 0:
        pd = [-x for x in pd]
        scalar = -scalar
    if len(pd) == 1:
        scalar /= pd[0]
        return _int_poly_to_laurent(pn, sn - sd).scale(scalar), LP_ONE
    # pull the remaining rational content of the denominator into num
    from math import gcd
    gd = 0
    for x in pd:
        gd = gcd(gd, abs(x))
    if gd > 1:
        pd = [x // gd for x in pd]
        scalar /= gd
    return _int_poly_to_laurent(pn, sn - sd).scale(scalar), _int_poly_to_laurent(pd)


RF_ZERO = RationalFunction._raw(LP_ZERO, LP_ONE)
RF_ONE = RationalFunction._raw(LP_ONE, LP_ONE)


def rf_const(x):
    """Constant rational function."""
    x = _norm_rat(x)
    if not x:
        return RF_ZERO
    return RationalFunction._raw(LaurentPolynomial({0: x}), LP_ONE)


def v_power(n):
    """The unit v^n."""
    return RationalFunction._raw(lp_v_power(n), LP_ONE)


def rf_laurent(coeffs):
    """Rational function from {exponent: coefficient}."""
    return RationalFunction._raw(LaurentPolynomial(coeffs), LP_ONE)


def arithmetic(x, y, op):
    """Field operation on two rational functions: add / sub / mul / div."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def quantum_integer(m):
    """Balanced quantum integer [m] = v^(m-1) + v^(m-3) + ... + v^(1-m).

    [0] = 0 and [-m] = -[m].
    """
    if m == 0:
        return RF_ZERO
    if m < 0:
        return -quantum_integer(-m)
    return rf_laurent({m - 1 - 2 * i: 1 for i in range(m)})


def quantum_factorial(m):
    """[m]! = [m][m-1]...[1], with [0]! = 1."""
    if m < 0:
        raise ValueError("negative quantum factorial")
    out = RF_ONE
    for i in range(2, m + 1):
        out = out * quantum_integer(i)
    return out


def q_power(j):
    """q^j as an element of Q(v) under q = v^2."""
    return v_power(2 * j)


def q_bracket(m):
    """One-sided quantum integer [m]_q = 1 + q + ... + q^(m-1) at q = v^2."""
    if m <= 0:
        return RF_ZERO
    return rf_laurent({2 * i: 1 for i in range(m)})


def lagrange_interpolate(points, degree_bound):
    """Integer polynomial in q through the given (q-value, value) points.

    `points` is a list of (x, y) pairs with rational entries and distinct x.
    The first degree_bound + 1 points determine the candidate polynomial;
    every supplied point is then checked against it, and all coefficients
    must come out integral.  Returns the coefficient list, constant term
    first.  Raises ValueError when the data does not support such a
    polynomial.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    if len(points) < degree_bound + 1:
        raise ValueError(
            f"need {degree_bound + 1} points for degree {degree_bound}, "
            f"got {len(points)}")
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation points must be distinct")
    k = degree_bound + 1
    # Newton's divided differences on the first k points.
    coef = list(ys[:k])
    for j in range(1, k):
        for i in range(k - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * k
    for j in range(k - 1, -1, -1):
        # poly <- poly * (x - xs[j]) + coef[j]
        new = [Fraction(0)] * k
        for i in range(k - 1):
            new[i + 1] += poly[i]
            new[i] -= poly[i] * xs[j]
        new[0] += coef[j]
        poly = new
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    for x, y in zip(xs, ys):
        val = Fraction(0)
        for c in reversed(poly):
            val = val * x + c
        if val != y:
            raise ValueError(
                f"interpolated polynomial fails at q = {x}: {val} != {y}")
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ValueError(f"non-integral interpolation coefficient {c}")
        out.append(c.numerator)
    return out


def substitute_q(qpoly):
    """Turn an integer polynomial in q (constant first) into Q(v) via q = v^2."""
    return rf_laurent({2 * i: c for i, c in enumerate(qpoly) if c})


# ---------------------------------------------------------------------------
# Printing and parsing.  Grammar, with terms in strictly decreasing exponent
# order:   coeff := term {("+"|"-") term};  term := [rat "*"] "v" ["^" int]
#                                                 | rat
# A nontrivial denominator wraps both sides: "(num)/(den)".
# ---------------------------------------------------------------------------

def _format_laurent(p):
    if not p.c:
        return "0"
    parts = []
    for exp in sorted(p.c, reverse=True):
        coef = p.c[exp]
        neg = coef < 0
        mag = -coef if neg else coef
        if exp == 0:
            body = str(mag)
        else:
            vp = "v" if exp == 1 else f"v^{exp}"
            body = vp if mag == 1 else f"{mag}*{vp}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)


def format_coeff(x):
    """Canonical string form of a rational function."""
    if x.den == LP_ONE:
        return _format_laurent(x.num)
    return f"({_format_laurent(x.num)})/({_format_laurent(x.den)})"


_TERM_RE = re.compile(
    r"(?:(?P<rat>\d+(?:/\d+)?)(?:\*(?P<var1>v(?:\^(?P<exp1>-?\d+))?))?"
    r"|(?P<var2>v(?:\^(?P<exp2>-?\d+))?))$")


def _parse_laurent(s):
    s = s.strip()
    if not s:
        raise ValueError("empty coefficient string")
    if s == "0":
        return LP_ZERO
    # split into signed terms
    terms = []
    i = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    start = i
    while i <= len(s):
        # a sign right after '^' belongs to the exponent, not a new term
        if i == len(s) or (s[i] in "+-" and s[i - 1] != "^"):
            piece = s[start:i]
            if not piece:
                raise ValueError(f"malformed coefficient string {s!r}")
            terms.append((sign, piece))
            if i < len(s):
                sign = -1 if s[i] == "-" else 1
            start = i + 1
        i += 1
    coeffs = {}
    for sign, piece in terms:
        m = _TERM_RE.match(piece)
        if not m:
            raise ValueError(f"malformed term {piece!r}")
        if m.group("rat") is not None:
            mag = Fraction(m.group("rat"))
            if m.group("var1") is not None:
                exp = int(m.group("exp1") or 1)
            else:
                exp = 0
        else:
            mag = Fraction(1)
            exp = int(m.group("exp2") or 1)
        val = coeffs.get(exp, 0) + sign * mag
        if val:
            coeffs[exp] = val
        else:
            coeffs.pop(exp, None)
    return LaurentPolynomial(coeffs)


def parse_coeff(s):
    """Inverse of format_coeff; accepts any valid string of the grammar."""
    s = s.strip()
    m = re.match(r"^\((?P<num>[^()]*)\)/\((?P<den>[^()]*)\)$", s)
    if m:
        return RationalFunction(_parse_laurent(m.group("num")),
                                _parse_laurent(m.group("den")))
    if s.startswith("(") and s.endswith(")") and "(" not in s[1:-1]:
        s = s[1:-1]
    return RationalFunction(_parse_laurent(s))
