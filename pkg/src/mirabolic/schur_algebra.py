"""Rank-two mirabolic q-Schur algebra with exact structure constants.

Basis symbols are indexed by decorated 2x2 matrices with entry sum d.  Left
multiplication by the special basis elements (a diagonal idempotent, a
diagonal plus one off-diagonal unit, or a diagonal with a marked corner) is
implemented by closed-form case tables; everything else is assembled from
those: the five distinguished generators e, f, k, k^-1, l, products of
arbitrary basis elements through generator words, and the transpose
anti-automorphism.

The case-table coefficients are polynomials in q and enter Q(v) via q = v^2.
A product whose output label falls outside the index set contributes zero;
the tables below rely on that convention.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import comb

from .decorated import (D_11, D_12, D_1221, D_21, D_22, D_EMPTY,
                        DecoratedMatrix, decorated2, diag2,
                        transpose_decorated, validate)
from .qv import (RF_ONE, RF_ZERO, RationalFunction, format_coeff,
                 parse_coeff, q_bracket, q_power, quantum_factorial,
                 quantum_integer, rf_const, v_power)

LETTERS = ("e", "f", "k", "k^-1", "l")


class SchurElement:
    """Finite Q(v)-linear combination of decorated-matrix basis symbols."""

    __slots__ = ("d", "terms")

    def __init__(self, d, terms=None):
        self.d = d
        t = {}
        if terms:
            for label, c in terms.items():
                if c:
                    t[label] = c
        self.terms = t

    @staticmethod
    def basis(d, label):
        return SchurElement(d, {label: RF_ONE})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SchurElement):
            return NotImplemented
        return self.d == other.d and self.terms == other.terms

    def __add__(self, other):
        if self.d != other.d:
            raise ValueError("mixed degrees")
        t = dict(self.terms)
        for label, c in other.terms.items():
            s = t.get(label, RF_ZERO) + c
            if s:
                t[label] = s
            else:
                t.pop(label, None)
        out = SchurElement.__new__(SchurElement)
        out.d, out.terms = self.d, t
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        out = SchurElement.__new__(SchurElement)
        out.d = self.d
        out.terms = {label: -c for label, c in self.terms.items()}
        return out

    def scale(self, c):
        if not c:
            return SchurElement(self.d)
        out = SchurElement.__new__(SchurElement)
        out.d = self.d
        out.terms = {label: c * c0 for label, c0 in self.terms.items()}
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def to_json(self):
        return {"d": self.d,
                "terms": [{"label": label.to_json(), "coeff": format_coeff(c)}
                          for label, c in self.sorted_terms()]}

    @staticmethod
    def from_json(obj):
        terms = {}
        for t in obj["terms"]:
            label = DecoratedMatrix.from_json(t["label"])
            terms[label] = parse_coeff(t["coeff"])
        return SchurElement(int(obj["d"]), terms)

    def __repr__(self):
        if not self.terms:
            return "SchurElement(0)"
        bits = [f"({format_coeff(c)})*T{label}"
                for label, c in self.sorted_terms()]
        return "SchurElement(" + " + ".join(bits) + ")"


def _label(a11, a12, a21, a22, delta):
    """Decorated label, or None when outside the index set."""
    if a11 < 0 or a12 < 0 or a21 < 0 or a22 < 0:
        return None
    entries = {(1, 1): a11, (1, 2): a12, (2, 1): a21, (2, 2): a22}
    for p in delta:
        if entries[p] <= 0:
            return None
    return decorated2(a11, a12, a21, a22, delta)


def _row_sums(label):
    return (label.a[0][0] + label.a[0][1], label.a[1][0] + label.a[1][1])


def _col_sums(label):
    return (label.a[0][0] + label.a[1][0], label.a[0][1] + label.a[1][1])


# special multiplication keys ------------------------------------------------

def e_key(d, r):
    """Diagonal (r, d-r-1) with one unit in the upper-right corner."""
    if not 0 <= r <= d - 1:
        raise ValueError(f"e index {r} out of range for degree {d}")
    return decorated2(r, 1, 0, d - r - 1)


def f_key(d, r):
    """Diagonal (r, d-r-1) with one unit in the lower-left corner."""
    if not 0 <= r <= d - 1:
        raise ValueError(f"f index {r} out of range for degree {d}")
    return decorated2(r, 0, 1, d - r - 1)


def one_key(d, r):
    """Diagonal idempotent label (r, d-r)."""
    if not 0 <= r <= d:
        raise ValueError(f"idempotent index {r} out of range for degree {d}")
    return diag2(r, d - r)


def x_key(d, r):
    """Diagonal (r, d-r) with the upper-left entry marked; needs r >= 1."""
    if not 1 <= r <= d:
        raise ValueError(f"marked index {r} out of range for degree {d}")
    return diag2(r, d - r, D_11)


def x22_key(d, r):
    """Diagonal (r, d-r) with the lower-right entry marked; needs r <= d-1."""
    if not 0 <= r <= d - 1:
        raise ValueError(f"marked index {r} out of range for degree {d}")
    return diag2(r, d - r, D_22)


def classify_special(key):
    """Which case table applies to left multiplication by this label.

    Returns (kind, required_input_row_sums).
    """
    (a11, a12), (a21, a22) = key.a
    d = a11 + a12 + a21 + a22
    if key.delta == D_EMPTY:
        if a12 == 1 and a21 == 0:
            return "e", (a11, d - a11)
        if a21 == 1 and a12 == 0:
            return "f", (a11 + 1, d - a11 - 1)
        if a12 == 0 and a21 == 0:
            return "diag", (a11, a22)
    elif key.delta == D_11 and a12 == 0 and a21 == 0 and a11 >= 1:
        return "x11", (a11, a22)
    elif key.delta == D_22 and a12 == 0 and a21 == 0 and a22 >= 1:
        return "x22", (a11, a22)
    raise ValueError(f"not a special multiplication key: {key}")


# Case tables.  Each entry: (entry shift, output decoration, coefficient).
# Shifts: P moves a unit from the lower-left to the upper-left entry, Q from
# the lower-right to the upper-right, R and S are their transposes, Z stays.
_P = (1, 0, -1, 0)
_Q = (0, 1, 0, -1)
_R = (-1, 0, 1, 0)
_S = (0, -1, 0, 1)
_Z = (0, 0, 0, 0)


def _expand_e(a, delta):
    (a11, a12), (a21, a22) = a
    qa12 = q_power(a12)
    if delta == D_EMPTY:
        return ((_P, D_EMPTY, qa12 * q_bracket(a11 + 1)),
                (_Q, D_EMPTY, q_bracket(a12 + 1)))
    if delta == D_11:
        return ((_P, D_11, qa12 * q_bracket(a11)),
                (_Q, D_11, q_bracket(a12 + 1)))
    if delta == D_12:
        # hyperplanes through the vector not containing the enlarged
        # intersection: [a11+a12] - [a12-1]
        return ((_P, D_12, q_power(a12 - 1) * q_bracket(a11 + 1)),
                (_Q, D_12, q_bracket(a12)))
    if delta == D_21:
        return ((_P, D_11, q_power(a12 + a11)),
                (_P, D_21, qa12 * q_bracket(a11 + 1)),
                (_Q, D_21, q_bracket(a12 + 1)))
    if delta == D_1221:
        # 12-output: hyperplanes avoiding both the vector and the enlarged
        # intersection: [a11+a12+1] - [a11+a12] - [a12] + [a12-1]
        return ((_P, D_12, q_power(a12 + a11) - q_power(a12 - 1)),
                (_P, D_1221, qa12 * q_bracket(a11 + 1)),
                (_Q, D_1221, q_bracket(a12)))
    if delta == D_22:
        return ((_Q, D_12, qa12),
                (_Q, D_1221, qa12),
                (_P, D_22, qa12 * q_bracket(a11 + 1)),
                (_Q, D_22, q_bracket(a12 + 1)))
    raise AssertionError(delta)


def _expand_f(a, delta):
    (a11, a12), (a21, a22) = a
    qa21 = q_power(a21)
    if delta == D_EMPTY:
        return ((_R, D_EMPTY, q_bracket(a21 + 1)),
                (_S, D_EMPTY, qa21 * q_bracket(a22 + 1)))
    if delta == D_11:
        return ((_R, D_11, q_bracket(a21 + 1)),
                (_S, D_11, qa21 * q_bracket(a22 + 1)),
                (_R, D_21, RF_ONE))
    if delta == D_12:
        return ((_R, D_12, q_bracket(a21 + 1)),
                (_S, D_12, qa21 * q_bracket(a22 + 1)),
                (_R, D_1221, RF_ONE),
                (_S, D_22, RF_ONE))
    if delta == D_21:
        return ((_R, D_21, q_power(1) * q_bracket(a21)),
                (_S, D_21, qa21 * q_bracket(a22 + 1)))
    if delta == D_1221:
        # 22-output: lines over the smaller flag meeting the shifted vector
        # class, minus the one line through the vector itself
        return ((_R, D_1221, q_power(1) * q_bracket(a21)),
                (_S, D_1221, qa21 * q_bracket(a22 + 1)),
                (_S, D_22, qa21 - RF_ONE))
    if delta == D_22:
        return ((_R, D_22, q_bracket(a21 + 1)),
                (_S, D_22, q_power(a21 + 1) * q_bracket(a22)))
    raise AssertionError(delta)


def _expand_x11(a, delta):
    (a11, a12), (a21, a22) = a
    one = RF_ONE
    if delta == D_EMPTY:
        return ((_Z, D_11, one), (_Z, D_12, one))
    if delta == D_11:
        c = q_power(a11)
        return ((_Z, D_EMPTY, c - 1), (_Z, D_11, c - 2), (_Z, D_12, c - 1))
    if delta == D_12:
        c = q_power(a11) * (q_power(a12) - 1)
        return ((_Z, D_EMPTY, c), (_Z, D_11, c), (_Z, D_12, c - 1))
    if delta == D_21:
        c = q_power(a11)
        return ((_Z, D_21, c - 1), (_Z, D_1221, c))
    if delta == D_1221:
        c = q_power(a11) * (q_power(a12) - 1)
        return ((_Z, D_21, c), (_Z, D_1221, c - 1))
    if delta == D_22:
        return ((_Z, D_22, q_power(a11 + a12) - 1),)
    raise AssertionError(delta)


def _expand_x22(a, delta):
    (a11, a12), (a21, a22) = a
    if delta == D_EMPTY:
        return ((_Z, D_21, RF_ONE), (_Z, D_1221, RF_ONE), (_Z, D_22, RF_ONE))
    if delta == D_11:
        c = q_power(a11) - 1
        return ((_Z, D_21, c), (_Z, D_1221, c), (_Z, D_22, c))
    if delta == D_12:
        c = q_power(a11) * (q_power(a12) - 1)
        return ((_Z, D_21, c), (_Z, D_1221, c), (_Z, D_22, c))
    if delta == D_21:
        base = q_power(a11)
        c1 = base * (q_power(a21) - 1)
        c2 = base * (q_power(a21) - 2)
        return ((_Z, D_EMPTY, c1), (_Z, D_11, c1), (_Z, D_12, c1),
                (_Z, D_22, c1), (_Z, D_21, c2), (_Z, D_1221, c2))
    if delta == D_1221:
        base = q_power(a11) * (q_power(a12) - 1)
        c1 = base * (q_power(a21) - 1)
        c2 = base * (q_power(a21) - 2)
        return ((_Z, D_EMPTY, c1), (_Z, D_11, c1), (_Z, D_12, c1),
                (_Z, D_22, c1), (_Z, D_21, c2), (_Z, D_1221, c2))
    if delta == D_22:
        base = q_power(a11 + a12 + a21)
        c1 = base * (q_power(a22) - 1)
        # the translate of the first subspace by the output vector sits
        # entirely outside the span, so a full q^{a11+a12} drops out
        c2 = c1 - q_power(a11 + a12)
        return ((_Z, D_EMPTY, c1), (_Z, D_11, c1), (_Z, D_12, c1),
                (_Z, D_21, c1), (_Z, D_1221, c1), (_Z, D_22, c2))
    raise AssertionError(delta)


_EXPANDERS = {"e": _expand_e, "f": _expand_f,
              "x11": _expand_x11, "x22": _expand_x22}


def _bump(terms, label, c):
    s = terms.get(label, RF_ZERO) + c
    if s:
        terms[label] = s
    else:
        terms.pop(label, None)


def left_mul_special(key, x):
    """Left-multiply x by the special basis element with the given label."""
    kind, margin = classify_special(key)
    if key.d != x.d:
        raise ValueError("mixed degrees")
    out = {}
    for label, c in x.terms.items():
        if _row_sums(label) != margin:
            continue
        if kind == "diag":
            _bump(out, label, c)
            continue
        (a11, a12), (a21, a22) = label.a
        for shift, delta2, coeff in _EXPANDERS[kind](label.a, label.delta):
            if not coeff:
                continue
            lab2 = _label(a11 + shift[0], a12 + shift[1],
                          a21 + shift[2], a22 + shift[3], delta2)
            if lab2 is None:
                continue
            _bump(out, lab2, c * coeff)
    return SchurElement(x.d, out)


def identity_element(d):
    return SchurElement(d, {one_key(d, r): RF_ONE for r in range(d + 1)})


def chevalley(d, which):
    """One of the five distinguished generators as an algebra element."""
    if which == "e":
        return SchurElement(d, {e_key(d, r): v_power(-r) for r in range(d)})
    if which == "f":
        return SchurElement(d, {f_key(d, r): v_power(1 + r - d)
                                for r in range(d)})
    if which == "k":
        return SchurElement(d, {one_key(d, r): v_power(2 * r - d)
                                for r in range(d + 1)})
    if which == "k^-1":
        return SchurElement(d, {one_key(d, r): v_power(d - 2 * r)
                                for r in range(d + 1)})
    if which == "l":
        terms = {one_key(d, 0): RF_ONE}
        for r in range(1, d + 1):
            terms[one_key(d, r)] = v_power(-2 * r)
            terms[x_key(d, r)] = v_power(-2 * r)
        return SchurElement(d, terms)
    raise ValueError(f"unknown generator {which!r}")


def apply_letter(letter, x):
    """Left-multiply by a generator, term by term via the case tables."""
    d = x.d
    out = {}
    for label, c in x.terms.items():
        r0 = label.a[0][0] + label.a[0][1]
        if letter == "k":
            _bump(out, label, c * v_power(2 * r0 - d))
            continue
        if letter == "k^-1":
            _bump(out, label, c * v_power(d - 2 * r0))
            continue
        if letter == "l":
            if r0 == 0:
                _bump(out, label, c)
                continue
            s = c * v_power(-2 * r0)
            _bump(out, label, s)
            kind = "x11"
        elif letter == "e":
            if r0 > d - 1:
                continue
            s = c * v_power(-r0)
            kind = "e"
        elif letter == "f":
            if r0 == 0:
                continue
            s = c * v_power(r0 - d)
            kind = "f"
        else:
            raise ValueError(f"unknown generator {letter!r}")
        (a11, a12), (a21, a22) = label.a
        for shift, delta2, coeff in _EXPANDERS[kind](label.a, label.delta):
            if not coeff:
                continue
            lab2 = _label(a11 + shift[0], a12 + shift[1],
                          a21 + shift[2], a22 + shift[3], delta2)
            if lab2 is None:
                continue
            _bump(out, lab2, s * coeff)
    return SchurElement(d, out)


@dataclass(frozen=True)
class GeneratorWord:
    scalar: object
    letters: tuple

    def __str__(self):
        body = " ".join(self.letters) if self.letters else "1"
        return f"({format_coeff(self.scalar)}) {body}"


def apply_word(word, x):
    for letter in reversed(word.letters):
        x = apply_letter(letter, x)
    return x.scale(word.scalar)


_EVAL_LOCK = threading.Lock()
_EVAL_CACHE = {}


def eval_letters(d, letters):
    """The element obtained by multiplying out a generator word."""
    key = (d, letters)
    got = _EVAL_CACHE.get(key)
    if got is not None:
        return got
    if not letters:
        got = identity_element(d)
    else:
        got = apply_letter(letters[0], eval_letters(d, letters[1:]))
    with _EVAL_LOCK:
        _EVAL_CACHE[key] = got
    return got


def evaluate_words(d, words):
    """Sum of scalar * (multiplied-out word) over a word list.

    Word evaluations carry denominator-free coefficients, so contributions
    are accumulated per scalar denominator and each (label, denominator)
    cell is canonicalized only once.
    """
    groups = {}
    slow = SchurElement(d)
    for w in words:
        base = eval_letters(d, w.letters)
        sc = w.scalar
        acc = groups.setdefault(sc.den, {})
        for lab, c in base.terms.items():
            if c.is_laurent():
                num = sc.num * c.num
                prev = acc.get(lab)
                acc[lab] = num if prev is None else prev + num
            else:
                slow = slow + SchurElement(d, {lab: c * sc})
    total = {}
    for den, acc in groups.items():
        for lab, num in acc.items():
            rf = RationalFunction(num, den)
            prev = total.get(lab)
            rf = rf if prev is None else prev + rf
            total[lab] = rf
    return slow + SchurElement(d, {lab: c for lab, c in total.items() if c})


def star(x):
    """Transpose anti-automorphism on basis labels."""
    return SchurElement(x.d, {transpose_decorated(label): c
                              for label, c in x.terms.items()})


def t22_diagonal(d, r):
    """The diagonal basis element with marked lower-right corner, assembled
    from products of the distinguished idempotents, steps and marked
    idempotents; 0 <= r <= d-1."""
    if not 0 <= r <= d - 1:
        raise ValueError(f"index {r} out of range for degree {d}")
    e_elt = SchurElement.basis(d, e_key(d, r))
    fe = left_mul_special(f_key(d, r), e_elt)
    fxe = left_mul_special(f_key(d, r),
                           left_mul_special(x_key(d, r + 1), e_elt))
    one_r = SchurElement.basis(d, one_key(d, r))
    tail = one_r
    bracket = fe
    if r >= 1:
        x_elt = SchurElement.basis(d, x_key(d, r))
        ex = left_mul_special(e_key(d, r), x_elt)
        fex = left_mul_special(f_key(d, r), ex)
        xfe = left_mul_special(x_key(d, r), fe)
        xfex = left_mul_special(x_key(d, r), fex)
        bracket = bracket + xfex + xfe + fex
        tail = tail + x_elt
    # the diagonal correction carries v^{d-r+1} - v^{d-r-1}, i.e. the
    # positive multiple (q^{d-r} - 1)v^{-(d-r)} of [d-r]
    scal = (v_power(d - r + 1) - v_power(d - r - 1)) * quantum_integer(d - r)
    return (fxe - bracket.scale(v_power(2 - 2 * r)) + fe
            + tail.scale(scal))


# ---------------------------------------------------------------------------
# Expressing an arbitrary basis element as a combination of generator words.
# A "combo" is a dict {letters tuple: coefficient}; concatenation of combos
# mirrors multiplication in the algebra.
# ---------------------------------------------------------------------------

def _cadd(a, b):
    out = dict(a)
    for w, s in b.items():
        t = out.get(w, RF_ZERO) + s
        if t:
            out[w] = t
        else:
            out.pop(w, None)
    return out


def _cscale(a, s):
    if not s:
        return {}
    return {w: c * s for w, c in a.items()}


def _ccat(a, b):
    out = {}
    for wa, sa in a.items():
        for wb, sb in b.items():
            w = wa + wb
            t = out.get(w, RF_ZERO) + sa * sb
            if t:
                out[w] = t
            else:
                out.pop(w, None)
    return out


_COMBO_LOCK = threading.Lock()
_COMBO_CACHE = {}


def _cached(key, build):
    got = _COMBO_CACHE.get(key)
    if got is None:
        got = build()
        with _COMBO_LOCK:
            _COMBO_CACHE[key] = got
    return got


def _c_one(d, r):
    def build():
        # interpolate the idempotent from powers of k: the d+1 eigenvalues
        # of k are the v^(2j-d), and the one with index r is selected
        num = {(): RF_ONE}
        den = RF_ONE
        lam_r = v_power(2 * r - d)
        for j in range(d + 1):
            if j == r:
                continue
            lam = v_power(2 * j - d)
            new = {}
            for w, s in num.items():
                _cbump(new, w + ("k",), s)
                _cbump(new, w, -lam * s)
            num = new
            den = den * (lam_r - lam)
        return _cscale(num, den.inverse())
    return _cached((d, "one", r), build)


def _cbump(combo, w, s):
    t = combo.get(w, RF_ZERO) + s
    if t:
        combo[w] = t
    else:
        combo.pop(w, None)


def _c_e(d, r):
    return _cached((d, "e", r), lambda: _cscale(
        _ccat({("e",): RF_ONE}, _c_one(d, r)), v_power(r)))


def _c_f(d, r):
    return _cached((d, "f", r), lambda: _cscale(
        _ccat(_c_one(d, r), {("f",): RF_ONE}), v_power(d - r - 1)))


def _c_x(d, r):
    return _cached((d, "x", r), lambda: _cadd(
        _cscale(_ccat({("l",): RF_ONE}, _c_one(d, r)), v_power(2 * r)),
        _cscale(_c_one(d, r), rf_const(-1))))


def _c_t22(d, r):
    def build():
        fe = _ccat(_c_f(d, r), _c_e(d, r))
        fxe = _ccat(_c_f(d, r), _ccat(_c_x(d, r + 1), _c_e(d, r)))
        bracket = fe
        tail = _c_one(d, r)
        if r >= 1:
            ex = _ccat(_c_e(d, r), _c_x(d, r))
            fex = _ccat(_c_f(d, r), ex)
            xfe = _ccat(_c_x(d, r), fe)
            xfex = _ccat(_c_x(d, r), fex)
            bracket = _cadd(_cadd(bracket, xfex), _cadd(xfe, fex))
            tail = _cadd(tail, _c_x(d, r))
        scal = (v_power(d - r + 1) - v_power(d - r - 1)) * quantum_integer(d - r)
        out = _cadd(fxe, _cscale(bracket, -v_power(2 - 2 * r)))
        out = _cadd(out, fe)
        return _cadd(out, _cscale(tail, scal))
    return _cached((d, "t22", r), build)


def _c_label(d, label):
    def build():
        (a11, a12), (a21, a22) = label.a
        if min(a11, a12, a21, a22) < 0 or not validate(label)[0]:
            return {}
        delta = label.delta
        if a21 == 0:
            if delta == D_EMPTY:
                if a12 == 0:
                    return _c_one(d, a11)
                # divided power of e applied to an idempotent
                combo = {(): RF_ONE}
                for i in range(a12 - 1, -1, -1):
                    combo = _ccat(combo, _c_e(d, a11 + i))
                scal = v_power(-comb(a12, 2)) / quantum_factorial(a12)
                return _cscale(combo, scal)
            if delta == D_11:
                return _ccat(_c_label(d, _mk(a11, a12, 0, a22, D_EMPTY)),
                             _c_x(d, a11))
            if delta == D_12:
                plain = _c_label(d, _mk(a11, a12, 0, a22, D_EMPTY))
                out = _ccat(_c_x(d, a11 + a12), plain)
                if a11 >= 1:
                    out = _cadd(out, _cscale(
                        _c_label(d, _mk(a11, a12, 0, a22, D_11)),
                        rf_const(-1)))
                return out
            if delta == D_22:
                return _ccat(_c_t22(d, a11 + a12),
                             _c_label(d, _mk(a11, a12, 0, a22, D_EMPTY)))
            return {}
        # a21 >= 1: peel one unit off the lower-left entry
        up = _mk(a11, a12, a21 - 1, a22 + 1, delta)          # A'
        over = _mk(a11 + 1, a12 - 1, a21 - 1, a22 + 1, delta)  # A''
        s = a11 + a21 - 1
        if delta == D_EMPTY:
            lead = _ccat(_c_label(d, up), _c_f(d, s))
            rest = _cscale(_c_label(d, over),
                           v_power(2 * a21 + a11 - 2) * quantum_integer(a11 + 1))
            combo = _cadd(lead, _cscale(rest, rf_const(-1)))
            return _cscale(combo,
                           (v_power(a21 - 1) * quantum_integer(a21)).inverse())
        if delta == D_11:
            lead = _ccat(_c_label(d, up), _c_f(d, s))
            rest = _cscale(_c_label(d, over),
                           v_power(2 * a21 + a11 - 3) * quantum_integer(a11))
            combo = _cadd(lead, _cscale(rest, rf_const(-1)))
            return _cscale(combo,
                           (v_power(a21 - 1) * quantum_integer(a21)).inverse())
        if delta == D_12:
            lead = _ccat(_c_label(d, up), _c_f(d, s))
            r1 = _cscale(_c_label(d, _with_delta(over, D_11)),
                         v_power(2 * a21 + 2 * a11 - 2))
            r2 = _cscale(_c_label(d, over),
                         v_power(2 * a21 + a11 - 2) * quantum_integer(a11 + 1))
            combo = _cadd(lead, _cscale(_cadd(r1, r2), rf_const(-1)))
            return _cscale(combo,
                           (v_power(a21 - 1) * quantum_integer(a21)).inverse())
        if delta == D_21:
            anchor = _mk(a11 + 1, a12, a21 - 1, a22, D_11)   # A'''
            lead = _ccat(_c_f(d, a11 + a12), _c_label(d, anchor))
            r1 = _cscale(_c_label(d, _mk(a11, a12, a21, a22, D_11)),
                         v_power(a21 - 1) * quantum_integer(a21))
            r2 = _cscale(_c_label(d, _with_delta(over, D_11)),
                         v_power(2 * a21 + a22 - 2) * quantum_integer(a22 + 1))
            return _cadd(lead, _cscale(_cadd(r1, r2), rf_const(-1)))
        if delta == D_1221:
            if a21 == 1:
                anchor = _mk(a11 + 1, a12, 0, a22, D_12)     # A'''
                lead = _ccat(_c_f(d, a11 + a12), _c_label(d, anchor))
                r1 = _c_label(d, _mk(a11, a12, 1, a22, D_12))
                r2 = _cscale(_c_label(d, _with_delta(over, D_12)),
                             v_power(a22) * quantum_integer(a22 + 1))
                r3 = _c_label(d, _with_delta(over, D_22))
                drop = _cadd(_cadd(r1, r2), r3)
                return _cadd(lead, _cscale(drop, rf_const(-1)))
            lead = _ccat(_c_label(d, up), _c_f(d, s))
            r1 = _cscale(_c_label(d, _with_delta(over, D_21)),
                         v_power(2 * a21 + 2 * a11 - 2)
                         - v_power(2 * a21 - 4))
            r2 = _cscale(_c_label(d, over),
                         v_power(2 * a21 + a11 - 2) * quantum_integer(a11 + 1))
            combo = _cadd(lead, _cscale(_cadd(r1, r2), rf_const(-1)))
            return _cscale(combo, (v_power(a21 - 2)
                                   * quantum_integer(a21 - 1)).inverse())
        # delta == D_22
        lead = _ccat(_c_t22(d, a11 + a12),
                     _c_label(d, _mk(a11, a12, a21, a22, D_EMPTY)))
        r1 = _c_label(d, _mk(a11, a12, a21, a22, D_21))
        r2 = _c_label(d, _mk(a11, a12, a21, a22, D_1221))
        return _cadd(lead, _cscale(_cadd(r1, r2), rf_const(-1)))
    return _cached((d, label), build)


def _mk(a11, a12, a21, a22, delta):
    return decorated2(a11, a12, a21, a22, delta)


def _with_delta(label, delta):
    return DecoratedMatrix(label.a, delta)


def express_in_generators(label):
    """Generator words whose sum multiplies out to the basis element.

    The result is cached per label; invalid labels raise.
    """
    ok, why = validate(label)
    if not ok or label.n_rows != 2 or label.n_cols != 2:
        raise ValueError(f"bad label {label}: {why}")
    d = label.d
    combo = _c_label(d, label)
    words = [GeneratorWord(s, w) for w, s in combo.items()]
    words.sort(key=lambda gw: (len(gw.letters), gw.letters))
    return tuple(words)


def _apply_words_to(d, words, y):
    """Sum of scalar * (word applied to y), sharing work across the common
    word suffixes and accumulating per scalar denominator as in
    evaluate_words."""
    states = {(): y}

    def fold(letters):
        got = states.get(letters)
        if got is None:
            got = apply_letter(letters[0], fold(letters[1:]))
            states[letters] = got
        return got

    groups = {}
    slow = SchurElement(d)
    for gw in words:
        base = fold(gw.letters)
        sc = gw.scalar
        acc = groups.setdefault(sc.den, {})
        for lab, c in base.terms.items():
            if c.is_laurent():
                num = sc.num * c.num
                prev = acc.get(lab)
                acc[lab] = num if prev is None else prev + num
            else:
                slow = slow + SchurElement(d, {lab: c * sc})
    total = {}
    for den, acc in groups.items():
        for lab, num in acc.items():
            rf = RationalFunction(num, den)
            prev = total.get(lab)
            rf = rf if prev is None else prev + rf
            total[lab] = rf
    return slow + SchurElement(d, {lab: c for lab, c in total.items() if c})


def mul_general(x, y):
    """Product of two algebra elements via generator words."""
    if x.d != y.d:
        raise ValueError("mixed degrees")
    out = SchurElement(x.d)
    for label, c in x.terms.items():
        co = _col_sums(label)
        rel = {lab: cy for lab, cy in y.terms.items()
               if _row_sums(lab) == co}
        if not rel:
            continue
        words = express_in_generators(label)
        out = out + _apply_words_to(x.d, words, SchurElement(x.d, rel)).scale(c)
    return out
