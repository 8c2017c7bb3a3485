"""Abstract rank-one mirabolic quantum algebra in PBW normal form.

The algebra is generated over Q(v) by e, f, k, k^-1 and an extra idempotent
l.  Its elements are linear combinations of monomials from six families:

    class 0:  f^r e^s k^t
    class 1:  l f^r e^s k^t
    class 2:  f^r e^s l k^t     with (r, s) != (0, 0)
    class 3:  l f^r e^s l k^t   with r, s >= 1
    class 4:  f^r l e^s k^t     with r, s >= 1
    class 5:  e^s l f^r k^t     with r, s >= 1

Left multiplication by a generator lands back in the span of these: powers
of k commute past e and f up to powers of v^2, e straightens against a block
of f's by the usual quantum-sl2 rule, colliding idempotents collapse through
l e l = l e and l f l = f l, and a sandwiched l splits across a block of
equal letters by the move-out identities

    e^a l e^b = (v^-b [a]/[a+b]) e^(a+b) l + (v^a [b]/[a+b]) l e^(a+b),
    f^a l f^b = (v^b [a]/[a+b]) f^(a+b) l + (v^-a [b]/[a+b]) l f^(a+b).

Arbitrary products reduce to folds of single-generator multiplications, so
normal forms are canonical by construction.  The finite-dimensional quotient
map sends a normal form to its generator word evaluated in the convolution
algebra.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .qv import (RF_ONE, RationalFunction, format_coeff, parse_coeff,
                 quantum_integer, rf_const, v_power)
from .schur_algebra import GeneratorWord, evaluate_words

GENERATORS = ("e", "f", "k", "k^-1", "l")

# v - v^-1, the denominator of the commutator relation
_VM = v_power(1) - v_power(-1)


@dataclass(frozen=True)
class PbwMonomial:
    """One basis monomial; r counts f letters, s counts e letters."""

    cls: int
    r: int
    s: int
    t: int

    def __post_init__(self):
        if self.cls not in (0, 1, 2, 3, 4, 5):
            raise ValueError(f"unknown monomial class {self.cls}")
        if self.r < 0 or self.s < 0:
            raise ValueError("negative exponent")
        if self.cls == 2 and self.r == 0 and self.s == 0:
            raise ValueError("class 2 requires an e or f letter")
        if self.cls in (3, 4, 5) and (self.r < 1 or self.s < 1):
            raise ValueError(f"class {self.cls} requires both letter blocks")

    def letters(self):
        """The monomial as a generator word, leftmost factor first."""
        f = ("f",) * self.r
        e = ("e",) * self.s
        if self.t >= 0:
            k = ("k",) * self.t
        else:
            k = ("k^-1",) * (-self.t)
        body = (f + e, ("l",) + f + e, f + e + ("l",),
                ("l",) + f + e + ("l",), f + ("l",) + e,
                e + ("l",) + f)[self.cls]
        return body + k

    def sort_key(self):
        return (self.cls, self.r, self.s, self.t)

    def __str__(self):
        return format_word(self.letters())


def _mono(cls, r, s, t):
    """Monomial constructor that renormalizes degenerate letter blocks.

    A class-3/4/5 shape with an empty block is not a basis monomial but is
    still a valid product; the idempotent collisions l e^s l = l e^s and
    l f^r l = f^r l identify it with a monomial of a smaller class.  Case
    formulas below go through this constructor so they may emit degenerate
    shapes freely.
    """
    if cls == 3:
        if r == 0:
            cls = 1
        elif s == 0:
            cls = 2
    elif cls == 4:
        if r == 0:
            cls = 1
        elif s == 0:
            cls = 2
    elif cls == 5:
        if s == 0:
            cls = 1
        elif r == 0:
            cls = 2
    if cls == 2 and r == 0 and s == 0:
        cls = 1
    return PbwMonomial(cls, r, s, t)


class PbwElement:
    """Finite Q(v)-linear combination of PBW monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    t[mono] = c
        self.terms = t

    @staticmethod
    def monomial(mono, coeff=RF_ONE):
        return PbwElement({mono: coeff})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PbwElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        t = dict(self.terms)
        for mono, c in other.terms.items():
            _bump(t, mono, c)
        out = PbwElement.__new__(PbwElement)
        out.terms = t
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        out = PbwElement.__new__(PbwElement)
        out.terms = {mono: -c for mono, c in self.terms.items()}
        return out

    def scale(self, c):
        if not c:
            return PbwElement()
        out = PbwElement.__new__(PbwElement)
        out.terms = {mono: c * c0 for mono, c0 in self.terms.items()}
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def to_json(self):
        return {"terms": [{"monomial": str(mono), "coeff": format_coeff(c)}
                          for mono, c in self.sorted_terms()]}

    @staticmethod
    def from_json(obj):
        out = PbwElement()
        for item in obj["terms"]:
            coeff, letters = parse_word(f"({item['coeff']}) {item['monomial']}")
            out = out + normalize_word(letters).scale(coeff)
        return out

    def __repr__(self):
        if not self.terms:
            return "PbwElement(0)"
        bits = [f"({format_coeff(c)}) {mono}" for mono, c in self.sorted_terms()]
        return "PbwElement(" + " + ".join(bits) + ")"


def _bump(terms, mono, c):
    if not c:
        return
    prev = terms.get(mono)
    s = prev + c if prev is not None else c
    if s:
        terms[mono] = s
    else:
        del terms[mono]


def unit():
    return PbwElement({PbwMonomial(0, 0, 0, 0): RF_ONE})


def generator(name):
    if name == "e":
        return PbwElement({PbwMonomial(0, 0, 1, 0): RF_ONE})
    if name == "f":
        return PbwElement({PbwMonomial(0, 1, 0, 0): RF_ONE})
    if name == "k":
        return PbwElement({PbwMonomial(0, 0, 0, 1): RF_ONE})
    if name == "k^-1":
        return PbwElement({PbwMonomial(0, 0, 0, -1): RF_ONE})
    if name == "l":
        return PbwElement({PbwMonomial(1, 0, 0, 0): RF_ONE})
    raise ValueError(f"unknown generator {name!r}")


# ---------------------------------------------------------------------------
# straightening of mixed e/f blocks

_STRAIGHTEN_LOCK = threading.Lock()
_EF_CACHE = {}
_FE_CACHE = {}


def ef_straighten(a, b):
    """Normal form of e^a f^b; returns {(r, s, t): coeff} for f^r e^s k^t.

    One e at a time crosses the f block:
    e f^b = f^b e + [b] f^(b-1) (v^(1-b) k - v^(b-1) k^-1)/(v - v^-1),
    and right-appended letters commute past the trailing k-power.
    """
    key = (a, b)
    got = _EF_CACHE.get(key)
    if got is not None:
        return got
    if a == 0:
        out = {(b, 0, 0): RF_ONE}
    else:
        out = {}
        for (r, s, t), c in ef_straighten(a - 1, b).items():
            _bump(out, (r, s + 1, t), c * v_power(2 * t))
        if b >= 1:
            cb = quantum_integer(b) / _VM
            for (r, s, t), c in ef_straighten(a - 1, b - 1).items():
                _bump(out, (r, s, t + 1), c * cb * v_power(1 - b))
                _bump(out, (r, s, t - 1), -c * cb * v_power(b - 1))
    with _STRAIGHTEN_LOCK:
        _EF_CACHE[key] = out
    return out


def fe_straighten(a, b):
    """Reversed form of f^a e^b; returns {(s, r, t): coeff} for e^s f^r k^t.

    Mirror image of ef_straighten, moving one f at a time across the e block
    via f e^b = e^b f - [b] e^(b-1) (v^(b-1) k - v^(1-b) k^-1)/(v - v^-1).
    """
    key = (a, b)
    got = _FE_CACHE.get(key)
    if got is not None:
        return got
    if a == 0:
        out = {(b, 0, 0): RF_ONE}
    else:
        out = {}
        for (s, r, t), c in fe_straighten(a - 1, b).items():
            _bump(out, (s, r + 1, t), c * v_power(-2 * t))
        if b >= 1:
            cb = quantum_integer(b) / _VM
            for (s, r, t), c in fe_straighten(a - 1, b - 1).items():
                _bump(out, (s, r, t + 1), -c * cb * v_power(b - 1))
                _bump(out, (s, r, t - 1), c * cb * v_power(1 - b))
    with _STRAIGHTEN_LOCK:
        _FE_CACHE[key] = out
    return out


def move_out(side, a, b):
    """The basis expansion of e^a l e^b (side "e") or f^a l f^b (side "f")."""
    if a < 0 or b < 0 or a + b == 0:
        raise ValueError("need a, b >= 0 with a + b >= 1")
    den = quantum_integer(a + b)
    qa, qb = quantum_integer(a), quantum_integer(b)
    if side == "e":
        return PbwElement({
            _mono(2, 0, a + b, 0): v_power(-b) * qa / den,
            _mono(1, 0, a + b, 0): v_power(a) * qb / den,
        })
    if side == "f":
        return PbwElement({
            _mono(2, a + b, 0, 0): v_power(b) * qa / den,
            _mono(1, a + b, 0, 0): v_power(-a) * qb / den,
        })
    raise ValueError(f"side must be 'e' or 'f', got {side!r}")


# ---------------------------------------------------------------------------
# left multiplication by a generator

_MUL_LOCK = threading.Lock()
_MUL_CACHE = {}


def _shift(mono, t):
    if t == 0:
        return mono
    return PbwMonomial(mono.cls, mono.r, mono.s, mono.t + t)


def _append_ell(mono):
    """Right product mono * l as {monomial: coeff}."""
    cls, r, s, t = mono.cls, mono.r, mono.s, mono.t
    if cls == 0:
        return {_mono(2, r, s, t): RF_ONE}
    if cls == 1:
        return {_mono(3, r, s, t): RF_ONE}
    if cls == 5:
        # e^s l f^r l = e^s f^r l; straighten the now-plain pair
        out = {}
        for (a, b, c), coeff in ef_straighten(s, r).items():
            _bump(out, _mono(2, a, b, c + t), coeff)
        return out
    # classes 2, 3, 4 already end in l, up to l e^s l = l e^s
    return {mono: RF_ONE}


def _e_times_b0(r, s):
    """e * f^r e^s as {monomial: coeff} (trailing k-power handled by caller)."""
    out = {PbwMonomial(0, r, s + 1, 0): RF_ONE}
    if r >= 1:
        cr = quantum_integer(r) / _VM
        _bump(out, PbwMonomial(0, r - 1, s, 1), cr * v_power(1 - r + 2 * s))
        _bump(out, PbwMonomial(0, r - 1, s, -1), -cr * v_power(r - 1 - 2 * s))
    return out


def _e_times_b1(r, s):
    """e * l f^r e^s as {monomial: coeff}.

    The f block first crosses the e block so the idempotent sees a pure
    power of e on its right; then that sandwich splits by move-out and any
    letters left in the wrong order are restraightened.
    """
    out = {}
    for (b, a, c), coeff in fe_straighten(r, s).items():
        den = quantum_integer(b + 1)
        _bump(out, _mono(5, a, b + 1, c), coeff * v_power(-b) / den)
        c_in = coeff * v_power(1) * quantum_integer(b) / den
        for (a2, b2, c2), coeff2 in ef_straighten(b + 1, a).items():
            _bump(out, _mono(1, a2, b2, c2 + c), c_in * coeff2)
    return out


def _mul_mono(g, mono):
    key = (g, mono)
    got = _MUL_CACHE.get(key)
    if got is not None:
        return got
    cls, r, s, t = mono.cls, mono.r, mono.s, mono.t
    out = {}
    if g == "k":
        out[PbwMonomial(cls, r, s, t + 1)] = v_power(2 * (s - r))
    elif g == "k^-1":
        out[PbwMonomial(cls, r, s, t - 1)] = v_power(2 * (r - s))
    elif g == "l":
        if cls == 0:
            out[_mono(1, r, s, t)] = RF_ONE
        elif cls == 2:
            out[_mono(3, r, s, t)] = RF_ONE
        elif cls == 5:
            # l e^s l f^r = l e^s f^r
            for (a, b, c), coeff in ef_straighten(s, r).items():
                _bump(out, _mono(1, a, b, c + t), coeff)
        else:
            # classes 1, 3, 4 start with l (or reach it through k e^s)
            out[mono] = RF_ONE
    elif g == "e":
        if cls == 0:
            for m2, coeff in _e_times_b0(r, s).items():
                _bump(out, _shift(m2, t), coeff)
        elif cls == 2:
            for m2, coeff in _e_times_b0(r, s).items():
                for m3, c3 in _append_ell(m2).items():
                    _bump(out, _shift(m3, t), coeff * c3)
        elif cls == 4:
            den = quantum_integer(s + 1)
            _bump(out, _mono(2, r, s + 1, t), v_power(-s) / den)
            _bump(out, _mono(4, r, s + 1, t),
                  v_power(1) * quantum_integer(s) / den)
            cr = quantum_integer(r) / _VM
            _bump(out, _mono(4, r - 1, s, t + 1), cr * v_power(1 - r + 2 * s))
            _bump(out, _mono(4, r - 1, s, t - 1), -cr * v_power(r - 1 - 2 * s))
        elif cls == 5:
            out[PbwMonomial(5, r, s + 1, t)] = RF_ONE
        else:
            base = _e_times_b1(r, s)
            if cls == 1:
                for m2, coeff in base.items():
                    _bump(out, _shift(m2, t), coeff)
            else:
                for m2, coeff in base.items():
                    for m3, c3 in _append_ell(m2).items():
                        _bump(out, _shift(m3, t), coeff * c3)
    elif g == "f":
        if cls == 0:
            out[PbwMonomial(0, r + 1, s, t)] = RF_ONE
        elif cls == 2:
            out[PbwMonomial(2, r + 1, s, t)] = RF_ONE
        elif cls == 4:
            out[PbwMonomial(4, r + 1, s, t)] = RF_ONE
        elif cls in (1, 3):
            den = quantum_integer(r + 1)
            hi = v_power(r) / den
            lo = v_power(-1) * quantum_integer(r) / den
            _bump(out, _mono(4, r + 1, s, t), hi)
            _bump(out, _mono(1 if cls == 1 else 3, r + 1, s, t), lo)
        else:
            den = quantum_integer(r + 1)
            hi = v_power(r) / den
            lo = v_power(-1) * quantum_integer(r) / den
            for (a, b, c), coeff in ef_straighten(s, r + 1).items():
                _bump(out, _mono(2, a, b, c + t), coeff * hi)
            _bump(out, PbwMonomial(5, r + 1, s, t), lo)
            cs = quantum_integer(s) / _VM
            _bump(out, _mono(5, r, s - 1, t + 1), -cs * v_power(s - 1 - 2 * r))
            _bump(out, _mono(5, r, s - 1, t - 1), cs * v_power(1 - s + 2 * r))
    else:
        raise ValueError(f"unknown generator {g!r}")
    with _MUL_LOCK:
        _MUL_CACHE[key] = out
    return out


def left_mul_generator(g, x):
    """Normal form of g * x for a single generator g."""
    out = {}
    for mono, c in x.terms.items():
        for m2, c2 in _mul_mono(g, mono).items():
            _bump(out, m2, c * c2)
    el = PbwElement.__new__(PbwElement)
    el.terms = out
    return el


def normalize_word(letters):
    """Normal form of an arbitrary generator word."""
    x = unit()
    for letter in reversed(tuple(letters)):
        x = left_mul_generator(letter, x)
    return x


def multiply(x, y):
    """Normal form of the product x * y."""
    total = {}
    for mono, c in x.terms.items():
        acc = y
        for letter in reversed(mono.letters()):
            acc = left_mul_generator(letter, acc)
        for m2, c2 in acc.terms.items():
            _bump(total, m2, c * c2)
    el = PbwElement.__new__(PbwElement)
    el.terms = total
    return el


def antiautomorphism(x):
    """The linear anti-involution swapping e and f and fixing k and l.

    On a monomial it reverses the word; pushing the k-power back to the
    right end costs v^(2 t (r - s)).
    """
    swap = (0, 2, 1, 3, 4, 5)
    out = {}
    for mono, c in x.terms.items():
        m2 = _mono(swap[mono.cls], mono.s, mono.r, mono.t)
        _bump(out, m2, c * v_power(2 * mono.t * (mono.r - mono.s)))
    return PbwElement(out)


def specialize_ell(eps, x):
    """Quotient to the plain quantum algebra: l maps to 0 or to 1."""
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    out = {}
    for mono, c in x.terms.items():
        if mono.cls == 0:
            _bump(out, mono, c)
        elif eps == 0:
            continue
        elif mono.cls == 5:
            for (a, b, c2), coeff in ef_straighten(mono.s, mono.r).items():
                _bump(out, PbwMonomial(0, a, b, c2 + mono.t), c * coeff)
        else:
            _bump(out, PbwMonomial(0, mono.r, mono.s, mono.t), c)
    return PbwElement(out)


def project_to_schur(d, x):
    """Image in the d-th convolution quotient, as a SchurElement."""
    words = [GeneratorWord(c, mono.letters()) for mono, c in x.sorted_terms()]
    return evaluate_words(d, words)


_CASIMIR = None


def casimir_element():
    """The central element that separates the simple modules.

    The plain quantum Casimir fe + (kv + k^-1 v^-1)/(v - v^-1)^2 is scaled
    by 1 - v^-2 and corrected by five l-terms so that it commutes with the
    idempotent as well.
    """
    global _CASIMIR
    if _CASIMIR is not None:
        return _CASIMIR
    d2 = _VM * _VM
    a = RF_ONE - v_power(-2)
    terms = {
        PbwMonomial(0, 1, 1, 0): a,
        PbwMonomial(0, 0, 0, 1): a * v_power(1) / d2,
        PbwMonomial(0, 0, 0, -1): a * v_power(-1) / d2,
        PbwMonomial(2, 1, 1, 0): -RF_ONE,
        PbwMonomial(1, 1, 1, 0): -RF_ONE,
        PbwMonomial(4, 1, 1, 0): v_power(2),
        PbwMonomial(5, 1, 1, 0): v_power(-2),
        PbwMonomial(1, 0, 0, 1):
            ((v_power(2) - rf_const(2)) * v_power(1) + v_power(-3)) / d2,
        PbwMonomial(1, 0, 0, -1):
            ((v_power(2) - rf_const(2)) * v_power(-1) + v_power(-1)) / d2,
    }
    _CASIMIR = PbwElement(terms)
    return _CASIMIR


def defining_relations():
    """The ten generator relations as (name, lhs, rhs) word combinations.

    Each side is a tuple of (coefficient, letter word) pairs; both sides
    normalize to the same element, and project to the same element of every
    finite quotient.
    """
    two = quantum_integer(2)
    inv_vm = RF_ONE / _VM
    return [
        ("k k^-1 = 1",
         ((RF_ONE, ("k", "k^-1")),), ((RF_ONE, ()),)),
        ("k e k^-1 = v^2 e",
         ((RF_ONE, ("k", "e", "k^-1")),), ((v_power(2), ("e",)),)),
        ("k f k^-1 = v^-2 f",
         ((RF_ONE, ("k", "f", "k^-1")),), ((v_power(-2), ("f",)),)),
        ("e f - f e = (k - k^-1)/(v - v^-1)",
         ((RF_ONE, ("e", "f")), (-RF_ONE, ("f", "e"))),
         ((inv_vm, ("k",)), (-inv_vm, ("k^-1",)))),
        ("l^2 = l",
         ((RF_ONE, ("l", "l")),), ((RF_ONE, ("l",)),)),
        ("k l = l k",
         ((RF_ONE, ("k", "l")),), ((RF_ONE, ("l", "k")),)),
        ("l e l = l e",
         ((RF_ONE, ("l", "e", "l")),), ((RF_ONE, ("l", "e")),)),
        ("l f l = f l",
         ((RF_ONE, ("l", "f", "l")),), ((RF_ONE, ("f", "l")),)),
        ("[2] e l e = v^-1 e^2 l + v l e^2",
         ((two, ("e", "l", "e")),),
         ((v_power(-1), ("e", "e", "l")), (v_power(1), ("l", "e", "e")))),
        ("[2] f l f = v^-1 l f^2 + v f^2 l",
         ((two, ("f", "l", "f")),),
         ((v_power(-1), ("l", "f", "f")), (v_power(1), ("f", "f", "l")))),
    ]


def enumerate_monomials(max_r, max_s, max_t):
    """All basis monomials with r <= max_r, s <= max_s, |t| <= max_t."""
    out = []
    ts = range(-max_t, max_t + 1)
    for t in ts:
        for r in range(max_r + 1):
            for s in range(max_s + 1):
                out.append(PbwMonomial(0, r, s, t))
                out.append(PbwMonomial(1, r, s, t))
                if (r, s) != (0, 0):
                    out.append(PbwMonomial(2, r, s, t))
                if r >= 1 and s >= 1:
                    out.append(PbwMonomial(3, r, s, t))
                    out.append(PbwMonomial(4, r, s, t))
                    out.append(PbwMonomial(5, r, s, t))
    out.sort(key=PbwMonomial.sort_key)
    return out


# ---------------------------------------------------------------------------
# word grammar: "(v^-1) e^2 l f k^-2"


def format_word(letters):
    if not letters:
        return "1"
    parts = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        n = j - i
        if letters[i] == "k^-1":
            parts.append("k^-1" if n == 1 else f"k^-{n}")
        elif n == 1:
            parts.append(letters[i])
        else:
            parts.append(f"{letters[i]}^{n}")
        i = j
    return " ".join(parts)


def parse_word(text):
    """Parse "(coeff) letters" into (coefficient, letter tuple).

    The parenthesized coefficient is optional and uses the scalar grammar;
    letters are e, f, l, k with optional integer exponents, where only k
    admits negative ones.
    """
    text = text.strip()
    coeff = RF_ONE
    if text.startswith("("):
        depth = 0
        end = -1
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    end = i
                    break
        if end < 0:
            raise ValueError("unbalanced parenthesis in word")
        coeff = parse_coeff(text[1:end].replace(" ", ""))
        text = text[end + 1:]
    letters = []
    for tok in text.split():
        if tok == "1":
            continue
        base, _, exp = tok.partition("^")
        if base not in ("e", "f", "k", "l"):
            raise ValueError(f"unknown generator {base!r}")
        n = int(exp) if exp else 1
        if n == 0:
            continue
        if n < 0:
            if base != "k":
                raise ValueError(f"negative power of {base}")
            letters.extend(["k^-1"] * (-n))
        else:
            letters.extend([base] * n)
    return coeff, tuple(letters)
