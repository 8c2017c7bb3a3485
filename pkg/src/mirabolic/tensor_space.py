"""Tensor space of marked two-letter words and its diagonal-part actions.

The space has basis T_{i,J} indexed by sequences i in {1,2}^d with a marked
subset J (at most one singleton per position, pairs only at inversions).
The generator k scales each basis vector by v^(2*ones(i)-d); the idempotent
l acts within each block V_i = span{T_{i,J}} by a four-case formula.  Ranks
and kernels of l per block produce the weight multiplicities, which are
compared against binomial closed forms, and the full weight table is fed to
the module decomposition solver to reproduce the expected direct-sum shape:

    (lambda, empty)  ->  L+(l1-l2, 1)     with multiplicity   f_lambda
    (lambda, 1)      ->  L+(l1-l2+1, 01)  with multiplicity C(d,1) f_lambda
    (lambda, 11)     ->  L+(l1-l2, 0)     with multiplicity C(d,2) f_lambda

summed over two-row partitions lambda with |lambda| + s = d.  That shape is
checked, not proved: the report labels agreement "conjecture-consistent".
"""

from dataclasses import dataclass
from itertools import product
from math import comb, factorial

from .decorated import MarkedSequence, count_xi_tensor, sequence_stats
from .linalg import rank_of_rows
from .qv import RF_ONE, format_coeff, parse_coeff, v_power
from .reps import decompose_weight_table, format_module_name


class TensorElement:
    """Sparse vector in the marked tensor space of a fixed size d."""

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
        if label.d != d:
            raise ValueError("label size mismatch")
        return TensorElement(d, {label: RF_ONE})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.d == other.d and self.terms == other.terms

    def __add__(self, other):
        if self.d != other.d:
            raise ValueError("mixed sizes")
        t = dict(self.terms)
        for label, c in other.terms.items():
            s = t.get(label)
            s = c if s is None else s + c
            if s:
                t[label] = s
            elif label in t:
                del t[label]
        out = TensorElement.__new__(TensorElement)
        out.d = self.d
        out.terms = t
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        out = TensorElement.__new__(TensorElement)
        out.d = self.d
        out.terms = {label: -c for label, c in self.terms.items()}
        return out

    def scale(self, c):
        if not c:
            return TensorElement(self.d)
        out = TensorElement.__new__(TensorElement)
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
        terms = {MarkedSequence.from_json(item["label"]): parse_coeff(item["coeff"])
                 for item in obj["terms"]}
        return TensorElement(obj["d"], terms)

    def __repr__(self):
        if not self.terms:
            return f"TensorElement(d={self.d}, 0)"
        bits = [f"({format_coeff(c)}) {label}" for label, c in self.sorted_terms()]
        return f"TensorElement(d={self.d}, " + " + ".join(bits) + ")"


def k_action(x):
    out = {}
    for label, c in x.terms.items():
        ones = sum(1 for val in label.seq if val == 1)
        out[label] = c * v_power(2 * ones - x.d)
    return TensorElement(x.d, out)


def _ell_on_label(label):
    """l . T_{i,J} as {label: coeff}, following the four mark cases."""
    seq = label.seq
    stats = sequence_stats(label)
    ones = stats.ones
    one_positions = [j for j, val in enumerate(seq, start=1) if val == 1]
    marks = label.sorted_marks()

    def w_vector():
        out = {MarkedSequence(seq): RF_ONE}
        for j in one_positions:
            out[MarkedSequence(seq, frozenset({j}))] = RF_ONE
        return out

    def u_vector(j):
        out = {MarkedSequence(seq, frozenset({j})): RF_ONE}
        for m in one_positions:
            if m > j:
                out[MarkedSequence(seq, frozenset({j, m}))] = RF_ONE
        return out

    if not marks:
        coeff = v_power(-2 * ones)
        vec = w_vector()
    elif len(marks) == 1:
        j = marks[0]
        phi = stats.phi[j - 1]
        if seq[j - 1] == 1:
            coeff = v_power(-2 * ones + 2 * phi) * (v_power(2) - RF_ONE)
            vec = w_vector()
        else:
            coeff = v_power(-2 * ones + 2 * phi)
            vec = u_vector(j)
    else:
        j, m = marks
        phi = stats.phi[m - 1]
        coeff = v_power(-2 * ones + 2 * phi) * (v_power(2) - RF_ONE)
        vec = u_vector(j)
    return {lab: coeff * c for lab, c in vec.items()}


def ell_action(x):
    out = TensorElement(x.d)
    for label, c in x.terms.items():
        out = out + TensorElement(x.d, _ell_on_label(label)).scale(c)
    return out


def block_basis(seq):
    """All valid mark sets over a fixed sequence: none, singletons, inversions."""
    seq = tuple(seq)
    d = len(seq)
    out = [MarkedSequence(seq)]
    for j in range(1, d + 1):
        out.append(MarkedSequence(seq, frozenset({j})))
    for j in range(1, d + 1):
        for m in range(j + 1, d + 1):
            if seq[j - 1] == 2 and seq[m - 1] == 1:
                out.append(MarkedSequence(seq, frozenset({j, m})))
    return out

def block_ell_rank(seq):
    """(dimension, rank of l) for the block of a fixed sequence.

    The rank comes from exact elimination of the image vectors, not from
    the closed form 1 + twos(seq); tests compare the two.
    """
    basis = block_basis(seq)
    rows = [_ell_on_label(label) for label in basis]
    return len(basis), rank_of_rows(rows)


def _comb0(n, k):
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def weight_multiplicities(d):
    """Weight table {(a, eps): dim} of the tensor space, a = d - 2r.

    Zero entries are kept so the table's shape is independent of content.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    table = {(d - 2 * r, eps): 0 for r in range(d + 1) for eps in (0, 1)}
    for seq in product((1, 2), repeat=d):
        r = sum(1 for val in seq if val == 2)
        dim, rank = block_ell_rank(seq)
        table[(d - 2 * r, 1)] += rank
        table[(d - 2 * r, 0)] += dim - rank
    return table


def rhs_closed_form(d, r, eps):
    """Binomial closed form for one weight multiplicity."""
    if not 0 <= r <= d:
        raise ValueError("need 0 <= r <= d")
    if eps == 1:
        return _comb0(d, r) + d * _comb0(d - 1, r - 1)
    if eps == 0:
        return d * _comb0(d - 1, r) + _comb0(d, 2) * _comb0(d - 2, r - 1)
    raise ValueError("eps must be 0 or 1")


def inversion_sum(d, r):
    """Sum of inv(i) over sequences with r letters equal to 2."""
    return sum(sequence_stats(seq).inversions
               for seq in product((1, 2), repeat=d)
               if sum(1 for val in seq if val == 2) == r)


def syt_count(partition):
    """Number of standard Young tableaux, by the hook length formula."""
    lam = tuple(int(p) for p in partition if p)
    if any(p < 0 for p in lam) or any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"not a partition: {partition!r}")
    n = sum(lam)
    if n == 0:
        return 1
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])]
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= row - j + conj[j] - i - 1
    return factorial(n) // hooks


@dataclass(frozen=True)
class BipartitionLabel:
    """A two-row partition paired with a column of at most two boxes."""

    lam: tuple
    s: int

    def __post_init__(self):
        lam = tuple(int(p) for p in self.lam if p)
        object.__setattr__(self, "lam", lam)
        if len(lam) > 2 or any(p < 1 for p in lam):
            raise ValueError("partition must have at most two positive parts")
        if len(lam) == 2 and lam[0] < lam[1]:
            raise ValueError("partition parts must decrease")
        if self.s not in (0, 1, 2):
            raise ValueError("column part must have 0, 1 or 2 boxes")

    @property
    def d(self):
        return sum(self.lam) + self.s

    def __str__(self):
        return f"({','.join(str(p) for p in self.lam) or '-'},1^{self.s})"


def bipartition_labels(d):
    out = []
    for s in (0, 1, 2):
        size = d - s
        if size < 0:
            continue
        for l2 in range(size // 2 + 1):
            l1 = size - l2
            lam = (l1, l2) if l2 else ((l1,) if l1 else ())
            out.append(BipartitionLabel(lam, s))
    return out


def conjecture_table(d):
    """Expected module multiset {(kind, sign, n): mult} for the tensor space."""
    out = {}
    for label in bipartition_labels(d):
        lam, s = label.lam, label.s
        l1 = lam[0] if lam else 0
        l2 = lam[1] if len(lam) > 1 else 0
        f = syt_count(lam)
        if s == 0:
            key, mult = ("L1", "+", l1 - l2), f
        elif s == 1:
            key, mult = ("L01", "+", l1 - l2 + 1), d * f
        else:
            key, mult = ("L0", "+", l1 - l2), comb(d, 2) * f
        out[key] = out.get(key, 0) + mult
    return out


def check_left_module(d):
    """Compare computed weight data against the closed forms and the
    expected decomposition; returns a report dict.

    conjecture_match means: every multiplicity agrees with its closed form,
    the total matches the basis count, and the weight table decomposes into
    exactly the predicted simple modules.  Agreement is evidence, not proof;
    callers should report it as conjecture-consistent.
    """
    weights = weight_multiplicities(d)
    mismatches = []
    for r in range(d + 1):
        for eps in (0, 1):
            if weights[(d - 2 * r, eps)] != rhs_closed_form(d, r, eps):
                mismatches.append((r, eps))
    total = sum(weights.values())
    total_expected = count_xi_tensor(2, d)

    table = {("+", a, eps): m for (a, eps), m in weights.items() if m}
    expected = conjecture_table(d)
    try:
        decomposition = decompose_weight_table(table)
        decompose_error = None
    except ValueError as ex:
        decomposition = {}
        decompose_error = str(ex)

    match = (not mismatches and total == total_expected
             and decompose_error is None and decomposition == expected)
    report = {
        "d": d,
        "weights": [{"a": a, "eps": eps, "mult": weights[(a, eps)],
                     "closed_form": rhs_closed_form(d, (d - a) // 2, eps)}
                    for a, eps in sorted(weights, reverse=True)],
        "total": total,
        "total_expected": total_expected,
        "decomposition": [{"module": format_module_name(*key), "mult": m}
                          for key, m in sorted(decomposition.items())],
        "conjecture": [{"module": format_module_name(*key), "mult": m}
                       for key, m in sorted(expected.items())],
        "mismatches": mismatches,
        "conjecture_match": match,
    }
    if decompose_error:
        report["decompose_error"] = decompose_error
    return report
