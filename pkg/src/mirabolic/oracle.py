"""Brute-force finite-field verification of the convolution algebra.

Basis symbols correspond to orbits of (flag, flag, vector) triples over F_p.
Products are obtained by literally counting the points of the convolution
sum for several primes and interpolating the counts as polynomials in q,
with q = p at each prime.  Nothing here touches the closed-form case tables,
so agreement between the two is a genuine cross-check.

Conventions: vectors are length-d coordinate tuples over F_p, also addressed
by the integer index sum(x_k p^k); subspaces are kept as canonical reduced
row-echelon bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from .decorated import (ALL_DELTAS, D_EMPTY, DecoratedMatrix, MarkedSequence,
                        decorated2, enumerate_xi, row_col_sums, validate)
from .qv import lagrange_interpolate, substitute_q
from .schur_algebra import SchurElement

SIZE_GUARD = 1 << 20


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def primes_list(count, start=2):
    out = []
    n = start
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += 1
    return out


# --- small exact linear algebra over F_p -----------------------------------

def rref(rows, p):
    """Canonical reduced row-echelon basis (tuple of tuples, no zero rows)."""
    m = [list(r) for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    pivot_row = 0
    for col in range(ncols):
        pr = None
        for r in range(pivot_row, len(m)):
            if m[r][col] % p:
                pr = r
                break
        if pr is None:
            continue
        m[pivot_row], m[pr] = m[pr], m[pivot_row]
        inv = pow(m[pivot_row][col], p - 2, p) if p > 2 else m[pivot_row][col]
        m[pivot_row] = [(x * inv) % p for x in m[pivot_row]]
        for r in range(len(m)):
            if r != pivot_row and m[r][col] % p:
                c = m[r][col]
                m[r] = [(a - c * b) % p for a, b in zip(m[r], m[pivot_row])]
        pivot_row += 1
        if pivot_row == len(m):
            break
    return tuple(tuple(r) for r in m[:pivot_row] if any(r))


def fp_rank(rows, p):
    return len(rref(rows, p))


def in_span(basis, vec, p):
    """Membership test against an echelon basis."""
    v = list(vec)
    for row in basis:
        lead = next(i for i, x in enumerate(row) if x)
        if v[lead]:
            c = v[lead]
            v = [(a - c * b) % p for a, b in zip(v, row)]
    return not any(v)


@dataclass(frozen=True)
class PrimeFieldSubspace:
    p: int
    d: int
    basis: tuple

    @staticmethod
    def from_rows(rows, d, p):
        return PrimeFieldSubspace(p, d, rref(rows, p))

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, vec):
        return in_span(self.basis, vec, self.p)


@dataclass(frozen=True)
class FlagTriple:
    F: tuple
    Fp: tuple
    v: tuple

    @property
    def p(self):
        chain = self.F or self.Fp
        return chain[0].p

    @property
    def d(self):
        return len(self.v)


def _all_subspace_bases(d, p, r):
    """Echelon bases of all r-dimensional subspaces of F_p^d."""
    out = []
    for pivots in combinations(range(d), r):
        free = [(i, j) for i, pc in enumerate(pivots)
                for j in range(pc + 1, d) if j not in pivots]
        for vals in product(range(p), repeat=len(free)):
            rows = [[0] * d for _ in range(r)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), val in zip(free, vals):
                rows[i][j] = val
            out.append(tuple(tuple(row) for row in rows))
    return out


def enumerate_flags(d, p, kind):
    """Flags over F_p^d: kind is "complete" or an integer r for the two-step
    flag 0 <= F_1 <= F_p^d with dim F_1 = r.  The full space is implicit, so a
    two-step flag is returned as a single subspace and a complete flag as the
    chain of dimensions 1..d-1."""
    if p ** d > SIZE_GUARD:
        raise ValueError(f"p^d = {p**d} exceeds the enumeration guard")
    if kind == "complete":
        chains = [()]
        for r in range(1, d):
            new = []
            for chain in chains:
                prev = chain[-1].basis if chain else ()
                for basis in _all_subspace_bases(d, p, r):
                    if all(in_span(basis, row, p) for row in prev):
                        new.append(chain
                                   + (PrimeFieldSubspace(p, d, basis),))
            chains = new
        return chains
    r = int(kind)
    if not 0 <= r <= d:
        raise ValueError(f"two-step dimension {r} out of range")
    return [(PrimeFieldSubspace(p, d, b),) for b in _all_subspace_bases(d, p, r)]


# --- orbit classification ---------------------------------------------------

def _pair_matrix(f1, f2, d, p):
    """2x2 dimension matrix of a pair of subspaces."""
    i11 = f1.dim + f2.dim - fp_rank(f1.basis + f2.basis, p)
    return (i11, f1.dim - i11, f2.dim - i11, d - f1.dim - f2.dim + i11)


def _vector_zone(v, f1, f2, p):
    """Which of the six membership cases the vector falls in, 0..5."""
    if not any(v):
        return 0
    in1 = f1.contains(v)
    in2 = f2.contains(v)
    if in1 and in2:
        return 1
    if in1:
        return 2
    if in2:
        return 3
    if in_span(rref(f1.basis + f2.basis, p), v, p):
        return 4
    return 5


def orbit_invariant(t):
    """Decorated matrix classifying the orbit of a (2-step, 2-step, vector)
    triple."""
    f1, f2 = t.F[0], t.Fp[0]
    p, d = t.p, t.d
    a11, a12, a21, a22 = _pair_matrix(f1, f2, d, p)
    delta = ALL_DELTAS[_vector_zone(t.v, f1, f2, p)]
    return decorated2(a11, a12, a21, a22, delta)


def canonical_representative(label, p):
    """A distinguished triple in the orbit: coordinates are grouped in block
    order (1,1), (1,2), (2,1), (2,2), the first flag spans the first two
    blocks, the second flag the first and third, and the vector is the sum of
    the first coordinate of each marked block."""
    (a11, a12), (a21, a22) = label.a
    d = label.d
    starts = {(1, 1): 0, (1, 2): a11, (2, 1): a11 + a12,
              (2, 2): a11 + a12 + a21}
    def unit(i):
        row = [0] * d
        row[i] = 1
        return tuple(row)
    f_rows = [unit(i) for i in range(a11 + a12)]
    fp_rows = [unit(i) for i in range(a11)]
    fp_rows += [unit(a11 + a12 + i) for i in range(a21)]
    v = [0] * d
    for pos in label.delta:
        v[starts[pos]] = 1
    return FlagTriple((PrimeFieldSubspace.from_rows(f_rows, d, p),),
                      (PrimeFieldSubspace.from_rows(fp_rows, d, p),),
                      tuple(v))


# --- the counting kernel -----------------------------------------------------

@lru_cache(maxsize=None)
def _digit_table(d, p):
    idx = np.arange(p ** d, dtype=np.int64)
    return np.stack([(idx // p ** k) % p for k in range(d)])


def _span_mask(basis, d, p):
    n = p ** d
    mask = np.zeros(n, dtype=bool)
    t = len(basis)
    if t == 0:
        mask[0] = True
        return mask
    coefs = np.stack([(np.arange(p ** t) // p ** j) % p for j in range(t)],
                     axis=1)
    vecs = coefs @ np.array(basis, dtype=np.int64) % p
    powers = p ** np.arange(d, dtype=np.int64)
    mask[vecs @ powers] = True
    return mask


def _shift_perm(v, d, p):
    """perm[u] = index of v - u, coordinatewise mod p."""
    dig = _digit_table(d, p)
    perm = np.zeros(p ** d, dtype=np.int64)
    for k in range(d):
        perm += ((v[k] - dig[k]) % p) * p ** k
    return perm


_ZONE_DELTA = ALL_DELTAS


def _zone_array(mask_first, mask_second, sum_rank, sum_basis, d, p):
    n = p ** d
    zone = np.full(n, 4, dtype=np.int64)
    if sum_rank < d:
        zone[~_span_mask(sum_basis, d, p)] = 5
    both = mask_first & mask_second
    zone[mask_first] = 2
    zone[mask_second] = 3
    zone[both] = 1
    zone[0] = 0
    return zone


_CONV_CACHE = {}


def _conv_table(d, out_label, mid_dim, p):
    """Counts of the convolution sum at the canonical triple of out_label,
    restricted to middle subspaces of the given dimension, for every pair of
    (left, right) orbit labels at once."""
    key = (d, out_label, mid_dim, p)
    got = _CONV_CACHE.get(key)
    if got is not None:
        return got
    if p ** d > SIZE_GUARD:
        raise ValueError(f"p^d = {p**d} exceeds the enumeration guard")
    rep = canonical_representative(out_label, p)
    f1, fp1 = rep.F[0], rep.Fp[0]
    mask_f = _span_mask(f1.basis, d, p)
    mask_fp = _span_mask(fp1.basis, d, p)
    perm = _shift_perm(rep.v, d, p)
    counts = {}
    for h_basis in _all_subspace_bases(d, p, mid_dim):
        mask_h = _span_mask(h_basis, d, p)
        sum_l = rref(f1.basis + h_basis, p)
        sum_r = rref(h_basis + fp1.basis, p)
        i11l = f1.dim + mid_dim - len(sum_l)
        i11r = mid_dim + fp1.dim - len(sum_r)
        zone_l = _zone_array(mask_f, mask_h, len(sum_l), sum_l, d, p)
        zone_r = _zone_array(mask_h, mask_fp, len(sum_r), sum_r, d, p)
        cnt = np.bincount(zone_l * 6 + zone_r[perm], minlength=36)
        al = (i11l, f1.dim - i11l, mid_dim - i11l,
              d - f1.dim - mid_dim + i11l)
        ar = (i11r, mid_dim - i11r, fp1.dim - i11r,
              d - mid_dim - fp1.dim + i11r)
        for code in np.nonzero(cnt)[0]:
            zl, zr = divmod(int(code), 6)
            lab_l = decorated2(*al, _ZONE_DELTA[zl])
            lab_r = decorated2(*ar, _ZONE_DELTA[zr])
            pair = (lab_l, lab_r)
            counts[pair] = counts.get(pair, 0) + int(cnt[code])
    _CONV_CACHE[key] = counts
    return counts


def convolution_count(left, right, out, p):
    """Number of (H, u) pairs realizing the product coefficient at out."""
    _, co_l = row_col_sums(left)
    ro_r, co_r = row_col_sums(right)
    ro_o, co_o = row_col_sums(out)
    if co_l != ro_r or ro_o != row_col_sums(left)[0] or co_o != co_r:
        return 0
    table = _conv_table(out.d, out, ro_r[0], p)
    return table.get((left, right), 0)


def _candidate_outputs(d, ro, co):
    outs = []
    lo = max(0, ro[0] - co[1])
    hi = min(ro[0], co[0])
    for a11 in range(lo, hi + 1):
        a12 = ro[0] - a11
        a21 = co[0] - a11
        a22 = ro[1] - a21
        for delta in ALL_DELTAS:
            lab = decorated2(a11, a12, a21, a22, delta)
            if validate(lab)[0]:
                outs.append(lab)
    return outs


def structure_constants(left, right, primes):
    """The product of two basis symbols recovered purely from point counts.

    Counts at each prime are interpolated in q with degree bound d^2; if the
    coefficients fail to interpolate (bound breach), the bound is doubled
    once with automatically extended primes.
    """
    d = left.d
    if right.d != d:
        raise ValueError("mixed degrees")
    primes = sorted(set(primes))
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    if len(primes) < d * d + 1:
        raise ValueError(f"need at least {d*d + 1} primes, got {len(primes)}")
    ro_l, co_l = row_col_sums(left)
    ro_r, co_r = row_col_sums(right)
    if co_l != ro_r:
        return SchurElement(d)
    terms = {}
    for out in _candidate_outputs(d, ro_l, co_r):
        pts = [(p, _conv_table(d, out, ro_r[0], p).get((left, right), 0))
               for p in primes]
        try:
            poly = lagrange_interpolate(pts, d * d)
        except ValueError:
            need = 2 * d * d + 1
            extra = [n for n in primes]
            n = max(primes) + 1
            while len(extra) < need:
                if is_prime(n):
                    extra.append(n)
                n += 1
            pts = [(p, _conv_table(d, out, ro_r[0], p).get((left, right), 0))
                   for p in extra]
            poly = lagrange_interpolate(pts, 2 * d * d)
        coeff = substitute_q(poly)
        if coeff:
            terms[out] = coeff
    return SchurElement(d, terms)


# --- mixed orbits: two-step flag, complete flag, vector ---------------------

def _chain_subspaces(t):
    """Complete chain including the two trivial ends, dims 0..d."""
    d = t.d
    p = t.p
    chain = [PrimeFieldSubspace(p, d, ())]
    chain.extend(t.Fp)
    full = rref(tuple(tuple(1 if i == j else 0 for j in range(d))
                      for i in range(d)), p)
    chain.append(PrimeFieldSubspace(p, d, full))
    return chain


def tensor_orbit_invariant(t):
    """Marked sequence classifying a (two-step, complete, vector) triple.

    The letter at position r records whether the intersection with the
    two-step subspace grows at step r of the complete flag.  The marks come
    from the two jump positions of the vector: the first step c at which v
    falls into F_1 plus the partial flag, and the first step m at which v
    falls into the partial flag itself; v = 0 gives no marks, c = 0 gives
    {m}, c = m gives {c}, and c < m gives {c, m}.
    """
    f1 = t.F[0]
    p, d = t.p, t.d
    chain = _chain_subspaces(t)
    seq = []
    prev = 0
    for r in range(1, d + 1):
        inter = f1.dim + chain[r].dim - fp_rank(f1.basis + chain[r].basis, p)
        seq.append(1 if inter > prev else 2)
        prev = inter
    if not any(t.v):
        return MarkedSequence(tuple(seq), frozenset())
    m = next(r for r in range(d + 1) if chain[r].contains(t.v))
    c = next(r for r in range(d + 1)
             if in_span(rref(f1.basis + chain[r].basis, p), t.v, p))
    if c == 0:
        marks = frozenset({m})
    elif c == m:
        marks = frozenset({c})
    else:
        marks = frozenset({c, m})
    ms = MarkedSequence(tuple(seq), marks)
    ok, why = validate(ms)
    if not ok:
        raise RuntimeError(f"classification inconsistency at {t}: {why}")
    return ms


def canonical_tensor_representative(ms, p):
    """Distinguished mixed triple mapping to the marked sequence: the
    complete flag is the standard coordinate flag, the two-step subspace is
    spanned by the coordinates carrying letter 1, and the vector encodes the
    marks."""
    d = ms.d
    def unit(i):
        row = [0] * d
        row[i] = 1
        return tuple(row)
    f_rows = [unit(r - 1) for r in range(1, d + 1) if ms.seq[r - 1] == 1]
    chain = tuple(PrimeFieldSubspace.from_rows([unit(i) for i in range(r)],
                                               d, p)
                  for r in range(1, d))
    v = [0] * d
    for j in ms.marks:
        v[j - 1] = 1
    return FlagTriple((PrimeFieldSubspace.from_rows(f_rows, d, p),),
                      chain, tuple(v))


_MIXED_CACHE = {}


def _mixed_conv_table(d, out_ms, mid_dim, p):
    """Counts of the mixed convolution at the canonical triple of a marked
    sequence, middle subspaces of fixed dimension: keys are (left decorated
    matrix, right marked sequence)."""
    key = (d, out_ms, mid_dim, p)
    got = _MIXED_CACHE.get(key)
    if got is not None:
        return got
    if p ** d > SIZE_GUARD:
        raise ValueError(f"p^d = {p**d} exceeds the enumeration guard")
    rep = canonical_tensor_representative(out_ms, p)
    f1 = rep.F[0]
    chain = _chain_subspaces(rep)
    mask_f = _span_mask(f1.basis, d, p)
    perm = _shift_perm(rep.v, d, p)
    n = p ** d
    # m(w): first step of the complete flag containing w
    m_arr = np.zeros(n, dtype=np.int64)
    for r in range(d):
        m_arr += ~_span_mask(chain[r].basis, d, p)
    ncodes = (d + 1) * (d + 1)
    counts = {}
    for h_basis in _all_subspace_bases(d, p, mid_dim):
        mask_h = _span_mask(h_basis, d, p)
        sum_l = rref(f1.basis + h_basis, p)
        i11l = f1.dim + mid_dim - len(sum_l)
        zone_l = _zone_array(mask_f, mask_h, len(sum_l), sum_l, d, p)
        # c(w): first step r with w in H + chain[r]
        c_arr = np.zeros(n, dtype=np.int64)
        seq = []
        prev = 0
        for r in range(d):
            c_arr += ~_span_mask(rref(h_basis + chain[r].basis, p), d, p)
        for r in range(1, d + 1):
            inter = (mid_dim + chain[r].dim
                     - fp_rank(h_basis + chain[r].basis, p))
            seq.append(1 if inter > prev else 2)
            prev = inter
        seq = tuple(seq)
        code_r = c_arr * (d + 1) + m_arr
        cnt = np.bincount(zone_l * ncodes + code_r[perm],
                          minlength=6 * ncodes)
        al = (i11l, f1.dim - i11l, mid_dim - i11l,
              d - f1.dim - mid_dim + i11l)
        for code in np.nonzero(cnt)[0]:
            zl, rest = divmod(int(code), ncodes)
            c, m = divmod(rest, d + 1)
            if c == m == 0:
                marks = frozenset()
            elif c == 0:
                marks = frozenset({m})
            elif c == m:
                marks = frozenset({c})
            else:
                marks = frozenset({c, m})
            ms_r = MarkedSequence(seq, marks)
            ok, why = validate(ms_r)
            if not ok:
                raise RuntimeError(
                    f"classification inconsistency at H={h_basis}: {why}")
            lab_l = decorated2(*al, _ZONE_DELTA[zl])
            pair = (lab_l, ms_r)
            counts[pair] = counts.get(pair, 0) + int(cnt[code])
    _MIXED_CACHE[key] = counts
    return counts


def tensor_action_constants(left, right_ms, primes):
    """Exact coefficients of (left basis symbol) acting on a marked-sequence
    basis vector, interpolated from point counts: {output sequence: coeff}."""
    d = left.d
    if right_ms.d != d:
        raise ValueError("mixed degrees")
    primes = sorted(set(primes))
    if len(primes) < d * d + 1:
        raise ValueError(f"need at least {d*d + 1} primes")
    ro_l, co_l = row_col_sums(left)
    ones = sum(1 for x in right_ms.seq if x == 1)
    if co_l != (ones, d - ones):
        return {}
    out = {}
    for cand in enumerate_xi(2, d, tensor=True):
        ones_c = sum(1 for x in cand.seq if x == 1)
        if (ones_c, d - ones_c) != ro_l:
            continue
        pts = [(p, _mixed_conv_table(d, cand, ones, p).get((left, right_ms), 0))
               for p in primes]
        poly = lagrange_interpolate(pts, d * d)
        coeff = substitute_q(poly)
        if coeff:
            out[cand] = coeff
    return out


# --- whole-space classification checks ---------------------------------------

def classify_all_pairs(d, p):
    """Orbit sizes of all (two-step, two-step, vector) triples, by label."""
    if p ** d > SIZE_GUARD:
        raise ValueError("enumeration guard exceeded")
    subs = []
    for r in range(d + 1):
        subs.extend(enumerate_flags(d, p, r))
    vecs = list(product(range(p), repeat=d))
    sizes = {}
    for f in subs:
        for fp_ in subs:
            for v in vecs:
                lab = orbit_invariant(FlagTriple(f, fp_, v))
                sizes[lab] = sizes.get(lab, 0) + 1
    return sizes


def classify_all_mixed(d, p):
    """Orbit sizes of all (two-step, complete, vector) triples, by marked
    sequence."""
    if p ** d > SIZE_GUARD:
        raise ValueError("enumeration guard exceeded")
    subs = []
    for r in range(d + 1):
        subs.extend(enumerate_flags(d, p, r))
    completes = enumerate_flags(d, p, "complete")
    vecs = list(product(range(p), repeat=d))
    sizes = {}
    for f in subs:
        for ch in completes:
            for v in vecs:
                ms = tensor_orbit_invariant(FlagTriple(f, ch, v))
                sizes[ms] = sizes.get(ms, 0) + 1
    return sizes


def random_invertible(d, p, rng):
    while True:
        g = tuple(tuple(rng.randrange(p) for _ in range(d)) for _ in range(d))
        if fp_rank(g, p) == d:
            return g


def transform_triple(t, g):
    """Apply a change of basis to every constituent of the triple."""
    p, d = t.p, t.d
    def act_vec(v):
        return tuple(sum(v[i] * g[i][j] for i in range(d)) % p
                     for j in range(d))
    def act_space(s):
        return PrimeFieldSubspace.from_rows([act_vec(r) for r in s.basis],
                                            d, p)
    return FlagTriple(tuple(act_space(s) for s in t.F),
                      tuple(act_space(s) for s in t.Fp),
                      act_vec(t.v))
