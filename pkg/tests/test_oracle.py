"""Finite-field brute force: orbit classification and interpolated products."""

import random
from itertools import product

from mirabolic import oracle
from mirabolic.decorated import (DecoratedMatrix, MarkedSequence,
                                 count_xi_tensor, decorated2, diag2,
                                 enumerate_xi, row_col_sums)
from mirabolic.qv import RF_ONE, rf_const, v_power
from mirabolic.schur_algebra import (SchurElement, chevalley, identity_element,
                                     mul_general, one_key, x_key)
from mirabolic.tensor_space import TensorElement, ell_action, k_action


def test_enumerate_flags():
    assert len(oracle.enumerate_flags(2, 2, 1)) == 3
    assert len(oracle.enumerate_flags(3, 3, "complete")) == 52
    assert len(oracle.enumerate_flags(2, 2, 0)) == 1
    # canonical echelon bases, no duplicates
    lines = oracle.enumerate_flags(3, 2, 1)
    assert len({f[0].basis for f in lines}) == 7


def test_orbit_invariant_examples():
    p = 2
    f1 = oracle.PrimeFieldSubspace.from_rows([(1, 0)], 2, p)
    fp1 = oracle.PrimeFieldSubspace.from_rows([(0, 1)], 2, p)
    t = oracle.FlagTriple((f1,), (fp1,), (1, 1))
    assert oracle.orbit_invariant(t) == \
        decorated2(0, 1, 1, 0, frozenset({(1, 2), (2, 1)}))
    t0 = oracle.FlagTriple((f1,), (fp1,), (0, 0))
    assert oracle.orbit_invariant(t0).delta == frozenset()
    t2 = oracle.FlagTriple((f1,), (f1,), (1, 0))
    lab = oracle.orbit_invariant(t2)
    assert lab.a[0][0] == 1 and lab.delta == frozenset({(1, 1)})


def test_canonical_representative_round_trip():
    for d in (1, 2, 3):
        for p in (2, 3):
            for lab in enumerate_xi(2, d):
                t = oracle.canonical_representative(lab, p)
                assert oracle.orbit_invariant(t) == lab, (lab, p)


def test_orbit_partition():
    # orbit sizes add up to the full triple count
    for d in (1, 2, 3):
        for p in (2, 3):
            sizes = oracle.classify_all_pairs(d, p)
            subs = sum(len(oracle.enumerate_flags(d, p, r))
                       for r in range(d + 1))
            assert sum(sizes.values()) == subs * subs * p ** d
            assert set(sizes) == set(enumerate_xi(2, d))


def test_orbit_invariance_random_group_elements():
    rng = random.Random(2024)
    d, p = 3, 3
    subs = []
    for r in range(d + 1):
        subs.extend(oracle.enumerate_flags(d, p, r))
    vecs = list(product(range(p), repeat=d))
    for _ in range(100):
        t = oracle.FlagTriple(rng.choice(subs), rng.choice(subs),
                              rng.choice(vecs))
        g = oracle.random_invertible(d, p, rng)
        assert oracle.orbit_invariant(oracle.transform_triple(t, g)) == \
            oracle.orbit_invariant(t)


def test_convolution_count_examples():
    e1 = decorated2(1, 1, 0, 0)
    one1 = diag2(1, 1)
    assert oracle.convolution_count(e1, one1, e1, 2) == 1
    # diagonal left factor is a delta projector
    for out in enumerate_xi(2, 2):
        ro = row_col_sums(out)[0]
        dlab = diag2(ro[0], ro[1])
        for cand in enumerate_xi(2, 2):
            want = 1 if cand == out else 0
            assert oracle.convolution_count(dlab, out, cand, 3) == want
    # incompatible margins
    a = decorated2(1, 1, 0, 0)
    b = decorated2(0, 0, 1, 1)
    assert oracle.convolution_count(a, b, a, 2) == 0


def test_counts_are_nonnegative_integers():
    rng = random.Random(6)
    labels = enumerate_xi(2, 2)
    for _ in range(30):
        left, right, out = (rng.choice(labels) for _ in range(3))
        for p in (2, 3, 5):
            n = oracle.convolution_count(left, right, out, p)
            assert isinstance(n, int) and n >= 0


def test_structure_constants_examples():
    primes = [2, 3, 5, 7, 11]
    x1 = x_key(2, 1)
    got = oracle.structure_constants(x1, x1, primes)
    want = SchurElement.basis(2, x1).scale(v_power(2) - rf_const(2)) + \
        SchurElement.basis(2, one_key(2, 1)).scale(v_power(2) - rf_const(1))
    assert got == want
    # identity times anything
    rng = random.Random(14)
    labels = enumerate_xi(2, 2)
    for _ in range(6):
        lab = rng.choice(labels)
        r0 = row_col_sums(lab)[0]
        got = oracle.structure_constants(diag2(r0[0], r0[1]), lab, primes)
        assert got == SchurElement.basis(2, lab)


def test_structure_constants_match_engine():
    # spot sample; the exhaustive d=2 sweep runs in the acceptance suite
    primes = [2, 3, 5, 7, 11]
    rng = random.Random(31)
    labels = enumerate_xi(2, 2)
    pairs = [(a, b) for a in labels for b in labels
             if row_col_sums(a)[1] == row_col_sums(b)[0]]
    for left, right in rng.sample(pairs, 15):
        got = oracle.structure_constants(left, right, primes)
        want = mul_general(SchurElement.basis(2, left),
                           SchurElement.basis(2, right))
        assert got == want, (left, right)


def test_chevalley_generator_products_match():
    primes = [2, 3, 5, 7, 11]
    d = 2
    gens = {g: chevalley(d, g) for g in ("e", "f", "k", "l")}
    for g1, x in gens.items():
        for g2, y in gens.items():
            got = SchurElement(d)
            for la, ca in x.terms.items():
                for lb, cb in y.terms.items():
                    prod = oracle.structure_constants(la, lb, primes)
                    got = got + prod.scale(ca * cb)
            assert got == mul_general(x, y), (g1, g2)


def test_tensor_orbit_examples():
    p = 3
    full = oracle.PrimeFieldSubspace.from_rows([(1,)], 1, p)
    t = oracle.FlagTriple((full,), (), (1,))
    assert oracle.tensor_orbit_invariant(t) == \
        MarkedSequence((1,), frozenset({1}))
    assert len(oracle.classify_all_mixed(2, 2)) == 13


def test_tensor_partition_and_counts():
    for d in (1, 2, 3):
        for p in (2, 3):
            sizes = oracle.classify_all_mixed(d, p)
            assert set(sizes) == set(enumerate_xi(2, d, tensor=True))
            assert len(sizes) == count_xi_tensor(2, d)
            subs = sum(len(oracle.enumerate_flags(d, p, r))
                       for r in range(d + 1))
            completes = len(oracle.enumerate_flags(d, p, "complete"))
            assert sum(sizes.values()) == subs * completes * p ** d


def test_tensor_representative_round_trip():
    for d in (1, 2, 3):
        for p in (2, 3):
            for ms in enumerate_xi(2, d, tensor=True):
                t = oracle.canonical_tensor_representative(ms, p)
                assert oracle.tensor_orbit_invariant(t) == ms, (ms, p)


def test_tensor_invariance_random_group_elements():
    rng = random.Random(77)
    d, p = 3, 2
    subs = []
    for r in range(d + 1):
        subs.extend(oracle.enumerate_flags(d, p, r))
    completes = oracle.enumerate_flags(d, p, "complete")
    vecs = list(product(range(p), repeat=d))
    for _ in range(100):
        t = oracle.FlagTriple(rng.choice(subs), rng.choice(completes),
                              rng.choice(vecs))
        g = oracle.random_invertible(d, p, rng)
        assert oracle.tensor_orbit_invariant(oracle.transform_triple(t, g)) \
            == oracle.tensor_orbit_invariant(t)


def _oracle_generator_action(d, gen, ms, primes):
    out = TensorElement(d)
    for lab, c in chevalley(d, gen).terms.items():
        for cand, coeff in oracle.tensor_action_constants(lab, ms,
                                                          primes).items():
            out = out + TensorElement.basis(d, cand).scale(c * coeff)
    return out


def test_oracle_tensor_action_matches_closed_forms():
    # k and l actions recovered by point counting equal the formulas
    primes = [2, 3, 5, 7, 11]
    d = 2
    for ms in enumerate_xi(2, d, tensor=True):
        x = TensorElement.basis(d, ms)
        assert _oracle_generator_action(d, "k", ms, primes) == k_action(x)
        assert _oracle_generator_action(d, "l", ms, primes) == ell_action(x)


def test_oracle_tensor_ef_relation():
    # no closed form for e and f on the tensor space; verify the algebra
    # relation (ef - fe) = (k - k^-1)/(v - v^-1) through pure point counts
    primes = [2, 3, 5, 7, 11]
    d = 2
    basis = sorted(enumerate_xi(2, d, tensor=True),
                   key=lambda m: m.sort_key())
    idx = {ms: i for i, ms in enumerate(basis)}

    def matrix(gen):
        cols = {}
        for ms in basis:
            cols[ms] = _oracle_generator_action(d, gen, ms, primes)
        return cols

    e_cols, f_cols, k_cols, ki_cols = (matrix(g)
                                       for g in ("e", "f", "k", "k^-1"))

    def compose(outer, inner_cols, ms):
        total = TensorElement(d)
        for mid, c in inner_cols[ms].terms.items():
            total = total + outer[mid].scale(c)
        return total

    den = v_power(1) - v_power(-1)
    for ms in basis:
        lhs = compose(e_cols, f_cols, ms) - compose(f_cols, e_cols, ms)
        rhs = (k_cols[ms] - ki_cols[ms]).scale(RF_ONE / den)
        assert lhs == rhs, ms
