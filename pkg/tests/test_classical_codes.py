from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fourier_eaqecc.classical_codes import (
    ERASED,
    check_matrix,
    code_from_arithmetic_rows,
    code_from_consecutive_rows,
    encode,
    erasure_decode,
    explicit_code,
    mds_check_minors,
    min_distance_exhaustive,
    nearest_codeword_bruteforce,
)
from fourier_eaqecc.errors import (
    BadDimension,
    BadStep,
    ShapeMismatch,
    SingularSystem,
    TooLarge,
    TooManyErasures,
    ZeroEvaluationPoint,
)
from fourier_eaqecc.finite_field import FieldSpec, find_smallest_field, primitive_nth_root
from fourier_eaqecc.matrix import MatrixGF, fourier, mat_mul, rank, transpose, vandermonde
from oracles import RefField, min_distance_ref


def fourier_for(n, q=None):
    spec = FieldSpec.of_order(q) if q else find_smallest_field(n)
    return fourier(spec, n, primitive_nth_root(spec, n))


def ref_of(spec):
    return RefField(spec.p, spec.m, spec.modulus)


# -- construction ------------------------------------------------------------


def test_consecutive_rows_examples():
    fp = fourier_for(11, 243)
    c = code_from_consecutive_rows(fp, 0, 7)
    assert (c.n, c.k, c.claimed_distance) == (11, 7, 5)
    full = code_from_consecutive_rows(fp, 0, 11)
    assert full.generator == fp.forward and full.claimed_distance == 1
    wrap = code_from_consecutive_rows(fp, 9, 4)
    assert wrap.row_indices == (9, 10, 0, 1)
    fp80 = fourier_for(80, 81)
    big = code_from_consecutive_rows(fp80, 0, 70)
    assert (big.n, big.k, big.claimed_distance) == (80, 70, 11)


def test_construction_errors():
    fp = fourier_for(6, 7)
    with pytest.raises(BadDimension):
        code_from_consecutive_rows(fp, 0, 0)
    with pytest.raises(BadDimension):
        code_from_consecutive_rows(fp, 0, 7)
    with pytest.raises(BadStep):
        code_from_arithmetic_rows(fp, 0, 2, 2)
    v = vandermonde(FieldSpec(7), [1, 2, 3, 4])
    with pytest.raises(IndexError):
        code_from_consecutive_rows(v, 2, 3)
    with pytest.raises(ZeroEvaluationPoint):
        code_from_consecutive_rows(vandermonde(FieldSpec(7), [0, 1, 2]), 1, 2)


def test_arithmetic_rows_examples():
    fp = fourier_for(5, 11)
    c = code_from_arithmetic_rows(fp, 0, 2, 3)
    assert c.row_indices == (0, 2, 4) and c.claimed_distance == 3
    assert mds_check_minors(c)
    assert code_from_arithmetic_rows(fp, 1, 1, 3).generator == code_from_consecutive_rows(fp, 1, 3).generator
    fp11 = fourier_for(11, 23)
    c = code_from_arithmetic_rows(fp11, 1, 3, 4)
    assert c.row_indices == (1, 4, 7, 10)
    assert min_distance_exhaustive(c) == 8


def test_step_sharing_a_factor_is_not_mds():
    fp = fourier_for(6, 7)
    c = explicit_code(MatrixGF(fp.spec, fp.forward.data[[0, 2]]))
    d = min_distance_exhaustive(c)
    assert d < 6 - 2 + 1
    assert not mds_check_minors(c)
    assert d == min_distance_ref(ref_of(fp.spec), c.generator.tolist())


def test_vandermonde_orientation_counterexample():
    # rows of V itself need not give an MDS code; rows of V^T (powers) do
    spec = FieldSpec(7)
    pts = [1, 6, 2]
    v = vandermonde(spec, pts)
    as_rows = explicit_code(MatrixGF(spec, v.data[:2]))
    assert min_distance_exhaustive(as_rows) == 1
    powers = code_from_consecutive_rows(v, 0, 2)
    assert min_distance_exhaustive(powers) == 2 == powers.claimed_distance


# -- check matrices ------------------------------------------------------------


def test_check_matrix_examples():
    fp = fourier_for(11, 243)
    c = code_from_consecutive_rows(fp, 0, 7)
    # f_10 .. f_7 are e_1 .. e_4
    h = check_matrix(c, [10, 9, 8, 7])
    assert np.array_equal(h.matrix.data, fp.forward.data[[1, 2, 3, 4]])
    d = code_from_consecutive_rows(fp, 2, 7)
    k = check_matrix(d)
    assert k.complement == (9, 10, 0, 1)
    for t, i in enumerate(k.complement):
        assert np.array_equal(k.matrix.data[t], fp.f(i))
    full = code_from_consecutive_rows(fp, 0, 11)
    assert check_matrix(full).matrix.shape == (0, 11)
    with pytest.raises(ValueError):
        check_matrix(c, [1, 2, 3])


def test_check_matrix_rows_e_one_to_four():
    # H = (e_1, ..., e_4) for C = <e_0 .. e_6> is the same row space
    fp = fourier_for(11, 243)
    c = code_from_consecutive_rows(fp, 0, 7)
    h = check_matrix(c)
    e = MatrixGF(fp.spec, fp.forward.data[1:5])
    assert mat_mul(e, transpose(c.generator)).is_zero()
    assert rank(MatrixGF(fp.spec, np.concatenate([h.matrix.data, e.data]))) == 4


@pytest.mark.parametrize("n", [4, 5, 7, 8, 9, 12, 16])
def test_check_matrices_annihilate(n):
    fp = fourier_for(n)
    for r in range(1, n + 1):
        for step in [s for s in range(1, n) if math.gcd(s, n) == 1] or [1]:
            c = code_from_arithmetic_rows(fp, 1, step, r)
            h = check_matrix(c).matrix
            assert h.shape == (n - r, n)
            assert rank(h) == n - r
            if h.rows:
                assert mat_mul(h, transpose(c.generator)).is_zero()


def test_nullspace_check_for_vandermonde():
    spec = FieldSpec(11)
    v = vandermonde(spec, [1, 2, 3, 5, 7, 9])
    c = code_from_consecutive_rows(v, 1, 3)
    h = check_matrix(c).matrix
    assert rank(h) == 3 and mat_mul(h, transpose(c.generator)).is_zero()


# -- distance oracles --------------------------------------------------------


def test_distance_examples():
    fp = fourier_for(5, 11)
    assert min_distance_exhaustive(code_from_consecutive_rows(fp, 0, 2)) == 4
    assert min_distance_exhaustive(code_from_consecutive_rows(fp, 0, 5)) == 1
    assert min_distance_exhaustive(code_from_consecutive_rows(fourier_for(11, 23), 0, 4)) == 8
    with pytest.raises(TooLarge):
        min_distance_exhaustive(code_from_consecutive_rows(fourier_for(11, 23), 0, 5))
    with pytest.raises(TooLarge):
        mds_check_minors(code_from_consecutive_rows(fourier_for(80, 81), 0, 70))


def test_repeated_row_is_not_mds():
    spec = FieldSpec(11)
    g = MatrixGF(spec, np.array([[1, 2, 3, 4], [1, 2, 3, 4]]))
    assert not mds_check_minors(explicit_code(g))


@pytest.mark.parametrize("q,n", [(5, 4), (7, 6), (8, 7), (9, 8), (11, 5), (13, 6), (16, 5)])
def test_exhaustive_distance_matches_reference(q, n):
    fp = fourier_for(n, q)
    ref = ref_of(fp.spec)
    for r in range(1, min(n, 3) + 1):
        for start in range(n):
            c = code_from_consecutive_rows(fp, start, r)
            if q**r > 1500:
                continue
            assert min_distance_exhaustive(c) == min_distance_ref(ref, c.generator.tolist()) == n - r + 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4, 5, 7, 8, 9]), st.integers(1, 3), st.integers(2, 6), st.integers(0, 2**32))
def test_oracles_agree_on_random_codes(q, k, n, seed):
    if k > n:
        return
    spec = FieldSpec.of_order(q)
    rng = np.random.default_rng(seed)
    g = MatrixGF(spec, rng.integers(0, q, size=(k, n)))
    if rank(g) < k:
        return
    c = explicit_code(g)
    d = min_distance_exhaustive(c)
    assert d == min_distance_ref(ref_of(spec), g.tolist())
    assert mds_check_minors(c) == (d == n - k + 1)


@pytest.mark.parametrize("n", [5, 6, 7, 8, 10, 12])
def test_minors_agree_with_exhaustive_on_fourier_codes(n):
    fp = fourier_for(n)
    for r in range(1, n + 1):
        c = code_from_consecutive_rows(fp, 2, r)
        if fp.spec.q**r <= 2**16:
            assert mds_check_minors(c) == (min_distance_exhaustive(c) == n - r + 1) is True


@pytest.mark.parametrize("n", [8, 11, 16, 32])
def test_consecutive_fourier_codes_pass_minors(n):
    fp = fourier_for(n)
    for r in range(1, n + 1):
        if math.comb(n, r) <= 2 * 10**4:
            assert mds_check_minors(code_from_consecutive_rows(fp, (3 * r) % n, r))


# -- encoding and decoding ----------------------------------------------------


def test_encode_basics():
    fp = fourier_for(7, 8)
    c = code_from_consecutive_rows(fp, 1, 3)
    assert not encode(c, [0, 0, 0]).any()
    for i in range(3):
        u = np.zeros(3, dtype=np.int64)
        u[i] = 1
        assert np.array_equal(encode(c, u), c.generator.data[i])
    with pytest.raises(ShapeMismatch):
        encode(c, [1, 2])
    with pytest.raises(ValueError):
        encode(c, [8, 0, 0])


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([(5, 11), (7, 8), (8, 9), (11, 23), (6, 7)]), st.data())
def test_encoded_words_satisfy_checks(nq, data):
    n, q = nq
    fp = fourier_for(n, q)
    r = data.draw(st.integers(1, n))
    start = data.draw(st.integers(0, n - 1))
    c = code_from_consecutive_rows(fp, start, r)
    msgs = np.array(data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=r, max_size=r), min_size=1, max_size=5)))
    words = encode(c, msgs)
    h = check_matrix(c).matrix
    if h.rows:
        assert mat_mul(MatrixGF(fp.spec, words), transpose(h)).is_zero()


def test_erasure_example():
    fp = fourier_for(11, 23)
    c = code_from_consecutive_rows(fp, 0, 7)
    rng = np.random.default_rng(7)
    msgs = rng.integers(0, 23, size=(100, 7))
    words = encode(c, msgs)
    words[:, [0, 3, 8, 10]] = ERASED
    assert np.array_equal(erasure_decode(c, words), msgs)
    single = encode(c, msgs[0])
    assert np.array_equal(erasure_decode(c, single), msgs[0])
    assert np.array_equal(erasure_decode(c, single, erased=[1, 2]), msgs[0])
    with pytest.raises(TooManyErasures):
        erasure_decode(c, single, erased=[0, 1, 2, 3, 4])


def test_erasure_non_mds_singular():
    spec = FieldSpec(7)
    g = MatrixGF(spec, np.array([[1, 1, 0, 0], [0, 0, 1, 1]]))
    c = explicit_code(g)
    w = encode(c, [3, 4])
    assert np.array_equal(erasure_decode(c, w, erased=[0, 2]), [3, 4])
    with pytest.raises(SingularSystem):
        erasure_decode(c, w, erased=[0, 1])


def test_erasure_pattern_must_be_shared():
    fp = fourier_for(5, 11)
    c = code_from_consecutive_rows(fp, 0, 2)
    words = encode(c, np.array([[1, 2], [3, 4]]))
    words[0, 0] = ERASED
    with pytest.raises(ValueError):
        erasure_decode(c, words)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_erasure_all_patterns(n):
    fp = fourier_for(n)
    rng = np.random.default_rng(n)
    for r in range(1, n + 1):
        c = code_from_consecutive_rows(fp, 1, r)
        msgs = rng.integers(0, fp.spec.q, size=(10, r))
        words = encode(c, msgs)
        for size in range(n - r + 1):
            for pattern in itertools.combinations(range(n), size):
                assert np.array_equal(erasure_decode(c, words, erased=pattern), msgs)


def test_nearest_codeword_corrects_one_error():
    fp = fourier_for(5, 11)
    c = code_from_consecutive_rows(fp, 0, 2)
    rng = np.random.default_rng(3)
    for _ in range(200):
        msg = rng.integers(0, 11, size=2)
        word = encode(c, msg)
        bad = word.copy()
        pos = rng.integers(0, 5)
        bad[pos] = (bad[pos] + rng.integers(1, 11)) % 11
        assert np.array_equal(nearest_codeword_bruteforce(c, bad), word)
        assert np.array_equal(nearest_codeword_bruteforce(c, word), word)


def test_nearest_codeword_tie_break_is_smallest_message():
    spec = FieldSpec(3)
    c = explicit_code(MatrixGF(spec, np.array([[1, 1]])))
    # (1, 0) is at distance 1 from both 0 and (1, 1); message 0 wins
    assert np.array_equal(nearest_codeword_bruteforce(c, [1, 0]), [0, 0])


def test_descriptor():
    fp = fourier_for(5, 11)
    d = code_from_consecutive_rows(fp, 3, 2).descriptor()
    assert d == {"field": {"p": 11, "m": 1, "modulus": [0, 1]}, "n": 5, "k": 2, "source": "fourier",
                 "row_indices": [3, 4], "claimed_distance": 4}
