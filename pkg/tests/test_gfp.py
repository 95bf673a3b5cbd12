from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hilbert_sundial import gfp
from hilbert_sundial.errors import (
    DimensionMismatch,
    NotPrime,
    PrimeTooLarge,
    ZeroInverse,
)

from conftest import oracle_rank

PRIMES = [2, 3, 5, 7, 101, 32003, 2147483647]


@pytest.mark.parametrize("p", PRIMES[:-1])
def test_check_prime_accepts_primes(p):
    assert gfp.check_prime(p) == p


@pytest.mark.parametrize("bad", [0, 1, 4, 9, 32001, 1.5, True, "7"])
def test_check_prime_rejects(bad):
    with pytest.raises(NotPrime):
        gfp.check_prime(bad)


def test_prime_too_large():
    with pytest.raises(PrimeTooLarge):
        gfp.check_prime(2**31 + 11)


def test_inverse_of_zero():
    with pytest.raises(ZeroInverse):
        gfp.inv(0, 7)
    with pytest.raises(ZeroDivisionError):
        gfp.inv(14, 7)


@given(st.integers(1, 32002))
def test_inv_roundtrip(a):
    assert a * gfp.inv(a, 32003) % 32003 == 1


def test_matmul_mod_no_overflow_near_word_limit():
    p = 2147483629  # largest prime below 2**31
    rng = np.random.default_rng(1)
    a = rng.integers(p - 5, p, size=(3, 40), dtype=np.int64)
    b = rng.integers(p - 5, p, size=(40, 4), dtype=np.int64)
    got = gfp.matmul_mod(a, b, p)
    want = [[sum(int(a[i, k]) * int(b[k, j]) for k in range(40)) % p for j in range(4)]
            for i in range(3)]
    assert got.tolist() == want


def test_matmul_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        gfp.matmul_mod(np.zeros((2, 3), dtype=np.int64), np.zeros((2, 3), dtype=np.int64), 7)


matrices = st.tuples(st.integers(1, 9), st.integers(1, 9), st.sampled_from([2, 3, 5, 7, 31]),
                     st.integers(0, 2**32 - 1))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_matches_oracle(args):
    rows, cols, p, seed = args
    rng = np.random.default_rng(seed)
    # small primes and low-rank products make dependent rows common
    k = int(rng.integers(1, min(rows, cols) + 1))
    m = (rng.integers(0, p, size=(rows, k)) @ rng.integers(0, p, size=(k, cols))) % p
    if rng.random() < 0.5:
        m = rng.integers(0, p, size=(rows, cols))
    assert gfp.rank(m, p) == oracle_rank(m.tolist(), p)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 7))
def test_row_echelon_incremental_equals_batch(seed, parts):
    rng = np.random.default_rng(seed)
    p = 101
    m = (rng.integers(0, p, size=(60, 12)) @ rng.integers(0, p, size=(12, 40))) % p
    ech = gfp.RowEchelon(40, p, batch=5)
    total = 0
    for chunk in np.array_split(m, parts):
        total += ech.add_rows(chunk)
    assert total == ech.rank == oracle_rank(m.tolist(), p) == 12
    basis, piv = ech.basis()
    assert list(piv) == sorted(piv)
    for row in m[:10]:
        assert ech.contains(row)


def test_large_rank_path_uses_incremental_elimination():
    rng = np.random.default_rng(3)
    p = 32003
    m = (rng.integers(0, p, size=(300, 150)) @ rng.integers(0, p, size=(150, 200))) % p
    assert gfp.rank(m, p) == 150


def test_rref_and_nullspace():
    rng = np.random.default_rng(4)
    p = 97
    m = rng.integers(0, p, size=(4, 7))
    red, piv = gfp.rref(m, p)
    assert len(piv) == 4
    assert np.array_equal(red[:, piv], np.eye(4, dtype=np.int64))
    ker = gfp.nullspace(m, p)
    assert ker.shape == (3, 7)
    assert not gfp.matmul_mod(m % p, ker.T, p).any()


def test_empty_matrix_rank():
    assert gfp.rank(np.zeros((0, 5), dtype=np.int64), 7) == 0


def test_inverse_matrix(rng):
    p = 32003
    g = rng.integers(0, p, size=(5, 5))
    assert np.array_equal(gfp.matmul_mod(g % p, gfp.inverse(g, p), p), np.eye(5, dtype=np.int64))
    with pytest.raises(ZeroInverse):
        gfp.inverse([[1, 2], [2, 4]], 7)


def test_numpy_fallback_agrees_with_kernel(rng):
    p = 13
    m = rng.integers(0, p, size=(8, 10))
    a, pa = gfp._reduce_block_numpy(m.copy(), p)
    b, pb = gfp._reduce_block(m.copy(), p)
    assert pa == pb
    assert np.array_equal(a, b)
