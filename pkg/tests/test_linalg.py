from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st
from scipy.stats import chisquare

from rankpke.linalg import (BitMatrix, NoSolution, gf2_inverse, gf2_rank, is_rref, kernel_basis, mat_mul_rows,
                            mat_vec, rank, rref, sample_invertible, sample_rank_exact, solve,
                            subspace_intersection_dim, transpose_bits)


def rand_matrix(rng, nrows, ncols):
    return BitMatrix(tuple(rng.getrandbits(ncols) for _ in range(nrows)), ncols)


def span(rows):
    out = {0}
    for r in rows:
        out |= {v ^ r for v in out}
    return out


def brute_rank(rows):
    return len(span(rows)).bit_length() - 1


matrices = st.integers(1, 12).flatmap(
    lambda n: st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=12).map(lambda r: BitMatrix(tuple(r), n)))


def test_identity_and_zero():
    I = BitMatrix.identity(10)
    assert rref(I) == (I, 10)
    Z = BitMatrix.zeros(10, 10)
    assert rref(Z) == (Z, 0)
    assert rref(BitMatrix((), 5)) == (BitMatrix((), 5), 0)


@given(matrices)
def test_rref_properties(M):
    R, r = rref(M)
    assert is_rref(R)
    assert r == brute_rank(M.rows)
    assert span(R.rows) == span(M.rows)
    assert rref(R) == (R, r)


@given(matrices)
def test_rank_of_transpose(M):
    assert rank(M) == rank(M.transpose())


def test_rref_canonical(rng):
    for _ in range(100):
        n = 16
        M = sample_rank_exact(n, rng.randbelow(n + 1), rng)
        U = sample_invertible(n, rng)
        assert rref(U @ M) == rref(M)


def test_is_rref_rejects():
    # pivot not the only nonzero in its column
    assert not is_rref(BitMatrix((0b011, 0b010), 3))
    # zero row above a nonzero row
    assert not is_rref(BitMatrix((0, 0b001), 3))
    # pivots out of order
    assert not is_rref(BitMatrix((0b010, 0b001), 3))
    assert is_rref(BitMatrix((0b101, 0b010, 0), 3))


def test_transpose_bits(rng):
    for _ in range(50):
        M = rand_matrix(rng, 7, 13)
        T = M.transpose()
        assert T.shape == (13, 7)
        assert all(M[i, j] == T[j, i] for i in range(7) for j in range(13))
    assert transpose_bits([], 4) == [0, 0, 0, 0]


def test_matmul_against_lists(rng):
    A, B = rand_matrix(rng, 5, 9), rand_matrix(rng, 9, 4)
    a, b = A.to_lists(), B.to_lists()
    want = [[sum(a[i][k] * b[k][j] for k in range(9)) % 2 for j in range(4)] for i in range(5)]
    assert (A @ B).to_lists() == want
    with pytest.raises(ValueError):
        A @ A


def test_bytes_round_trip(rng):
    M = rand_matrix(rng, 5, 19)
    data = M.to_bytes()
    assert len(data) == 5 * 3
    assert BitMatrix.from_bytes(data, 5, 19) == M
    with pytest.raises(ValueError):
        BitMatrix.from_bytes(data[:-1], 5, 19)
    with pytest.raises(ValueError):
        BitMatrix.from_bytes(b"\xff" * 15, 5, 19)


def test_solve_identity(rng):
    b = rng.getrandbits(12)
    assert solve(BitMatrix.identity(12), b) == b


def test_solve_consistent_systems(rng):
    for _ in range(100):
        A = rand_matrix(rng, 10, 14)
        b = mat_vec(A, rng.getrandbits(14))
        assert mat_vec(A, solve(A, b)) == b


def test_solve_inconsistent():
    A = BitMatrix((0b01, 0b01), 2)
    with pytest.raises(NoSolution):
        solve(A, 0b10)


def test_kernel_basis(rng):
    for r in range(0, 11):
        A = sample_rank_exact(10, r, rng)
        K = kernel_basis(A)
        assert len(K) == 10 - r
        assert gf2_rank(K) == len(K)
        assert all(mat_vec(A, v) == 0 for v in K)


def test_gf2_inverse(rng):
    for _ in range(20):
        S = sample_invertible(12, rng)
        inv = gf2_inverse(S.rows, 12)
        assert mat_mul_rows(S.rows, inv) == list(BitMatrix.identity(12).rows)
    with pytest.raises(ValueError):
        gf2_inverse([1, 1], 2)


def test_sample_invertible_rank(rng):
    for _ in range(1000):
        assert rank(sample_invertible(8, rng)) == 8
    assert sample_invertible(1, rng) == BitMatrix((1,), 1)


def test_invertible_acceptance_rate(rng):
    # fraction of uniform 16 x 16 matrices that are invertible, |GL_16| / 2^256
    p = math.prod(1 - 2.0 ** -i for i in range(1, 17))
    trials = 10_000
    hits = sum(gf2_rank([rng.getrandbits(16) for _ in range(16)]) == 16 for _ in range(trials))
    sigma = math.sqrt(p * (1 - p) / trials)
    assert abs(hits / trials - p) <= 3 * sigma
    assert abs(p - 0.289) < 1e-3


def test_sample_invertible_uniform(rng):
    # |GL_3(F_2)| = 168
    counts = {}
    for _ in range(16_800):
        M = sample_invertible(3, rng)
        counts[M.rows] = counts.get(M.rows, 0) + 1
    assert len(counts) == 168
    assert chisquare(list(counts.values())).pvalue > 1e-4


def test_sample_rank_exact(rng):
    assert rank(sample_rank_exact(8, 8, rng)) == 8
    assert sample_rank_exact(8, 0, rng) == BitMatrix.zeros(8, 8)
    for _ in range(1000):
        assert rank(sample_rank_exact(8, 3, rng)) == 3
    with pytest.raises(ValueError):
        sample_rank_exact(4, 5, rng)


def test_sample_rank_exact_uniform(rng):
    # rank-1 3 x 3 matrices are outer products u v^T: 7 * 7 = 49 of them
    counts = {}
    for _ in range(9800):
        M = sample_rank_exact(3, 1, rng)
        counts[M.rows] = counts.get(M.rows, 0) + 1
    assert len(counts) == 49
    assert chisquare(list(counts.values())).pvalue > 1e-4


def test_rank_exact_rref_is_plaintext_form(rng):
    for _ in range(200):
        R, r = rref(sample_rank_exact(12, 4, rng))
        assert r == 4 and is_rref(R) and all(row == 0 for row in R.rows[4:])


def test_intersection_trivial_cases(rng):
    A = [rng.getrandbits(10) for _ in range(4)]
    assert subspace_intersection_dim(A, A) == gf2_rank(A)
    assert subspace_intersection_dim([1, 2, 4], [8, 16, 32]) == 0


def test_intersection_against_enumeration(rng):
    for _ in range(200):
        n = rng.randbelow(8) + 5
        A = [rng.getrandbits(n) for _ in range(rng.randbelow(5) + 1)]
        B = [rng.getrandbits(n) for _ in range(rng.randbelow(5) + 1)]
        common = span(A) & span(B)
        assert subspace_intersection_dim(A, B) == len(common).bit_length() - 1


def test_random_subspace_meets_fixed_subspace_rarely(rng):
    n, r, w = 12, 3, 3
    fixed = [1 << i for i in range(w)]
    trials = 20_000
    hits = 0
    for _ in range(trials):
        R = sample_rank_exact(n, r, rng)
        # colspan of a uniform rank-r matrix is a uniform r-dim subspace
        cols = transpose_bits(list(R.rows), n)
        hits += subspace_intersection_dim(fixed, cols) > 0
    bound = (2 ** r - 1) * (2 ** w - 1) / (2 ** n - 1)
    sigma = math.sqrt(bound * (1 - bound) / trials)
    assert hits / trials <= bound + 3 * sigma
