from __future__ import annotations

import pytest
import sympy
from hypothesis import given, strategies as st

from rankpke.field import (PreparedMatrix, compress, ext, field_new, is_irreducible, smallest_irreducible,
                           vector_rank)
from rankpke.linalg import BitMatrix, gf2_rank, mat_mul_rows, sample_invertible


def school_mul(a, b, f):
    """Shift-and-add product reduced bit by bit; independent of the library code paths."""
    n = f.bit_length() - 1
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if (a >> n) & 1:
            a ^= f
    return r


def sympy_irreducible(f: int) -> bool:
    z = sympy.Symbol("z")
    coeffs = [int(c) for c in bin(f)[2:]]
    return sympy.Poly(coeffs, z, modulus=2).is_irreducible


def brute_irreducible(f: int) -> bool:
    d = f.bit_length() - 1
    for g in range(2, 1 << (d // 2 + 1)):
        # polynomial remainder of f by g
        r = f
        while r.bit_length() >= g.bit_length():
            r ^= g << (r.bit_length() - g.bit_length())
        if r == 0 and g != f:
            return False
    return True


FIELDS = [3, 8, 20, 64, 164]


def test_n3_modulus():
    ctx = field_new(3)
    assert ctx.modulus == 0b1011


def test_n3_product():
    ctx = field_new(3)
    # z * z^2 = z^3 = z + 1 mod z^3 + z + 1
    assert ctx.mul(0b010, 0b100) == 0b011


@pytest.mark.parametrize("n", range(2, 13))
def test_modulus_is_smallest_irreducible_small(n):
    f = smallest_irreducible(n)
    first = next(c for c in range(1 << n, 1 << (n + 1)) if brute_irreducible(c))
    assert f == first


@pytest.mark.parametrize("n", [20, 64, 164])
def test_modulus_is_smallest_irreducible_large(n):
    f = field_new(n).modulus
    assert f.bit_length() == n + 1
    assert sympy_irreducible(f)
    for c in range(1 << n, f):
        if c & 1 and bin(c).count("1") % 2 == 1:
            assert not sympy_irreducible(c)


def test_irreducibility_check_agrees_with_sympy(rng):
    for d in (5, 9, 16, 31):
        for _ in range(30):
            f = (1 << d) | rng.getrandbits(d) | 1
            assert is_irreducible(f) == sympy_irreducible(f)


def test_context_is_deterministic():
    a = field_new(64)
    field_new.cache_clear()
    b = field_new(64)
    assert a is not b
    assert (a.modulus, a.g, a.dual) == (b.modulus, b.g, b.dual)


@pytest.mark.parametrize("n", [1, 257])
def test_unsupported_degree(n):
    with pytest.raises(ValueError):
        field_new(n)


@pytest.mark.parametrize("n", FIELDS)
def test_normal_basis(n):
    ctx = field_new(n)
    g = ctx.g
    assert gf2_rank(g) == n
    for j in range(1, n):
        assert g[j] == ctx.mul(g[j - 1], g[j - 1])


@pytest.mark.parametrize("n", [3, 8, 12])
def test_normal_basis_is_first_in_scan(n):
    ctx = field_new(n)
    for x in range(1, ctx.g[0]):
        conj = [x]
        for _ in range(n - 1):
            conj.append(school_mul(conj[-1], conj[-1], ctx.modulus))
        assert gf2_rank(conj) < n


@pytest.mark.parametrize("n", FIELDS)
def test_dual_basis(n):
    ctx = field_new(n)
    for i in range(n):
        for j in range(n):
            assert ctx.trace(ctx.mul(ctx.g[i], ctx.dual[j])) == (i == j)


@pytest.mark.parametrize("n", FIELDS)
def test_mul_matches_schoolbook(n, rng):
    ctx = field_new(n)
    for _ in range(300):
        a, b = ctx.random(rng), ctx.random(rng)
        assert ctx.mul(a, b) == school_mul(a, b, ctx.modulus)


@pytest.mark.parametrize("n", FIELDS)
def test_field_axioms(n, rng):
    ctx = field_new(n)
    mul = ctx.mul
    for _ in range(1000):
        x, y, z = ctx.random(rng), ctx.random(rng), ctx.random(rng)
        assert mul(mul(x, y), z) == mul(x, mul(y, z))
        assert mul(x, y ^ z) == mul(x, y) ^ mul(x, z)
        assert mul(x, 1) == x
        assert ctx.frobenius(mul(x, y), 1) == mul(ctx.frobenius(x, 1), ctx.frobenius(y, 1))
        if x:
            assert mul(ctx.inv(x), x) == 1


@pytest.mark.parametrize("n", FIELDS)
def test_frobenius(n, rng):
    ctx = field_new(n)
    for _ in range(100):
        x, y = ctx.random(rng), ctx.random(rng)
        assert ctx.frobenius(x, n) == x
        assert ctx.frobenius(x, 0) == x
        assert ctx.frobenius(x ^ y, 3) == ctx.frobenius(x, 3) ^ ctx.frobenius(y, 3)
        i = rng.randbelow(n)
        assert ctx.frobenius(x, i) == ctx.pow(x, 1 << i)
        assert ctx.frobenius(ctx.frobenius(x, i), -i) == x


@pytest.mark.parametrize("n", [8, 64])
def test_inverse_of_zero(n):
    with pytest.raises(ZeroDivisionError):
        field_new(n).inv(0)


@pytest.mark.parametrize("n", [8, 20, 64, 164])
def test_element_encoding(n, rng):
    ctx = field_new(n)
    for _ in range(50):
        x = ctx.random(rng)
        data = ctx.encode(x)
        assert len(data) == (n + 7) // 8
        assert ctx.decode(data) == x
    # bit j of byte i is the coefficient of z^(8i+j)
    if n >= 10:
        assert ctx.encode(1 << 9)[1] == 0b10
    if n % 8:
        with pytest.raises(ValueError):
            ctx.decode(b"\xff" * ctx.nbytes)


@pytest.mark.parametrize("n", [8, 20, 64])
def test_ext_identity_and_zero(n):
    ctx = field_new(n)
    assert ext(ctx, ctx.g) == BitMatrix.identity(n)
    assert ext(ctx, [0] * n) == BitMatrix.zeros(n, n)
    assert compress(ctx, BitMatrix.identity(n)) == list(ctx.g)
    assert compress(ctx, BitMatrix.zeros(n, n)) == [0] * n


@pytest.mark.parametrize("n", [8, 20, 64])
def test_ext_compress_round_trip(n, rng):
    ctx = field_new(n)
    for _ in range(100):
        A = BitMatrix(tuple(rng.getrandbits(n) for _ in range(n)), n)
        assert ext(ctx, compress(ctx, A)) == A
        a = [ctx.random(rng) for _ in range(n)]
        assert compress(ctx, ext(ctx, a)) == a


def test_ext_defining_identity(rng):
    # column j of ext_b(a) holds the coordinates of a_j: b . ext_b(a) = a
    ctx = field_new(12)
    b = list(ctx.g)
    while True:
        basis = [ctx.random(rng) for _ in range(12)]
        if gf2_rank(basis) == 12:
            break
    for _ in range(30):
        a = [ctx.random(rng) for _ in range(12)]
        E = ext(ctx, a, basis)
        rebuilt = []
        for j in range(12):
            acc = 0
            for i in range(12):
                if E[i, j]:
                    acc ^= basis[i]
            rebuilt.append(acc)
        assert rebuilt == a
    assert ext(ctx, b, b) == BitMatrix.identity(12)


def test_ext_rejects_singular_basis():
    ctx = field_new(6)
    with pytest.raises(ValueError):
        ext(ctx, [1] * 6, [1, 2, 4, 8, 16, 16])


@pytest.mark.parametrize("n", [8, 20, 64])
def test_vector_rank(n, rng):
    ctx = field_new(n)
    assert vector_rank(ctx, ctx.g) == n
    x = ctx.random_nonzero(rng)
    assert vector_rank(ctx, [x] * n) == 1
    while True:
        basis = [ctx.random(rng) for _ in range(n)]
        if gf2_rank(basis) == n:
            break
    for _ in range(100):
        a = [ctx.random(rng) for _ in range(rng.randbelow(n) + 1)]
        r = vector_rank(ctx, a)
        assert r <= n
        assert r == gf2_rank(ext(ctx, a).rows) == gf2_rank(ext(ctx, a, basis).rows)


def test_vector_rank_invariant_under_row_operations(rng):
    ctx = field_new(16)
    for _ in range(100):
        a = [ctx.random(rng) for _ in range(16)]
        U = sample_invertible(16, rng)
        moved = compress(ctx, BitMatrix(tuple(mat_mul_rows(U.rows, ext(ctx, a).rows)), 16))
        assert vector_rank(ctx, moved) == vector_rank(ctx, a)


@pytest.mark.parametrize("n", [8, 24])
def test_prepared_matrix_products(n, rng):
    ctx = field_new(n)
    M = [[ctx.random(rng) if rng.randbelow(4) else 0 for _ in range(n)] for _ in range(n - 3)]
    P = PreparedMatrix(ctx, M)
    for _ in range(20):
        x = [ctx.random(rng) if rng.randbelow(3) else 0 for _ in range(n)]
        want = []
        for row in M:
            acc = 0
            for m, v in zip(row, x):
                acc ^= school_mul(m, v, ctx.modulus)
            want.append(acc)
        assert P.times_vec(x) == want
        a = [ctx.random(rng) for _ in range(n - 5)]
        want = [0] * n
        for ai, row in zip(a, M):
            for j, m in enumerate(row):
                want[j] ^= school_mul(ai, m, ctx.modulus)
        assert P.vec_times(a) == want


@given(st.integers(2, 40), st.data())
def test_frobenius_linear_property(n, data):
    ctx = field_new(n)
    x = data.draw(st.integers(0, ctx.mask))
    y = data.draw(st.integers(0, ctx.mask))
    i = data.draw(st.integers(0, n - 1))
    assert ctx.frobenius(x ^ y, i) == ctx.frobenius(x, i) ^ ctx.frobenius(y, i)
    assert ctx.mul(ctx.add(x, y), x) == ctx.mul(x, x) ^ ctx.mul(y, x)
