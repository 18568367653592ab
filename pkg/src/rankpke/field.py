"""Arithmetic in F_{2^n} and the extension maps between F_q^n and F_2^{n x n}.

Field elements are plain Python ints: bit j is the coefficient of z^j in the
polynomial basis of the context's modulus.  Vectors over F_q are lists (or
tuples) of such ints.  Keeping elements unboxed is what makes the rest of the
package fast enough to run Monte Carlo experiments in pure Python.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .linalg import BitMatrix, gf2_rank, gf2_inverse, transpose_bits

# Fields up to this degree use exp/log tables; larger ones use windowed clmul.
LOG_TABLE_MAX_N = 20


# -- polynomials over F_2 (ints) ---------------------------------------------

def poly_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def poly_mul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _spread(v: int) -> int:
    r = 0
    i = 0
    while v:
        if v & 1:
            r |= 1 << (2 * i)
        v >>= 1
        i += 1
    return r


_SPREAD8 = [_spread(v) for v in range(256)]


def poly_sqr(a: int) -> int:
    r = 0
    shift = 0
    while a:
        r |= _SPREAD8[a & 0xFF] << shift
        a >>= 8
        shift += 16
    return r


def is_irreducible(f: int) -> bool:
    """Ben-Or irreducibility test for a polynomial over F_2 given as an int."""
    n = f.bit_length() - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if not f & 1:
        return False
    x = 2
    power = x
    for _ in range(n // 2):
        power = poly_mod(poly_sqr(power), f)
        if poly_gcd(f, power ^ x) != 1:
            return False
    return True


def smallest_irreducible(n: int) -> int:
    """Smallest (as an integer) irreducible polynomial of degree n over F_2."""
    f = (1 << n) | 1
    while True:
        # even weight means divisibility by z + 1
        if bin(f).count("1") % 2 == 1 and is_irreducible(f):
            return f
        f += 2


def _linear_tables(images: Sequence[int]) -> list[list[int]]:
    """Byte-sliced lookup tables for the F_2-linear map sending bit b to images[b]."""
    tables = []
    for base in range(0, len(images), 8):
        chunk = images[base:base + 8]
        t = [0] * 256
        for v in range(1, 256):
            low = v & -v
            j = low.bit_length() - 1
            t[v] = t[v ^ low] ^ (chunk[j] if j < len(chunk) else 0)
        tables.append(t)
    return tables


def _apply_tables(tables: list[list[int]], a: int) -> int:
    r = 0
    for t in tables:
        if not a:
            break
        r ^= t[a & 0xFF]
        a >>= 8
    return r


def _prime_factors(m: int) -> list[int]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


class FieldContext:
    """The field F_{2^n} together with a fixed public normal basis g."""

    def __init__(self, n: int):
        if not 2 <= n <= 256:
            raise ValueError(f"unsupported extension degree n={n}")
        self.n = n
        self.modulus = smallest_irreducible(n)
        self.mask = (1 << n) - 1
        self.nbytes = (n + 7) // 8
        self.order = 1 << n
        self._tail = [e for e in range(n) if (self.modulus >> e) & 1]

        self.has_logs = n <= LOG_TABLE_MAX_N
        if self.has_logs:
            self._build_log_tables()
            self.mul = self._mul_log
        else:
            self.mul = self._mul_clmul

        # squaring and its inverse are F_2-linear maps; cache them as tables
        sq_images = [self._sqr_slow(1 << b) for b in range(n)]
        self._sqr_tables = _linear_tables(sq_images)
        inv_images = []
        for b in range(n):
            x = 1 << b
            for _ in range(n - 1):
                x = self.sqr(x)
            inv_images.append(x)
        self._isqr_tables = _linear_tables(inv_images)

        self._trace_mask = self._compute_trace_mask()
        self.g = tuple(self._first_normal_basis())
        self._to_g_tables, self._from_g_tables = self._basis_tables(self.g)
        self.dual = tuple(self._dual_basis())

    def __repr__(self) -> str:
        return f"FieldContext(n={self.n}, modulus={self.modulus:#x})"

    # -- construction helpers ------------------------------------------------

    def _build_log_tables(self) -> None:
        q1 = self.order - 1
        primes = _prime_factors(q1)
        gen = 2
        while any(self._pow_slow(gen, q1 // p) == 1 for p in primes):
            gen += 1
        exp = [0] * (2 * q1)
        log = [0] * self.order
        n, mod = self.n, self.modulus
        x = 1
        for i in range(q1):
            exp[i] = x
            log[x] = i
            if gen == 2:
                x <<= 1
                if x >> n:
                    x ^= mod
            else:
                x = self._mul_clmul(x, gen)
        exp[q1:] = exp[:q1]
        self._exp = exp
        self._log = log
        self._q1 = q1

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = poly_mod(poly_mul(r, a), self.modulus)
            a = poly_mod(poly_mul(a, a), self.modulus)
            e >>= 1
        return r

    def _sqr_slow(self, a: int) -> int:
        return self._reduce(poly_sqr(a))

    def _first_normal_basis(self) -> list[int]:
        # a normal element has nonzero trace, and every x below the lowest bit
        # of the trace mask has trace zero, so the scan can start there
        x = self._trace_mask & -self._trace_mask
        while True:
            if not self.trace(x):
                x += 1
                continue
            conj = [x]
            for _ in range(self.n - 1):
                conj.append(self.sqr(conj[-1]))
            if gf2_rank(conj) == self.n:
                return conj
            x += 1

    def _basis_tables(self, basis: Sequence[int]):
        n = self.n
        if len(basis) != n or gf2_rank(list(basis)) != n:
            raise ValueError("basis must consist of n F_2-independent elements")
        # columns of B are basis elements in polynomial coordinates
        b_rows = transpose_bits(list(basis), n)
        b_inv_rows = gf2_inverse(b_rows, n)
        to_images = transpose_bits(b_inv_rows, n)
        return _linear_tables(to_images), _linear_tables(list(basis))

    def _compute_trace_mask(self) -> int:
        mask = 0
        for b in range(self.n):
            x = 1 << b
            acc = x
            for _ in range(self.n - 1):
                x = self.sqr(x)
                acc ^= x
            if acc & 1:
                mask |= 1 << b
        return mask

    def _dual_basis(self) -> list[int]:
        n = self.n
        g = self.g
        rows = []
        for i in range(n):
            row = 0
            for j in range(n):
                if self.trace(self.mul(g[i], g[j])):
                    row |= 1 << j
            rows.append(row)
        inv = gf2_inverse(rows, n)
        dual = []
        for j in range(n):
            d = 0
            r = inv[j]
            k = 0
            while r:
                if r & 1:
                    d ^= g[k]
                r >>= 1
                k += 1
            dual.append(d)
        return dual

    # -- arithmetic ------------------------------------------------------------

    def _reduce(self, r: int) -> int:
        n = self.n
        mask = self.mask
        tail = self._tail
        h = r >> n
        while h:
            r &= mask
            for e in tail:
                r ^= h << e
            h = r >> n
        return r

    def _mul_log(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        log = self._log
        return self._exp[log[a] + log[b]]

    def _mul_clmul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        a2 = a << 1
        a3 = a2 ^ a
        a4 = a << 2
        a8 = a << 3
        a12 = a8 ^ a4
        t = (0, a, a2, a3, a4, a4 ^ a, a4 ^ a2, a4 ^ a3,
             a8, a8 ^ a, a8 ^ a2, a8 ^ a3, a12, a12 ^ a, a12 ^ a2, a12 ^ a3)
        r = 0
        for s in range(0, b.bit_length(), 4):
            r ^= t[(b >> s) & 15] << s
        # inline reduction
        n = self.n
        h = r >> n
        if h:
            mask = self.mask
            tail = self._tail
            while h:
                r &= mask
                for e in tail:
                    r ^= h << e
                h = r >> n
        return r

    def _np_tables(self) -> _NumpyTables:
        tabs = self.__dict__.get("_np")
        if tabs is None:
            tabs = self._np = _NumpyTables(self)
        return tabs

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def sqr(self, a: int) -> int:
        r = 0
        for t in self._sqr_tables:
            if not a:
                break
            r ^= t[a & 0xFF]
            a >>= 8
        return r

    def frobenius(self, a: int, i: int = 1) -> int:
        """a^(2^i); negative i applies the inverse Frobenius."""
        i %= self.n
        if i > self.n // 2:
            tables = self._isqr_tables
            i = self.n - i
        else:
            tables = self._sqr_tables
        for _ in range(i):
            a = _apply_tables(tables, a)
        return a

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_2^n")
        if self.has_logs:
            return self._exp[self._q1 - self._log[a]]
        # extended Euclid over F_2[z]
        r0, r1 = self.modulus, a
        s0, s1 = 0, 1
        while r1 != 1:
            shift = r0.bit_length() - r1.bit_length()
            if shift < 0:
                r0, r1 = r1, r0
                s0, s1 = s1, s0
                continue
            r0 ^= r1 << shift
            s0 ^= s1 << shift
            if r0.bit_length() < r1.bit_length():
                r0, r1 = r1, r0
                s0, s1 = s1, s0
        return self._reduce(s1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def trace(self, a: int) -> int:
        return bin(a & self._trace_mask).count("1") & 1

    def random(self, rng) -> int:
        return rng.getrandbits(self.n)

    def random_nonzero(self, rng) -> int:
        while True:
            x = rng.getrandbits(self.n)
            if x:
                return x

    # -- coordinates in the public basis ---------------------------------------

    def coords(self, a: int) -> int:
        """Coordinates of a in the basis g, as an n-bit int (bit i <-> g_i)."""
        return _apply_tables(self._to_g_tables, a)

    def from_coords(self, c: int) -> int:
        return _apply_tables(self._from_g_tables, c)

    # -- encoding ----------------------------------------------------------------

    def encode(self, a: int) -> bytes:
        return a.to_bytes(self.nbytes, "little")

    def decode(self, data: bytes) -> int:
        if len(data) != self.nbytes:
            raise ValueError(f"field element needs {self.nbytes} bytes, got {len(data)}")
        a = int.from_bytes(data, "little")
        if a >> self.n:
            raise ValueError("field element has nonzero bits above degree n-1")
        return a


@lru_cache(maxsize=None)
def field_new(n: int) -> FieldContext:
    """Deterministic context for F_{2^n}; the same n always gives the same field."""
    return FieldContext(n)


# -- extension maps -----------------------------------------------------------

class _Basis:
    def __init__(self, ctx: FieldContext, basis: Sequence[int]):
        self.to_tables, self.from_tables = ctx._basis_tables(basis)


def _converter(ctx: FieldContext, basis: Sequence[int] | None):
    if basis is None or tuple(basis) == ctx.g:
        return ctx._to_g_tables, ctx._from_g_tables
    b = _Basis(ctx, basis)
    return b.to_tables, b.from_tables


def ext_columns(ctx: FieldContext, a: Sequence[int], basis: Sequence[int] | None = None) -> list[int]:
    """Columns of ext_b(a): column j is the coordinate int of a_j."""
    to_tables, _ = _converter(ctx, basis)
    return [_apply_tables(to_tables, x) for x in a]


def ext(ctx: FieldContext, a: Sequence[int], basis: Sequence[int] | None = None) -> BitMatrix:
    """ext_b(a): the n x len(a) bit matrix whose column j holds a_j in basis b."""
    cols = ext_columns(ctx, a, basis)
    return BitMatrix(tuple(transpose_bits(cols, ctx.n)), len(a))


def compress(ctx: FieldContext, A: BitMatrix, basis: Sequence[int] | None = None) -> list[int]:
    """Inverse of ext: the vector b . A."""
    if A.nrows != ctx.n:
        raise ValueError(f"expected {ctx.n} rows, got {A.nrows}")
    _, from_tables = _converter(ctx, basis)
    cols = transpose_bits(list(A.rows), A.ncols)
    return [_apply_tables(from_tables, c) for c in cols]


def compress_columns(ctx: FieldContext, cols: Sequence[int]) -> list[int]:
    return [_apply_tables(ctx._from_g_tables, c) for c in cols]


def vector_rank(ctx: FieldContext, a: Sequence[int]) -> int:
    """rk(a): F_2-dimension of the span of the coordinates of a."""
    # rank is basis independent, so the polynomial-basis ints serve directly
    return gf2_rank(list(a))


# -- matrix products with a fixed matrix ---------------------------------------------

class PreparedMatrix:
    """A fixed F_q matrix set up for repeated products with vectors.

    With log tables the entries are stored as discrete logs in a numpy array
    (zero entries map to a sentinel whose exp is 0), so a product is one
    gather plus an XOR reduction.  Otherwise only nonzero entries are kept.
    """

    def __init__(self, ctx: FieldContext, M: Sequence[Sequence[int]]):
        self.ctx = ctx
        self.nrows = len(M)
        self.ncols = len(M[0]) if M else 0
        if ctx.has_logs:
            tabs = ctx._np_tables()
            self._logs = np.array([[ctx._log[v] if v else tabs.zero_log for v in row] for row in M],
                                  dtype=np.int64).reshape(self.nrows, self.ncols)
        else:
            self._rows = [[(j, v) for j, v in enumerate(row) if v] for row in M]

    def times_vec(self, x: Sequence[int]) -> list[int]:
        """M x."""
        ctx = self.ctx
        if ctx.has_logs:
            if not self.nrows:
                return []
            tabs = ctx._np_tables()
            lx = tabs.logs_of(x)
            return np.bitwise_xor.reduce(tabs.exp[self._logs + lx], axis=1).tolist()
        mul = ctx.mul
        out = []
        for row in self._rows:
            s = 0
            for j, m in row:
                v = x[j]
                if v:
                    s ^= mul(m, v)
            out.append(s)
        return out

    def vec_times(self, a: Sequence[int]) -> list[int]:
        """a M, where a may be shorter than the number of rows."""
        ctx = self.ctx
        k = len(a)
        if ctx.has_logs:
            if not k:
                return [0] * self.ncols
            tabs = ctx._np_tables()
            la = tabs.logs_of(a)
            return np.bitwise_xor.reduce(tabs.exp[self._logs[:k] + la[:, None]], axis=0).tolist()
        mul = ctx.mul
        out = [0] * self.ncols
        for ai, row in zip(a, self._rows):
            if ai:
                for j, m in row:
                    out[j] ^= mul(ai, m)
        return out


class _NumpyTables:
    def __init__(self, ctx: FieldContext):
        size = len(ctx._exp)
        # logs lie in [0, q-2]; sums of two stay below size = 2(q-1), and any
        # sum involving zero_log lands in the zero-filled tail
        self.zero_log = size
        self.exp = np.zeros(2 * size + 1, dtype=np.int64)
        self.exp[:size] = ctx._exp
        log = np.array(ctx._log, dtype=np.int64)
        log[0] = size
        self.log = log

    def logs_of(self, x: Sequence[int]) -> np.ndarray:
        return self.log[np.asarray(x, dtype=np.int64)]
