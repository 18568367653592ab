"""Gabidulin codes over the public basis g and a bounded-distance decoder."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .field import FieldContext, PreparedMatrix, vector_rank
from .skew import SkewPoly, _dual_moore, fq_inverse, fq_kernel, fq_rref, interpolate, left_divide


class DecodingFailure(Exception):
    """No codeword lies within the unique decoding radius."""


def moore_matrix(ctx: FieldContext, b: Sequence[int], rows: int) -> list[list[int]]:
    """Rows b^[0], ..., b^[rows-1] (componentwise Frobenius powers)."""
    if rows > ctx.n:
        raise ValueError(f"a Moore matrix over F_2^{ctx.n} has at most {ctx.n} rows")
    out = []
    cur = list(b)
    for _ in range(rows):
        out.append(cur)
        cur = [ctx.sqr(x) for x in cur]
    return out


@lru_cache(maxsize=None)
def _moore_g(ctx: FieldContext) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(r) for r in moore_matrix(ctx, ctx.g, ctx.n))


@lru_cache(maxsize=None)
def _moore_g_prepared(ctx: FieldContext):
    return PreparedMatrix(ctx, _moore_g(ctx))


class GabidulinCode:
    """Gab_K(g): evaluations on g of skew polynomials of degree < K.

    The parity-check matrix is the Moore matrix of h = d^[K], where d is the
    trace-dual basis of g.  Because Moore_n(g)^-1 = Moore_n(d)^T, the rows
    d^[K], ..., d^[n-1] are orthogonal to g^[0], ..., g^[K-1].
    """

    def __init__(self, ctx: FieldContext, K: int):
        n = ctx.n
        if not 1 <= K <= n - 1:
            raise ValueError(f"dimension K={K} outside [1, {n - 1}]")
        self.ctx = ctx
        self.n = n
        self.K = K
        self.radius = (n - K) // 2
        dm = _dual_moore(ctx)
        self.G = [list(r) for r in _moore_g(ctx)[:K]]
        self.H = [list(r) for r in dm[K:]]
        self.h = list(dm[K])
        # deterministic right inverse of H supported on its pivot columns
        _, pivots = fq_rref(ctx, self.H, n)
        self._info = pivots
        self._HJinv = fq_inverse(ctx, [[row[j] for j in pivots] for row in self.H])
        self._H_prep = PreparedMatrix(ctx, self.H)
        self._HJinv_prep = PreparedMatrix(ctx, self._HJinv)

    def __repr__(self) -> str:
        return f"GabidulinCode(n={self.n}, K={self.K})"

    def encode(self, msg: Sequence[int]) -> list[int]:
        if len(msg) != self.K:
            raise ValueError(f"message must have {self.K} symbols")
        return _moore_g_prepared(self.ctx).vec_times(msg)

    def syndrome(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.n:
            raise ValueError(f"vector must have length {self.n}")
        return self._H_prep.times_vec(x)

    def preimage(self, s: Sequence[int]) -> list[int]:
        """The deterministic x with H x^T = s^T, zero outside the pivot columns."""
        if len(s) != self.n - self.K:
            raise ValueError(f"syndrome must have length {self.n - self.K}")
        x = [0] * self.n
        for j, v in zip(self._info, self._HJinv_prep.times_vec(s)):
            x[j] = v
        return x

    def is_codeword(self, x: Sequence[int]) -> bool:
        return not any(self.syndrome(x))

    def decode(self, y: Sequence[int]) -> tuple[list[int], list[int]]:
        """Split y = c + e with c in the code and rk(e) <= radius."""
        return decode_bounded(self, y)


def decode_bounded(code: GabidulinCode, y: Sequence[int]) -> tuple[list[int], list[int]]:
    """Welch-Berlekamp decoding up to floor((n-K)/2) rank errors.

    The key equation V(y) = N(g) with deg V <= t, deg N < K + t is reduced by
    the parity check of Gab_{K+t}: V(y) lies in Gab_{K+t} exactly when the
    top n-K-t interpolation coefficients of V . L_y vanish (mod X^n - 1).
    That leaves an (n-K-t) x (t+1) system for V alone; N is then read off
    V . L_y and the message polynomial is the left quotient of N by V.
    """
    ctx = code.ctx
    n, K, t = code.n, code.K, code.radius
    if len(y) != n:
        raise ValueError(f"received word must have length {n}")
    sqr = ctx.sqr
    L = interpolate(ctx, y)
    c_y = list(L.coeffs) + [0] * (n - len(L.coeffs))
    if not any(c_y[K:]):
        return list(y), [0] * n

    # (V . L_y)_m = sum_j v_j theta^j(c_{m-j}); rows m = K+t .. n-1 must vanish
    frob_pows = [c_y]
    for _ in range(t):
        frob_pows.append([sqr(v) for v in frob_pows[-1]])
    system = [[frob_pows[j][m - j] for j in range(t + 1)] for m in range(K + t, n)]
    kernel = fq_kernel(ctx, system, t + 1)
    if not kernel:
        raise DecodingFailure("key equation has only the trivial solution")
    V = SkewPoly(ctx, kernel[0])

    prod = (V * L).coeffs
    folded = [0] * n
    for i, v in enumerate(prod):
        folded[i % n] ^= v
    N = SkewPoly(ctx, folded)
    f, rem = left_divide(N, V)
    if not rem.is_zero() or len(f.coeffs) > K:
        raise DecodingFailure("left division by the error locator is not exact")

    c = _moore_g_prepared(ctx).vec_times(f.coeffs)
    e = [yi ^ ci for yi, ci in zip(y, c)]
    if vector_rank(ctx, e) > t:
        raise DecodingFailure("error rank exceeds the decoding radius")
    return c, e


@lru_cache(maxsize=None)
def code_new(ctx: FieldContext, K: int) -> GabidulinCode:
    """Cached Gab_K(g); construction is deterministic in (ctx, K)."""
    return GabidulinCode(ctx, K)
