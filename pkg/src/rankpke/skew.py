"""The skew polynomial ring F_q[X; theta] with theta(a) = a^2.

Multiplication follows X . a = theta(a) . X, and evaluation is
P(x) = sum a_i x^(2^i), which is F_2-linear in x.  Gabidulin codewords are
evaluations of such polynomials on the public basis g.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .field import FieldContext, PreparedMatrix, compress
from .linalg import BitMatrix

DEG_ZERO = float("-inf")


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end and not coeffs[end - 1]:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True, eq=False)
class SkewPoly:
    ctx: FieldContext
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def zero(cls, ctx: FieldContext) -> SkewPoly:
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx: FieldContext) -> SkewPoly:
        return cls(ctx, (1,))

    @classmethod
    def x(cls, ctx: FieldContext) -> SkewPoly:
        return cls(ctx, (0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"SkewPoly(deg={self.degree}, coeffs={[hex(c) for c in self.coeffs]})"

    def __add__(self, other: SkewPoly) -> SkewPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] ^= c
        return SkewPoly(self.ctx, out)

    __sub__ = __add__

    def __mul__(self, other: SkewPoly) -> SkewPoly:
        return skew_mul(self, other)

    def __call__(self, x: int) -> int:
        return evaluate(self, x)


def skew_mul(P: SkewPoly, Q: SkewPoly) -> SkewPoly:
    """P . Q in F_q[X; theta]."""
    ctx = P.ctx
    p, q = P.coeffs, Q.coeffs
    if not p or not q:
        return SkewPoly.zero(ctx)
    mul, sqr = ctx.mul, ctx.sqr
    out = [0] * (len(p) + len(q) - 1)
    for j, qj in enumerate(q):
        if not qj:
            continue
        t = qj
        for i, pi in enumerate(p):
            if pi:
                out[i + j] ^= mul(pi, t)
            t = sqr(t)
    return SkewPoly(ctx, out)


def evaluate(P: SkewPoly, x: int) -> int:
    ctx = P.ctx
    if ctx.has_logs:
        return _evaluate_logs(ctx, [ctx._log[a] if a else -1 for a in P.coeffs], x)
    mul, sqr = ctx.mul, ctx.sqr
    acc = 0
    for a in P.coeffs:
        if a:
            acc ^= mul(a, x)
        x = sqr(x)
    return acc


def _evaluate_logs(ctx: FieldContext, coeff_logs: list[int], x: int) -> int:
    if not x:
        return 0
    exp, q1 = ctx._exp, ctx._q1
    lx = ctx._log[x]
    acc = 0
    for la in coeff_logs:
        if la >= 0:
            acc ^= exp[la + lx]
        # log(x^2) = 2 log(x)
        lx = (lx << 1) % q1
    return acc


def evaluate_vec(P: SkewPoly, v: Sequence[int]) -> list[int]:
    ctx = P.ctx
    if ctx.has_logs:
        logs = [ctx._log[a] if a else -1 for a in P.coeffs]
        return [_evaluate_logs(ctx, logs, x) for x in v]
    return [evaluate(P, x) for x in v]


@lru_cache(maxsize=None)
def _dual_moore(ctx: FieldContext) -> tuple[tuple[int, ...], ...]:
    # rows d^[i] of Moore_n(d); Moore_n(g)^-1 = Moore_n(d)^T for the trace-dual d
    rows = [tuple(ctx.dual)]
    for _ in range(ctx.n - 1):
        rows.append(tuple(ctx.sqr(x) for x in rows[-1]))
    return tuple(rows)


@lru_cache(maxsize=None)
def _dual_moore_prepared(ctx: FieldContext):
    return PreparedMatrix(ctx, _dual_moore(ctx))


def interpolate(ctx: FieldContext, x: Sequence[int]) -> SkewPoly:
    """The g-interpolating polynomial L_x: deg < n and L_x(g) = x."""
    if len(x) != ctx.n:
        raise ValueError(f"expected a length-{ctx.n} vector")
    return SkewPoly(ctx, _dual_moore_prepared(ctx).times_vec(x))


def g_degree(ctx: FieldContext, x) -> int:
    """deg_g of a nonzero vector (or of its extension matrix)."""
    if isinstance(x, BitMatrix):
        x = compress(ctx, x)
    if not any(x):
        raise ValueError("the zero vector has no g-degree")
    return interpolate(ctx, x).degree


def annihilator(ctx: FieldContext, e: Sequence[int]) -> SkewPoly:
    """Minimal vanishing polynomial V_e: monic, degree rk(e), zero on colspan(e)."""
    # an F_2 basis of colspan(e) carries the same vanishing ideal
    basis: list[int] = []
    for v in e:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    mul, sqr = ctx.mul, ctx.sqr
    V = [1]
    for a in basis:
        val = 0
        t = a
        for c in V:
            if c:
                val ^= mul(c, t)
            t = sqr(t)
        if not val:
            continue
        # V <- (X - val) . V
        new = [0] * (len(V) + 1)
        for i, c in enumerate(V):
            new[i + 1] ^= sqr(c)
            new[i] ^= mul(val, c)
        V = new
    return SkewPoly(ctx, V)


def left_divide(A: SkewPoly, B: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """(Q, R) with A = B . Q + R and deg R < deg B."""
    if B.is_zero():
        raise ZeroDivisionError("division by the zero skew polynomial")
    ctx = A.ctx
    mul, sqr, frob = ctx.mul, ctx.sqr, ctx.frobenius
    b = B.coeffs
    m = len(b) - 1
    inv_lead = ctx.inv(b[-1])
    r = list(A.coeffs)
    if len(r) <= m:
        return SkewPoly.zero(ctx), A
    q = [0] * (len(r) - m)
    for top in range(len(r) - 1, m - 1, -1):
        lead = r[top]
        if not lead:
            continue
        d = top - m
        # b_m theta^m(c) = lead
        c = frob(mul(lead, inv_lead), -m)
        q[d] = c
        t = c
        for i, bi in enumerate(b):
            if bi:
                r[i + d] ^= mul(bi, t)
            t = sqr(t)
    return SkewPoly(ctx, q), SkewPoly(ctx, r[:m])


def right_divide(A: SkewPoly, B: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """(Q, R) with A = Q . B + R and deg R < deg B."""
    if B.is_zero():
        raise ZeroDivisionError("division by the zero skew polynomial")
    ctx = A.ctx
    mul, frob = ctx.mul, ctx.frobenius
    b = B.coeffs
    m = len(b) - 1
    r = list(A.coeffs)
    if len(r) <= m:
        return SkewPoly.zero(ctx), A
    q = [0] * (len(r) - m)
    for top in range(len(r) - 1, m - 1, -1):
        lead = r[top]
        if not lead:
            continue
        d = top - m
        # c X^d . b_i X^i = c theta^d(b_i) X^(i+d)
        c = ctx.div(lead, frob(b[-1], d))
        q[d] = c
        for i, bi in enumerate(b):
            if bi:
                r[i + d] ^= mul(c, frob(bi, d))
    return SkewPoly(ctx, q), SkewPoly(ctx, r[:m])


# -- Gaussian elimination over F_q ------------------------------------------------

def fq_rref(ctx: FieldContext, rows: Sequence[Sequence[int]], ncols: int | None = None):
    """Reduced row echelon form over F_q; returns (rows, pivot columns)."""
    work = [list(r) for r in rows]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    mul, inv = ctx.mul, ctx.inv
    pivots = []
    top = 0
    for col in range(ncols):
        if top == len(work):
            break
        piv = next((r for r in range(top, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[top], work[piv] = work[piv], work[top]
        prow = work[top]
        s = inv(prow[col])
        if s != 1:
            prow = work[top] = [mul(s, v) if v else 0 for v in prow]
        nzcols = [(j, v) for j, v in enumerate(prow) if v and j >= col]
        for r in range(len(work)):
            if r == top:
                continue
            row = work[r]
            f = row[col]
            if f:
                for j, v in nzcols:
                    row[j] ^= mul(f, v)
        pivots.append(col)
        top += 1
    return work, pivots


def fq_kernel(ctx: FieldContext, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of the right kernel {x : M x = 0} over F_q."""
    if not rows:
        return [[1 if j == f else 0 for j in range(ncols)] for f in range(ncols)]
    work, pivots = fq_rref(ctx, rows, ncols)
    pset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(work, pivots):
            v[p] = row[f]
        basis.append(v)
    return basis


def fq_solve(ctx: FieldContext, rows: Sequence[Sequence[int]], b: Sequence[int]) -> list[int]:
    """One solution of M x = b over F_q; raises ValueError if inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    work, pivots = fq_rref(ctx, aug, ncols)
    for row in work[len(pivots):]:
        if row[ncols]:
            raise ValueError("inconsistent system over F_q")
    x = [0] * ncols
    for row, p in zip(work, pivots):
        x[p] = row[ncols]
    return x


def fq_inverse(ctx: FieldContext, rows: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    work, pivots = fq_rref(ctx, aug, n)
    if len(pivots) != n:
        raise ValueError("matrix is singular over F_q")
    return [row[n:] for row in work]
