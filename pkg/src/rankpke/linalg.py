"""Dense linear algebra over F_2 with rows packed into Python ints.

Bit j of a row int is the entry in column j; column 0 is the leftmost column,
so the pivot of a row (its first nonzero entry) is its lowest set bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class NoSolution(ValueError):
    """The linear system has no solution."""


@dataclass(frozen=True)
class BitMatrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        if self.ncols < 0:
            raise ValueError("negative column count")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row has bits outside the matrix width")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls((0,) * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]]) -> BitMatrix:
        ncols = len(data[0]) if data else 0
        rows = tuple(sum((bit & 1) << j for j, bit in enumerate(row)) for row in data)
        return cls(rows, ncols)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return BitMatrix(tuple(mat_mul_rows(self.rows, other.rows)), other.ncols)

    def transpose(self) -> BitMatrix:
        return BitMatrix(tuple(transpose_bits(list(self.rows), self.ncols)), self.nrows)

    def column(self, j: int) -> int:
        """Column j as an int whose bit i is entry (i, j)."""
        c = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                c |= 1 << i
        return c

    def to_bytes(self) -> bytes:
        stride = (self.ncols + 7) // 8
        return b"".join(r.to_bytes(stride, "little") for r in self.rows)

    @classmethod
    def from_bytes(cls, data: bytes, nrows: int, ncols: int) -> BitMatrix:
        stride = (ncols + 7) // 8
        if len(data) != nrows * stride:
            raise ValueError(f"expected {nrows * stride} bytes, got {len(data)}")
        rows = tuple(int.from_bytes(data[i * stride:(i + 1) * stride], "little") for i in range(nrows))
        return cls(rows, ncols)

    def __str__(self) -> str:
        return "\n".join("".join("1" if (r >> j) & 1 else "." for j in range(self.ncols)) for r in self.rows)


def mat_mul_rows(a_rows: Sequence[int], b_rows: Sequence[int]) -> list[int]:
    out = []
    for r in a_rows:
        acc = 0
        k = 0
        while r:
            if r & 1:
                acc ^= b_rows[k]
            r >>= 1
            k += 1
        out.append(acc)
    return out


def transpose_bits(rows: Sequence[int], ncols: int) -> list[int]:
    """Transpose a bit matrix given as row ints; returns ncols ints of len(rows) bits."""
    nrows = len(rows)
    if nrows == 0:
        return [0] * ncols
    strs = [format(r, f"0{ncols}b") for r in rows]
    # strs[i][k] is entry (i, ncols-1-k); build column ints MSB-first from the last row
    cols = [int("".join(col[::-1]), 2) for col in zip(*strs)]
    cols.reverse()
    return cols


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of a set of F_2 vectors packed as ints."""
    # basis vectors keyed by their leading bit
    lead: dict[int, int] = {}
    for v in rows:
        while v:
            h = v.bit_length()
            b = lead.get(h)
            if b is None:
                lead[h] = v
                break
            v ^= b
    return len(lead)


def gf2_inverse(rows: Sequence[int], n: int) -> list[int]:
    """Inverse of an invertible n x n matrix given as row ints."""
    work = list(rows)
    inv = [1 << i for i in range(n)]
    for col in range(n):
        bit = 1 << col
        piv = next((r for r in range(col, n) if work[r] & bit), None)
        if piv is None:
            raise ValueError("matrix is singular over F_2")
        work[col], work[piv] = work[piv], work[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        pr, pi = work[col], inv[col]
        for r in range(n):
            if r != col and work[r] & bit:
                work[r] ^= pr
                inv[r] ^= pi
    return inv


def _rref_rows(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    work = list(rows)
    pivots = []
    top = 0
    for col in range(ncols):
        if top == len(work):
            break
        bit = 1 << col
        piv = None
        for r in range(top, len(work)):
            if work[r] & bit:
                piv = r
                break
        if piv is None:
            continue
        work[top], work[piv] = work[piv], work[top]
        p = work[top]
        for r in range(len(work)):
            if r != top and work[r] & bit:
                work[r] ^= p
        pivots.append(col)
        top += 1
    return work, pivots


def rref(M: BitMatrix) -> tuple[BitMatrix, int]:
    """Reduced row echelon form; zero rows end up at the bottom."""
    work, pivots = _rref_rows(M.rows, M.ncols)
    return BitMatrix(tuple(work), M.ncols), len(pivots)


def is_rref(M: BitMatrix) -> bool:
    last = -1
    seen_zero = False
    pivot_cols = []
    for r in M.rows:
        if r == 0:
            seen_zero = True
            continue
        if seen_zero:
            return False
        p = (r & -r).bit_length() - 1
        if p <= last:
            return False
        last = p
        pivot_cols.append(p)
    for p in pivot_cols:
        if sum((r >> p) & 1 for r in M.rows) != 1:
            return False
    return True


def rank(M: BitMatrix) -> int:
    return gf2_rank(M.rows)


def mat_vec(M: BitMatrix, x: int) -> int:
    """M . x for a column vector x packed as an int (bit j = x_j)."""
    out = 0
    for i, r in enumerate(M.rows):
        if bin(r & x).count("1") & 1:
            out |= 1 << i
    return out


def solve(A: BitMatrix, b: int) -> int:
    """One solution x of A x = b (b packed with bit i = b_i); raises NoSolution."""
    n = A.ncols
    aug = [r | (((b >> i) & 1) << n) for i, r in enumerate(A.rows)]
    work, pivots = _rref_rows(aug, n)
    x = 0
    for row, p in zip(work, pivots):
        if (row >> n) & 1:
            x |= 1 << p
    for row in work[len(pivots):]:
        if row:
            raise NoSolution("right-hand side is not in the column space")
    return x


def kernel_basis(A: BitMatrix) -> list[int]:
    """Basis of {x : A x = 0}, each vector packed as an int of A.ncols bits."""
    work, pivots = _rref_rows(A.rows, A.ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(A.ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for row, p in zip(work, pivots):
            if (row >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def subspace_intersection_dim(a_rows: Sequence[int], b_rows: Sequence[int]) -> int:
    """dim(span(A) cap span(B)) for two spanning sets in the same ambient F_2^n."""
    return gf2_rank(a_rows) + gf2_rank(b_rows) - gf2_rank(list(a_rows) + list(b_rows))


# -- samplers -------------------------------------------------------------------

def _sample_full_rank_rows(nrows: int, ncols: int, rng) -> list[int]:
    """Uniform nrows x ncols matrix of rank nrows (needs nrows <= ncols)."""
    while True:
        rows = [rng.getrandbits(ncols) for _ in range(nrows)]
        if gf2_rank(rows) == nrows:
            return rows


def sample_invertible(n: int, rng) -> BitMatrix:
    """Uniform element of GL_n(F_2) by rejection sampling."""
    return BitMatrix(tuple(_sample_full_rank_rows(n, n, rng)), n)


def sample_rank_exact(n: int, r: int, rng) -> BitMatrix:
    """Uniform n x n matrix of rank exactly r, drawn as U . R with U, R full rank."""
    if not 0 <= r <= n:
        raise ValueError(f"rank {r} outside [0, {n}]")
    if r == 0:
        return BitMatrix.zeros(n, n)
    # U is n x r of rank r: sample its transpose (r x n, full row rank)
    u_cols = _sample_full_rank_rows(r, n, rng)
    u_rows = transpose_bits(u_cols, n)
    r_rows = _sample_full_rank_rows(r, n, rng)
    return BitMatrix(tuple(mat_mul_rows(u_rows, r_rows)), n)
