"""One-way rank-metric encryption built on Gabidulin syndromes.

Plaintexts are t-dimensional subspaces of F_2^n in RREF.  The public key is
the syndrome of a secret vector of rank w; the private key is the monic
annihilator V of that vector, which is all decryption ever needs.

Security rests on two decisional problems over a fixed parity check H of
Gab_k(g):

* syndrome correlation: (H x, H T^T x) with T of g-degree l is hard to
  tell apart from (H x, r) for uniform r;
* Gabidulin syndrome decoding: H x for x of rank w, with
  (n-k)/2 < w < n-k, is hard to tell apart from a uniform syndrome.

Both are definitions only; nothing here attacks them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from .field import FieldContext, compress, ext, field_new, vector_rank
from .gabidulin import DecodingFailure, GabidulinCode, code_new, decode_bounded
from .linalg import BitMatrix, is_rref, mat_mul_rows, rref, sample_invertible, sample_rank_exact
from .skew import SkewPoly, annihilator, evaluate_vec


class InvalidParameters(ValueError):
    pass


class DecryptFailure(Exception):
    """Decryption could not recover a rank-t plaintext."""


@dataclass(frozen=True)
class ParameterSet:
    n: int
    k: int
    w: int
    l: int
    name: str = field(default="", compare=False)
    target_bits: int = field(default=128, compare=False)

    @property
    def t(self) -> int:
        return (self.n - self.k - self.l - self.w) // 2

    @property
    def decode_dim(self) -> int:
        return self.k + self.l + self.w

    def check(self, hard_range: bool = False) -> None:
        """Raise InvalidParameters unless the scheme is well defined.

        With hard_range=True also require floor((n-k)/2) < w < n-k and
        w >= l + 1.  Toy parameter sets used for failure experiments sit
        outside that range on purpose, so the scheme itself only needs the
        structural conditions.
        """
        n, k, w, l = self.n, self.k, self.w, self.l
        if not (2 <= n <= 256 and 1 <= k < n and 0 <= l < n and 1 <= w < n):
            raise InvalidParameters(f"parameters out of range: n={n} k={k} w={w} l={l}")
        if n <= k + l + w:
            raise InvalidParameters("need n > k + l + w")
        if self.t < 1:
            raise InvalidParameters(f"plaintext rank t={self.t} must be at least 1")
        if not hard_range:
            return
        if not (n - k) // 2 < w < n - k:
            raise InvalidParameters(f"w={w} outside the range floor((n-k)/2) < w < n-k")
        if w < l + 1:
            raise InvalidParameters(f"need w >= l + 1 (w={w}, l={l})")

    def __str__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"{label}(n={self.n}, k={self.k}, w={self.w}, l={self.l}, t={self.t})"


PRESETS = {
    "L1": ParameterSet(64, 32, 19, 3, "L1", 128),
    "L3": ParameterSet(80, 40, 23, 3, "L3", 192),
    "L5": ParameterSet(96, 48, 27, 3, "L5", 256),
    "PKE128": ParameterSet(164, 116, 27, 3, "PKE128", 256),
}


class Scheme:
    """Public data for one parameter set: the field and both Gabidulin codes."""

    def __init__(self, params: ParameterSet):
        params.check()
        self.params = params
        self.ctx: FieldContext = field_new(params.n)

    @cached_property
    def code(self) -> GabidulinCode:
        return code_new(self.ctx, self.params.k)

    @cached_property
    def decode_code(self) -> GabidulinCode:
        return code_new(self.ctx, self.params.decode_dim)


@lru_cache(maxsize=None)
def scheme_for(params: ParameterSet) -> Scheme:
    return Scheme(params)


@dataclass(frozen=True)
class PublicKey:
    params: ParameterSet
    k_pub: tuple[int, ...]

    def __post_init__(self):
        if len(self.k_pub) != self.params.n - self.params.k:
            raise ValueError("public key length must be n - k")


@dataclass(frozen=True)
class PrivateKey:
    params: ParameterSet
    V: SkewPoly

    def __post_init__(self):
        if not self.V.is_monic() or self.V.degree != self.params.w:
            raise ValueError("private key must be a monic skew polynomial of degree w")


@dataclass(frozen=True)
class Plaintext:
    P: BitMatrix

    def check(self, params: ParameterSet) -> None:
        if self.P.shape != (params.n, params.n):
            raise ValueError(f"plaintext must be {params.n} x {params.n}")
        if not is_rref(self.P):
            raise ValueError("plaintext is not in reduced row echelon form")
        r = sum(1 for row in self.P.rows if row)
        if r != params.t:
            raise ValueError(f"plaintext rank {r} differs from t={params.t}")


@dataclass(frozen=True)
class Ciphertext:
    params: ParameterSet
    u: tuple[int, ...]

    def __post_init__(self):
        if len(self.u) != self.params.n - self.params.k:
            raise ValueError("ciphertext length must be n - k")


# -- samplers ------------------------------------------------------------------------

def _t_vector(ctx: FieldContext, l: int, rng) -> list[int]:
    """g . T for T of g-degree exactly l: sum_{j<=l} lambda_j g^[j], lambda_l != 0."""
    lams = [ctx.random(rng) for _ in range(l)] + [ctx.random_nonzero(rng)]
    mul, sqr = ctx.mul, ctx.sqr
    x = [0] * ctx.n
    cur = list(ctx.g)
    for j, lam in enumerate(lams):
        if lam:
            for i, gi in enumerate(cur):
                x[i] ^= mul(lam, gi)
        if j < l:
            cur = [sqr(v) for v in cur]
    return x


def sample_T(ctx: FieldContext, l: int, rng) -> BitMatrix:
    """Uniform T in F_2^{n x n} with deg_g(T) = l."""
    if not 0 <= l <= ctx.n - 1:
        raise ValueError(f"g-degree {l} outside [0, {ctx.n - 1}]")
    return ext(ctx, _t_vector(ctx, l, rng))


def sample_plaintext(params: ParameterSet, rng) -> Plaintext:
    """Uniform element of P_{t,n}: the RREF of a uniform rank-t matrix."""
    R, _ = rref(sample_rank_exact(params.n, params.t, rng))
    return Plaintext(R)


# -- algorithms ----------------------------------------------------------------------

def keygen_with_secret(params: ParameterSet, rng) -> tuple[PublicKey, PrivateKey, list[int]]:
    """Key generation that also hands back k_priv (for experiments only)."""
    sch = scheme_for(params)
    ctx = sch.ctx
    A = sample_rank_exact(params.n, params.w, rng)
    k_priv = compress(ctx, A)
    k_pub = sch.code.syndrome(k_priv)
    V = annihilator(ctx, k_priv)
    return PublicKey(params, tuple(k_pub)), PrivateKey(params, V), k_priv


def keygen(params: ParameterSet, rng) -> tuple[PublicKey, PrivateKey]:
    pk, sk, _ = keygen_with_secret(params, rng)
    return pk, sk


def encrypt_with_trace(pk: PublicKey, pt: Plaintext, rng) -> tuple[Ciphertext, list[int]]:
    """Encrypt and also return p' = g S P (for failure diagnostics)."""
    params = pk.params
    pt.check(params)
    sch = scheme_for(params)
    ctx = sch.ctx
    n = params.n
    code = sch.code
    y = code.preimage(pk.k_pub)
    # y . T: column j of T holds the g-coordinates of x_j
    tx = _t_vector(ctx, params.l, rng)
    yT = []
    coords = ctx.coords
    for xj in tx:
        c = coords(xj)
        acc = 0
        i = 0
        while c:
            if c & 1:
                acc ^= y[i]
            c >>= 1
            i += 1
        yT.append(acc)
    S = sample_invertible(n, rng)
    SP = mat_mul_rows(S.rows, pt.P.rows)
    p_prime = compress(ctx, BitMatrix(tuple(SP), n))
    if vector_rank(ctx, p_prime) != params.t:
        raise AssertionError("rk(p') must equal t")
    u = code.syndrome([a ^ b for a, b in zip(yT, p_prime)])
    return Ciphertext(params, tuple(u)), p_prime


def encrypt(pk: PublicKey, pt: Plaintext, rng) -> Ciphertext:
    return encrypt_with_trace(pk, pt, rng)[0]


def decrypt(sk: PrivateKey, ct: Ciphertext) -> Plaintext:
    params = sk.params
    if ct.params != params:
        raise ValueError("ciphertext and private key use different parameters")
    sch = scheme_for(params)
    ctx = sch.ctx
    x = sch.code.preimage(ct.u)
    z = evaluate_vec(sk.V, x)
    try:
        _, a = decode_bounded(sch.decode_code, z)
    except DecodingFailure as exc:
        raise DecryptFailure(f"Gabidulin decoding failed: {exc}") from None
    if vector_rank(ctx, a) < params.t:
        raise DecryptFailure("recovered error has rank below t")
    R, _ = rref(ext(ctx, a))
    return Plaintext(R)
