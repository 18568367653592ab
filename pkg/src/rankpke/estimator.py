"""Parameter validation and log2 attack-cost estimates.

All costs are log2 of an operation count.  Binomials are exact integers;
their log2 comes from the bit length plus a float on the top bits, so huge
values never pass through a double.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .scheme import InvalidParameters, ParameterSet

OMEGA_DEFAULT = math.log2(7)
QUADRATIC_FLOOR_COEFF = 0.561
# post-quantum column as printed for the KEM presets; not derivable from the formulas
CLAIMED_QUANTUM = {(64, 32, 19, 3): 126, (80, 40, 23, 3): 158, (96, 48, 27, 3): 190, (164, 116, 27, 3): 256}


def log2_int(x: int) -> float:
    """log2 of a positive integer of any size."""
    if x <= 0:
        raise ValueError("log2 of a nonpositive integer")
    shift = max(x.bit_length() - 64, 0)
    return math.log2(x >> shift) + shift


def gaussian_binomial(n: int, r: int, q: int = 2) -> int:
    """Number of r-dimensional subspaces of F_q^n."""
    if not 0 <= r <= n:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def derive_t(n: int, k: int, l: int, w: int) -> int:
    if n <= k + l + w:
        raise InvalidParameters("need n > k + l + w")
    t = (n - k - l - w) // 2
    if t < 1:
        raise InvalidParameters(f"plaintext rank t={t} must be positive")
    return t


def failure_exponent(n: int, w: int, t: int) -> int:
    return n - t - w


def sizes(params: ParameterSet) -> tuple[int, int, int]:
    """(pk, sk, ct) in bytes with bit-packed elements."""
    n = params.n
    pk = ((params.n - params.k) * n + 7) // 8
    return pk, (params.w * n + 7) // 8, pk


def exhaustive_costs(params: ParameterSet) -> tuple[int, int, int]:
    """Plaintext space, private-key space, and T-space sizes (log2 lower bounds)."""
    n, t, w, l = params.n, params.t, params.w, params.l
    return t * (n - t), w * (n - w), (l + 1) * n


def gabsd_delta(params: ParameterSet) -> int:
    return params.w - (params.n - params.k) // 2


def gabsd_costs(params: ParameterSet) -> tuple[float, float, bool]:
    """(classical, quantum, easy_regime); easy regime means delta <= 0."""
    n, k = params.n, params.k
    d = gabsd_delta(params)
    if d <= 0:
        return 0.0, 0.0, True
    e = d * (n + k - 2 * d)
    return math.log2(0.3) + e, math.log2(0.55) + e / 2, False


def minrank_K(params: ParameterSet) -> int:
    return params.n * (params.k + 2 * params.l + 1)


def groebner_binomial(params: ParameterSet) -> tuple[int, int]:
    n, t = params.n, params.t
    return t * (n - t) + minrank_K(params) + t - 1, t


def minrank_costs(params: ParameterSet, omega: float = OMEGA_DEFAULT) -> tuple[float, float]:
    """(Groebner with solving degree t, Goubin-Courtois)."""
    n, t = params.n, params.t
    top, r = groebner_binomial(params)
    groebner = omega * log2_int(math.comb(top, r))
    K = minrank_K(params)
    gc = 3 * math.log2(K) + t * -(-K // n)
    return groebner, gc


def binary_entropy(x: float) -> float:
    if x <= 0 or x >= 1:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def quad_M(x: float) -> float:
    return -x + 0.5 + 0.5 * math.sqrt(2 * x * x - 10 * x - 1 + 2 * (x + 2) * math.sqrt(x * (x + 2)))


def quadratic_alpha(params: ParameterSet) -> float:
    return params.n / (params.k + params.w + params.l + 1)


def quadratic_rate(alpha: float) -> float:
    """Cost exponent per n^2: 2 H(M(alpha)) / alpha."""
    return 2 * binary_entropy(quad_M(alpha)) / alpha


def quadratic_system_cost(params: ParameterSet) -> tuple[float, float]:
    """(2 H(M(alpha)) N_var, 0.561 n^2) for the key-equation quadratic system."""
    alpha = quadratic_alpha(params)
    if alpha <= 1:
        raise InvalidParameters(f"alpha={alpha:.4f} must exceed 1")
    n_var = params.n * (params.k + params.w + params.l + 1)
    return 2 * binary_entropy(quad_M(alpha)) * n_var, QUADRATIC_FLOOR_COEFF * params.n ** 2


@dataclass
class Constraint:
    name: str
    value: float
    bound: float
    # "ge": value >= bound, "gt": value > bound, "le": value <= bound
    relation: str = "ge"

    @property
    def margin(self) -> float:
        return self.bound - self.value if self.relation == "le" else self.value - self.bound

    @property
    def passed(self) -> bool:
        return self.margin > 0 if self.relation == "gt" else self.margin >= 0


@dataclass
class SecurityReport:
    params: ParameterSet
    lam: int
    omega: float
    t: int
    failure_exponent: int
    sizes_bytes: dict[str, int]
    costs_log2: dict[str, float]
    classical_keys: tuple[str, ...]
    quantum_keys: tuple[str, ...]
    constraints: list[Constraint] = field(default_factory=list)
    easy_regime: bool = False
    alpha: float = 0.0
    claimed_quantum_published: int | None = None

    @property
    def claimed_classical(self) -> float:
        return min(self.costs_log2[k] for k in self.classical_keys)

    @property
    def claimed_quantum(self) -> float:
        return min(self.costs_log2[k] for k in self.quantum_keys)

    @property
    def binding_classical(self) -> str:
        return min(self.classical_keys, key=lambda k: self.costs_log2[k])

    @property
    def binding_quantum(self) -> str:
        return min(self.quantum_keys, key=lambda k: self.costs_log2[k])

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.constraints)

    @property
    def quantum_passed(self) -> bool:
        return self.passed and self.claimed_quantum >= self.lam

    def failed(self) -> list[Constraint]:
        return [c for c in self.constraints if not c.passed]

    def key_values(self) -> list[tuple[str, str]]:
        p = self.params
        kv = [("n", p.n), ("k", p.k), ("w", p.w), ("l", p.l), ("t", self.t),
              ("lambda", self.lam), ("omega", f"{self.omega:.4f}"),
              ("failure_exponent", self.failure_exponent)]
        kv += [(f"size_{name}_bytes", v) for name, v in self.sizes_bytes.items()]
        kv += [(f"cost_{name}_log2", f"{v:.2f}") for name, v in self.costs_log2.items()]
        kv += [("easy_regime", int(self.easy_regime)), ("alpha", f"{self.alpha:.4f}"),
               ("classical_bits", round(self.claimed_classical)),
               ("classical_binding", self.binding_classical),
               ("quantum_bits", round(self.claimed_quantum)),
               ("quantum_binding", self.binding_quantum),
               ("quantum_bits_claimed", self.claimed_quantum_published if self.claimed_quantum_published is not None else "none")]
        kv += [(f"constraint_{c.name}", f"{'pass' if c.passed else 'fail'} margin={c.margin:.2f}")
               for c in self.constraints]
        kv += [("valid", int(self.passed)), ("quantum_valid", int(self.quantum_passed))]
        return [(k, str(v)) for k, v in kv]

    def format_kv(self) -> str:
        return "\n".join(f"{k}={v}" for k, v in self.key_values())

    def format_table(self) -> str:
        p = self.params
        lines = [f"parameters  {p}",
                 f"sizes       pk={self.sizes_bytes['pk']}B sk={self.sizes_bytes['sk']}B ct={self.sizes_bytes['ct']}B",
                 f"failure     <= 2^-{self.failure_exponent}",
                 "",
                 f"{'attack':<28}{'log2 cost':>10}  model"]
        for name, v in self.costs_log2.items():
            kind = []
            if name in self.classical_keys:
                kind.append("classical")
            if name in self.quantum_keys:
                kind.append("quantum")
            lines.append(f"{name:<28}{v:>10.1f}  {'+'.join(kind) or 'reference'}")
        lines += ["",
                  f"classical security  {self.claimed_classical:.1f} bits (binding: {self.binding_classical})",
                  f"quantum security    {self.claimed_quantum:.1f} bits (binding: {self.binding_quantum})"]
        if self.claimed_quantum_published is not None:
            lines.append(f"quantum (claimed)   {self.claimed_quantum_published} bits; not reproduced by the cost formulas")
        lines += ["", f"{'constraint':<28}{'value':>10}{'bound':>10}{'margin':>10}  verdict"]
        for c in self.constraints:
            lines.append(f"{c.name:<28}{c.value:>10.1f}{c.bound:>10.1f}{c.margin:>10.1f}  "
                         f"{'pass' if c.passed else 'FAIL'}")
        lines.append(f"\nverdict at lambda={self.lam}: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def validate(params: ParameterSet, lam: int = 128, omega: float = OMEGA_DEFAULT) -> SecurityReport:
    """Evaluate every constraint at security level lam.

    Raises InvalidParameters for sets where the scheme itself is undefined
    (t < 1) or the key sits outside the Gabidulin syndrome-decoding hard range.
    """
    params.check()
    t = params.t
    n, k, w, l = params.n, params.k, params.w, params.l
    cls, qnt, easy = gabsd_costs(params)
    if easy:
        raise InvalidParameters(f"delta={gabsd_delta(params)} <= 0: w={w} is within half the minimum distance "
                                "(easy regime for syndrome decoding)")
    if w >= n - k:
        raise InvalidParameters(f"w={w} >= n-k={n - k}: syndrome decoding reduces to interpolation")

    ex_p, ex_key, ex_T = exhaustive_costs(params)
    groebner, gc = minrank_costs(params, omega)
    quad, quad_floor = quadratic_system_cost(params)
    pk, sk, ct = sizes(params)
    costs = {
        "exhaustive_plaintext": float(ex_p),
        "exhaustive_key": float(ex_key),
        "exhaustive_T": float(ex_T),
        "gabsd_classical": cls,
        "minrank_groebner": groebner,
        "minrank_goubin_courtois": gc,
        "quadratic_system": quad,
        "quadratic_system_floor": quad_floor,
        # Grover halves the exponent of the exhaustive searches
        "exhaustive_plaintext_quantum": ex_p / 2,
        "exhaustive_key_quantum": ex_key / 2,
        "exhaustive_T_quantum": ex_T / 2,
        "gabsd_quantum": qnt,
    }
    classical = ("exhaustive_plaintext", "exhaustive_key", "exhaustive_T", "gabsd_classical",
                 "minrank_groebner", "minrank_goubin_courtois", "quadratic_system")
    # no quantum speedup is assumed for the algebraic attacks
    quantum = ("exhaustive_plaintext_quantum", "exhaustive_key_quantum", "exhaustive_T_quantum",
               "gabsd_quantum", "minrank_groebner", "minrank_goubin_courtois", "quadratic_system")

    K = minrank_K(params)
    alt_top = n * (k + 2 * l + t + 1) - t * t + t - 1
    constraints = [
        Constraint("t_positive", t, 1),
        Constraint("gabsd_delta", gabsd_delta(params), 0, "gt"),
        Constraint("gabsd_upper", w, n - k - 1, "le"),
        Constraint("w_ge_l_plus_1", w, l + 1),
        Constraint("minrank_delta_nonpositive", K - (n - t) ** 2, 0, "le"),
        Constraint("exhaustive_plaintext", ex_p, lam),
        Constraint("exhaustive_key", ex_key, lam),
        Constraint("exhaustive_T", ex_T, lam),
        Constraint("gabsd_classical", cls, lam),
        Constraint("minrank_groebner", omega * log2_int(math.comb(alt_top, t)), lam),
        Constraint("minrank_goubin_courtois", t * (k + 2 * l + 1), lam),
        Constraint("quadratic_system_floor", quad_floor, lam),
    ]
    return SecurityReport(
        params=params, lam=lam, omega=omega, t=t,
        failure_exponent=failure_exponent(n, w, t),
        sizes_bytes={"pk": pk, "sk": sk, "ct": ct},
        costs_log2=costs, classical_keys=classical, quantum_keys=quantum,
        constraints=constraints, easy_regime=easy, alpha=quadratic_alpha(params),
        claimed_quantum_published=CLAIMED_QUANTUM.get((n, k, w, l)),
    )
