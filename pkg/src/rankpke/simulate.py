"""Monte Carlo measurement of the decryption failure rate.

Trials are split into fixed-size chunks; chunk i draws everything from
rng.spawn(i), so totals depend only on (seed, trials, chunk size) and not on
how many worker processes run the chunks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .linalg import subspace_intersection_dim
from .rng import SeededRng
from .scheme import (DecryptFailure, ParameterSet, decrypt, encrypt_with_trace, keygen_with_secret,
                     sample_plaintext)

CHUNK_TRIALS = 10_000


def exact_failure_probability(n: int, w: int, t: int) -> float:
    """P(a uniform t-dim subspace of F_2^n meets a fixed w-dim one nontrivially)."""
    miss = 1.0
    for i in range(t):
        miss *= (2.0 ** n - 2.0 ** (w + i)) / (2.0 ** n - 2.0 ** i)
    return 1.0 - miss


def clopper_pearson(failures: int, trials: int, confidence: float = 0.99) -> tuple[float, float]:
    """One-sided (lower, upper) Clopper-Pearson bounds at the given confidence."""
    from scipy.stats import beta

    a = 1.0 - confidence
    lo = 0.0 if failures == 0 else float(beta.ppf(a, failures, trials - failures + 1))
    hi = 1.0 if failures == trials else float(beta.ppf(confidence, failures + 1, trials - failures))
    return lo, hi


@dataclass
class ChunkResult:
    index: int
    trials: int
    failures: int
    lemma2_confirmed: int
    intersections: int


@dataclass
class FailureSimResult:
    params: ParameterSet
    trials: int
    failures: int
    lemma2_confirmed: int
    # trials whose colspans met nontrivially, failed or not
    intersections: int
    confidence: float = 0.99
    chunks: list[ChunkResult] = field(default_factory=list, repr=False)

    @property
    def observed_rate(self) -> float:
        return self.failures / self.trials if self.trials else 0.0

    @property
    def exponent(self) -> int:
        p = self.params
        return p.n - p.t - p.w

    @property
    def bound(self) -> float:
        return 2.0 ** -self.exponent

    @property
    def exact_probability(self) -> float:
        p = self.params
        return exact_failure_probability(p.n, p.w, p.t)

    @property
    def ci(self) -> tuple[float, float]:
        return clopper_pearson(self.failures, self.trials, self.confidence)

    @property
    def upper_within_bound(self) -> bool:
        """The rate is shown to be at most the bound at the stated confidence."""
        return self.ci[1] <= self.bound

    @property
    def consistent_with_bound(self) -> bool:
        """The data do not show the rate exceeds the bound."""
        return self.ci[0] <= self.bound

    @property
    def all_failures_explained(self) -> bool:
        return self.lemma2_confirmed == self.failures

    def key_values(self) -> list[tuple[str, str]]:
        lo, hi = self.ci
        p = self.params
        kv = [("n", p.n), ("k", p.k), ("w", p.w), ("l", p.l), ("t", p.t),
              ("trials", self.trials), ("failures", self.failures),
              ("observed_rate", f"{self.observed_rate:.6e}"),
              ("bound_exponent", self.exponent), ("bound", f"{self.bound:.6e}"),
              ("exact_probability", f"{self.exact_probability:.6e}"),
              ("confidence", self.confidence),
              ("ci_lower", f"{lo:.6e}"), ("ci_upper", f"{hi:.6e}"),
              ("upper_within_bound", int(self.upper_within_bound)),
              ("consistent_with_bound", int(self.consistent_with_bound)),
              ("lemma2_confirmed", self.lemma2_confirmed),
              ("intersections", self.intersections),
              ("all_failures_explained", int(self.all_failures_explained))]
        return [(k, str(v)) for k, v in kv]

    def format_kv(self) -> str:
        return "\n".join(f"{k}={v}" for k, v in self.key_values())


def run_trial(params: ParameterSet, rng) -> tuple[bool, int]:
    """One keygen/encrypt/decrypt cycle; returns (failed, dim of the colspan intersection)."""
    pk, sk, k_priv = keygen_with_secret(params, rng)
    pt = sample_plaintext(params, rng)
    ct, p_prime = encrypt_with_trace(pk, pt, rng)
    try:
        failed = decrypt(sk, ct).P != pt.P
    except DecryptFailure:
        failed = True
    # p' = g S P, so colspan(p') is the image of colspan(S P) under the basis g
    return failed, subspace_intersection_dim(k_priv, p_prime)


def run_chunk(params: ParameterSet, seed: bytes, index: int, trials: int) -> ChunkResult:
    rng = SeededRng(seed).spawn(index)
    failures = confirmed = meets = 0
    for _ in range(trials):
        failed, dim = run_trial(params, rng)
        meets += dim > 0
        if failed:
            failures += 1
            confirmed += dim > 0
    return ChunkResult(index, trials, failures, confirmed, meets)


def _chunk_job(args):
    return run_chunk(*args)


def failure_sim(params: ParameterSet, trials: int, seed: bytes, workers: int = 1,
                chunk: int = CHUNK_TRIALS, confidence: float = 0.99, progress=None) -> FailureSimResult:
    params.check()
    if trials < 1:
        raise ValueError("need at least one trial")
    jobs = []
    left = trials
    i = 0
    while left:
        m = min(chunk, left)
        jobs.append((params, seed, i, m))
        left -= m
        i += 1
    if workers > 1:
        import multiprocessing

        with multiprocessing.get_context("spawn").Pool(workers) as pool:
            results = []
            for res in pool.imap(_chunk_job, jobs):
                results.append(res)
                if progress:
                    progress(res)
    else:
        results = []
        for job in jobs:
            res = run_chunk(*job)
            results.append(res)
            if progress:
                progress(res)
    return FailureSimResult(
        params=params, trials=trials,
        failures=sum(r.failures for r in results),
        lemma2_confirmed=sum(r.lemma2_confirmed for r in results),
        intersections=sum(r.intersections for r in results),
        confidence=confidence, chunks=results,
    )


def required_trials(p: float, bound: float, confidence: float = 0.99) -> float:
    """Rough trial count for the one-sided upper bound to clear `bound` when the true rate is p."""
    if p >= bound:
        return math.inf
    # normal approximation: bound - p >= z sqrt(p / N)
    from scipy.stats import norm

    z = norm.ppf(confidence)
    return math.ceil(z * z * p / (bound - p) ** 2)
