"""Matplotlib figures for the estimate and failure-sim reports (Agg backend, files only)."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .estimator import SecurityReport  # noqa: E402
from .simulate import FailureSimResult, clopper_pearson  # noqa: E402


def plot_security(report: SecurityReport, out_dir: str) -> str:
    """Horizontal bar chart of every log2 cost against the target level."""
    os.makedirs(out_dir, exist_ok=True)
    names = list(report.costs_log2)
    vals = [report.costs_log2[k] for k in names]
    colors = []
    for k in names:
        if k == report.binding_classical:
            colors.append("tab:red")
        elif k in report.classical_keys:
            colors.append("tab:blue")
        elif k in report.quantum_keys:
            colors.append("tab:purple")
        else:
            colors.append("tab:gray")
    fig, ax = plt.subplots(figsize=(7, 0.4 * len(names) + 1.5))
    bars = ax.barh(names, vals, color=colors)
    ax.bar_label(bars, labels=[f"{v:.1f}" for v in vals], padding=3, fontsize=8)
    ax.axvline(report.lam, color="k", ls="--", lw=1, label=f"lambda = {report.lam}")
    ax.set_xscale("log")
    ax.set_xlabel("log2 cost")
    ax.set_title(str(report.params))
    ax.invert_yaxis()
    ax.legend(loc="lower right")
    fig.tight_layout()
    path = os.path.join(out_dir, f"security_n{report.params.n}_k{report.params.k}.png")
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def plot_failure_sim(result: FailureSimResult, out_dir: str) -> str:
    """Running failure rate with its confidence band, the bound and the exact probability."""
    os.makedirs(out_dir, exist_ok=True)
    xs, rate, lo, hi = [], [], [], []
    n_tr = n_fail = 0
    for c in sorted(result.chunks, key=lambda c: c.index):
        n_tr += c.trials
        n_fail += c.failures
        a, b = clopper_pearson(n_fail, n_tr, result.confidence)
        xs.append(n_tr)
        rate.append(n_fail / n_tr)
        lo.append(a)
        hi.append(b)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(xs, rate, marker=".", label="observed rate")
    ax.fill_between(xs, lo, hi, alpha=0.25, label=f"{result.confidence:.0%} one-sided bounds")
    ax.axhline(result.bound, color="tab:red", ls="--", label=f"bound 2^-{result.exponent}")
    ax.axhline(result.exact_probability, color="tab:green", ls=":", label="exact probability")
    ax.set_xscale("log")
    ax.set_xlabel("trials")
    ax.set_ylabel("failure rate")
    ax.set_title(str(result.params))
    ax.legend()
    fig.tight_layout()
    p = result.params
    path = os.path.join(out_dir, f"failure_sim_n{p.n}_k{p.k}_w{p.w}_l{p.l}.png")
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path
