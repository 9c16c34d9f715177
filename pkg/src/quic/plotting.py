"""Figure rendering for the CLI report paths.

Each function takes experiment result rows and writes one PNG next to
the delimited output. Matplotlib stays isolated here (Agg backend); the
numeric modules never import it.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

__all__ = [
    "plot_sorted_distribution",
    "plot_broom",
    "plot_shot_scaling",
    "plot_sweep",
    "plot_pair_bars",
]


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_sorted_distribution(decay_rows, path, uncertainty_floor=None, title="sorted output"):
    """Log-log decay plus cumulative mass of one sorted distribution."""
    ranks = [r["rank"] for r in decay_rows]
    probs = [r["probability"] for r in decay_rows]
    cum = [r["cumulative"] for r in decay_rows]
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
    top.loglog(ranks, probs, lw=1.2)
    if uncertainty_floor:
        top.axhline(uncertainty_floor, ls=":", color="gray", label="5% relative uncertainty")
        top.legend(fontsize=8)
    top.set_ylabel("probability")
    top.set_title(title)
    top.grid(alpha=0.3, which="both")
    bottom.semilogx(ranks, cum, lw=1.2)
    bottom.axvline(100, ls="--", color="tab:red", alpha=0.6, label="head 100")
    bottom.set_xlabel("rank")
    bottom.set_ylabel("cumulative mass")
    bottom.grid(alpha=0.3, which="both")
    bottom.legend(fontsize=8)
    return _save(fig, path)


def plot_broom(rows, path, title="retained-qubit study"):
    """Exact signal (solid) vs sampling null (dashed) per repetition count."""
    by_r: dict[int, list[dict]] = {}
    for row in rows:
        by_r.setdefault(row["reps"], []).append(row)
    fig, ax = plt.subplots(figsize=(6.5, 4.2))
    colors = plt.cm.viridis([i / max(1, len(by_r) - 1) for i in range(len(by_r))])
    for color, (r, rws) in zip(colors, sorted(by_r.items())):
        q = [w["retained_qubits"] for w in rws]
        ax.plot(q, [w["exact_l1"] for w in rws], "-", color=color, label=f"signal r={r}")
        ax.plot(q, [w["null_percentile"] for w in rws], "x--", color=color, alpha=0.7,
                label=f"null 95th r={r}")
    ax.set_xlabel("retained qubits")
    ax.set_ylabel("L1 distance")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    return _save(fig, path)


def plot_shot_scaling(rows, exact_l1, path, title="finite-shot separation"):
    shots = [r["shots"] for r in rows]
    fig, ax = plt.subplots(figsize=(6.5, 4.2))
    ax.errorbar(shots, [r["null_mean"] for r in rows], yerr=[r["null_sd"] for r in rows],
                fmt="o-", capsize=3, label="null")
    ax.errorbar(shots, [r["signal_mean"] for r in rows], yerr=[r["signal_sd"] for r in rows],
                fmt="s-", capsize=3, label="signal")
    ax.axhline(exact_l1, ls="--", color="gray", label=f"exact ({exact_l1:.4f})")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("subsample shots")
    ax.set_ylabel("head L1 distance")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    return _save(fig, path)


def plot_sweep(rows, axis, path):
    fig, ax = plt.subplots(figsize=(6.5, 4.2))
    xs = [r["value"] for r in rows]
    if axis == "reps":
        for key in rows[0]:
            if key.startswith("mean_tv_"):
                ax.plot(xs, [r[key] for r in rows], "o-", label=key.removeprefix("mean_tv_"))
        ax.set_ylabel("mean pairwise TV")
    else:
        ax.plot(xs, [r["mean_z"] for r in rows], "o-", label="mean z")
        ax.plot(xs, [r["min_z"] for r in rows], "s--", label="worst z")
        ax.axhline(3.0, ls=":", color="gray")
        ax.set_ylabel("z-score")
    ax.set_xlabel(f"{axis} value")
    ax.set_title(f"{axis} sweep")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    return _save(fig, path)


def plot_pair_bars(rows, path, title="pair separation", z_key="z"):
    """Horizontal z-score bars for a list of pair result rows."""
    rows = [r for r in rows if z_key in r and r[z_key] is not None]
    labels = [r.get("pair") or r.get("base", "?") for r in rows]
    zs = [r[z_key] for r in rows]
    fig, ax = plt.subplots(figsize=(6.5, 0.5 * len(rows) + 1.6))
    ax.barh(range(len(rows)), zs, color=["tab:green" if z > 3 else "tab:orange" for z in zs])
    ax.axvline(3.0, ls="--", color="gray", label="z = 3")
    ax.set_yticks(range(len(rows)), labels, fontsize=8)
    ax.set_xlabel("z-score")
    ax.set_title(title)
    ax.grid(alpha=0.3, axis="x")
    ax.legend(fontsize=8)
    return _save(fig, path)
