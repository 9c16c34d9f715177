"""Null/signal separation statistics.

A pair of measured circuits is compared by drawing repeated fixed-size
subsamples: the null sample collects L1 distances between two subsamples
of the *same* histogram, the signal sample between subsamples of the two
*different* histograms. The z-score (mu_signal - mu_null) / sigma_pooled
against a threshold of 3 is the operational separation criterion used
throughout.

Protocol choices fixed here: the two null draws are independent
without-replacement subsamples (not disjoint halves); the null source
alternates between the two histograms across repeats so both circuits
contribute; signal draws are fresh, never reused from the null.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import Z_THRESHOLD
from .embedding import embed_counts, l1_distance
from .graphs import rng_from
from .sampling import CountsHistogram, sample_counts, subsample

__all__ = [
    "InsufficientShotsError",
    "SeparationReport",
    "separation_test",
    "raw_l1_counts",
    "null_percentile_threshold",
    "null_percentile_fresh",
]


class InsufficientShotsError(ValueError):
    """Histogram holds fewer shots than one subsample needs."""


@dataclass
class SeparationReport:
    """Everything the separation test measured, plus its configuration."""

    null_l1: list[float]
    signal_l1: list[float]
    mu_null: float
    mu_signal: float
    sigma_pooled: float
    z: float
    threshold: float
    passed: bool
    degenerate: bool = False
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "null_l1": self.null_l1,
            "signal_l1": self.signal_l1,
            "mu_null": self.mu_null,
            "mu_signal": self.mu_signal,
            "sigma_pooled": self.sigma_pooled,
            "z": self.z,
            "threshold": self.threshold,
            "passed": self.passed,
            "degenerate": self.degenerate,
            "config": self.config,
        }

    def summary_line(self, label: str = "pair") -> str:
        z = f"{self.z:.2f}" if math.isfinite(self.z) else str(self.z)
        return (
            f"{label}: qubits={self.config.get('qubits', '?')} "
            f"z={z} pass={self.passed}"
        )


def _zscore(null: np.ndarray, signal: np.ndarray) -> tuple[float, float, float, float, bool]:
    mu_n = float(null.mean())
    mu_s = float(signal.mean())
    var_n = float(null.var(ddof=1)) if null.size > 1 else 0.0
    var_s = float(signal.var(ddof=1)) if signal.size > 1 else 0.0
    pooled = math.sqrt((var_n + var_s) / 2.0)
    if pooled == 0.0:
        # Degenerate all-equal samples: signed infinity sentinel rather
        # than a division by zero; equal means give z = 0.
        diff = mu_s - mu_n
        z = 0.0 if diff == 0.0 else math.copysign(math.inf, diff)
        return mu_n, mu_s, pooled, z, True
    return mu_n, mu_s, pooled, (mu_s - mu_n) / pooled, False


def separation_test(
    counts_a: CountsHistogram,
    counts_b: CountsHistogram,
    *,
    subsample_size: int = 4096,
    repeats: int = 64,
    head: int = 100,
    seed=0,
    threshold: float = Z_THRESHOLD,
    extra_config: dict | None = None,
) -> SeparationReport:
    """Null/signal z-score between two measured circuits.

    head == 0 compares untruncated sorted embeddings.
    """
    if min(counts_a.shots, counts_b.shots) < subsample_size:
        raise InsufficientShotsError(
            f"need >= {subsample_size} shots per histogram, have "
            f"{counts_a.shots} and {counts_b.shots}"
        )
    rng = rng_from(seed)
    null_vals: list[float] = []
    signal_vals: list[float] = []
    for i in range(repeats):
        source = counts_a if i % 2 == 0 else counts_b
        x = embed_counts(subsample(source, subsample_size, rng), head)
        y = embed_counts(subsample(source, subsample_size, rng), head)
        null_vals.append(l1_distance(x, y))
        x = embed_counts(subsample(counts_a, subsample_size, rng), head)
        y = embed_counts(subsample(counts_b, subsample_size, rng), head)
        signal_vals.append(l1_distance(x, y))
    mu_n, mu_s, pooled, z, degenerate = _zscore(
        np.asarray(null_vals), np.asarray(signal_vals)
    )
    config = {
        "shots_a": counts_a.shots,
        "shots_b": counts_b.shots,
        "qubits": counts_a.n,
        "subsample_size": subsample_size,
        "repeats": repeats,
        "head": head,
        "seed": seed if isinstance(seed, int) else None,
        "threshold": threshold,
    }
    if extra_config:
        config.update(extra_config)
    return SeparationReport(
        null_l1=null_vals,
        signal_l1=signal_vals,
        mu_null=mu_n,
        mu_signal=mu_s,
        sigma_pooled=pooled,
        z=z,
        threshold=threshold,
        passed=bool(z > threshold),
        degenerate=degenerate,
        config=config,
    )


def raw_l1_counts(a: CountsHistogram, b: CountsHistogram) -> float:
    """Outcome-aligned L1 distance between two empirical distributions.

    Unlike the sorted-embedding distance this keeps outcomes matched by
    label; it is the right comparison for controlled perturbations of a
    single labeled graph (e.g. reduced-distribution studies).
    """
    keys = set(a.counts) | set(b.counts)
    return float(
        sum(abs(a.frequency(k) - b.frequency(k)) for k in keys)
    )


def null_percentile_threshold(
    counts: CountsHistogram,
    percentile: float,
    *,
    subsample_size: int = 4096,
    repeats: int = 64,
    seed=0,
) -> float:
    """Percentile of the same-circuit null from one measured histogram.

    Each repeat draws two independent without-replacement subsamples and
    records their outcome-aligned L1; useful when only counts exist.
    """
    if not 0.0 < percentile < 100.0:
        raise ValueError(f"percentile must be in (0, 100), got {percentile}")
    if counts.shots < subsample_size:
        raise InsufficientShotsError(
            f"need >= {subsample_size} shots, have {counts.shots}"
        )
    rng = rng_from(seed)
    vals = []
    for _ in range(repeats):
        x = subsample(counts, subsample_size, rng)
        y = subsample(counts, subsample_size, rng)
        vals.append(raw_l1_counts(x, y))
    return float(np.percentile(vals, percentile))


def null_percentile_fresh(
    dist,
    percentile: float,
    *,
    sample_size: int = 4096,
    repeats: int = 64,
    seed=0,
) -> float:
    """Percentile of the same-circuit null from a known distribution.

    Each repeat draws two fresh independent samples of `sample_size`
    shots and records their outcome-aligned L1. This is the resampling
    null used by the retained-qubit study, where the exact reduced
    distribution is available.
    """
    if not 0.0 < percentile < 100.0:
        raise ValueError(f"percentile must be in (0, 100), got {percentile}")
    rng = rng_from(seed)
    vals = []
    for _ in range(repeats):
        x = sample_counts(dist, sample_size, rng)
        y = sample_counts(dist, sample_size, rng)
        vals.append(raw_l1_counts(x, y))
    return float(np.percentile(vals, percentile))
