"""Sorted-distribution embeddings: sorting, head truncation, distances.

The embedding of a graph is its output distribution rearranged in
non-increasing order, which removes all dependence on vertex labeling;
comparisons use L1 distance on these sorted vectors, optionally
truncated to a fixed-length head (default head length 100 throughout
the package, 0 meaning untruncated).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import CircuitParams, output_distribution, run_circuit
from .graphs import Graph
from .sampling import CountsHistogram

__all__ = [
    "SortedDistribution",
    "LengthMismatchError",
    "sort_distribution",
    "truncate_head",
    "l1_distance",
    "tv_distance",
    "embed_exact",
    "embed_counts",
    "head_mass",
    "min_resolvable_probability",
    "DEFAULT_HEAD",
]

DEFAULT_HEAD = 100


class LengthMismatchError(ValueError):
    """Embeddings of incompatible lengths compared."""


@dataclass
class SortedDistribution:
    """Non-increasing probability vector, optionally truncated.

    head_len == 0 means untruncated; a truncated vector has exactly
    head_len entries (zero-padded when fewer outcomes exist, so that all
    compared vectors share one length). source_n records the qubit count
    the distribution came from.
    """

    values: np.ndarray
    head_len: int = 0
    source_n: int = 0

    def sum(self) -> float:
        return float(self.values.sum())

    def to_dict(self) -> dict:
        return {
            "values": self.values.tolist(),
            "head_len": self.head_len,
            "source_n": self.source_n,
        }


def sort_distribution(p, *, source_n: int = 0) -> SortedDistribution:
    """Non-increasing rearrangement of a probability vector.

    Ties keep their input order (stable sort); the input must be
    non-negative and sum to 1.
    """
    arr = np.asarray(p, dtype=float)
    if arr.ndim != 1:
        raise ValueError("expected a 1-d probability vector")
    if np.any(arr < 0):
        raise ValueError("negative probability entry")
    total = arr.sum()
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"probability vector sums to {total}, expected 1")
    values = -np.sort(-arr, kind="stable")
    return SortedDistribution(values, head_len=0, source_n=source_n)


def truncate_head(d: SortedDistribution, k: int) -> SortedDistribution:
    """First k entries of the sorted vector, zero-padded to exactly k."""
    if k < 1:
        raise ValueError(f"head length must be >= 1, got {k}")
    vals = d.values[:k]
    if vals.size < k:
        vals = np.concatenate([vals, np.zeros(k - vals.size)])
    return SortedDistribution(vals.copy(), head_len=k, source_n=d.source_n)


def _aligned(a: SortedDistribution, b: SortedDistribution) -> tuple[np.ndarray, np.ndarray]:
    if a.head_len != b.head_len:
        raise LengthMismatchError(
            f"head lengths differ: {a.head_len} vs {b.head_len}"
        )
    x, y = a.values, b.values
    if a.head_len == 0 and x.size != y.size:
        # Untruncated vectors may differ in stored length (sparse sampled
        # supports); zero-padding the shorter one matches the dense view.
        size = max(x.size, y.size)
        x = np.concatenate([x, np.zeros(size - x.size)])
        y = np.concatenate([y, np.zeros(size - y.size)])
    elif x.size != y.size:
        raise LengthMismatchError(f"lengths differ: {x.size} vs {y.size}")
    return x, y


def l1_distance(a: SortedDistribution, b: SortedDistribution) -> float:
    """Sum of absolute entrywise differences of two sorted embeddings."""
    x, y = _aligned(a, b)
    return float(np.abs(x - y).sum())


def tv_distance(a: SortedDistribution, b: SortedDistribution) -> float:
    """Total variation distance = half the L1 distance."""
    return 0.5 * l1_distance(a, b)


def embed_exact(
    g: Graph,
    params: CircuitParams | None = None,
    head: int = 0,
    *,
    ceiling: int | None = None,
) -> SortedDistribution:
    """Exact embedding: simulate, take probabilities, sort, truncate."""
    if params is None:
        params = CircuitParams.canonical()
    dist = output_distribution(run_circuit(g, params, ceiling=ceiling))
    sd = sort_distribution(dist, source_n=g.n)
    return truncate_head(sd, head) if head else sd


def embed_counts(counts: CountsHistogram, head: int = 0) -> SortedDistribution:
    """Embedding of an empirical histogram.

    Only observed outcomes are stored (the implicit zeros of the full
    2^n support are restored by padding during comparison).
    """
    if counts.shots == 0:
        values = np.zeros(0)
    else:
        values = np.asarray(sorted(counts.counts.values(), reverse=True), dtype=float)
        values /= counts.shots
    sd = SortedDistribution(values, head_len=0, source_n=counts.n)
    return truncate_head(sd, head) if head else sd


def head_mass(d: SortedDistribution, k: int) -> float:
    """Probability mass captured by the leading k entries."""
    return float(d.values[:k].sum())


def min_resolvable_probability(shots: int, relative_uncertainty: float = 0.05) -> float:
    """Smallest probability estimable at the given relative Poisson
    uncertainty from `shots` samples: p >= 1 / (u^2 N)."""
    return 1.0 / (relative_uncertainty**2 * shots)
