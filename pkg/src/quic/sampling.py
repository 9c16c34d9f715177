"""Finite-shot measurement: multinomial sampling and subsampling.

Counts map outcome index -> count; outcome bitstrings render with qubit
0 as the rightmost character, matching the engine's bit convention.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import rng_from

__all__ = ["CountsHistogram", "sample_counts", "subsample"]


@dataclass
class CountsHistogram:
    """Outcome -> count map with a fixed total number of shots."""

    n: int
    counts: dict[int, int]
    shots: int
    _canonical: tuple | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if any(c < 0 for c in self.counts.values()):
            raise ValueError("negative count")
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not sum to the shot total")
        top = 1 << self.n
        if any(not 0 <= k < top for k in self.counts):
            raise ValueError("outcome index out of range")
        self.counts = {k: c for k, c in self.counts.items() if c > 0}

    def canonical_items(self) -> tuple[np.ndarray, np.ndarray]:
        """Outcomes and counts ordered by (count desc, outcome asc).

        The ordering makes downstream subsample draws depend only on the
        count multiset, so sorted-embedding statistics are exactly
        invariant under relabeling of the outcome bitstrings.
        """
        if self._canonical is None:
            items = sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))
            keys = np.array([k for k, _ in items], dtype=np.int64)
            vals = np.array([c for _, c in items], dtype=np.int64)
            self._canonical = (keys, vals)
        return self._canonical

    def frequency(self, outcome: int) -> float:
        return self.counts.get(outcome, 0) / self.shots if self.shots else 0.0

    def dense(self) -> np.ndarray:
        """Full empirical frequency vector of length 2^n."""
        vec = np.zeros(1 << self.n)
        for k, c in self.counts.items():
            vec[k] = c
        return vec / self.shots if self.shots else vec

    def bitstring(self, outcome: int) -> str:
        return format(outcome, f"0{self.n}b")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "shots": self.shots,
            "counts": {self.bitstring(k): c for k, c in sorted(self.counts.items())},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CountsHistogram":
        counts = {int(bits, 2): int(c) for bits, c in d["counts"].items()}
        return cls(int(d["n"]), counts, int(d["shots"]))


def sample_counts(p, shots: int, seed) -> CountsHistogram:
    """Multinomial draw of `shots` outcomes from a probability vector."""
    arr = np.asarray(p, dtype=float)
    n = int(arr.size).bit_length() - 1
    if 1 << n != arr.size:
        raise ValueError("distribution length must be a power of two")
    total = arr.sum()
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"probability vector sums to {total}, expected 1")
    rng = rng_from(seed)
    vec = rng.multinomial(shots, arr / total)
    idx = np.nonzero(vec)[0]
    return CountsHistogram(n, {int(i): int(vec[i]) for i in idx}, shots)


def subsample(h: CountsHistogram, m: int, seed) -> CountsHistogram:
    """Draw m shots without replacement from a histogram.

    Marginally each outcome's subsampled count is hypergeometric; m equal
    to the shot total returns the histogram unchanged.
    """
    if m > h.shots:
        raise ValueError(f"cannot draw {m} shots from {h.shots}")
    if m == h.shots:
        return CountsHistogram(h.n, dict(h.counts), h.shots)
    if m == 0:
        return CountsHistogram(h.n, {}, 0)
    rng = rng_from(seed)
    keys, colors = h.canonical_items()
    drawn = rng.multivariate_hypergeometric(colors, m)
    idx = np.nonzero(drawn)[0]
    return CountsHistogram(h.n, {int(keys[i]): int(drawn[i]) for i in idx}, m)
