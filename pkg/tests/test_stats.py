import math

import numpy as np
import pytest

from quic.circuit import CircuitParams, output_distribution, run_circuit
from quic.graphs import complete_graph, er_graph, rng_from
from quic.sampling import CountsHistogram, sample_counts
from quic.stats import (
    InsufficientShotsError,
    null_percentile_fresh,
    null_percentile_threshold,
    raw_l1_counts,
    separation_test,
)

PARAMS = CircuitParams.canonical()


def _counts(g, shots, seed):
    return sample_counts(output_distribution(run_circuit(g, PARAMS)), shots, seed)


def test_same_histogram_z_near_zero():
    h = _counts(er_graph(8, 0.5, 1), 2**14, 0)
    zs = [
        separation_test(h, h, subsample_size=1024, repeats=64, seed=s).z
        for s in range(6)
    ]
    assert all(abs(z) < 3 for z in zs)
    assert np.median(np.abs(zs)) < 1.0


def test_isomorphic_pair_rarely_flags():
    g = complete_graph(3)
    relabeled = g.relabel([2, 0, 1])
    flags = 0
    for seed in range(20):
        a = _counts(g, 2**14, seed)
        b = _counts(relabeled, 2**14, 100 + seed)
        rep = separation_test(a, b, subsample_size=1024, repeats=64, seed=200 + seed)
        flags += abs(rep.z) >= 3
    assert flags <= 1  # |z| < 3 in >= 95% of seeds


def test_separated_pair_passes():
    a = _counts(er_graph(12, 0.35, 11), 2**15, 0)
    b = _counts(er_graph(12, 0.35, 12), 2**15, 1)
    rep = separation_test(a, b, seed=2)
    assert rep.passed and rep.z > 3
    assert rep.mu_signal > rep.mu_null
    assert len(rep.null_l1) == len(rep.signal_l1) == 64
    assert rep.config["subsample_size"] == 4096


def test_z_invariant_under_outcome_relabeling():
    g = er_graph(6, 0.5, 3)
    a = _counts(g, 2**13, 4)
    b = _counts(er_graph(6, 0.5, 5), 2**13, 6)
    # Relabel outcomes of a by a qubit permutation (bit shuffle).
    perm = [2, 0, 1, 5, 4, 3]
    remap = {}
    for k, c in a.counts.items():
        y = 0
        for i in range(6):
            if k >> i & 1:
                y |= 1 << perm[i]
        remap[y] = c
    a_rel = CountsHistogram(6, remap, a.shots)
    r1 = separation_test(a, b, subsample_size=1024, repeats=32, seed=7)
    r2 = separation_test(a_rel, b, subsample_size=1024, repeats=32, seed=7)
    assert r1.z == r2.z
    assert r1.null_l1 == r2.null_l1 and r1.signal_l1 == r2.signal_l1


def test_monotone_in_synthetic_separation():
    # Fixed null scale, growing mean shift: z must strictly increase.
    rng = rng_from(9)
    base = np.full(64, 0.05) + rng.normal(0, 0.004, 64)
    zs = []
    for shift in (0.0, 0.02, 0.05, 0.1):
        null = np.abs(base)
        signal = null + shift + rng.normal(0, 0.0005, 64)
        mu_n, mu_s = null.mean(), signal.mean()
        pooled = math.sqrt((null.var(ddof=1) + signal.var(ddof=1)) / 2)
        zs.append((mu_s - mu_n) / pooled)
    assert zs == sorted(zs)


def test_degenerate_cases():
    point = CountsHistogram(2, {3: 5000}, 5000)
    rep = separation_test(point, point, subsample_size=1024, repeats=16, seed=0)
    assert rep.degenerate and rep.z == 0.0 and not rep.passed
    # Point masses on different outcomes sort to the same embedding.
    other_point = CountsHistogram(2, {0: 5000}, 5000)
    rep = separation_test(point, other_point, subsample_size=1024, repeats=16, seed=0)
    assert rep.degenerate and rep.z == 0.0
    # Full-histogram subsamples are deterministic: zero variance with a
    # nonzero mean gap yields the signed-infinity sentinel.
    half = CountsHistogram(2, {0: 2500, 1: 2500}, 5000)
    rep = separation_test(point, half, subsample_size=5000, repeats=16, seed=0)
    assert rep.degenerate and rep.z == math.inf and rep.passed


def test_insufficient_shots():
    h = CountsHistogram(2, {0: 100}, 100)
    with pytest.raises(InsufficientShotsError):
        separation_test(h, h, subsample_size=101)
    with pytest.raises(InsufficientShotsError):
        null_percentile_threshold(h, 95.0, subsample_size=101)


def test_raw_l1_counts():
    a = CountsHistogram(2, {0: 3, 1: 1}, 4)
    b = CountsHistogram(2, {0: 1, 2: 3}, 4)
    assert raw_l1_counts(a, b) == pytest.approx(0.5 + 0.25 + 0.75)
    assert raw_l1_counts(a, a) == 0.0


def test_null_percentile_point_mass_is_zero():
    point = CountsHistogram(3, {5: 40000}, 40000)
    assert null_percentile_threshold(point, 95.0, seed=1) == 0.0
    assert null_percentile_fresh(np.eye(8)[5], 95.0, seed=1) == 0.0


def test_null_percentile_validation():
    point = CountsHistogram(3, {5: 40000}, 40000)
    with pytest.raises(ValueError):
        null_percentile_threshold(point, 0.0)
    with pytest.raises(ValueError):
        null_percentile_fresh(np.eye(8)[5], 100.0)


def test_null_percentile_scales_with_support():
    # Spread distributions produce a larger sampling null than peaked ones.
    rng = rng_from(11)
    peaked = np.zeros(64)
    peaked[0] = 0.97
    peaked[1:4] = 0.01
    spread = np.full(64, 1 / 64)
    lo = null_percentile_fresh(peaked, 95.0, sample_size=1024, repeats=32, seed=rng)
    hi = null_percentile_fresh(spread, 95.0, sample_size=1024, repeats=32, seed=rng)
    assert hi > lo > 0.0
