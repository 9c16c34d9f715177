import numpy as np
import pytest

from quic.circuit import CircuitParams
from quic.embedding import (
    LengthMismatchError,
    embed_counts,
    embed_exact,
    head_mass,
    l1_distance,
    min_resolvable_probability,
    sort_distribution,
    truncate_head,
    tv_distance,
)
from quic.graphs import er_graph, rng_from
from quic.sampling import CountsHistogram, sample_counts


def test_sort_basic():
    sd = sort_distribution([0.1, 0.7, 0.2])
    assert np.allclose(sd.values, [0.7, 0.2, 0.1])
    assert sd.head_len == 0
    uni = sort_distribution([0.25] * 4)
    assert np.allclose(uni.values, 0.25)


def test_sort_removes_labels():
    p = np.array([0.05, 0.3, 0.15, 0.5])
    rng = rng_from(4)
    for _ in range(5):
        q = p[rng.permutation(4)]
        assert np.array_equal(sort_distribution(q).values, sort_distribution(p).values)


def test_sort_validation():
    with pytest.raises(ValueError):
        sort_distribution([0.5, -0.1, 0.6])
    with pytest.raises(ValueError):
        sort_distribution([0.5, 0.4])  # sums to 0.9


def test_truncate_pads_to_k():
    sd = sort_distribution(np.full(8, 0.125))
    t = truncate_head(sd, 100)
    assert t.values.size == 100
    assert np.count_nonzero(t.values) == 8
    assert truncate_head(sd, 8).values.size == 8
    with pytest.raises(ValueError):
        truncate_head(sd, 0)


def test_l1_examples():
    a = sort_distribution([0.5, 0.5, 0.0, 0.0])
    assert l1_distance(a, a) == 0.0
    # Point masses on different outcomes collapse to the same sorted vector.
    p1 = np.zeros(4); p1[1] = 1.0
    p2 = np.zeros(4); p2[3] = 1.0
    assert l1_distance(sort_distribution(p1), sort_distribution(p2)) == 0.0
    b = sort_distribution([1.0, 0.0, 0.0, 0.0])
    assert l1_distance(a, b) == pytest.approx(1.0)
    assert tv_distance(a, b) == pytest.approx(0.5)


def test_l1_length_rules():
    a = truncate_head(sort_distribution([0.6, 0.4]), 10)
    b = sort_distribution([0.25] * 4)
    with pytest.raises(LengthMismatchError):
        l1_distance(a, b)  # truncated vs untruncated
    # Untruncated embeddings of different stored lengths zero-pad.
    c = sort_distribution([0.5, 0.5])
    assert l1_distance(b, c) == pytest.approx(1.0)


def test_permutation_invariance_exact():
    rng = rng_from(6)
    params = CircuitParams.canonical()
    for _ in range(20):
        n = int(rng.integers(2, 11))
        g = er_graph(n, float(rng.uniform(0.2, 0.8)), rng)
        perm = [int(x) for x in rng.permutation(n)]
        d = l1_distance(embed_exact(g, params), embed_exact(g.relabel(perm), params))
        assert d < 1e-12


def test_embed_counts_matches_sorted_frequencies():
    h = CountsHistogram(2, {0: 2, 3: 5, 1: 1}, 8)
    e = embed_counts(h)
    assert np.allclose(e.values, [5 / 8, 2 / 8, 1 / 8])
    e100 = embed_counts(h, head=100)
    assert e100.values.size == 100 and e100.values.sum() == pytest.approx(1.0)


def test_sampled_triangle_inequality():
    # Metric sanity on sampled embeddings: the sampled pair distance is
    # within the sum of each sample's distance to its exact embedding.
    params = CircuitParams.canonical()
    ga, gb = er_graph(8, 0.4, 1), er_graph(8, 0.4, 2)
    ea, eb = embed_exact(ga, params), embed_exact(gb, params)
    rng = rng_from(3)
    from quic.circuit import output_distribution, run_circuit

    pa = output_distribution(run_circuit(ga, params))
    pb = output_distribution(run_circuit(gb, params))
    for _ in range(5):
        sa = embed_counts(sample_counts(pa, 4096, rng))
        sb = embed_counts(sample_counts(pb, 4096, rng))
        lhs = abs(l1_distance(sa, sb) - l1_distance(ea, eb))
        rhs = l1_distance(sa, ea) + l1_distance(sb, eb)
        assert lhs <= rhs + 1e-12


def test_head_truncation_never_exceeds_full_distance():
    params = CircuitParams.canonical()
    ga, gb = er_graph(9, 0.4, 5), er_graph(9, 0.4, 6)
    ea, eb = embed_exact(ga, params), embed_exact(gb, params)
    full = l1_distance(ea, eb)
    for k in (10, 50, 100, 400):
        assert l1_distance(truncate_head(ea, k), truncate_head(eb, k)) <= full + 1e-12


@pytest.mark.parametrize("seed", [2, 3, 6])
def test_head_mass_for_seeded_instances(seed):
    # Head concentration is instance-specific; these seeded graphs sit in
    # the broad band the representative case falls in.
    d = embed_exact(er_graph(14, 0.3, seed), CircuitParams.canonical())
    assert 0.3 < head_mass(d, 100) < 0.7


def test_min_resolvable_probability():
    assert min_resolvable_probability(4096) == pytest.approx(1.0 / (0.0025 * 4096))
    assert min_resolvable_probability(400, 0.1) == pytest.approx(0.25)
