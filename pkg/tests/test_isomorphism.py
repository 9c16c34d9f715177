from quic.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    er_graph,
    named_graph,
    path_graph,
    rng_from,
)
from quic.isomorphism import (
    color_refinement,
    find_isomorphism,
    is_isomorphic,
    nonisomorphic_graphs,
    nonisomorphic_graphs_upto,
    wl_equivalent,
    wl_histogram,
)


def test_relabelled_path_isomorphic():
    g = path_graph(4)
    assert is_isomorphic(g, g.relabel([2, 0, 3, 1]))


def test_c6_vs_two_triangles():
    two_tri = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not is_isomorphic(cycle_graph(6), two_tri)


def test_random_permutations_always_isomorphic():
    rng = rng_from(5)
    for _ in range(25):
        n = int(rng.integers(2, 11))
        g = er_graph(n, float(rng.uniform(0.2, 0.8)), rng)
        perm = [int(x) for x in rng.permutation(n)]
        assert is_isomorphic(g, g.relabel(perm))


def test_find_isomorphism_returns_valid_mapping():
    g = er_graph(9, 0.45, 8)
    h = g.relabel([int(x) for x in rng_from(9).permutation(9)])
    perm = find_isomorphism(g, h)
    assert perm is not None
    assert g.relabel(perm) == h


def test_named_counterparts_nonisomorphic():
    assert not is_isomorphic(named_graph("petersen"), named_graph("prism5"))
    assert not is_isomorphic(named_graph("q3"), named_graph("c8_1_4"))
    assert not is_isomorphic(named_graph("l_k24"), named_graph("c8_1_2"))


def test_same_degree_sequence_not_isomorphic():
    # C6 and 2xC3 share the degree sequence; refinement alone can't split
    # them, the search must.
    two_tri = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert wl_equivalent(cycle_graph(6), two_tri)
    assert find_isomorphism(cycle_graph(6), two_tri) is None


def test_color_refinement_basics():
    colors = color_refinement(path_graph(5))
    # Path ends, their neighbors, and the center refine apart.
    assert colors[0] == colors[4]
    assert colors[1] == colors[3]
    assert len({colors[0], colors[1], colors[2]}) == 3
    assert wl_histogram(path_graph(5)) == wl_histogram(path_graph(5).relabel([4, 2, 0, 1, 3]))


def test_enumeration_counts_match_literature():
    reps = nonisomorphic_graphs_upto(6)
    assert [len(reps[n]) for n in range(1, 7)] == [1, 2, 4, 11, 34, 156]


def test_enumeration_pairwise_distinct():
    graphs = nonisomorphic_graphs(5)
    for i in range(len(graphs)):
        for j in range(i + 1, len(graphs)):
            assert not is_isomorphic(graphs[i], graphs[j])


def test_complete_graph_selfisomorphic():
    assert is_isomorphic(complete_graph(6), complete_graph(6).relabel([5, 4, 3, 2, 1, 0]))
