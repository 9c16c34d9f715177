"""Training-free quantum graph embeddings.

A graph maps to a fixed parameterized circuit (degree-proportional
X-rotations, one ZZ rotation per edge, a uniform mixer, repeated r
times); the sorted output distribution is the embedding. The package
covers graph construction (including gadget-expanded hard pairs), exact
statevector simulation, sorted-distribution embeddings with head
truncation, finite-shot sampling, the null/signal z-score separation
protocol, a parameterized noise channel, and an experiment harness.
"""

from .cfi import CfiError, CfiPair, build_cfi, cfi_size
from .circuit import (
    CircuitParams,
    SizeLimitError,
    Statevector,
    all_cut_values,
    encoder_amplitude,
    encoding_angles,
    gate_sequence,
    marginalize,
    output_distribution,
    run_circuit,
)
from .config import CROSS_ATOL, DEFAULT_QUBIT_CEILING, EXACT_ATOL, Z_THRESHOLD
from .embedding import (
    DEFAULT_HEAD,
    LengthMismatchError,
    SortedDistribution,
    embed_counts,
    embed_exact,
    head_mass,
    l1_distance,
    min_resolvable_probability,
    sort_distribution,
    truncate_head,
    tv_distance,
)
from .graphs import (
    Graph,
    GraphError,
    GraphFamilySpec,
    InconsistentCutOracleError,
    NAMED_GRAPHS,
    RewireExhaustedError,
    as_bitmask,
    ba_graph,
    broom_graph,
    chorded_cycle,
    circulant_graph,
    circular_ladder,
    complete_bipartite_graph,
    complete_graph,
    complete_minus_edge,
    cut_value,
    cycle_graph,
    er_graph,
    generate,
    inscribed_triangle_cycle,
    named_graph,
    pan_graph,
    parse_family_spec,
    path_graph,
    reconstruct_from_cuts,
    rewire_degree_preserving,
    rng_from,
    star_graph,
    twisted_ladder,
)
from .isomorphism import (
    color_refinement,
    find_isomorphism,
    is_isomorphic,
    nonisomorphic_graphs,
    nonisomorphic_graphs_upto,
    wl_equivalent,
    wl_histogram,
)
from .noise import NoiseSpec, NoisyDistributionEstimator, expected_noisy_distribution, run_noisy
from .sampling import CountsHistogram, sample_counts, subsample
from .stats import (
    InsufficientShotsError,
    SeparationReport,
    null_percentile_fresh,
    null_percentile_threshold,
    raw_l1_counts,
    separation_test,
)

__version__ = "0.1.0"
