"""Central numeric configuration shared across the package."""

# Exact-path assertions (same engine, same arithmetic).
EXACT_ATOL = 1e-12

# Cross-path assertions (independent routes to the same quantity).
CROSS_ATOL = 1e-9

# Largest statevector the engine will allocate by default: 2**26 complex
# amplitudes is 1 GiB, the practical desk-scale limit.
DEFAULT_QUBIT_CEILING = 26

# Operational separation threshold for the null/signal z-score.
Z_THRESHOLD = 3.0
