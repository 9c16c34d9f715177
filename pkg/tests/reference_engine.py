"""Dense-matrix reference circuit, independent of the production engine.

Every gate is built as an explicit 2^n x 2^n matrix from its textbook
definition (kron products; the ZZ rotation from its exponential form
cos(t/2) I - i sin(t/2) Z_u Z_v) and multiplied onto the state. Slow by
construction; usable up to ~10 qubits. The production engine must agree
with this path to within EXACT_ATOL.
"""
from __future__ import annotations

import numpy as np

from quic.circuit import CircuitParams, encoding_angles
from quic.graphs import Graph

_Z = np.diag([1.0, -1.0]).astype(complex)


def op_on_qubit(U: np.ndarray, q: int, n: int) -> np.ndarray:
    """Single-qubit operator embedded at bit position q."""
    return np.kron(np.kron(np.eye(1 << (n - 1 - q)), U), np.eye(1 << q))


def rx_matrix(angle: float) -> np.ndarray:
    c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
    return np.array([[c, -1j * s], [-1j * s, c]])


def rzz_matrix(u: int, v: int, angle: float, n: int) -> np.ndarray:
    zz = op_on_qubit(_Z, u, n) @ op_on_qubit(_Z, v, n)
    return np.cos(angle / 2.0) * np.eye(1 << n) - 1j * np.sin(angle / 2.0) * zz


def run_reference(g: Graph, params: CircuitParams, edge_order=None) -> np.ndarray:
    """Gate-by-gate dense simulation of the full circuit."""
    n = g.n
    state = np.zeros(1 << n, dtype=complex)
    state[0] = 1.0
    for q, phi in enumerate(encoding_angles(g, params.theta_enc)):
        state = op_on_qubit(rx_matrix(phi), q, n) @ state
    edges = list(g.edges) if edge_order is None else list(edge_order)
    for _ in range(params.reps):
        for u, v in edges:
            state = rzz_matrix(u, v, params.theta_ent, n) @ state
        for q in range(n):
            state = op_on_qubit(rx_matrix(params.theta_mix), q, n) @ state
    return state


def encoder_only_reference(g: Graph, theta_enc: float) -> np.ndarray:
    n = g.n
    state = np.zeros(1 << n, dtype=complex)
    state[0] = 1.0
    for q, phi in enumerate(encoding_angles(g, theta_enc)):
        state = op_on_qubit(rx_matrix(phi), q, n) @ state
    return state
