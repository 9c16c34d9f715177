"""Exact statevector engine for the degree/edge-encoded circuit.

The circuit on an n-vertex graph uses one qubit per vertex: an encoding
layer of per-qubit X-rotations proportional to normalized vertex degree,
then `reps` rounds of (edge entangler, uniform X-rotation mixer).

Conventions, used consistently by sampling, marginalization and
serialization:

* qubit i sits at bit position i of the state index, so basis state
  index x has qubit 0 as the least significant bit and bitstrings render
  with qubit 0 as the rightmost character;
* R_X(phi) = [[cos(phi/2), -i sin(phi/2)], [-i sin(phi/2), cos(phi/2)]];
* the two-qubit ZZ rotation is diagonal, contributing exp(-i theta/2) on
  equal bit pairs and exp(+i theta/2) on unequal pairs. Over all edges
  at once the layer multiplies amplitude x by
  exp(i theta cut(x)) * exp(-i theta |E|/2), where cut(x) counts the
  edges crossing the bipartition x; the constant prefactor is kept so
  intermediate states match the closed forms exactly (it cancels in all
  probabilities).

The entangler is applied as one diagonal pass over a precomputed cut
table, which is what makes r repetitions cheap; a gate-by-gate route
through the same conventions lives in the test suite as a cross-check.

Everything here is a pure function of its inputs with no shared mutable
state, so callers may run many circuits concurrently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from .config import DEFAULT_QUBIT_CEILING
from .graphs import Graph, as_bitmask

__all__ = [
    "CircuitParams",
    "Statevector",
    "SizeLimitError",
    "encoding_angles",
    "all_cut_values",
    "run_circuit",
    "output_distribution",
    "marginalize",
    "encoder_amplitude",
    "gate_sequence",
    "apply_rx",
    "apply_rzz",
    "apply_pauli",
]


class SizeLimitError(ValueError):
    """Requested statevector exceeds the configured qubit ceiling."""


@dataclass(frozen=True)
class CircuitParams:
    """The four fixed circuit parameters."""

    theta_enc: float
    theta_ent: float
    theta_mix: float
    reps: int = 1

    def __post_init__(self):
        for name in ("theta_enc", "theta_ent", "theta_mix"):
            val = getattr(self, name)
            if not math.isfinite(val):
                raise ValueError(f"{name} must be finite, got {val!r}")
        if not isinstance(self.reps, int) or self.reps < 1:
            raise ValueError(f"reps must be a positive integer, got {self.reps!r}")

    @classmethod
    def canonical(cls, reps: int = 2) -> "CircuitParams":
        """The selected operating point (2.875, 2.0, 0.1), reps=2."""
        return cls(2.875, 2.0, 0.1, reps)

    def with_reps(self, reps: int) -> "CircuitParams":
        return replace(self, reps=reps)

    def to_dict(self) -> dict:
        return {
            "theta_enc": self.theta_enc,
            "theta_ent": self.theta_ent,
            "theta_mix": self.theta_mix,
            "reps": self.reps,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CircuitParams":
        return cls(d["theta_enc"], d["theta_ent"], d["theta_mix"], int(d["reps"]))


@dataclass
class Statevector:
    """2^n complex amplitudes, index bit i = qubit i."""

    n: int
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def encoding_angles(g: Graph, theta_enc: float) -> np.ndarray:
    """Per-qubit rotation angles theta_enc * deg(i) / max_deg.

    An empty graph (max degree 0) encodes to all-zero angles.
    """
    degs = np.asarray(g.degrees(), dtype=float)
    dmax = degs.max()
    if dmax == 0:
        return np.zeros(g.n)
    return theta_enc * degs / dmax


def _bit_pattern(n: int, q: int) -> np.ndarray:
    """uint8 array of length 2^n holding bit q of each index."""
    block = 1 << q
    return np.tile(np.repeat(np.array([0, 1], dtype=np.uint8), block), 1 << (n - 1 - q))


def all_cut_values(g: Graph) -> np.ndarray:
    """Cut value of every bitstring, as a uint16 array of length 2^n."""
    cuts = np.zeros(1 << g.n, dtype=np.uint16)
    for u, v in g.edges:
        cuts += _bit_pattern(g.n, u) ^ _bit_pattern(g.n, v)
    return cuts


def apply_rx(amps: np.ndarray, n: int, q: int, angle: float) -> np.ndarray:
    """In-place X-rotation of qubit q; returns amps."""
    c = math.cos(angle / 2.0)
    s = math.sin(angle / 2.0)
    view = amps.reshape(-1, 2, 1 << q)
    top = view[:, 0, :] * c + view[:, 1, :] * (-1j * s)
    view[:, 1, :] = view[:, 0, :] * (-1j * s) + view[:, 1, :] * c
    view[:, 0, :] = top
    return amps


def apply_rzz(amps: np.ndarray, n: int, u: int, v: int, angle: float) -> np.ndarray:
    """In-place ZZ-rotation on qubits (u, v); returns amps."""
    table = np.array(
        [np.exp(-0.5j * angle), np.exp(0.5j * angle)], dtype=np.complex128
    )
    amps *= table[_bit_pattern(n, u) ^ _bit_pattern(n, v)]
    return amps


def apply_pauli(amps: np.ndarray, n: int, q: int, which: str) -> np.ndarray:
    """In-place Pauli X/Y/Z on qubit q; returns amps."""
    view = amps.reshape(-1, 2, 1 << q)
    if which == "X":
        top = view[:, 0, :].copy()
        view[:, 0, :] = view[:, 1, :]
        view[:, 1, :] = top
    elif which == "Y":
        top = -1j * view[:, 1, :]
        view[:, 1, :] = 1j * view[:, 0, :]
        view[:, 0, :] = top
    elif which == "Z":
        view[:, 1, :] *= -1.0
    else:
        raise ValueError(f"unknown Pauli {which!r}")
    return amps


def _check_size(n: int, ceiling: int | None) -> None:
    limit = DEFAULT_QUBIT_CEILING if ceiling is None else ceiling
    if n > limit:
        raise SizeLimitError(
            f"{n} qubits exceeds the ceiling of {limit} (2^{limit} amplitudes)"
        )


def run_circuit(g: Graph, params: CircuitParams, *, ceiling: int | None = None) -> Statevector:
    """Exact amplitudes of the full circuit applied to |0...0>."""
    _check_size(g.n, ceiling)
    n = g.n
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    for q, phi in enumerate(encoding_angles(g, params.theta_enc)):
        apply_rx(amps, n, q, phi)
    phase_lookup = None
    cuts = None
    if g.m:
        cuts = all_cut_values(g)
        phase_lookup = np.exp(1j * params.theta_ent * np.arange(g.m + 1)) * np.exp(
            -0.5j * params.theta_ent * g.m
        )
    for _ in range(params.reps):
        if cuts is not None:
            amps *= phase_lookup[cuts]
        for q in range(n):
            apply_rx(amps, n, q, params.theta_mix)
    return Statevector(n, amps)


def output_distribution(sv: Statevector) -> np.ndarray:
    """Measurement probabilities |amp|^2 of a normalized statevector."""
    p = np.abs(sv.amplitudes) ** 2
    total = p.sum()
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"statevector not normalized: sum |a|^2 = {total}")
    return p


def marginalize(p: np.ndarray, keep: Iterable[int]) -> np.ndarray:
    """Marginal distribution over the kept qubits.

    Output bit j corresponds to the j-th smallest kept qubit index; the
    discarded qubits are summed out.
    """
    p = np.asarray(p, dtype=float)
    n = int(p.size).bit_length() - 1
    if 1 << n != p.size:
        raise ValueError("distribution length must be a power of two")
    kept = sorted(set(keep))
    for q in kept:
        if not 0 <= q < n:
            raise ValueError(f"qubit index {q} out of range for n={n}")
    if len(kept) == n:
        return p.copy()
    drop_axes = tuple(n - 1 - q for q in range(n) if q not in kept)
    return p.reshape([2] * n).sum(axis=drop_axes).reshape(-1)


def encoder_amplitude(g: Graph, theta_enc: float, s) -> float:
    """Closed-form |<s| encoding layer |0...0>|.

    The encoded state is a product state, so the magnitude is a product
    of cos(phi_i/2) over zero bits and sin(phi_i/2) over one bits.
    """
    mask = as_bitmask(s, g.n)
    half = encoding_angles(g, theta_enc) / 2.0
    out = 1.0
    for i in range(g.n):
        out *= math.sin(half[i]) if mask >> i & 1 else math.cos(half[i])
    return out


def gate_sequence(g: Graph, params: CircuitParams) -> list[tuple]:
    """Logical gate list in application order.

    Entries are ("rx", qubit, angle) or ("rzz", u, v, angle); the
    entangler expands to one ZZ rotation per edge in sorted edge order
    (the layer commutes, so the order is a bookkeeping choice). Used by
    the trajectory sampler and by gate-by-gate cross-checks.
    """
    gates: list[tuple] = []
    for q, phi in enumerate(encoding_angles(g, params.theta_enc)):
        gates.append(("rx", q, float(phi)))
    for _ in range(params.reps):
        for u, v in g.edges:
            gates.append(("rzz", u, v, params.theta_ent))
        for q in range(g.n):
            gates.append(("rx", q, params.theta_mix))
    return gates
