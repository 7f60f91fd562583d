"""Shot-based measurement of Pauli strings with optional noise.

One measurement circuit per Pauli term: the ansatz circuit is followed by a
basis-change rotation on every qubit where the term acts with X or Y, then
all qubits are read out in the computational basis.  Noise is injected
stochastically per shot (a uniformly random non-identity two-qubit Pauli
after each CNOT with probability ``cnot_depolarizing``; independent bit
flips at readout), which reproduces the corresponding Pauli channels exactly
in expectation while keeping memory at one statevector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import (
    Circuit,
    _bound_angle,
    apply_cnot,
    apply_single_qubit,
    apply_x,
    ry_matrix,
)
from .pauli import PAULI_MATRICES, PauliString

__all__ = [
    "NoiseModel",
    "ShotResult",
    "measure_term",
    "expectation_from_counts",
]

# maps the +1 eigenbasis of X (resp. Y) onto the computational basis
_X_BASIS_CHANGE = ry_matrix(-np.pi / 2.0)
_Y_BASIS_CHANGE = np.array([[1, -1j], [-1j, 1]], dtype=complex) / np.sqrt(2.0)  # RX(pi/2)

# the 15 non-identity two-qubit Paulis, as (control label, target label)
_TWO_QUBIT_PAULIS = tuple(
    (a, b) for a in "IXYZ" for b in "IXYZ" if (a, b) != ("I", "I")
)


@dataclass(frozen=True)
class NoiseModel:
    """Readout bit-flip and per-CNOT depolarizing probabilities."""

    readout_p01: float = 0.0  # P(read 1 | true 0)
    readout_p10: float = 0.0  # P(read 0 | true 1)
    cnot_depolarizing: float = 0.0

    def __post_init__(self):
        for name in ("readout_p01", "readout_p10"):
            p = getattr(self, name)
            if not 0.0 <= p < 1.0:
                raise ValueError(f"{name} must lie in [0, 1), got {p}")
        if not 0.0 <= self.cnot_depolarizing < 0.5:
            raise ValueError(f"cnot_depolarizing must lie in [0, 0.5), got {self.cnot_depolarizing}")

    @property
    def has_readout_error(self) -> bool:
        return self.readout_p01 > 0.0 or self.readout_p10 > 0.0

    @property
    def is_noiseless(self) -> bool:
        return not self.has_readout_error and self.cnot_depolarizing == 0.0

    def readout_only(self) -> "NoiseModel":
        return NoiseModel(self.readout_p01, self.readout_p10, 0.0)


NOISELESS = NoiseModel()

# default synthetic noise for demonstration runs; real-device parameters are
# not published, these give 20k-shot error bars of the same order
DEFAULT_SYNTHETIC_NOISE = NoiseModel(readout_p01=0.02, readout_p10=0.02, cnot_depolarizing=0.01)


@dataclass(frozen=True)
class ShotResult:
    """Counts of measured bitstrings; character q of a key is qubit q."""

    counts: dict[str, int]
    shots: int

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError("shots must be positive")
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not sum to shots")

    def frequencies(self) -> dict[str, float]:
        return {b: c / self.shots for b, c in self.counts.items()}


def _rng(seed) -> np.random.Generator:
    # accepts an int or a SeedSequence so callers can derive per-term streams
    return np.random.default_rng(seed)


def _measurement_ops(circuit: Circuit, parameters, term: PauliString):
    """Bound operation list: circuit gates plus basis-change rotations.

    Returns (ops, cnot_positions) where each op is ("u", qubit, 2x2 matrix),
    ("x", qubit) or ("cnot", control, target).
    """
    ops = []
    for gate in circuit.gates:
        if gate.kind == "ry":
            ops.append(("u", gate.target, ry_matrix(_bound_angle(gate, parameters))))
        elif gate.kind == "x":
            ops.append(("x", gate.target))
        else:
            ops.append(("cnot", gate.control, gate.target))
    for q, label in enumerate(term.labels):
        if label == "X":
            ops.append(("u", q, _X_BASIS_CHANGE))
        elif label == "Y":
            ops.append(("u", q, _Y_BASIS_CHANGE))
    cnot_positions = tuple(i for i, op in enumerate(ops) if op[0] == "cnot")
    return ops, cnot_positions


def _evolve(ops, num_qubits: int, errors: dict[int, int] | None = None) -> np.ndarray:
    """Run the op list on |0...0>, inserting Pauli errors after chosen CNOTs.

    ``errors`` maps op index -> index into _TWO_QUBIT_PAULIS.
    """
    amps = np.zeros(2**num_qubits, dtype=complex)
    amps[0] = 1.0
    for i, op in enumerate(ops):
        if op[0] == "u":
            amps = apply_single_qubit(amps, num_qubits, op[1], op[2])
        elif op[0] == "x":
            amps = apply_x(amps, num_qubits, op[1])
        else:
            amps = apply_cnot(amps, num_qubits, op[1], op[2])
            if errors and i in errors:
                label_c, label_t = _TWO_QUBIT_PAULIS[errors[i]]
                if label_c != "I":
                    amps = apply_single_qubit(amps, num_qubits, op[1], PAULI_MATRICES[label_c])
                if label_t != "I":
                    amps = apply_single_qubit(amps, num_qubits, op[2], PAULI_MATRICES[label_t])
    return amps


def _probabilities(amps: np.ndarray) -> np.ndarray:
    p = np.abs(amps) ** 2
    return p / p.sum()


def _readout_column(true_index: int, num_qubits: int, noise: NoiseModel) -> np.ndarray:
    """Distribution over read bitstrings given the true bitstring."""
    p01, p10 = noise.readout_p01, noise.readout_p10
    column = np.ones(1)
    for q in range(num_qubits):
        bit = (true_index >> (num_qubits - 1 - q)) & 1
        per_bit = np.array([p10, 1.0 - p10]) if bit else np.array([1.0 - p01, p01])
        column = np.kron(column, per_bit)
    return column


def _apply_readout_noise(ideal: np.ndarray, num_qubits: int, noise: NoiseModel, rng) -> np.ndarray:
    read = np.zeros_like(ideal)
    for b in range(len(ideal)):
        if ideal[b]:
            read += rng.multinomial(ideal[b], _readout_column(b, num_qubits, noise))
    return read


def measure_term(
    circuit: Circuit,
    parameters,
    term: PauliString,
    shots: int,
    noise: NoiseModel = NOISELESS,
    seed=0,
) -> ShotResult:
    """Sample ``shots`` bitstrings from the measurement circuit of one term.

    Deterministic for a fixed seed.  When CNOT noise is active, shots are
    stratified by their (sparse) error pattern so only the affected shots
    need a separate statevector evolution.
    """
    if term.num_qubits != circuit.num_qubits:
        raise ValueError(
            f"term acts on {term.num_qubits} qubits but circuit has {circuit.num_qubits}"
        )
    if shots < 1:
        raise ValueError("shots must be positive")
    rng = _rng(seed)
    n = circuit.num_qubits
    ops, cnot_positions = _measurement_ops(circuit, tuple(parameters), term)

    if noise.cnot_depolarizing > 0.0 and cnot_positions:
        k = len(cnot_positions)
        occurred = rng.random((shots, k)) < noise.cnot_depolarizing
        kinds = rng.integers(0, len(_TWO_QUBIT_PAULIS), size=(shots, k))
        codes = np.where(occurred, kinds + 1, 0).astype(np.int64)
        keys = codes @ (16 ** np.arange(k, dtype=np.int64))
        ideal = np.zeros(2**n, dtype=np.int64)
        unique_keys, group_sizes = np.unique(keys, return_counts=True)
        for key, size in zip(unique_keys, group_sizes):
            errors = {}
            for i, pos in enumerate(cnot_positions):
                code = (int(key) >> (4 * i)) & 0xF
                if code:
                    errors[pos] = code - 1
            probs = _probabilities(_evolve(ops, n, errors))
            ideal += rng.multinomial(size, probs)
    else:
        probs = _probabilities(_evolve(ops, n))
        ideal = rng.multinomial(shots, probs)

    read = _apply_readout_noise(ideal, n, noise, rng) if noise.has_readout_error else ideal
    counts = {format(b, f"0{n}b"): int(c) for b, c in enumerate(read) if c}
    return ShotResult(counts=counts, shots=shots)


def _parity_mean(weights: dict[str, float], term: PauliString) -> float:
    """Eigenvalue-weighted average over bitstrings: +1 for even parity on the
    non-identity positions of the term, -1 for odd."""
    active = [q for q, l in enumerate(term.labels) if l != "I"]
    total = 0.0
    for bits, w in weights.items():
        parity = sum(bits[q] == "1" for q in active) & 1
        total += -w if parity else w
    return total


def expectation_from_counts(result: ShotResult, term: PauliString) -> tuple[float, float]:
    """Estimate <term> and its binomial standard error from shot counts."""
    if term.is_identity:
        return 1.0, 0.0
    mean = _parity_mean(result.frequencies(), term)
    stderr = float(np.sqrt(max(1.0 - mean * mean, 0.0) / result.shots))
    return float(mean), stderr
