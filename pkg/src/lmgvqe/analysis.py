"""Exact-diagonalization oracle, state overlaps and report annotations.

The eigensolver is a cyclic Jacobi sweep: dimension-generic, numerically
robust for the small dense symmetric matrices produced here, and easy to
verify against the 2x2 closed form.  It provides the reference spectrum and
eigenvectors that every variational result is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import Statevector

__all__ = [
    "EigenDecomposition",
    "eigensolve",
    "fidelity",
    "overlap_table",
    "HARDWARE_REFERENCE",
]

SYMMETRY_TOL = 1e-10
_OFF_DIAGONAL_TARGET = 1e-14
_MAX_SWEEPS = 100


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with orthonormal eigenvector columns.

    Each eigenvector is sign-fixed so its first non-zero component is
    positive, making downstream reports reproducible byte for byte.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    if apq == 0.0:
        return
    tau = (a[q, q] - a[p, p]) / (2.0 * apq)
    if tau >= 0.0:
        t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    col_p, col_q = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p, row_q = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = a[q, p] = 0.0
    col_p, col_q = v[:, p].copy(), v[:, q].copy()
    v[:, p] = c * col_p - s * col_q
    v[:, q] = s * col_p + c * col_q


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def eigensolve(matrix: np.ndarray) -> EigenDecomposition:
    """Diagonalize a dense real symmetric matrix by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius norm drops below 1e-14
    (relative to the matrix scale).  Raises ValueError on non-symmetric
    input.
    """
    a = np.asarray(matrix)
    if np.iscomplexobj(a):
        if a.size and np.abs(a.imag).max() > SYMMETRY_TOL:
            raise ValueError("matrix has a non-negligible imaginary part")
        a = a.real
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if np.abs(a - a.T).max() > SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric")
    a = (a + a.T) / 2.0
    n = a.shape[0]
    v = np.eye(n)
    target = _OFF_DIAGONAL_TARGET * max(1.0, float(np.linalg.norm(a)))
    for _ in range(_MAX_SWEEPS):
        if _off_norm(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
    else:
        raise RuntimeError("Jacobi sweep did not converge")

    order = np.argsort(np.diag(a), kind="stable")
    eigenvalues = np.diag(a)[order]
    eigenvectors = v[:, order]
    for k in range(n):
        column = eigenvectors[:, k]
        nonzero = np.flatnonzero(np.abs(column) > 1e-12)
        if len(nonzero) and column[nonzero[0]] < 0:
            eigenvectors[:, k] = -column
    return EigenDecomposition(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def _as_vector(state) -> np.ndarray:
    if isinstance(state, Statevector):
        return state.amplitudes
    return np.asarray(state)


def fidelity(psi, phi) -> float:
    """Squared overlap |<psi|phi>|^2 of two normalized states."""
    a, b = _as_vector(psi), _as_vector(phi)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    for vec in (a, b):
        norm = float(np.sum(np.abs(vec) ** 2))
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"state not normalized: sum |a|^2 = {norm}")
    return float(np.abs(np.vdot(a, b)) ** 2)


def overlap_table(report, decomposition: EigenDecomposition) -> np.ndarray:
    """Fidelity matrix: rows are discovered states, columns oracle
    eigenvectors (ascending eigenvalue order)."""
    rows = []
    for cluster in report.clusters:
        rows.append([
            fidelity(cluster.state, decomposition.eigenvectors[:, k])
            for k in range(decomposition.dim)
        ])
    return np.array(rows).reshape(len(rows), decomposition.dim)


# Published IBM-hardware measurements (20k shots, readout mitigation; the
# two-qubit runs also used CNOT-pair extrapolation).  Rendered in reports as
# annotations only; synthetic-noise runs are not expected to reproduce them.
# Keys: (n_particles, block); rows: (exact, variance, value, uncertainty)
# by ascending exact eigenvalue.
HARDWARE_REFERENCE = {
    (3, "A"): (
        (-1.823, 0.073, -1.788, 0.062),
        (0.823, 0.001, 0.826, 0.064),
    ),
    (3, "B"): (
        (-0.823, -0.004, -0.816, 0.063),
        (1.823, 0.001, 1.810, 0.063),
    ),
    (7, "A"): (
        (-6.208, 0.139, -6.067, 0.901),
        (-2.944, 0.016, -3.151, 0.503),
        (1.208, 0.010, 1.184, 0.484),
        (5.944, 0.114, 5.902, 0.660),
    ),
}
