"""Variance minimization, parameter sweeps and multistart spectrum search.

Because the variance objective is zero exactly on eigenstates, a local
derivative-free search started from random parameters lands on *some*
eigenstate; enough restarts cover the full block spectrum.  The optimizer is
Nelder-Mead with deterministic shrink restarts: when the simplex collapses
above the convergence threshold and evaluation budget remains, the search
resumes from the best point with a smaller initial simplex.

Every candidate eigenvalue is screened with an accidental-zero check: the
residual ||H psi - <H> psi|| of the noiseless state, which catches variance
minima manufactured by sampling noise.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy import optimize as _sciopt

from .analysis import eigensolve
from .circuits import Circuit, run
from .estimator import EstimationResult, estimate
from .mitigation import Mitigation
from .pauli import PauliSum, _dense, reconstruct
from .simulator import NOISELESS, NoiseModel

__all__ = [
    "EstimatorConfig",
    "IterationRecord",
    "RunTrace",
    "SpectrumCluster",
    "SpectrumReport",
    "minimize_variance",
    "sweep",
    "discover_spectrum",
    "accidental_zero_check",
]

EXACT_VARIANCE_TOL = 1e-8
SAMPLED_VARIANCE_FLOOR = 0.01
CLUSTER_RADIUS_FLOOR = 1e-3
RESIDUAL_TOL = 1e-6
_MAX_RESTARTS = 30


@dataclass(frozen=True)
class EstimatorConfig:
    """How each objective evaluation is estimated."""

    shots: int | None = None
    noise: NoiseModel = NOISELESS
    mitigation: Mitigation = Mitigation()
    seed: int = 0

    def __post_init__(self):
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    @property
    def exact(self) -> bool:
        return self.shots is None


@dataclass(frozen=True)
class IterationRecord:
    parameters: tuple[float, ...]
    energy: float
    variance: float
    energy_stderr: float
    variance_stderr: float


@dataclass
class RunTrace:
    """Full evaluation history of one variance minimization."""

    iterations: list[IterationRecord]
    converged: bool
    final: EstimationResult
    final_parameters: tuple[float, ...]
    seed: int


@dataclass
class SpectrumCluster:
    """A group of converged runs agreeing on one eigenvalue."""

    energy: float
    stderr: float
    members: tuple[int, ...]
    parameters: tuple[float, ...]
    state: np.ndarray
    variance: float
    residual: float


@dataclass
class SpectrumReport:
    clusters: list[SpectrumCluster]
    n_starts: int
    coverage: float
    oracle_eigenvalues: np.ndarray
    traces: list[RunTrace]


class _Converged(Exception):
    pass


class _BudgetExhausted(Exception):
    pass


def _threshold(config: EstimatorConfig, result: EstimationResult) -> float:
    if config.exact:
        return EXACT_VARIANCE_TOL
    return max(2.0 * result.variance_stderr, SAMPLED_VARIANCE_FLOOR)


def _initial_simplex(x0: np.ndarray, step: float) -> np.ndarray:
    simplex = np.tile(x0, (len(x0) + 1, 1))
    for i in range(len(x0)):
        simplex[i + 1, i] += step
    return simplex


def minimize_variance(
    h: PauliSum,
    h2: PauliSum,
    circuit: Circuit,
    initial,
    config: EstimatorConfig = EstimatorConfig(),
    budget: int | None = None,
) -> RunTrace:
    """Minimize sigma^2 over the ansatz parameters from one starting point.

    Stops as soon as an evaluation satisfies |sigma^2| < threshold (1e-8 in
    exact mode, max(2 * stderr, 0.01) in sampled mode), or when the budget of
    objective evaluations is exhausted; the latter returns a trace with
    ``converged=False`` rather than raising.
    """
    x0 = np.atleast_1d(np.asarray(initial, dtype=float))
    if x0.shape != (circuit.num_parameters,):
        raise ValueError(
            f"expected {circuit.num_parameters} initial parameters, got {x0.shape}"
        )
    if budget is None:
        budget = 600 if config.exact else 200
    if budget < 1:
        raise ValueError("budget must be at least 1")

    records: list[IterationRecord] = []
    best: tuple[float, EstimationResult, tuple[float, ...]] | None = None
    crossing: tuple[EstimationResult, tuple[float, ...]] | None = None

    def objective(x: np.ndarray) -> float:
        nonlocal best, crossing
        if len(records) >= budget:
            raise _BudgetExhausted
        params = tuple(float(v) for v in x)
        seed = 0 if config.exact else np.random.SeedSequence((config.seed, len(records)))
        result = estimate(
            circuit, params, h, h2,
            shots=config.shots, noise=config.noise, mitigation=config.mitigation,
            seed=seed,
        )
        records.append(IterationRecord(
            params, result.energy, result.variance,
            result.energy_stderr, result.variance_stderr,
        ))
        if best is None or abs(result.variance) < best[0]:
            best = (abs(result.variance), result, params)
        if abs(result.variance) < _threshold(config, result):
            crossing = (result, params)
            raise _Converged
        return result.variance

    converged = False
    if circuit.num_parameters == 0:
        try:
            objective(x0)
        except _Converged:
            converged = True
    else:
        # the landscape lives on angles, so every round gets an explicit
        # simplex with an absolute step; scipy's default simplex scales with
        # |x0| and can start far below the shot-noise floor
        options = dict(maxiter=10**9, maxfev=10**9)
        if config.exact:
            options.update(xatol=1e-9, fatol=1e-13)
        else:
            # a noisy objective never satisfies fatol, so cap each round and
            # let the restart loop resume from the best point seen
            options.update(xatol=1e-3, fatol=1e-3)
            options["maxfev"] = max(40 * circuit.num_parameters, 60)
        x_start = x0
        restart = 0
        while True:
            step = max(0.5 * 0.2**restart, 1e-6)
            opts = dict(options, initial_simplex=_initial_simplex(x_start, step))
            seen = len(records)
            try:
                _sciopt.minimize(objective, x_start, method="Nelder-Mead", options=opts)
            except _Converged:
                converged = True
                break
            except _BudgetExhausted:
                break
            if len(records) >= budget or len(records) == seen:
                break
            restart += 1
            if restart > _MAX_RESTARTS:
                break
            x_start = np.asarray(best[2], dtype=float)

    final_result, final_params = crossing if converged else (best[1], best[2])
    return RunTrace(
        iterations=records,
        converged=converged,
        final=final_result,
        final_parameters=final_params,
        seed=int(config.seed),
    )


@dataclass(frozen=True)
class SweepPoint:
    angle: float
    energy: float
    variance: float
    energy_stderr: float
    variance_stderr: float


def sweep(
    h: PauliSum,
    h2: PauliSum,
    circuit: Circuit,
    parameter_index: int = 0,
    grid=None,
    config: EstimatorConfig = EstimatorConfig(),
    fixed_parameters=None,
) -> list[SweepPoint]:
    """Evaluate energy and variance over a grid of one parameter.

    Defaults to 50 uniform angles over [-pi, pi].  Circuits with more than
    one parameter need ``fixed_parameters`` supplying the other slots.
    """
    k = circuit.num_parameters
    if not 0 <= parameter_index < max(k, 1):
        raise ValueError(f"parameter_index {parameter_index} out of range for {k} slots")
    if grid is None:
        grid = np.linspace(-np.pi, np.pi, 50)
    grid = np.sort(np.asarray(grid, dtype=float))
    if grid.size == 0:
        raise ValueError("sweep grid is empty")
    if fixed_parameters is None:
        if k > 1:
            raise ValueError("multi-parameter circuit: fixed_parameters is required")
        base = np.zeros(k)
    else:
        base = np.asarray(fixed_parameters, dtype=float)
        if base.shape != (k,):
            raise ValueError(f"fixed_parameters must supply all {k} slots")
    points = []
    for i, angle in enumerate(grid):
        params = base.copy()
        params[parameter_index] = angle
        seed = 0 if config.exact else np.random.SeedSequence((config.seed, i))
        result = estimate(
            circuit, params, h, h2,
            shots=config.shots, noise=config.noise, mitigation=config.mitigation,
            seed=seed,
        )
        points.append(SweepPoint(
            float(angle), result.energy, result.variance,
            result.energy_stderr, result.variance_stderr,
        ))
    return points


def accidental_zero_check(
    circuit: Circuit,
    parameters,
    h: PauliSum,
    tolerance: float = RESIDUAL_TOL,
) -> tuple[bool, float]:
    """Screen a candidate eigenstate via the eigen-residual of its noiseless
    state: ||H psi - <H> psi||, which equals sqrt(exact variance).

    A small sampled variance produced by shot noise alone fails this check
    because the underlying state is not close to any eigenvector.
    """
    state = run(circuit, parameters).amplitudes
    matrix = _dense(h)
    energy = float(np.vdot(state, matrix @ state).real)
    residual = float(np.linalg.norm(matrix @ state - energy * state))
    return residual < tolerance, residual


def discover_spectrum(
    h: PauliSum,
    h2: PauliSum,
    circuit: Circuit,
    n_starts: int,
    config: EstimatorConfig = EstimatorConfig(),
    master_seed: int = 0,
    budget: int | None = None,
) -> SpectrumReport:
    """Run ``n_starts`` seeded minimizations and cluster the found energies.

    Starting parameters are uniform over [-pi, pi]^k.  Converged runs are
    grouped with radius max(5 * stderr, 1e-3); each cluster representative
    must pass the accidental-zero check before the cluster is reported.
    Coverage is the fraction of exact eigenvalues matched by some cluster.
    """
    if n_starts < 1:
        raise ValueError("n_starts must be at least 1")
    k = circuit.num_parameters
    traces: list[RunTrace] = []
    for i in range(n_starts):
        child = np.random.SeedSequence((master_seed, i))
        initial = np.random.default_rng(child).uniform(-np.pi, np.pi, size=k)
        run_seed = int(child.generate_state(1)[0])
        run_config = replace(config, seed=run_seed)
        traces.append(minimize_variance(h, h2, circuit, initial, run_config, budget=budget))

    converged = sorted(
        ((t.final.energy, i) for i, t in enumerate(traces) if t.converged),
        key=lambda pair: (pair[0], pair[1]),
    )
    groups: list[list[int]] = []
    for energy, i in converged:
        placed = False
        if groups:
            members = groups[-1]
            center = np.mean([traces[m].final.energy for m in members])
            spread = max(
                [traces[m].final.energy_stderr for m in members]
                + [traces[i].final.energy_stderr]
            )
            if abs(energy - center) <= max(5.0 * spread, CLUSTER_RADIUS_FLOOR):
                members.append(i)
                placed = True
        if not placed:
            groups.append([i])

    clusters: list[SpectrumCluster] = []
    for members in groups:
        energies = np.array([traces[m].final.energy for m in members])
        stderrs = np.array([traces[m].final.energy_stderr for m in members])
        center = float(energies.mean())
        center_stderr = float(np.sqrt(np.sum(stderrs**2)) / len(members))
        rep = min(members, key=lambda m: abs(traces[m].final.variance))
        rep_trace = traces[rep]
        # a state converged to |variance| < T sits within sqrt(T) of an
        # eigenvector (residual^2 = exact variance), so the screen must be
        # calibrated to sqrt(threshold); stderr alone underestimates it
        if config.exact:
            threshold = EXACT_VARIANCE_TOL
            combined_stderr = 0.0
        else:
            threshold = max(
                2.0 * rep_trace.final.variance_stderr, SAMPLED_VARIANCE_FLOOR
            )
            combined_stderr = float(np.hypot(
                rep_trace.final.energy_stderr, rep_trace.final.variance_stderr
            ))
        tol = max(3.0 * np.sqrt(threshold), 10.0 * combined_stderr)
        passed, residual = accidental_zero_check(
            circuit, rep_trace.final_parameters, h, tolerance=tol
        )
        if not passed:
            continue
        state = run(circuit, rep_trace.final_parameters).amplitudes
        clusters.append(SpectrumCluster(
            energy=center,
            stderr=center_stderr,
            members=tuple(members),
            parameters=rep_trace.final_parameters,
            state=state,
            variance=rep_trace.final.variance,
            residual=residual,
        ))

    oracle = eigensolve(reconstruct(h))
    matched = 0
    for value in oracle.eigenvalues:
        for cluster in clusters:
            if abs(cluster.energy - value) <= max(5.0 * cluster.stderr, CLUSTER_RADIUS_FLOOR):
                matched += 1
                break
    coverage = matched / len(oracle.eigenvalues)
    return SpectrumReport(
        clusters=clusters,
        n_starts=n_starts,
        coverage=coverage,
        oracle_eigenvalues=oracle.eigenvalues,
        traces=traces,
    )
