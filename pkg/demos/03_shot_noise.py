#!/usr/bin/env python3
"""Shot-based estimation: every Pauli term gets its own measured circuit.

With 20,000 shots per term the energy picks up a statistical error of a few
times 1e-3; the sampled variance at a converged state may dip slightly
below zero because <H> and <H^2> come from independent shot batches.
"""

import numpy as np

from lmgvqe import (
    EstimatorConfig,
    ModelParams,
    ansatz_1q,
    build_blocks,
    decompose,
    estimate,
    minimize_variance,
    square_block,
)

block, _ = build_blocks(ModelParams(3, v=0.5))
h, h2 = decompose(block.matrix), decompose(square_block(block))

# single estimate at theta = 0 (the unperturbed ground state |0>)
result = estimate(ansatz_1q(), [0.0], h, h2, shots=20_000, seed=1)
print("at theta=0 with 20k shots per term:")
print(f"  <H>   = {result.energy:+.4f} +/- {result.energy_stderr:.4f}   (exact -1.5)")
print(f"  <H^2> = {result.h_squared:+.4f} +/- {result.h_squared_stderr:.4f}   (exact 3.0)")
print(f"  sigma^2 = {result.variance:+.4f} +/- {result.variance_stderr:.4f} (exact 0.75)")
print("  per-term estimates:")
for string, mean, stderr in result.per_term:
    print(f"    <{string}> = {mean:+.4f} +/- {stderr:.4f}")

# a full sampled minimization; the trace records every evaluation
config = EstimatorConfig(shots=20_000, seed=7)
trace = minimize_variance(h, h2, ansatz_1q(), [2.0], config)
print(f"\nsampled minimization from theta=2.0: converged={trace.converged}"
      f" after {len(trace.iterations)} evaluations")
for record in trace.iterations[:5]:
    print(f"  theta={record.parameters[0]:+.4f}  E={record.energy:+.4f}"
          f"  sigma^2={record.variance:+.4f}")
print("  ...")
print(f"final: E = {trace.final.energy:+.4f} +/- {trace.final.energy_stderr:.4f},"
      f" sigma^2 = {trace.final.variance:+.4f} +/- {trace.final.variance_stderr:.4f}")
print("nearest exact eigenvalue: "
      f"{min((-1.8228757, 0.8228757), key=lambda e: abs(e - trace.final.energy)):+.6f}")

# estimator consistency: sampled means track the exact values within noise
exact_energy = estimate(ansatz_1q(), [0.9], h, h2).energy
deviations = []
for seed in range(50):
    sampled = estimate(ansatz_1q(), [0.9], h, h2, shots=20_000, seed=seed)
    deviations.append((sampled.energy - exact_energy) / sampled.energy_stderr)
print(f"\n50 seeded estimates at theta=0.9: mean pull {np.mean(deviations):+.2f},"
      f" max |pull| {np.max(np.abs(deviations)):.2f} (should be a few sigma at most)")
