#!/usr/bin/env python3
"""Build LMG quasispin parity blocks and encode them as Pauli strings.

The N-particle LMG Hamiltonian in the maximum-quasispin basis splits into
two parity blocks; for odd N both have dimension (N+1)/2, a power of two
for N = 3 and N = 7, so each block maps onto 1 or 2 qubits.
"""

import numpy as np

from lmgvqe import ModelParams, build_blocks, decompose, multiply, square_block

np.set_printoptions(precision=6, suppress=True)

for n in (3, 7):
    params = ModelParams(n_particles=n, eps=1.0, v=0.5, w=0.0)
    block_a, block_b = build_blocks(params)
    print(f"=== N={n}, v/eps=0.5, w=0 ===")
    print(f"block A spans m = {block_a.m_values}, block B spans m = {block_b.m_values}")
    print("block A:")
    print(block_a.matrix)

    h = decompose(block_a.matrix)
    print("Pauli form of H:")
    print(h.to_text())

    h2 = decompose(square_block(block_a))
    print("Pauli form of H^2 (needed for the variance objective):")
    print(h2.to_text())

    # the symbolic Pauli product reproduces the dense-matrix square
    symbolic = multiply(h, h)
    worst = max(
        abs(symbolic.coefficient(s) - c) for c, s in h2.terms
    )
    print(f"symbolic square vs dense square: max coefficient deviation {worst:.2e}")
    print()

# parity mirror: block B spectra are the negated block A spectra (odd N)
for n in (3, 5, 7, 9):
    a, b = build_blocks(ModelParams(n, v=0.5))
    ev_a = np.linalg.eigvalsh(a.matrix)
    ev_b = np.linalg.eigvalsh(b.matrix)
    print(f"N={n}: eigs(A) = {np.round(ev_a, 4)}  eigs(B) = {np.round(ev_b, 4)}")
