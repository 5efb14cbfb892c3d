"""Walk through the operator algebra on the truncated two-mode Fock space.

The three coordinates x_i are Pauli bilinears in two oscillator modes and
close into [x_i, x_j] = 2 i lam eps_ijk x_k.  Truncating the total occupation
at n_max keeps every identity exact on the interior block (states the ladder
operators cannot push past the cutoff), which is what the residuals below
measure.
"""

import numpy as np

from fuzzy_casimir import fock_engine as fe

lam = 1.0
for n_max in (4, 8, 16):
    space = fe.build_space(n_max)
    print(f"n_max = {n_max:2d}  dim = {space.dim:4d}")
    print(f"  ladder commutators   [a, adag] - 1: {fe.ladder_commutation_residual(space):.3e}")
    print(f"  coordinate algebra   [x_i, x_j]:    {fe.check_commutators(space, lam):.3e}")
    print(f"  self-adjointness     x_i - x_i^+:   {fe.self_adjoint_residual(space, lam):.3e}")

# The four tangential operators on wave operators satisfy
# sum_i V_i^2 + V4^2 = 1/lam^2 on number-conserving states.
space = fe.build_space(8)
worst = 0.0
for seed in range(5):
    psi = fe.random_waveop(space, lam, seed)
    worst = max(worst, fe.check_cutoff_identity(psi))
print(f"\ncutoff identity on random Hermitian states: {worst:.3e}")

# The physical norm weights each row of the wave operator by the sphere
# radius; the vacuum projector has norm 4 pi lam^3.
vac = np.zeros((space.dim, space.dim), dtype=complex)
vac[0, 0] = 1.0
norm = fe.trace_norm(fe.WaveOp(space=space, lam=lam, psi=vac))
print(f"trace norm of the vacuum projector: {norm:.15f}  (4 pi = {4 * np.pi:.15f})")
