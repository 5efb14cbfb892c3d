"""Plane waves and the bounded dispersion relation.

The radial plane wave with momentum q is diagonal in the occupation basis
and is a simultaneous eigenstate of the tangential operators: V3 gives the
frequency omega(q) = sin(lam q)/lam, V4 gives cos(lam q)/lam.  Unlike the
commutative line omega = q, the frequency saturates at 1/lam, reached at
q = pi/(2 lam).
"""

import math

from fuzzy_casimir import fock_engine as fe

lam = 0.5
space = fe.build_space(8)
ops = fe.nc_operators(space, lam)

print(f"lam = {lam}: frequencies cap at 1/lam = {1 / lam}")
print(f"{'q':>10} {'omega_nc':>12} {'omega_comm':>12} {'ratio':>8} {'residual':>10}")
q_max = math.pi / lam
for k in range(1, 11):
    q = k * q_max / 10.0
    omega = math.sin(lam * q) / lam
    wave = fe.plane_wave(space, q, lam)
    resid = fe.eigen_residual(ops.V[2], wave, omega)
    print(f"{q:10.4f} {omega:12.6f} {q:12.6f} {omega / q:8.4f} {resid:10.2e}")

peak = math.pi / (2.0 * lam)
wave = fe.plane_wave(space, peak, lam)
print(f"\npeak: q = pi/(2 lam) = {peak:.6f}")
print(f"  omega = {math.sin(lam * peak) / lam}  (1/lam = {1 / lam})")
print(f"  eigenvalue residual = {fe.eigen_residual(ops.V[2], wave, 1 / lam):.2e}")
