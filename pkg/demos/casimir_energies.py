"""Vacuum energy of a segment: finite sum, closed form, expansion, forces.

The mode frequencies sin(n pi lam / L)/lam are bounded, so the vacuum energy
of a segment is a plain finite sum.  When L/(2 lam) is an integer it equals
(1 + cot(pi lam/(2L)))/(2 lam) exactly; expanding in lam recovers the
commutative Casimir value -pi/(12 L) as the lam-independent term.
"""

import math

from fuzzy_casimir import casimir as cz

lam = 0.01
print(f"lam = {lam}")
print(f"{'L':>6} {'E_direct':>20} {'E_closed':>20} {'rel diff':>10}")
for L in (1.0, 2.0, 5.0):
    cfg = cz.CasimirConfig(lam=lam, L=L)
    d = cz.energy_direct_sum(cfg)
    c = cz.energy_closed_form(cfg)
    print(f"{L:6.1f} {d.value:20.12f} {c.value:20.12f} "
          f"{abs(d.value - c.value) / abs(c.value):10.2e}")

# Subtracting the divergent-looking linear and constant terms leaves a
# remainder that lands on the commutative zeta value as lam -> 0.
print(f"\n{'lam':>8} {'E_subtracted(L=1)':>20} {'-pi/12':>12} {'difference':>12}")
for lam_k in (1e-2, 1e-3, 1e-4):
    sub = cz.energy_subtracted(1.0, lam_k)
    print(f"{lam_k:8.0e} {sub:20.15f} {-math.pi / 12:12.6f} {sub + math.pi / 12:12.2e}")

# The expansion terms and the lam^4 remainder.
L = 1.0
terms = cz.taylor_terms(L, 0.01)
print(f"\nexpansion at lam = 0.01, L = {L}:")
for label, value in zip(
    ("L/(pi lam^2)", "1/(2 lam)", "-pi/(12 L)", "-pi^3 lam^2/(720 L^3)"), terms
):
    print(f"  {label:24} {value: .12e}")
print(f"  remainder beyond these   {cz.taylor_remainder(L, 0.01): .3e}")

# Forces: the full force includes the pressure of the linear term; the
# Casimir piece alone stays attractive and never crosses zero.
print(f"\nforce at L = 1, lam = 0.01:  full {cz.force(1.0, 0.01):.6f}  "
      f"casimir {cz.force_casimir(1.0, 0.01):.6f}  (-pi/12 = {-math.pi / 12:.6f})")
print(f"zero crossing of the casimir force in [2 lam, 10 lam]: "
      f"{cz.force_zero_crossing(0.01)}")

# Two plates inside a large box: the interaction energy is assembled from
# subtracted segment energies and is independent of the box size.
for box in (1e3, 1e4):
    system = cz.SegmentSystem(a=0.0, b=1.0, Lambda_box=box, lam=0.01)
    print(f"interaction energy, box {box:8.0f}: {cz.interaction_energy(system):.15f}")
