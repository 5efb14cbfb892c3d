"""End-to-end acceptance checks, one test per shipped guarantee.

Each test states the guarantee in its name and asserts the exact published
tolerance, so a -v run reads as a pass/fail line per criterion.
"""

import json
import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from fuzzy_casimir import casimir as cz
from fuzzy_casimir import fock_engine as fe
from fuzzy_casimir.luscher_fit import compare_coefficients, default_fit_grid, fit_luscher, sample_curve


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "fuzzy_casimir", *[str(a) for a in args]],
        capture_output=True,
        text=True,
        env=os.environ.copy(),
    )


def test_criterion_1_operator_algebra_commutators():
    # [x_i, x_j] = 2 i lam eps_ijk x_k on the interior block, residual <= 1e-12,
    # across lam {0.1, 1, 2} x n_max {4, 8, 16}, in under 10 s
    t0 = time.perf_counter()
    worst = 0.0
    for lam in (0.1, 1.0, 2.0):
        for n_max in (4, 8, 16):
            space = fe.build_space(n_max)
            worst = max(worst, fe.check_commutators(space, lam))
            worst = max(worst, fe.self_adjoint_residual(space, lam))
            worst = max(worst, fe.ladder_commutation_residual(space))
    elapsed = time.perf_counter() - t0
    assert worst <= 1e-12, f"worst residual {worst}"
    assert elapsed < 10.0, f"took {elapsed:.1f} s"


def test_criterion_2_plane_wave_dispersion():
    # plane waves diagonalize V3 and V4 with sin/cos eigenvalues (<= 1e-12)
    # at 50 momenta inside (0, pi/lam); the peak frequency is 1/lam at
    # q = pi/(2 lam)
    lam, n_max = 1.0, 8
    space = fe.build_space(n_max)
    ops = fe.nc_operators(space, lam)
    qs = np.arange(1, 51) * math.pi / (51.0 * lam)
    worst3 = worst4 = 0.0
    for q in qs:
        w = fe.plane_wave(space, q, lam)
        worst3 = max(worst3, fe.eigen_residual(ops.V[2], w, math.sin(lam * q) / lam))
        worst4 = max(worst4, fe.eigen_residual(ops.V4, w, math.cos(lam * q) / lam))
    assert worst3 <= 1e-12, f"V3 residual {worst3}"
    assert worst4 <= 1e-12, f"V4 residual {worst4}"

    q_peak = math.pi / (2.0 * lam)
    peak = fe.plane_wave(space, q_peak, lam)
    assert fe.eigen_residual(ops.V[2], peak, 1.0 / lam) <= 1e-12
    freqs = np.sin(lam * qs) / lam
    assert np.all(freqs <= 1.0 / lam + 1e-15)
    assert math.sin(lam * q_peak) / lam == pytest.approx(1.0 / lam, abs=1e-15)


def test_criterion_3_cutoff_identity():
    # sum_i V_i^2 + V4^2 = 1/lam^2 on the interior block, <= 1e-11, for the
    # plane-wave family and for 10 random Hermitian number-conserving states
    lam, n_max = 1.0, 8
    space = fe.build_space(n_max)
    worst = 0.0
    for q in np.arange(1, 51) * math.pi / (51.0 * lam):
        worst = max(worst, fe.check_cutoff_identity(fe.plane_wave(space, q, lam)))
    for seed in range(10):
        worst = max(worst, fe.check_cutoff_identity(fe.random_waveop(space, lam, seed)))
    assert worst <= 1e-11, f"worst residual {worst}"


def test_criterion_4_direct_sum_matches_closed_form():
    # relative agreement <= 1e-12 for every integer mode count up to 1e4
    # (lam = 1, L = 2M), <= 1e-11 at M = 1e7 with compensated summation,
    # all in under 60 s
    t0 = time.perf_counter()
    worst = 0.0
    for m in range(1, 10**4 + 1):
        cfg = cz.CasimirConfig(lam=1.0, L=2.0 * m)
        d = cz.energy_direct_sum(cfg).value
        c = cz.energy_closed_form(cfg).value
        worst = max(worst, abs(d - c) / abs(c))
    assert worst <= 1e-12, f"worst relative difference {worst}"

    cfg = cz.CasimirConfig(lam=1.0, L=2.0e7, summation=cz.Summation.COMPENSATED)
    d = cz.energy_direct_sum(cfg).value
    c = cz.energy_closed_form(cfg).value
    assert cz.mode_count(cfg.L, cfg.lam) == 10**7
    assert abs(d - c) / abs(c) <= 1e-11
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, f"took {elapsed:.1f} s"


def test_criterion_5_expansion_terms_and_remainder_scaling():
    # the four expansion terms match their symbolic forms to 1e-14 relative,
    # and the remainder falls off with log-log slope 4.0 +- 0.1 over
    # lam in [1e-3, 1e-2]
    for lam, L in ((0.01, 1.0), (0.1, 2.0), (0.003, 0.7)):
        t = cz.taylor_terms(L, lam)
        assert t[0] == pytest.approx(L / (math.pi * lam**2), rel=1e-14)
        assert t[1] == pytest.approx(1.0 / (2.0 * lam), rel=1e-14)
        assert t[2] == pytest.approx(-math.pi / (12.0 * L), rel=1e-14)
        assert t[3] == pytest.approx(-math.pi**3 * lam**2 / (720.0 * L**3), rel=1e-14)
    lams = np.logspace(-3, -2, 10)
    rems = np.array([abs(cz.taylor_remainder(1.0, lam)) for lam in lams])
    slope = np.polyfit(np.log(lams), np.log(rems), 1)[0]
    assert abs(slope - 4.0) <= 0.1, f"slope {slope}"


def test_criterion_6_subtracted_energy_reaches_commutative_value():
    # |E_subtracted + pi/(12 L)| <= 1.1 * pi^3 lam^2/(720 L^3) whenever
    # lam/L <= 0.01
    for L in (0.5, 1.0, 2.0, 10.0):
        for ratio in np.logspace(-5, -2, 12):
            lam = ratio * L
            err = abs(cz.energy_subtracted(L, lam) + math.pi / (12.0 * L))
            bound = 1.1 * math.pi**3 * lam**2 / (720.0 * L**3)
            assert err <= bound, f"L={L} lam={lam}: {err} > {bound}"


def test_criterion_7_luscher_fit_recovers_coefficients():
    # default grid, lam = 0.01: T to 1e-9, C to 1e-8, gamma to 1e-6 relative;
    # delta selects the /720 normalization; under 1 s
    lam = 0.01
    t0 = time.perf_counter()
    fit = fit_luscher(sample_curve(lam, default_fit_grid(lam)))
    report = compare_coefficients(fit, lam)
    elapsed = time.perf_counter() - t0
    assert report.relative_errors["T"] <= 1e-9
    assert report.relative_errors["C"] <= 1e-8
    assert report.relative_errors["gamma"] <= 1e-6
    assert report.delta_verdict == "720"
    assert elapsed < 1.0, f"took {elapsed:.3f} s"


def test_criterion_8_interaction_energy_box_independent():
    # lam = 0.01, plates at a = 0, b = 1: the total changes by <= 1e-6
    # between box sizes 1e3 and 1e4
    values = [
        cz.interaction_energy(cz.SegmentSystem(a=0.0, b=1.0, Lambda_box=box, lam=0.01))
        for box in (1e3, 1e4)
    ]
    assert abs(values[0] - values[1]) <= 1e-6, f"difference {abs(values[0] - values[1])}"


GOLDEN_COMMANDS = (
    ("verify", "--n-max", "3", "--lambda", "1.0"),
    ("dispersion", "--lambda", "0.5", "--q-count", "25", "--format", "csv"),
    ("casimir", "--lambda", "1.0", "--format", "csv"),
    ("casimir", "--lambda", "0.01", "--L-start", "1.0", "--L-stop", "10.0",
     "--L-count", "10", "--format", "json"),
    ("expand", "--lambda", "0.01", "--format", "json"),
    ("fit", "--lambda", "0.01", "--format", "json"),
)


@pytest.mark.parametrize("args", GOLDEN_COMMANDS, ids=lambda a: a[0])
def test_criterion_9_cli_outputs_are_deterministic(args):
    # identical invocations produce byte-identical output and exit 0
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == 0, first.stderr
    assert second.returncode == 0
    assert first.stdout == second.stdout
    if args[0] in ("verify", "expand", "fit") or "json" in args:
        json.loads(first.stdout)
