import math

import numpy as np
import pytest

from fuzzy_casimir import casimir as cz
from fuzzy_casimir.summation import compensated_sum


def closed(lam, L, **kw):
    return cz.energy_closed_form(cz.CasimirConfig(lam=lam, L=L, **kw))


def direct(lam, L, **kw):
    return cz.energy_direct_sum(cz.CasimirConfig(lam=lam, L=L, **kw))


def test_mode_frequency_examples():
    assert cz.mode_frequency(2, 4.0, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert cz.mode_frequency(1, 4.0, 1.0) == pytest.approx(math.sin(math.pi / 4), abs=1e-15)
    # commutative limit of a single mode
    assert cz.mode_frequency(3, 2.0, 1e-8) == pytest.approx(3 * math.pi / 2, rel=1e-12)
    with pytest.raises(ValueError):
        cz.mode_frequency(3, 4.0, 1.0)
    with pytest.raises(ValueError):
        cz.mode_frequency(0, 4.0, 1.0)
    with pytest.raises(ValueError):
        cz.mode_frequency(1.5, 4.0, 1.0)


def test_mode_frequencies_bounded_and_monotone():
    lam, L = 0.25, 10.0
    m = cz.mode_count(L, lam)
    freqs = [cz.mode_frequency(n, L, lam) for n in range(1, m + 1)]
    assert all(f <= 1.0 / lam + 1e-15 for f in freqs)
    assert all(b > a for a, b in zip(freqs, freqs[1:]))
    # each mode satisfies sin^2 + cos^2 = 1/lam^2 against the companion value
    for n in range(1, m + 1):
        q = n * math.pi / L
        v3, v4 = math.sin(lam * q) / lam, math.cos(lam * q) / lam
        assert v3 * v3 + v4 * v4 == pytest.approx(1.0 / lam**2, rel=1e-15)


def test_mode_count_policies():
    assert cz.mode_count(5.0, 1.0) == 2
    # float noise right below an integer must not drop a mode
    assert cz.mode_count(1.4, 0.1) == 7
    assert cz.mode_count(1.4, 0.1, cz.ModePolicy.REQUIRE_INTEGER) == 7
    with pytest.raises(ValueError):
        cz.mode_count(5.0, 1.0, cz.ModePolicy.REQUIRE_INTEGER)
    with pytest.raises(ValueError, match="below half minimum wavelength"):
        cz.mode_count(1.0, 1.0)


def test_config_validation():
    with pytest.raises(ValueError):
        cz.CasimirConfig(lam=0.0, L=1.0)
    with pytest.raises(ValueError):
        cz.CasimirConfig(lam=1.0, L=-2.0)
    with pytest.raises(ValueError):
        cz.CasimirConfig(lam=1.0, L=5.0, mode_policy=cz.ModePolicy.REQUIRE_INTEGER)
    cfg = cz.CasimirConfig(lam=1.0, L=4.0, mode_policy="require-integer", summation="naive")
    assert cfg.mode_policy is cz.ModePolicy.REQUIRE_INTEGER
    assert cfg.summation is cz.Summation.NAIVE


def test_direct_sum_small_cases():
    assert direct(1.0, 2.0).value == pytest.approx(1.0, abs=1e-15)
    assert direct(1.0, 4.0).value == pytest.approx(
        math.sin(math.pi / 4) + 1.0, abs=1e-15
    )
    assert direct(0.5, 2.0).value == pytest.approx(
        2.0 * (math.sin(math.pi / 4) + 1.0), abs=1e-14
    )
    res = direct(1.0, 4.0)
    assert res.mode_count == 2 and res.method == "direct_sum"


def test_closed_form_small_cases():
    assert closed(1.0, 2.0).value == pytest.approx(1.0, abs=1e-15)
    assert closed(1.0, 4.0).value == pytest.approx(1.7071067811865475, abs=1e-15)
    # frozen against the 50-term compensated direct sum
    assert closed(0.01, 1.0).value == pytest.approx(3232.8370581435793, rel=1e-15)
    with pytest.raises(ValueError, match="below half minimum wavelength"):
        closed(1.0, 1.0)


@pytest.mark.parametrize("m", [1, 2, 3, 7, 10, 100, 999, 4321])
def test_direct_equals_closed_on_integer_grid(m):
    d, c = direct(1.0, 2.0 * m), closed(1.0, 2.0 * m)
    assert abs(d.value - c.value) / abs(c.value) <= 1e-12
    assert abs(d.value - c.value) <= d.est_error + c.est_error


def test_floor_policy_uses_partial_sum():
    # L/(2 lam) = 2.5 -> two modes
    d, c = direct(1.0, 5.0), closed(1.0, 5.0)
    theta = math.pi / 5.0
    expected = math.sin(theta) + math.sin(2 * theta)
    assert d.value == pytest.approx(expected, abs=1e-15)
    assert c.value == pytest.approx(expected, rel=1e-14)
    assert d.mode_count == c.mode_count == 2


def test_naive_vs_compensated_agree():
    for lam, L in ((1.0, 2000.0), (0.01, 7.0)):
        a = direct(lam, L, summation="naive").value
        b = direct(lam, L, summation="compensated").value
        assert a == pytest.approx(b, rel=1e-12)


def test_direct_sum_bit_stable_across_thread_counts(monkeypatch):
    lam = 1.0
    L = 2.0 * (2**21 + 12345)  # three chunks
    monkeypatch.setenv("FUZZY_CASIMIR_THREADS", "1")
    v1 = direct(lam, L).value
    monkeypatch.setenv("FUZZY_CASIMIR_THREADS", "4")
    v4 = direct(lam, L).value
    assert v1 == v4


def test_partial_sine_sum_examples():
    assert cz.partial_sine_sum(1, math.pi / 2) == pytest.approx(1.0, abs=1e-15)
    expected = math.fsum(math.sin(n * math.pi / 6) for n in (1, 2, 3))
    assert cz.partial_sine_sum(3, math.pi / 6) == pytest.approx(expected, abs=1e-15)
    with pytest.raises(ValueError):
        cz.partial_sine_sum(0, 1.0)
    with pytest.raises(ValueError):
        cz.partial_sine_sum(3, 0.0)
    with pytest.raises(ValueError):
        cz.partial_sine_sum(3, 2 * math.pi)


def test_partial_sine_sum_matches_term_sums():
    # the literal reference carries rounding from the float arguments n*theta,
    # so compare against a rigorous bound on that reference's own error
    eps = np.finfo(float).eps
    rng = np.random.default_rng(3)
    for _ in range(250):
        m = int(rng.integers(1, 20001))
        theta = float(rng.uniform(1e-4, 2 * math.pi - 1e-4))
        terms = np.sin(np.arange(1, m + 1, dtype=np.float64) * theta)
        ref = compensated_sum(terms).value
        got = cz.partial_sine_sum(m, theta)
        ref_err = eps * (0.25 * theta * m * (m + 1) + float(np.abs(terms).sum()))
        got_err = 4.0 * eps * (1.0 / math.sin(theta / 2) + abs(got))
        assert abs(got - ref) <= 10.0 * (ref_err + got_err) + 1e-13


def test_partial_sine_sum_small_theta_branch():
    theta, m = 1e-7, 1000
    ref = math.fsum(math.sin(n * theta) for n in range(1, m + 1))
    assert cz.partial_sine_sum(m, theta) == pytest.approx(ref, rel=1e-12)


def test_partial_sum_reproduces_closed_form():
    # M theta = pi/2 turns the product form into (1 + cot(theta/2))/2
    for m in (1, 5, 50):
        theta = math.pi / (2 * m)
        lhs = cz.partial_sine_sum(m, theta)
        rhs = closed(1.0, 2.0 * m).value
        assert lhs == pytest.approx(rhs, rel=1e-14)


def test_energy_commutative():
    assert cz.energy_commutative(math.pi).value == pytest.approx(-1.0 / 12.0, abs=1e-16)
    assert cz.energy_commutative(1.0).value == pytest.approx(-math.pi / 12.0, abs=1e-16)
    assert abs(cz.energy_commutative(1e12).value) < 1e-12
    with pytest.raises(ValueError):
        cz.energy_commutative(0.0)


@pytest.mark.parametrize("lam,L", [(1.0, 1.0), (0.01, 1.0), (0.3, 2.5)])
def test_taylor_terms_symbolic(lam, L):
    t = cz.taylor_terms(L, lam)
    assert t[0] == pytest.approx(L / (math.pi * lam**2), rel=1e-14)
    assert t[1] == pytest.approx(1.0 / (2.0 * lam), rel=1e-14)
    assert t[2] == pytest.approx(-math.pi / (12.0 * L), rel=1e-14)
    assert t[3] == pytest.approx(-math.pi**3 * lam**2 / (720.0 * L**3), rel=1e-14)


def test_taylor_partial_sums_and_orders():
    lam, L = 0.05, 2.0
    t = cz.taylor_terms(L, lam)
    for order in range(4):
        res = cz.energy_taylor(L, lam, order)
        assert res.value == pytest.approx(math.fsum(t[: order + 1]), rel=1e-15)
        assert res.method == f"taylor{order}"
    assert cz.energy_taylor(L, lam, 2).est_error == abs(t[3])
    with pytest.raises(ValueError):
        cz.energy_taylor(L, lam, 4)


def test_taylor_matches_closed_form_at_small_lambda():
    c = closed(0.01, 1.0).value
    t3 = cz.energy_taylor(1.0, 0.01, 3).value
    assert abs(c - t3) <= 1e-9


def test_remainder_halving_ratio():
    r = cz.taylor_remainder(1.0, 0.02) / cz.taylor_remainder(1.0, 0.01)
    assert 15.9 <= r <= 16.1


def test_remainder_loglog_slope_is_four():
    lams = np.logspace(-3, -2, 9)
    rems = np.array([abs(cz.taylor_remainder(1.0, lam)) for lam in lams])
    slope = np.polyfit(np.log(lams), np.log(rems), 1)[0]
    assert abs(slope - 4.0) <= 0.1


def test_remainder_matches_literal_difference_where_stable():
    # integer mode counts so the closed form takes the smooth cot branch
    for lam, L in ((0.1, 1.0), (0.2, 2.0), (0.3, 3.0)):
        literal = closed(lam, L).value - cz.energy_taylor(L, lam, 3).value
        assert cz.taylor_remainder(L, lam) == pytest.approx(literal, rel=1e-6)


def test_remainder_bound_holds_including_edge():
    for lam, L in ((0.5, 1.0), (0.01, 1.0), (0.3, 0.6), (1.0, 2.0), (0.001, 0.1)):
        rem = abs(cz.taylor_remainder(L, lam))
        assert rem <= cz.TAYLOR_REMAINDER_BOUND * lam**4 / L**5
        assert rem <= cz.energy_taylor(L, lam, 3).est_error


def test_subtracted_energy_definition_and_limit():
    # matches the literal subtraction where that is still numerically safe
    lam, L = 0.1, 1.0
    t = cz.taylor_terms(L, lam)
    literal = closed(lam, L).value - t[0] - t[1]
    assert cz.energy_subtracted(L, lam) == pytest.approx(literal, rel=1e-10)
    for lam, L in ((1e-2, 1.0), (1e-3, 1.0), (1e-4, 1.0), (1e-3, 2.5), (2e-2, 10.0)):
        err = abs(cz.energy_subtracted(L, lam) + math.pi / (12.0 * L))
        assert err <= 1.1 * math.pi**3 * lam**2 / (720.0 * L**3)


def test_energy_positive_and_monotone():
    lam = 1.0
    values = [closed(lam, 2.0 * m).value for m in range(1, 65)]
    assert all(v > 0 for v in values)
    assert all(b > a for a, b in zip(values, values[1:]))


def test_cot_and_csc_series_match_direct_evaluation():
    # overlap region around the series cutoff
    for x in (0.05, 0.2, 0.39, 0.41, 0.7):
        assert cz.cot_minus_inv(x) == pytest.approx(
            math.cos(x) / math.sin(x) - 1.0 / x, rel=1e-12
        )
        assert cz.csc2_minus_inv2(x) == pytest.approx(
            1.0 / math.sin(x) ** 2 - 1.0 / x**2, rel=1e-12
        )
    assert cz.csc2_minus_inv2(1e-8) == pytest.approx(1.0 / 3.0, rel=1e-14)


def test_force_analytic_vs_finite_difference():
    lam, L, h = 0.01, 1.0, 1e-5
    fd = -(cz.closed_form_value(L + h, lam) - cz.closed_form_value(L - h, lam)) / (2 * h)
    assert cz.force(L, lam) == pytest.approx(fd, rel=1e-8)
    fd_cas = -(cz.energy_subtracted(L + h, lam) - cz.energy_subtracted(L - h, lam)) / (2 * h)
    assert cz.force_casimir(L, lam) == pytest.approx(fd_cas, rel=1e-6)


def test_forces_are_attractive():
    lam = 0.25
    for L in np.linspace(2 * lam, 50 * lam, 40):
        assert cz.force(L, lam) < 0
        assert cz.force_casimir(L, lam) < 0
    with pytest.raises(ValueError):
        cz.force(0.4, lam=0.25)
    with pytest.raises(ValueError):
        cz.force_casimir(0.4, lam=0.25)


def test_force_commutative_limit():
    assert cz.force_casimir(1.0, 1e-6) == pytest.approx(-math.pi / 12.0, rel=1e-9)


def test_force_zero_crossing_scan():
    crossing = cz.force_zero_crossing(0.5)
    # the Casimir-only force keeps one sign; if a crossing ever appeared it
    # would have to sit inside the scanned window
    assert crossing is None or 1.0 <= crossing <= 5.0


def test_segment_system_validation():
    with pytest.raises(ValueError):
        cz.SegmentSystem(a=1.0, b=0.0, Lambda_box=10.0, lam=0.1)
    with pytest.raises(ValueError):
        cz.SegmentSystem(a=-20.0, b=0.0, Lambda_box=10.0, lam=0.1)
    sys_ok = cz.SegmentSystem(a=0.0, b=0.15, Lambda_box=10.0, lam=0.1)
    with pytest.raises(ValueError, match="segment too short"):
        cz.interaction_energy(sys_ok)


def test_interaction_energy_box_independent():
    runs = [
        cz.interaction_energy(cz.SegmentSystem(a=0.0, b=1.0, Lambda_box=box, lam=0.01))
        for box in (1e3, 1e4)
    ]
    assert abs(runs[0] - runs[1]) <= 1e-6
    # without the tail correction the box survives at the 1/Lambda level
    raw = [
        cz.interaction_energy(
            cz.SegmentSystem(a=0.0, b=1.0, Lambda_box=box, lam=0.01),
            tail_correction=False,
        )
        for box in (1e3, 1e4)
    ]
    assert 1e-4 <= abs(raw[0] - raw[1]) <= 1e-3


def test_interaction_energy_translation_invariant():
    lam, box = 0.01, 200.0
    base = cz.interaction_energy(cz.SegmentSystem(a=0.0, b=1.0, Lambda_box=box, lam=lam))
    for c in (-3.0, 0.25, 7.5):
        shifted = cz.interaction_energy(
            cz.SegmentSystem(a=0.0 + c, b=1.0 + c, Lambda_box=box, lam=lam)
        )
        assert abs(shifted - base) <= 1e-10


def test_interaction_energy_commutative_limit():
    lam = 1e-4
    val = cz.interaction_energy(cz.SegmentSystem(a=0.0, b=1.0, Lambda_box=100.0, lam=lam))
    assert val == pytest.approx(-math.pi / 12.0, abs=1e-7)


def test_min_wavelength():
    assert cz.min_wavelength(1.0) == pytest.approx(2 * math.pi, rel=1e-15)
    assert cz.min_wavelength(0.5) == pytest.approx(math.pi, rel=1e-15)
    assert cz.min_half_wavelength(1.0) == pytest.approx(math.pi, rel=1e-15)
    with pytest.raises(ValueError):
        cz.min_wavelength(0.0)
