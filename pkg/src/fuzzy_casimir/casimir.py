"""Casimir energy of a segment in the noncommutative model.

Mode frequencies on a segment of length L are sin(n pi lam / L)/lam for
1 <= n <= L/(2 lam); the largest achievable frequency is 1/lam.  The vacuum
energy is the plain sum of the frequencies — finite without regularization —
with the closed form (1 + cot(pi lam/(2L)))/(2 lam) when L/(2 lam) is an
integer.  Expanding around lam = 0 gives

    E = L/(pi lam^2) + 1/(2 lam) - pi/(12 L) - pi^3 lam^2/(720 L^3) + O(lam^4),

whose lam-independent part reproduces the commutative zeta-regularized value
-pi/(12 L).  Subtracted quantities (E~ = E - linear - constant, the Casimir
force, the Taylor remainder) are evaluated through Laurent-series forms of
cot and csc^2 so they stay exact in the regime lam << L where the literal
float differences are pure cancellation noise.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from .summation import CHUNK, EPS, SumResult, naive_sum

__all__ = [
    "ModePolicy",
    "Summation",
    "CasimirConfig",
    "EnergyResult",
    "SegmentSystem",
    "mode_count",
    "mode_frequency",
    "energy_direct_sum",
    "partial_sine_sum",
    "closed_form_value",
    "energy_closed_form",
    "energy_commutative",
    "taylor_terms",
    "energy_taylor",
    "energy_subtracted",
    "taylor_remainder",
    "cot_minus_inv",
    "csc2_minus_inv2",
    "force",
    "force_casimir",
    "force_zero_crossing",
    "interaction_energy",
    "min_wavelength",
    "min_half_wavelength",
    "TAYLOR_REMAINDER_BOUND",
]

# Laurent coefficients of cot: cot x = 1/x - sum_{k>=1} c_k x^(2k-1).
# c_k = 2^(2k) |B_2k| / (2k)!, exact rationals rounded once to double.
# Truncation at k=11 is below double rounding for |x| < 0.4.
_COT_COEFF = (
    1.0 / 3.0,
    1.0 / 45.0,
    2.0 / 945.0,
    1.0 / 4725.0,
    2.0 / 93555.0,
    1382.0 / 638512875.0,
    4.0 / 18243225.0,
    3617.0 / 162820783125.0,
    87734.0 / 38979295480125.0,
    349222.0 / 1531329465290625.0,
    310732.0 / 13447856940643125.0,
)
_SERIES_CUTOFF = 0.4

# Bound in |closed - taylor3| <= C * lam^4 / L^5, frozen from the measured
# sup of the left side times L^5/lam^4 over L >= 2 lam (0.010785, attained
# at L = 2 lam); the first omitted series term is pi^5/30240 ~ 0.010120.
TAYLOR_REMAINDER_BOUND = 0.0109

_INTEGER_RTOL = 1e-9


class ModePolicy(str, Enum):
    FLOOR = "floor"
    REQUIRE_INTEGER = "require-integer"


class Summation(str, Enum):
    NAIVE = "naive"
    COMPENSATED = "compensated"


@dataclass(frozen=True)
class CasimirConfig:
    lam: float
    L: float
    mode_policy: ModePolicy = ModePolicy.FLOOR
    summation: Summation = Summation.COMPENSATED

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValueError(f"lambda must be positive and finite, got {self.lam}")
        if not (self.L > 0 and math.isfinite(self.L)):
            raise ValueError(f"L must be positive and finite, got {self.L}")
        object.__setattr__(self, "mode_policy", ModePolicy(self.mode_policy))
        object.__setattr__(self, "summation", Summation(self.summation))
        if self.mode_policy is ModePolicy.REQUIRE_INTEGER:
            x = self.L / (2.0 * self.lam)
            if abs(x - round(x)) > _INTEGER_RTOL * max(1.0, abs(x)):
                raise ValueError(
                    f"mode_policy=require-integer but L/(2 lambda) = {x} is not an integer"
                )


@dataclass(frozen=True)
class EnergyResult:
    value: float
    mode_count: int  # 0 when the method is not a mode sum
    method: str
    est_error: float


@dataclass(frozen=True)
class SegmentSystem:
    """Inner plates at a < b inside a box (-Lambda_box, Lambda_box)."""

    a: float
    b: float
    Lambda_box: float
    lam: float

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValueError(f"lambda must be positive and finite, got {self.lam}")
        if not (-self.Lambda_box < self.a < self.b < self.Lambda_box):
            raise ValueError(
                f"need -Lambda_box < a < b < Lambda_box, got a={self.a}, b={self.b}, "
                f"Lambda_box={self.Lambda_box}"
            )


def min_wavelength(lam):
    """Shortest representable wavelength, 2 pi lam."""
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return 2.0 * math.pi * lam


def min_half_wavelength(lam):
    """pi lam; below this plate separation nothing can be squeezed in."""
    return 0.5 * min_wavelength(lam)


def mode_count(L, lam, mode_policy=ModePolicy.FLOOR):
    """Number of modes M on the segment, from L/(2 lam) per policy.

    Floor rounds to the nearest integer first when within 1e-9 relative
    (the RequireInteger tolerance) to absorb x.999... float artifacts.
    """
    if lam <= 0 or L <= 0:
        raise ValueError(f"need lam > 0 and L > 0, got lam={lam}, L={L}")
    x = L / (2.0 * lam)
    r = round(x)
    if abs(x - r) <= _INTEGER_RTOL * max(1.0, abs(x)):
        m = int(r)
    elif ModePolicy(mode_policy) is ModePolicy.REQUIRE_INTEGER:
        raise ValueError(f"L/(2 lambda) = {x} is not an integer")
    else:
        m = int(math.floor(x))
    if m < 1:
        raise ValueError(
            f"below half minimum wavelength: L={L} < 2*lambda={2 * lam}, no mode fits"
        )
    return m


def mode_frequency(n, L, lam):
    """Frequency sin(n pi lam / L)/lam of mode n; monotone up to n = L/(2 lam)."""
    m = mode_count(L, lam)
    if not isinstance(n, (int, np.integer)) or n < 1 or n > m:
        raise ValueError(f"mode index must be an integer in 1..{m}, got {n!r}")
    return math.sin(n * math.pi * lam / L) / lam


def _thread_budget():
    raw = os.environ.get("FUZZY_CASIMIR_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def energy_direct_sum(cfg):
    """Sum of the mode frequencies, term by term.

    Chunks of 2^20 terms are summed independently (exactly, via fsum, in the
    compensated mode) and the partials combined in index order, so the value
    is bit-stable for any FUZZY_CASIMIR_THREADS setting.
    """
    m = mode_count(cfg.L, cfg.lam, cfg.mode_policy)
    theta = math.pi * cfg.lam / cfg.L
    bounds = [(lo, min(lo + CHUNK, m + 1)) for lo in range(1, m + 1, CHUNK)]

    def terms(lo_hi):
        lo, hi = lo_hi
        return np.sin(np.arange(lo, hi, dtype=np.float64) * theta) / cfg.lam

    if cfg.summation is Summation.NAIVE:
        res = naive_sum(terms(b) for b in bounds)
        return EnergyResult(res.value, m, "direct_sum", res.est_error)

    def partial(lo_hi):
        t = terms(lo_hi)
        return math.fsum(t.tolist()), float(np.abs(t).sum())

    workers = min(_thread_budget(), len(bounds))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(partial, bounds))
    else:
        parts = [partial(b) for b in bounds]
    value = math.fsum(p[0] for p in parts)
    abs_total = math.fsum(p[1] for p in parts)
    return EnergyResult(value, m, "direct_sum", 2.0 * EPS * abs_total)


def partial_sine_sum(M, theta):
    """Closed form of sum_{n=1..M} sin(n theta).

    Equals sin(M theta/2) sin((M+1) theta/2) / sin(theta/2); for theta below
    1e-6 the 1/sin factor is evaluated by series so the ratio stays exact in
    the physical regime lam << L.
    """
    if not isinstance(M, (int, np.integer)) or M < 1:
        raise ValueError(f"M must be an integer >= 1, got {M!r}")
    if not 0.0 < theta < 2.0 * math.pi:
        raise ValueError(f"theta must lie in (0, 2 pi), got {theta}")
    h = 0.5 * theta
    if theta < 1e-6:
        inv_sin_h = 1.0 / h + h / 6.0 + 7.0 * h**3 / 360.0
    else:
        inv_sin_h = 1.0 / math.sin(h)
    return math.sin(M * h) * math.sin((M + 1) * h) * inv_sin_h


def closed_form_value(L, lam):
    """Smooth closed-form energy (1 + cot(pi lam/(2L)))/(2 lam).

    Treats L/(2 lam) as continuous; coincides with the mode sum whenever
    L/(2 lam) is an integer.  Everything built on top of the smooth curve
    (subtraction, forces, fits) uses this form.
    """
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if L < 2.0 * lam:
        raise ValueError(
            f"below half minimum wavelength: L={L} < 2*lambda={2 * lam}, no mode fits"
        )
    x = math.pi * lam / (2.0 * L)
    return (1.0 + 1.0 / math.tan(x)) / (2.0 * lam)


def energy_closed_form(cfg):
    """Closed form of the mode sum under the configured mode policy.

    Integer L/(2 lam) (always the case under require-integer) uses the cot
    form; otherwise the exact partial sine sum with the floored mode count.
    """
    m = mode_count(cfg.L, cfg.lam, cfg.mode_policy)
    x = cfg.L / (2.0 * cfg.lam)
    if abs(x - m) <= _INTEGER_RTOL * max(1.0, abs(x)):
        value = closed_form_value(cfg.L, cfg.lam)
    else:
        value = partial_sine_sum(m, math.pi * cfg.lam / cfg.L) / cfg.lam
    return EnergyResult(value, m, "closed_form", 4.0 * EPS * abs(value))


def energy_commutative(L):
    """Zeta-regularized commutative value -pi/(12 L)."""
    if L <= 0:
        raise ValueError(f"L must be positive, got {L}")
    value = -math.pi / (12.0 * L)
    return EnergyResult(value, 0, "commutative_zeta", EPS * abs(value))


def taylor_terms(L, lam):
    """The four expansion terms around lam = 0 at fixed L."""
    if L <= 0 or lam <= 0:
        raise ValueError(f"need L > 0 and lam > 0, got L={L}, lam={lam}")
    return (
        L / (math.pi * lam * lam),
        1.0 / (2.0 * lam),
        -math.pi / (12.0 * L),
        -math.pi**3 * lam * lam / (720.0 * L**3),
    )


def energy_taylor(L, lam, order=3):
    """Partial sum of the expansion through the requested term (order 0..3)."""
    if order not in (0, 1, 2, 3):
        raise ValueError(f"order must be in 0..3, got {order!r}")
    terms = taylor_terms(L, lam)
    value = math.fsum(terms[: order + 1])
    if order < 3:
        est = abs(terms[order + 1])
    else:
        est = TAYLOR_REMAINDER_BOUND * lam**4 / L**5
    return EnergyResult(value, 0, f"taylor{order}", est)


def cot_minus_inv(x):
    """cot x - 1/x without cancellation (series below x = 0.4)."""
    if not 0.0 < x < math.pi:
        raise ValueError(f"x must lie in (0, pi), got {x}")
    if x < _SERIES_CUTOFF:
        x2 = x * x
        acc = 0.0
        for c in reversed(_COT_COEFF):
            acc = acc * x2 + c
        return -x * acc
    return math.cos(x) / math.sin(x) - 1.0 / x


def csc2_minus_inv2(x):
    """csc^2 x - 1/x^2 without cancellation; tends to 1/3 as x -> 0."""
    if not 0.0 < x < math.pi:
        raise ValueError(f"x must lie in (0, pi), got {x}")
    if x < _SERIES_CUTOFF:
        x2 = x * x
        acc = 0.0
        for k in range(len(_COT_COEFF) - 1, -1, -1):
            acc = acc * x2 + (2 * k + 1) * _COT_COEFF[k]
        return acc
    s = math.sin(x)
    return 1.0 / (s * s) - 1.0 / (x * x)


def _cot_tail(x):
    # sum_{k>=3} c_k x^(2k-1): the part of the cot series beyond the two
    # terms that the expansion keeps.
    if x < _SERIES_CUTOFF:
        x2 = x * x
        acc = 0.0
        for c in reversed(_COT_COEFF[2:]):
            acc = acc * x2 + c
        return x2 * x2 * x * acc
    return -cot_minus_inv(x) - _COT_COEFF[0] * x - _COT_COEFF[1] * x**3


def energy_subtracted(L, lam):
    """E~ = closed form - L/(pi lam^2) - 1/(2 lam), evaluated stably.

    Algebraically equal to (cot x - 1/x)/(2 lam) with x = pi lam/(2L); tends
    to -pi/(12 L) as lam -> 0 with error <= pi^3 lam^2/(720 L^3) corrections.
    """
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if L < 2.0 * lam:
        raise ValueError(
            f"below half minimum wavelength: L={L} < 2*lambda={2 * lam}, no mode fits"
        )
    return cot_minus_inv(math.pi * lam / (2.0 * L)) / (2.0 * lam)


def taylor_remainder(L, lam):
    """closed form - taylor(3), evaluated stably; scales as lam^4/L^5."""
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if L < 2.0 * lam:
        raise ValueError(
            f"below half minimum wavelength: L={L} < 2*lambda={2 * lam}, no mode fits"
        )
    return -_cot_tail(math.pi * lam / (2.0 * L)) / (2.0 * lam)


def force(L, lam):
    """Full force -dE/dL of the closed form: -(pi/(4 L^2)) csc^2(pi lam/(2L))."""
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if L < 2.0 * lam:
        raise ValueError(
            f"below half minimum wavelength: L={L} < 2*lambda={2 * lam}, no mode fits"
        )
    x = math.pi * lam / (2.0 * L)
    s = math.sin(x)
    return -math.pi / (4.0 * L * L * s * s)


def force_casimir(L, lam):
    """Casimir-only force -dE~/dL; tends to -pi/(12 L^2) as lam -> 0."""
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if L < 2.0 * lam:
        raise ValueError(
            f"below half minimum wavelength: L={L} < 2*lambda={2 * lam}, no mode fits"
        )
    x = math.pi * lam / (2.0 * L)
    return -math.pi / (4.0 * L * L) * csc2_minus_inv2(x)


def force_zero_crossing(lam, lo=None, hi=None, n=512):
    """Scan [2 lam, 10 lam] for a sign change of the Casimir-only force.

    Returns the crossing position, or None when the force keeps one sign on
    the whole scan range (csc^2 x > 1/x^2 on (0, pi), so None is expected).
    """
    lo = 2.0 * lam if lo is None else lo
    hi = 10.0 * lam if hi is None else hi
    grid = np.linspace(lo, hi, n)
    vals = np.array([force_casimir(L, lam) for L in grid])
    signs = np.sign(vals)
    flips = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    if flips.size == 0:
        return None
    k = int(flips[0])
    return float(brentq(lambda L: force_casimir(L, lam), grid[k], grid[k + 1]))


def interaction_energy(sys, tail_correction=True):
    """Finite interaction energy of the three-segment system.

    The box (-Lambda, Lambda) split at a < b contributes the subtracted
    energies E~ of the three segment lengths; the total of the subtractions
    equals the divergent reference 2 Lambda/(pi lam^2) + 3/(2 lam), so this
    is the reference-subtracted sum, just assembled without the big-number
    cancellation.  Each outer segment still carries a universal -pi/(12 l)
    tail that dies only as 1/Lambda; tail_correction (default) removes it,
    making the result box-independent to round-off at finite Lambda.
    """
    lengths = (
        sys.a + sys.Lambda_box,
        sys.b - sys.a,
        sys.Lambda_box - sys.b,
    )
    for ell in lengths:
        if ell < 2.0 * sys.lam:
            raise ValueError(
                f"segment too short: length {ell} < 2*lambda={2 * sys.lam}"
            )
    total = math.fsum(energy_subtracted(ell, sys.lam) for ell in lengths)
    if tail_correction:
        total += math.pi / 12.0 * (1.0 / lengths[0] + 1.0 / lengths[2])
    return total
