"""Operator algebra on a truncated two-mode Fock space for a model with
noncommuting coordinates, plus the Casimir mode sums and string-ansatz fits
built on top of it.

Layout: fock_engine (spaces, ladder/coordinate matrices, superoperators,
identity checks), casimir (mode sums, closed forms, expansions, forces,
segment subtraction), luscher_fit (coefficient recovery), summation
(error-accounted floating-point sums), cli (the fuzzy-casimir command).
"""

__version__ = "0.1.0"

from .casimir import (
    CasimirConfig,
    EnergyResult,
    ModePolicy,
    SegmentSystem,
    Summation,
    closed_form_value,
    energy_closed_form,
    energy_commutative,
    energy_direct_sum,
    energy_subtracted,
    energy_taylor,
    force,
    force_casimir,
    force_zero_crossing,
    interaction_energy,
    min_half_wavelength,
    min_wavelength,
    mode_count,
    mode_frequency,
    partial_sine_sum,
    taylor_remainder,
    taylor_terms,
)
from .fock_engine import (
    CoordinateOps,
    FockSpace,
    LadderOps,
    NCOperators,
    SuperOp,
    WaveOp,
    apply_H0,
    apply_V,
    apply_V4,
    apply_X,
    build_space,
    check_commutators,
    check_cutoff_identity,
    coordinates,
    dump_operators,
    eigen_residual,
    interior_mask,
    ladder_matrices,
    nc_operators,
    plane_wave,
    random_waveop,
    trace_norm,
)
from .luscher_fit import (
    CoefficientReport,
    CurveSample,
    LuscherFit,
    compare_coefficients,
    default_fit_grid,
    fit_luscher,
    sample_curve,
)
from .summation import SumResult, compensated_sum, naive_sum

__all__ = [name for name in dir() if not name.startswith("_")]
