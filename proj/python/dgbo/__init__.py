"""Pseudospectral lab for dispersion-generalized Benjamin-Ono equations."""

from ._dgbo import (
    BlowupError,
    EquationParams,
    Field,
    Grid,
    NoContraction,
    SolverConfig,
    acceptance_ids,
    critical_index,
    dealias_cutoff,
    energy,
    fractional_derivative,
    free_evolve,
    gaussian,
    hilbert,
    l2_norm,
    level_band_area,
    mass,
    phase,
    picard_update_norms,
    random_hs,
    run,
    run_criterion,
    scattering_exponents,
    strichartz_gamma,
)

__all__ = [name for name in dir() if not name.startswith("_")]
