"""Floquet spectra and phase-transition markers for periodically quenched Hamiltonians."""

from ._quenchfloq import (
    BchBoundReport,
    CharacteristicTimes,
    ConfigError,
    DeviationSummary,
    EsqptResult,
    FloquetSolution,
    ModelPair,
    NumericalError,
    atom_diatom_pair,
    bch_bound_check,
    characteristic_times,
    deviation,
    deviation_summary,
    esqpt_locate,
    floquet_mode_at,
    floquet_solve,
    geometric_phase_quadrature_check,
    gsqpt_scan,
    gsqpt_transition,
    lmg_pair,
    mean_energy_quadrature_check,
    model_pair,
    monodromy,
    run_command,
    static_spectrum,
    two_time_correlator,
    uniform_t0_grid,
)

__all__ = [name for name in dir() if not name.startswith("_")]
