"""Pseudo-spectral Hall-MHD simulator on the 3-torus."""

from ._hallmhd import (
    BlowUpError,
    CheckpointError,
    ConfigError,
    DiophantineVector,
    Lattice,
    State,
    alias_free_product,
    bit_equal,
    check_condition,
    choose_A,
    choose_dt,
    config_keys,
    curl,
    dissipation_D,
    energy_E,
    identity_names,
    identity_suite,
    initial_data,
    leray_project,
    load_checkpoint,
    max_divergence,
    min_product,
    predicted_decay_exponent,
    print_config,
    random_solenoidal,
    report,
    rhs,
    save_checkpoint,
    simulate,
    sobolev_norm,
    step,
    suggest_background,
)

__all__ = [name for name in dir() if not name.startswith("_")]
