"""Coherence measures, NC channel classification and coherence-increasing power."""

from ._core import (
    DimensionError,
    DomainError,
    InvalidStateError,
    ParseError,
    c_f,
    c_f_qubit,
    c_l1,
    c_r,
    c_tr,
    classify,
    coherence_gain,
    dephase,
    e_f_two_qubit,
    estimate_power,
    example_channel,
    hadamard_channel,
    identity_channel,
    dephasing_channel,
    is_nc,
    lambda1,
    lambda2,
    maximally_coherent,
    maximally_correlated_embed,
    phi_plus,
    random_density,
    random_nc_qubit,
    run_suite,
    superadditivity_demo,
    validate_cptp,
    apply,
    wootters_concurrence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
