"""Representation-theoretic checks on harmonic and monogenic polynomials."""

from .checks import (
    CasimirResult,
    ModuleReport,
    casimir_check,
    casimir_test,
    fischer_check,
    harmonics_check,
    howe_check,
    howe_closure_check,
    howe_generators,
    module_report,
    monogenics_check,
    osp_dimension,
    pi_power_check,
    pi_power_test,
    singular_check,
    submodule_check,
    submodule_window,
)
from .spaces import harmonic_spinors, harmonics, irr_hk_containment, kernel_on, monogenics
from .weights import (
    Weight,
    cartan,
    delta,
    epsilon,
    expected_monogenic_weight,
    nu,
    omega_next,
    omega_top,
    positive_roots,
    root_vectors,
    singular_vectors,
    weight_of,
)
