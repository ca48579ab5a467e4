"""Classical fidelity thresholds for measure-and-prepare state transformation games."""

from ._core import (
    __version__,
    benchmark,
    cat_confidence_beta,
    cat_squeezing_map,
    certify,
    cft_coherent,
    cft_gaussian_1mode,
    cft_perelomov,
    cft_qudit,
    cft_spin,
    conjugation_gap,
    operator_norm_qudit,
    oracle_cft,
    perelomov_flat_spectrum,
    simulate,
    srm_fidelity_qubit,
    srm_optimize,
)

__all__ = [
    "__version__",
    "benchmark",
    "cat_confidence_beta",
    "cat_squeezing_map",
    "certify",
    "cft_coherent",
    "cft_gaussian_1mode",
    "cft_perelomov",
    "cft_qudit",
    "cft_spin",
    "conjugation_gap",
    "operator_norm_qudit",
    "oracle_cft",
    "perelomov_flat_spectrum",
    "simulate",
    "srm_fidelity_qubit",
    "srm_optimize",
]
