"""Spectra of Hausdorff operators: symbols, circulant spectra, resolvents."""

from ._core import (
    HslError,
    Kernel,
    SpaceParams,
    cesaro_spectrum,
    circulant_spectrum,
    eigen_residual,
    lower_norm_bound,
    moment,
    resolvent_norm_l2,
    run_cli,
    spectral_verify,
    symbol,
    test_function,
)

__all__ = [
    "HslError",
    "Kernel",
    "SpaceParams",
    "cesaro_spectrum",
    "circulant_spectrum",
    "eigen_residual",
    "lower_norm_bound",
    "moment",
    "resolvent_norm_l2",
    "run_cli",
    "spectral_verify",
    "symbol",
    "test_function",
]
