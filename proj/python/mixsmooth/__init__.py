"""Mixed moduli of smoothness and Ulyanov-type inequalities for periodic
functions of two variables."""

from ._mixsmooth import (
    InvalidInput,
    NumericalFailure,
    Spectrum,
    f0,
    f1,
    mixed_modulus,
    mixed_norm,
    property_names,
    random_polynomial,
    rate_fit,
    realization,
    run_properties,
    set_threads,
    synthesize,
    threads,
    ulyanov,
    weyl_derivative,
)

__all__ = [
    "InvalidInput",
    "NumericalFailure",
    "Spectrum",
    "f0",
    "f1",
    "mixed_modulus",
    "mixed_norm",
    "property_names",
    "random_polynomial",
    "rate_fit",
    "realization",
    "run_properties",
    "set_threads",
    "synthesize",
    "threads",
    "ulyanov",
    "weyl_derivative",
]
