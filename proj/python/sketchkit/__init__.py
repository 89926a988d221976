"""Python access to the sketchkit C++ core."""

from ._core import (
    ComplexTestMatrix,
    ConfigError,
    DimensionError,
    Error,
    NumericalError,
    PositiveDefinitenessError,
    PreconditionError,
    RealTestMatrix,
    SketchSpec,
    gen_nystrom,
    girard_hutchinson,
    injectivity_dilation,
    na_hutch_pp,
    nystrom_psd,
    rsvd,
    sketch_and_solve,
    test_matrix,
    tfim_shift,
    tfim_shifted_trace,
)

__all__ = [
    "ComplexTestMatrix",
    "ConfigError",
    "DimensionError",
    "Error",
    "NumericalError",
    "PositiveDefinitenessError",
    "PreconditionError",
    "RealTestMatrix",
    "SketchSpec",
    "gen_nystrom",
    "girard_hutchinson",
    "injectivity_dilation",
    "na_hutch_pp",
    "nystrom_psd",
    "rsvd",
    "sketch_and_solve",
    "test_matrix",
    "tfim_shift",
    "tfim_shifted_trace",
]
