"""Super-resolution spectral estimation toolkit.

Conditioning bounds for Vandermonde matrices with clustered nodes on the
torus, the interpolating-certificate machinery behind them, the MUSIC
subspace recovery algorithm with its perturbation theory, and sweep drivers
for the numerical studies (minimum-singular-value scaling, worst-case grid
constants, MUSIC phase transitions).
"""

__version__ = "0.1.0"

from .exceptions import (
    BadPencilParameterError,
    CardinalityMismatchError,
    DegenerateSupportError,
    EvenMRequiredError,
    HypothesisViolationError,
    IntractableEnumerationError,
    ModelViolationError,
    NumericFailureError,
    SceneOverflowError,
    SingularFitError,
)
from .torus import (
    ClumpDecomposition,
    SupportSet,
    bottleneck_distance,
    bottleneck_distance_exhaustive,
    complexity,
    decompose_clumps,
    min_separation,
    srf,
    torus_dist,
    wrap,
)
from .vandermonde import (
    Measurements,
    SpikeSignal,
    SvdResult,
    hankel,
    noise_space,
    sigma_extremes,
    spectral_norm,
    steering_vector,
    synthesize,
    vandermonde,
)

__all__ = [
    "__version__",
    "BadPencilParameterError",
    "CardinalityMismatchError",
    "DegenerateSupportError",
    "EvenMRequiredError",
    "HypothesisViolationError",
    "IntractableEnumerationError",
    "ModelViolationError",
    "NumericFailureError",
    "SceneOverflowError",
    "SingularFitError",
    "ClumpDecomposition",
    "SupportSet",
    "bottleneck_distance",
    "bottleneck_distance_exhaustive",
    "complexity",
    "decompose_clumps",
    "min_separation",
    "srf",
    "torus_dist",
    "wrap",
    "Measurements",
    "SpikeSignal",
    "SvdResult",
    "hankel",
    "noise_space",
    "sigma_extremes",
    "spectral_norm",
    "steering_vector",
    "synthesize",
    "vandermonde",
]
