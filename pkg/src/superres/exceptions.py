"""Exception types shared across the toolkit."""

from __future__ import annotations


class SuperresError(Exception):
    """Base class for all toolkit errors."""


class DegenerateSupportError(SuperresError, ValueError):
    """Operation needs at least two support points."""


class CardinalityMismatchError(SuperresError, ValueError):
    """Two support sets were expected to have equal cardinality."""


class BadPencilParameterError(SuperresError, ValueError):
    """Hankel pencil parameter L is outside its admissible range."""


class NumericFailureError(SuperresError, RuntimeError):
    """A dense linear-algebra routine failed to converge."""


class HypothesisViolationError(SuperresError, ValueError):
    """Inputs violate a hard hypothesis of a closed-form constant."""


class ModelViolationError(SuperresError, ValueError):
    """Support set does not admit a valid clump decomposition."""


class IntractableEnumerationError(SuperresError, ValueError):
    """Requested exhaustive search exceeds the enumeration budget."""


class SceneOverflowError(SuperresError, ValueError):
    """Generated scene does not fit inside the unit torus."""


class EvenMRequiredError(SuperresError, ValueError):
    """The noise-tolerance threshold is stated for even M only."""


class SingularFitError(SuperresError, ValueError):
    """Least-squares line fit is degenerate (no spread in x)."""
