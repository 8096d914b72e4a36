"""Exception hierarchy for validation and domain-contract failures.

Everything raised on bad input derives from :class:`SystolicError`, so the
CLI can map the whole family to exit code 2 while genuine I/O failures
(missing files, unreadable paths) stay on the OSError branch (exit code 3).
"""

__all__ = [
    "SystolicError",
    "SchemaError",
    "UnsupportedDimension",
    "NotPositiveDefinite",
    "SingularBasis",
    "NonPositiveImaginaryPart",
    "WrongDimension",
    "DimensionTooSmall",
    "UnknownConstant",
    "InvalidParameters",
    "NotEssential",
    "SubsetBudgetExceeded",
    "InvalidSubsetSize",
    "TrivialBundle",
    "NoUnitPivot",
    "NonPositiveCurvature",
]


class SystolicError(Exception):
    """Base class for every validation or domain error in this package."""


class SchemaError(SystolicError):
    """Input JSON (or in-memory equivalent) does not match the documented schema."""


class UnsupportedDimension(SystolicError):
    """Rank outside the supported range 1..8."""


class NotPositiveDefinite(SystolicError):
    """A Gram matrix has a non-positive leading principal minor."""


class SingularBasis(SystolicError):
    """Basis rows are linearly dependent (zero determinant)."""


class NonPositiveImaginaryPart(SystolicError):
    """Upper half-plane parameter given with Im <= 0."""


class WrongDimension(SystolicError):
    """Operation defined only in a specific rank (e.g. the rank-2 area bound)."""


class DimensionTooSmall(SystolicError):
    """Operation needs codimension-1 structure, so rank >= 2."""


class UnknownConstant(SystolicError):
    """No stated or derived sharp constant is available in this rank."""


class InvalidParameters(SystolicError):
    """Scalar parameters out of range (lengths, curvatures, indices, modes)."""


class NotEssential(SystolicError):
    """The systole/filling-radius comparison needs an essential space."""


class SubsetBudgetExceeded(SystolicError):
    """Exhaustive subset search would exceed the enumeration budget."""


class InvalidSubsetSize(SystolicError):
    """Subset size bound must satisfy 1 <= max_subset <= number of points."""


class TrivialBundle(SystolicError):
    """Euler number 0: fibers are not rationally nullhomologous, linking undefined."""


class NoUnitPivot(SystolicError):
    """Module presentation is outside the reducible shape (no unit pivot)."""


class NonPositiveCurvature(SystolicError):
    """Round-metric formulas require curvature K > 0."""
