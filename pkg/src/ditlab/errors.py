"""Exception types shared across the library.

Everything raised deliberately by ditlab derives from :class:`DitlabError`,
so callers can catch one base class.  Most conditions are also ``ValueError``
subclasses because they signal bad arguments.
"""

from __future__ import annotations


class DitlabError(Exception):
    """Base class for all errors raised by this library."""


# ---------------------------------------------------------------- partitions

class PartitionError(DitlabError, ValueError):
    """A collection of blocks does not form a partition of the universe."""


class OverlappingBlocks(PartitionError):
    """Two blocks share an element."""


class UncoveredElement(PartitionError):
    """Some element of the universe appears in no block."""


class EmptyBlock(PartitionError):
    """A block is empty."""


class IndexOutOfRange(PartitionError):
    """An element is not an integer in ``range(n)``."""


class UniverseMismatch(DitlabError, ValueError):
    """Two objects that must live on the same universe do not."""


class BoundExceeded(DitlabError, RuntimeError):
    """An enumeration or search would exceed its configured work bound."""


# ------------------------------------------------------------------ formulas

class FormulaSyntaxError(DitlabError, ValueError):
    """The formula text does not parse.  Carries the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnboundVariable(DitlabError, ValueError):
    """A formula variable has no partition assigned in the environment."""


# ------------------------------------------------- distributions and vectors

class InvalidDistribution(DitlabError, ValueError):
    """Weights are negative or do not sum to one."""


class LengthMismatch(DitlabError, ValueError):
    """Two sequences that must have equal length do not."""


class DimensionMismatch(DitlabError, ValueError):
    """Two arrays that must share a dimension do not."""


class ZeroProbabilityEvent(DitlabError, ValueError):
    """A conditional object was requested for an event of probability zero."""


# ------------------------------------------------------------------ matrices

class InvalidDensityMatrix(DitlabError, ValueError):
    """A matrix fails one of the density-matrix conditions."""


class NotHermitian(InvalidDensityMatrix):
    """The matrix is not Hermitian within tolerance."""


class TraceNotOne(InvalidDensityMatrix):
    """The trace differs from one beyond tolerance."""


class NotPSD(InvalidDensityMatrix):
    """The matrix has an eigenvalue below zero beyond tolerance."""


class InvalidStateVector(DitlabError, ValueError):
    """A state vector is not normalized within tolerance."""


class InvalidProjectorSet(DitlabError, ValueError):
    """Matrices fail to be a complete set of orthogonal projectors."""


class InvalidObservable(DitlabError, ValueError):
    """Eigenbasis is not orthonormal, or eigenvalues are malformed."""


class NotCommuting(DitlabError, ValueError):
    """A joint eigenbasis was required but the observables do not commute."""


class InternalInconsistency(DitlabError, RuntimeError):
    """Two internal computation routes disagreed; signals a library bug."""
