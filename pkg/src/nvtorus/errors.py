"""Exception types shared across the package."""

from __future__ import annotations


class NvTorusError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(NvTorusError):
    """Vector, matrix or group dimensions do not match."""


class IndexOutOfRange(NvTorusError):
    """A slot index lies outside 1..n."""


class NonCommutingImages(NvTorusError):
    """Two basis images fail to commute, so the data is not a morphism of Z^k."""

    def __init__(self, first: int, second: int):
        super().__init__(
            f"basis images {first} and {second} do not commute; "
            "the data does not define a morphism out of Z^k"
        )
        self.first = first
        self.second = second


class Inconsistent(NvTorusError):
    """A linear system has no solution."""


class Singular(NvTorusError):
    """A linear system has no unique solution."""


class NotIrreducible(NvTorusError):
    """The morphism induces more than one index orbit."""


class ConditionViolated(NvTorusError):
    """The divisibility condition fails, so no affine realization exists."""

    def __init__(self, witness):
        super().__init__(f"divisibility condition fails at {witness}")
        self.witness = witness


class NonIntegralTranslation(NvTorusError):
    """Realization and permutation data together force a non-integer translation."""


class BadDecomposition(NvTorusError):
    """A rebase decomposition has the wrong length or the wrong sum."""


class ComponentNotAffine(NvTorusError):
    """A component of a reducible morphism has no affine realization."""

    def __init__(self, component_index: int, witness):
        super().__init__(
            f"component {component_index} is not affine (witness {witness})"
        )
        self.component_index = component_index
        self.witness = witness


class DegenerateLefschetz(NvTorusError):
    """det(I - A) vanishes, so fixed points cannot be counted by enumeration."""


class BadParameters(NvTorusError):
    """A construction was requested with unusable parameters."""


class BaseMismatch(NvTorusError):
    """The perturbation base map does not fit the target morphism."""


class SpecFormatError(NvTorusError):
    """A morphism spec file is malformed; the message names the offending field."""
