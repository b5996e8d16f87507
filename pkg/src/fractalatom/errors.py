"""Exception hierarchy for fractalatom.

Input validation failures derive from both :class:`FractalAtomError` and
``ValueError`` so callers can catch either. Solver-side failures (bracketing,
quadrature, shooting) derive from the base class only.
"""

__all__ = [
    "FractalAtomError",
    "DomainError",
    "DegenerateExponentError",
    "EmbeddingBoundError",
    "ScaleFreeBoundaryError",
    "UnstableFractalityError",
    "NoBoundStateError",
    "BracketError",
    "QuadratureError",
    "ConvergenceError",
    "GridTooSmallError",
    "SpectrumError",
    "NearThresholdWarning",
]


class FractalAtomError(Exception):
    """Base class for all fractalatom errors."""


class DomainError(FractalAtomError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class DegenerateExponentError(DomainError):
    """The potential exponent degenerates to zero (volume dimension equals
    twice the surface dimension), so no power-law potential exists."""


class EmbeddingBoundError(DomainError):
    """Fractality violates the embedding bounds of the embedded scenario."""


class ScaleFreeBoundaryError(DomainError):
    """The requested quantity is singular on the scale-free locus."""


class UnstableFractalityError(DomainError):
    """The fractality admits no stable ground state for this potential."""


class NoBoundStateError(FractalAtomError):
    """No classically allowed region exists at the requested energy."""


class BracketError(FractalAtomError):
    """A root bracket could not be established within the iteration budget."""


class QuadratureError(FractalAtomError):
    """The adaptive quadrature failed to reach the requested tolerance."""


class ConvergenceError(FractalAtomError):
    """An iterative solve stopped without satisfying its convergence test."""


class GridTooSmallError(FractalAtomError):
    """The shooting grid cannot resolve the requested state."""


class SpectrumError(FractalAtomError):
    """One or more levels of a batched solve failed.

    Attributes
    ----------
    levels : list
        Successfully solved entries, in order.
    failures : list of (int, Exception)
        The failed quantum numbers with their causes.
    """

    def __init__(self, message, levels, failures):
        super().__init__(message)
        self.levels = levels
        self.failures = failures


class NearThresholdWarning(RuntimeWarning):
    """Emitted when the stability margin is small enough that spectra are
    dominated by exponentially separated turning points."""
