"""
Error types for the tubal tensor toolkit.

Every error derives from TubalError and from the builtin it most resembles,
so callers can catch either family.
"""


class TubalError(Exception):
    """Root of all library errors."""


class DimMismatch(TubalError, ValueError):
    """Operands have non-conformable dimensions."""

    def __init__(self, msg: str, *dims):
        super().__init__(msg if not dims else f"{msg}: {dims}")
        self.dims = dims


class SymmetryViolation(TubalError, ValueError):
    """A spectral tensor is not conjugate symmetric along the tube axis."""


class ConvergenceFailure(TubalError, RuntimeError):
    """A per-slice SVD failed to converge."""

    def __init__(self, slice_index: int, cause: Exception | None = None):
        super().__init__(f"SVD did not converge on Fourier slice {slice_index}")
        self.slice_index = slice_index
        self.cause = cause


class IndexOutOfRange(TubalError, IndexError):
    pass


class DegenerateInput(TubalError, ValueError):
    """Input is zero (or empty) where a nonzero quantity is required."""


class NotOrthonormal(TubalError, ValueError):
    """Factor tensor fails V^T * V = I within tolerance."""


class SketchRankDeficient(TubalError, RuntimeError):
    pass


class EmptyPlan(TubalError, RuntimeError):
    """Bernoulli sampling selected no slice after all redraws."""


class InsufficientSupport(TubalError, ValueError):
    """Fewer positive-probability indices than distinct samples requested."""


class RankTooLarge(TubalError, ValueError):
    pass


class NumericalDivergence(TubalError, RuntimeError):
    """A solver iterate became non-finite."""

    def __init__(self, iteration: int, what: str = "iterate"):
        super().__init__(f"non-finite {what} at iteration {iteration}")
        self.iteration = iteration


class FormatError(TubalError, ValueError):
    """Malformed tensor or image file."""

    def __init__(self, msg: str, offset: int = 0, path=None):
        where = f"{path}: " if path is not None else ""
        super().__init__(f"{where}{msg} (byte offset {offset})")
        self.offset = offset
        self.path = path


class IntersectionRankDeficient(UserWarning):
    """The CUR t-NN intersection tensor lost tubal rank; result may be poor."""
