"""Exception hierarchy shared by the solvers."""


class HPError(Exception):
    """Base class for every error raised by this package."""


class NonGenericError(HPError):
    """The linear system has a kernel of dimension two or more.

    Attributes
    ----------
    rank : int
        Numerical rank found during elimination.
    """

    def __init__(self, rank, message=None):
        self.rank = rank
        super().__init__(message or f"non-generic input: numerical rank {rank}")


class PrecisionExhausted(HPError):
    """The residual stayed above tolerance after the precision retry."""

    def __init__(self, residual, bits):
        self.residual = residual
        self.bits = bits
        super().__init__(f"precision exhausted at {bits} bits (residual {float(residual):.3e})")


class ConvergenceError(HPError):
    """Root iteration did not converge within the iteration budget."""

    def __init__(self, worst_residual, iterations):
        self.worst_residual = worst_residual
        self.iterations = iterations
        super().__init__(
            f"no convergence after {iterations} sweeps (worst residual {float(worst_residual):.3e})"
        )


class SeriesTruncated(HPError):
    """A coefficient beyond the stored truncation order was requested."""
