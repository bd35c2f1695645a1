"""Exception hierarchy for hypercover.

Every error carries the exit code the CLI reports for it.
"""

from typing import FrozenSet, Optional, Tuple


class HypercoverError(Exception):
    """Base class for all hypercover errors."""

    exit_code: int = 1


class InputError(HypercoverError):
    """Malformed input: bad file, out-of-range vertex, partial partition."""

    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnsupportedInputError(HypercoverError):
    """Well-formed input outside the domain of an operation."""

    exit_code = 2


class InfeasibleError(HypercoverError):
    """Preconditions of a cover or levelling are violated."""

    exit_code = 1


class VerificationError(HypercoverError):
    """A partition failed verification where validity was required."""

    exit_code = 1

    def __init__(self, message: str, witness: Optional[Tuple[int, int]] = None):
        self.witness = witness
        super().__init__(message)


class BudgetExhaustedError(HypercoverError):
    """A resampling or search budget ran out before a result was found."""

    exit_code = 3

    def __init__(
        self,
        message: str,
        bad_vertices: FrozenSet[int] = frozenset(),
        path: str = "",
    ):
        self.bad_vertices = bad_vertices
        self.path = path
        super().__init__(message)


class InternalError(HypercoverError):
    """An invariant of a constructive argument was violated."""

    exit_code = 70
