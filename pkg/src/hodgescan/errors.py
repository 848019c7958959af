"""Exception hierarchy with stable error codes.

Every failure the toolkit reports carries a ``code`` (a stable string used in
result files and CLI diagnostics) and an ``exit_code`` following the CLI
contract: 1 for input errors, 2 for algorithmic failures, 3 for internal
invariant violations.
"""


class HodgescanError(Exception):
    code = "ERROR"
    exit_code = 3

    def __init__(self, message="", **details):
        super().__init__(message or self.code)
        self.details = details


class InputError(HodgescanError):
    code = "INPUT_ERROR"
    exit_code = 1


class FormatError(InputError):
    """Malformed input file; ``line`` and ``column`` are 1-based when known."""

    code = "FORMAT_ERROR"

    def __init__(self, message, line=None, column=None, **details):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message, line=line, column=column, **details)
        self.line = line
        self.column = column


class AlgorithmicFailure(HodgescanError):
    exit_code = 2


class InvariantViolation(HodgescanError):
    code = "INVARIANT_VIOLATION"
    exit_code = 3


class DependentRows(AlgorithmicFailure):
    code = "DEPENDENT_ROWS"


class SingularEnclosure(AlgorithmicFailure):
    code = "SINGULAR_ENCLOSURE"


class InsufficientPrecision(AlgorithmicFailure):
    code = "INSUFFICIENT_PRECISION"


class GapNotFound(AlgorithmicFailure):
    code = "GAP_NOT_FOUND"


class AmbiguousGap(AlgorithmicFailure):
    code = "AMBIGUOUS_GAP"


class PolarizationNotInLattice(AlgorithmicFailure):
    code = "POLARIZATION_NOT_IN_LATTICE"


class NotARing(AlgorithmicFailure):
    code = "NOT_A_RING"


class NonDivisible(InputError):
    code = "NON_DIVISIBLE"


class NotPositiveDefinite(InputError):
    code = "NOT_POSITIVE_DEFINITE"


class UnsupportedDegree(InputError):
    code = "UNSUPPORTED_DEGREE"


class SingularPhamGram(AlgorithmicFailure):
    code = "SINGULAR_PHAM_GRAM"


class NegativeNormEnclosure(AlgorithmicFailure):
    code = "NEGATIVE_NORM_ENCLOSURE"


class NonpositiveNorm(AlgorithmicFailure):
    code = "NONPOSITIVE_NORM"


class Cancelled(HodgescanError):
    code = "CANCELLED"
    exit_code = 2
