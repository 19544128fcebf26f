"""Exception hierarchy.

Every error raised by the toolkit derives from :class:`CointkitError`. The two
intermediate classes map onto CLI exit codes: :class:`DataError` (bad input
data or configuration, exit 2) and :class:`NumericalError` (a computation that
cannot proceed, exit 3).
"""


class CointkitError(Exception):
    exit_code = 1


class DataError(CointkitError, ValueError):
    exit_code = 2


class NumericalError(CointkitError, ArithmeticError):
    exit_code = 3


# data / contract errors
class EmptyOverlap(DataError):
    pass


class DuplicateName(DataError):
    pass


class NonPositiveForLog(DataError):
    pass


class TooShort(DataError):
    pass


class TooFewObservations(TooShort):
    pass


class RangeOutOfBounds(DataError):
    pass


class BadTransform(DataError):
    pass


class DataFileNotFound(DataError, FileNotFoundError):
    pass


class ParseError(DataError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class MissingColumn(DataError):
    pass


class GapInSeries(DataError):
    def __init__(self, year, message=None):
        self.year = year
        super().__init__(message or f"missing observation for year {year}")


class ConfigError(DataError):
    pass


class BadOrdering(DataError):
    pass


class RankOutOfRange(DataError):
    pass


class BadSpec(DataError):
    pass


# numerical failures
class RankDeficient(NumericalError):
    pass


class NotPositiveDefinite(NumericalError):
    pass


class ZeroPivot(NumericalError):
    pass


class ZeroLoading(NumericalError):
    pass


class PipelineError(CointkitError):
    """A pipeline stage failed; wraps the underlying toolkit error."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 1)
        super().__init__(f"stage '{stage}' failed: {type(cause).__name__}: {cause}")
