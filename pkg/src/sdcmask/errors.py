"""Exception types shared across the toolkit.

Every error that can surface on the command line carries an ``exit_code``
class attribute so the CLI maps failures to stable, documented process
exit statuses (see ``sdcmask --help``).
"""


class MaskingError(Exception):
    """Base class for all sdcmask errors."""

    exit_code = 1


class ConfigError(MaskingError):
    """Invalid or inconsistent run configuration."""

    exit_code = 2


class AlphaOutOfRange(ConfigError):
    """Similarity parameter outside its admissible range."""

    exit_code = 2


class MalformedHeader(MaskingError):
    """CSV header row missing, empty, or with duplicate column names."""

    exit_code = 4


class RaggedRows(MaskingError):
    """CSV rows do not all share the header's column count."""

    exit_code = 4


class ParseError(MaskingError):
    """A targeted cell could not be parsed as a finite number.

    ``row`` is the 1-based physical file row (the header is row 1) and
    ``column`` is the column name.
    """

    exit_code = 4

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class NonPositiveValue(MaskingError):
    """Strictly positive data required (multiplicative masking, log scale)."""

    exit_code = 5

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class EmptyColumn(MaskingError):
    """A column with zero observations where n >= 1 is required."""

    exit_code = 6


class LengthMismatch(MaskingError):
    """Paired columns have different lengths."""

    exit_code = 6


class ZeroVariance(MaskingError):
    """An operation undefined for constant data received constant data."""

    exit_code = 6


class EmptyRequest(MaskingError):
    """A draw of zero deviates was requested."""

    exit_code = 6


class NegativeNoiseVariance(MaskingError):
    """Calibration produced a noise variance below the rounding floor.

    The additive calibration is analytically nonnegative, so this signals
    inconsistent inputs rather than ordinary floating-point jitter.
    """

    exit_code = 7


class DegenerateResidual(MaskingError):
    """Exact standardization has no usable residual direction left.

    Raised when the base draw lies (numerically) in the span of the
    constraint vectors, or when n is too small to satisfy the requested
    moment and orthogonality conditions simultaneously.
    """

    exit_code = 8


class IoError(MaskingError):
    """Output could not be written."""

    exit_code = 9


#: Exit codes documented in the CLI help, keyed by meaning.
EXIT_CODES = {
    0: "success",
    1: "internal error",
    2: "invalid configuration (bad flags, alpha out of range, missing key column)",
    3: "input file not found",
    4: "malformed CSV input (header, ragged rows, unparsable targeted cell)",
    5: "non-positive value in a column that must be strictly positive",
    6: "degenerate statistics (empty column, length mismatch, zero variance)",
    7: "noise calibration failed (negative noise variance)",
    8: "degenerate residual in exact noise standardization",
    9: "output could not be written",
}
