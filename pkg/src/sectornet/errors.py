"""Exception hierarchy shared by all sectornet modules."""


class SectornetError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SectornetError):
    """A file row could not be parsed; carries the 1-based line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SchemaError(SectornetError):
    """A file header does not match the documented schema."""


class DomainError(SectornetError):
    """An input value lies outside the mathematical domain of an operation."""


class DegenerateSeriesError(SectornetError):
    """A return series has zero sample variance; carries the sector code."""

    def __init__(self, sector_code):
        super().__init__(f"sector {sector_code!r} has zero sample variance")
        self.sector_code = sector_code


class DegenerateError(SectornetError):
    """A vector is too degenerate (zero dispersion, perfect fit) to proceed."""


class UnknownSectorError(SectornetError):
    """A company record references a sector absent from the market definition."""


class InvalidExponentError(SectornetError):
    """Elementwise matrix power requires a positive even integer exponent."""


class ConvergenceError(SectornetError):
    """An iterative solver hit its iteration cap before reaching tolerance."""


class ReducibleMatrixError(SectornetError):
    """The matrix's support graph is disconnected; no unique Perron vector."""


class LengthMismatchError(SectornetError):
    """Two vectors that must be paired elementwise have different lengths."""


class InfeasibleError(SectornetError):
    """The constraint set of an optimization problem is empty (defensive)."""


class NumericalError(SectornetError):
    """A computation failed for numerical reasons (ill-conditioning, blow-up)."""


class PipelineError(SectornetError):
    """A pipeline stage failed; wraps the underlying error with the stage name."""

    def __init__(self, stage, cause):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause
