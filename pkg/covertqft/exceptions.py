"""Exceptions raised by the cover TQFT engine."""


class CoverTQFTError(Exception):
    """Base class for every error raised by covertqft."""


class PartitionError(CoverTQFTError, ValueError):
    """A partition is malformed or two partitions disagree on d."""


class NonInvertibleError(CoverTQFTError, ZeroDivisionError):
    """A zero series, scalar, metric entry or matrix had to be inverted."""


class SeriesDomainError(CoverTQFTError, ValueError):
    """exp/log was called outside its domain of convergence as a formal series."""


class OracleBoundExceeded(CoverTQFTError):
    """The brute-force enumeration was asked for more than its hard cap."""


class VarianceError(CoverTQFTError):
    """Two indices of the same variance were contracted without the metric."""


class InternalConsistencyError(CoverTQFTError):
    """An identity that must hold by construction failed (a bug, not bad input)."""


class ConventionError(InternalConsistencyError):
    """No anti-diagonal convention in the candidate set is consistent."""


class PositionedError(CoverTQFTError):
    """Error pointing at a location inside a piece of source text."""

    def __init__(self, message, text='', position=0):
        self.text = text
        self.position = position
        self.line = text.count('\n', 0, position) + 1
        self.column = position - (text.rfind('\n', 0, position) + 1) + 1
        super().__init__(f'{message} (line {self.line}, column {self.column})')
        self.message = message


class CobordismSyntaxError(PositionedError):
    """The cobordism text does not follow the grammar."""


class CobordismTypeError(PositionedError):
    """The cobordism parses but glues boundaries that cannot be glued."""
