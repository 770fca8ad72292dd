"""Exceptions raised across corpus_prep.

Every exception carries the process exit status the CLI reports for it:
1 for configuration problems, 2 for data problems, 3 for I/O problems.
"""


class CorpusPrepError(Exception):
    """Base class for all corpus_prep errors."""

    exit_code = 2


class ConfigurationError(CorpusPrepError):
    """Invalid configuration: unknown stage or filter, bad parameter, missing provider."""

    exit_code = 1


class ValidationError(CorpusPrepError):
    """A value violates the invariants of its type."""

    exit_code = 2


class RecordParseError(ValidationError):
    """A serialized record could not be parsed."""

    def __init__(self, message, field=None, line_number=None):
        super().__init__(message)
        self.field = field
        self.line_number = line_number


class SerializationError(ValidationError):
    """A value cannot be written as a line record."""


class AlignmentError(ValidationError):
    """Parallel documents cannot be aligned."""


class ContractError(ValidationError):
    """A call violated an operation precondition."""


class SignatureMismatchError(ValidationError):
    """Two MinHash signatures were built with different parameters."""


class EmptySetError(ValidationError):
    """An operation needs a non-empty shingle set."""


class RatioError(ValidationError):
    """A length ratio is undefined because the original text is empty."""


class ShapeError(ValidationError):
    """A score matrix is not rectangular or has missing values."""


class InvalidVoteError(ValidationError):
    """An arena vote compares a model against itself or has an unknown outcome."""


class CorpusIOError(CorpusPrepError):
    """An input could not be read or an output could not be written."""

    exit_code = 3
