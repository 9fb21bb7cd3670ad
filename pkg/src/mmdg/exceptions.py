"""Exception hierarchy.

Every error raised on purpose by this package derives from :class:`MMDGError`.
Input problems (bad files, bad graphs handed in by the caller) derive from
:class:`InputError`; broken internal guarantees raise :class:`InvariantViolation`.
The CLI maps these two families onto distinct exit codes.
"""


class MMDGError(Exception):
    """Base class for all package errors."""


class InputError(MMDGError, ValueError):
    """The caller supplied data that violates a documented precondition."""


class InvariantViolation(MMDGError, RuntimeError):
    """An internal guarantee did not hold. Indicates a bug, not bad input."""


# graph algebra
class EmptySequenceError(InputError):
    pass


class SentinelCollisionError(InputError):
    pass


class EmptyInputError(InputError):
    pass


class InvalidGraphError(InputError):
    pass


class UniverseMismatchError(InputError):
    pass


# mining
class NoStartEdgeError(InputError):
    pass


class NoEndEdgeError(InputError):
    pass


class NoLowerWeightError(InvariantViolation):
    pass


class EmptyDatasetError(InputError):
    pass


# metrics
class NotASubgraphError(InputError):
    pass


class EmptyResultError(InputError):
    pass


# ingest
class EmptyFileError(InputError):
    pass


class MalformedLineError(InputError):
    def __init__(self, path, lineno, reason):
        self.path = path
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: {reason}")


class DuplicateTrialIdError(InputError):
    pass


class MissingColumnError(InputError):
    pass


class MissingScoreError(InputError):
    pass


class MissingMetadataError(InputError):
    pass


# serialization
class ParseError(InputError):
    pass


class SchemaVersionMismatchError(ParseError):
    pass
