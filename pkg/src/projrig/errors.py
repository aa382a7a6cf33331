"""Exception hierarchy shared by all projrig modules."""


class ProjrigError(Exception):
    """Base class for every error raised by this package."""


class KindMismatchError(ProjrigError, TypeError):
    pass


class DegenerateJoinError(ProjrigError, ValueError):
    """Join or meet of two projectively equal elements."""


class IncidenceError(ProjrigError, ValueError):
    """A declared incidence does not hold exactly.

    ``residual`` is the exact dot product of the offending pair.
    """

    def __init__(self, message, point=None, line=None, residual=None):
        super().__init__(message)
        self.point = point
        self.line = line
        self.residual = residual


class StructureError(ProjrigError, ValueError):
    """Malformed incidence structure (duplicate or unknown identifiers)."""


class ChartError(ProjrigError, ValueError):
    """Operation needs a chart-valid configuration."""

    def __init__(self, message, entity=None):
        super().__init__(message)
        self.entity = entity


class NormalizationError(ProjrigError, RuntimeError):
    def __init__(self, message, blocking=None):
        super().__init__(message)
        self.blocking = blocking


class SingularTransformError(ProjrigError, ValueError):
    pass


class NotInKernelError(ProjrigError, ValueError):
    pass


class ResourceLimitError(ProjrigError, ValueError):
    pass


class PreconditionError(ProjrigError, ValueError):
    pass


class FileFormatError(ProjrigError, ValueError):
    """Problems reading a configuration file.

    ``line`` and ``column`` locate JSON syntax errors when known.
    """

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class SchemaVersionError(FileFormatError):
    pass
