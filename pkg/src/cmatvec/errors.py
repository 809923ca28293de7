"""Exception types raised across the package."""


class CmatvecError(Exception):
    """Base class for all package errors."""


class ParameterError(CmatvecError, ValueError):
    pass


class DimensionError(CmatvecError, ValueError):
    pass


class VertexRangeError(CmatvecError, ValueError):
    """An endpoint or row index falls outside ``[0, n)``."""


class ParseError(CmatvecError, ValueError):
    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class FormatError(CmatvecError):
    """Bad magic bytes or unsupported container version."""


class CorruptionError(CmatvecError):
    """Container is truncated or decodes to an invalid structure."""
