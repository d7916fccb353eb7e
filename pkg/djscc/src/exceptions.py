"""Exception types raised by the simulator library."""


class DjsccError(Exception):
    """Base class for simulator errors."""


class InvalidArgumentError(DjsccError, ValueError):
    """An argument violates an operation precondition."""


class ConfigurationError(DjsccError, ValueError):
    """An experiment configuration file cannot be read or validated."""


class ResultWriteError(DjsccError, OSError):
    """A result file could not be written or read."""

    def __init__(self, path, reason):
        self.path = str(path)
        self.reason = str(reason)
        super().__init__(f"Failed to access result file {self.path}: {self.reason}")
