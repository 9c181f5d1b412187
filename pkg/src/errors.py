"""
error types for the confsplit engine
each error carries the exit code the command line maps it to
"""

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_GUARD = 3


class ConfSplitError(Exception):
    """base class for every engine failure"""
    exit_code = EXIT_VERIFICATION_FAILED


class ModelError(ConfSplitError):
    """invalid model file, unknown catalog entry or failed validation"""
    exit_code = EXIT_INPUT_ERROR

    def __init__(self, message, problems=None):
        super().__init__(message)
        self.problems = list(problems or [])


class ConfigError(ConfSplitError):
    """run configuration out of range"""
    exit_code = EXIT_INPUT_ERROR


class IdentityInputError(ConfSplitError):
    """series handed to an identity checker do not line up"""
    exit_code = EXIT_INPUT_ERROR


class ResourceGuardError(ConfSplitError):
    """a basis or oracle ceiling was exceeded"""
    exit_code = EXIT_RESOURCE_GUARD

    def __init__(self, message, size=None, ceiling=None):
        super().__init__(message)
        self.size = size
        self.ceiling = ceiling


class CertificateError(ConfSplitError):
    """assembly refused because degeneration is not certified"""


class SignConsistencyError(ConfSplitError):
    """d1 does not square to zero or the S_n relations break"""

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}


class BasisMismatchError(ConfSplitError):
    """two independent constructions of the same space disagree"""

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}
