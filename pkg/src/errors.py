"""Exception types. The CLI maps each one to a fixed exit code."""


class PermMobError(Exception):
    """Base class for every error raised on purpose by this package."""


class PermutationParseError(PermMobError, ValueError):
    """Permutation text could not be parsed (exit code 2)."""


class SizeGuardError(PermMobError):
    """A configured size cap refused the request (exit code 3)."""


class MobiusOverflowError(PermMobError, OverflowError):
    """A Möbius value left the signed 63-bit range (exit code 4)."""


class NotContainedError(PermMobError, ValueError):
    """An operation that needs sigma <= pi was given a non-contained pair."""


EXIT_OK = 0
EXIT_PARSE = 2
EXIT_GUARD = 3
EXIT_OVERFLOW = 4
