"""Exception types raised across the package."""


class TauError(Exception):
    """Base class for every error raised by tauatoms."""


class ZeroInputError(TauError, ValueError):
    pass


class OverflowInputError(TauError, OverflowError):
    """Input magnitude exceeds the supported 64-bit range."""


class NotPrimeError(TauError, ValueError):
    pass


class BadModulusError(TauError, ValueError):
    pass


class NoGeneratorError(TauError, RuntimeError):
    pass


class UnitInputError(TauError, ValueError):
    """Raised when a unit (+1 or -1) is passed where a nonunit is required."""


class TooManyPartitionsError(TauError, RuntimeError):
    pass


class TableTooLargeError(TauError, RuntimeError):
    pass


class UnsupportedModulusError(TauError, ValueError):
    """No closed-form classifier exists for the requested modulus."""


class UnknownCheckError(TauError, KeyError):
    pass


class PrimeSearchExhaustedError(TauError, RuntimeError):
    pass
