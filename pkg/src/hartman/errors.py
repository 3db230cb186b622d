"""Exception hierarchy shared by the solvers, the sweep driver and the CLI."""


class HartmanError(Exception):
    """Base class for every error raised by this package."""


class SingularMatrix(HartmanError, ArithmeticError):
    pass


class DimensionMismatch(HartmanError, ValueError):
    pass


class ZeroArgument(HartmanError, ValueError):
    pass


class RangeExceeded(HartmanError, OverflowError):
    """An evanescent growth factor exp(Re(kappa) * L) would leave double range."""


class DegenerateEnergy(HartmanError, ValueError):
    """Energy sits on a real barrier top (kappa = 0)."""


class CouplingOutOfRange(HartmanError, ValueError):
    pass


class NonConvergentDerivative(HartmanError, ArithmeticError):
    pass


class PlanInvalid(HartmanError, ValueError):
    pass


class ConfigError(HartmanError, ValueError):
    """Configuration problem tied to one key."""

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")


class UnknownKey(ConfigError):
    pass


class MissingKey(ConfigError):
    pass


class OutOfRange(ConfigError):
    def __init__(self, key, value, message):
        self.value = value
        super().__init__(key, f"{value!r} {message}")
