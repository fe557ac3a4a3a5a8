"""Exception hierarchy shared by every cnslab module."""


class CnsLabError(Exception):
    """Base class for all library errors."""


class NotPrime(CnsLabError, ValueError):
    pass


class ZeroInverse(CnsLabError, ZeroDivisionError):
    pass


class DivisionByZero(CnsLabError, ZeroDivisionError):
    pass


class NotPIntegral(CnsLabError, ArithmeticError):
    """The rational has a negative exponent at p and cannot be read in F_p."""


class ContextMismatch(CnsLabError, ValueError):
    pass


class BadH(CnsLabError, ValueError):
    pass


class BadBounds(CnsLabError, ValueError):
    pass


class BadField(CnsLabError, ValueError):
    pass


class DeltaTooLarge(CnsLabError, ValueError):
    pass


class NotAsymmetric(CnsLabError, ValueError):
    pass


class CoverTooSmall(CnsLabError, ValueError):
    pass


class NotAMember(CnsLabError, ValueError):
    pass


class GridTooLarge(CnsLabError, ValueError):
    pass


class TooLarge(CnsLabError, ValueError):
    pass


class SpaceTooLarge(CnsLabError, ValueError):
    pass


class EmptyInput(CnsLabError, ValueError):
    pass


class ZeroAtBstar(CnsLabError, ArithmeticError):
    """The distinguished point evaluates to zero; the construction is broken."""


class NotUniquePoint(CnsLabError, ArithmeticError):
    """More than one grid point survives the Q-side polynomial."""
