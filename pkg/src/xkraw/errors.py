"""Exception types raised across the package."""


class XKrawError(Exception):
    """Base class for all package errors."""


class NonvanishingPole(XKrawError, ArithmeticError):
    """An epsilon -> 0 limit was requested for a series that still has a pole."""


class WindowOverflow(XKrawError, ArithmeticError):
    """A Laurent operation would need terms outside the [-2, 2] window."""


class AllZero(XKrawError, ValueError):
    pass


class DivisionByZeroPochhammer(XKrawError, ZeroDivisionError):
    """A Pochhammer denominator vanished for plain rational input."""


class IndexOutOfRange(XKrawError, IndexError):
    pass


class SingularEvaluationPoint(XKrawError, ValueError):
    """No evaluation point avoiding the zeros of f could be found."""


class InvalidConfig(XKrawError, ValueError):
    pass


class NegativeRate(InvalidConfig):
    """The parameters give a negative transition rate (p > 1/2)."""


class NegativeUnderRoot(XKrawError, ArithmeticError):
    pass


class DegenerateSpectrum(XKrawError, ValueError):
    pass
