"""Exception types raised across the package."""


class SpinalError(Exception):
    """Base class for all errors raised by :mod:`spinalgroups`."""


class InvalidTuple(SpinalError, ValueError):
    pass


class ContextMismatch(SpinalError, ValueError):
    pass


class NotInL(SpinalError, ValueError):
    """The word has nonzero ``a``-exponent sum, so it is not in ``L(H)``."""


class NotInStabilizer(SpinalError, ValueError):
    pass


class NotInDerived(SpinalError, ValueError):
    pass


class NotNormalized(SpinalError, ValueError):
    pass


class ReductionFailed(SpinalError, RuntimeError):
    pass


class DepthMismatch(SpinalError, ValueError):
    pass


class DegreeCap(SpinalError, ValueError):
    pass


class NotSubgroup(SpinalError, ValueError):
    pass


class Unreachable(SpinalError, RuntimeError):
    pass


class UnknownSuite(SpinalError, KeyError):
    pass


class ConfigInvalid(SpinalError, ValueError):
    pass


class WordSyntaxError(SpinalError, ValueError):
    pass
