# Standard Library

# My Library
from .color import red


class HyperGridError(Exception):
    """ Base class of every failure the library reports to its callers """

    exit_code: int = 2

    def __init__(self, message: str = "", **details) -> None:
        self.details = details
        if details:
            extra = ", ".join(f"{k}={red(v, True)}" for k, v in details.items())
            message = f"{message} ({extra})" if message else extra
        super().__init__(message)


class UsageError(HyperGridError):
    exit_code = 1


class InvalidParams(HyperGridError):
    pass


class RootHasNoRing(HyperGridError):
    pass


class RootHasNoParent(HyperGridError):
    pass


class InvalidAddress(HyperGridError):
    pass


class PatchTooSmall(HyperGridError):
    pass


class BoundSearchOverflow(HyperGridError):
    pass


class TemplateTooLarge(HyperGridError):
    pass


class OutOfBall(HyperGridError):
    pass


class NotRegular(HyperGridError):
    pass


class IndexOutOfRange(HyperGridError):
    pass


class OracleTooLarge(HyperGridError):
    pass
