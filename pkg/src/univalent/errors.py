"""Exception hierarchy shared by every module of the package."""


class UnivalenceError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(UnivalenceError, ValueError):
    """An input lies outside the region where an operation is defined."""


class DomainExceeded(DomainError):
    pass


class PoleProximity(DomainError):
    pass


class ConstantFunction(DomainError):
    pass


class NonpositiveC(DomainError):
    pass


class NonpositiveK(DomainError):
    pass


class PLEQOne(DomainError):
    pass


class ResolutionTooLow(DomainError):
    pass


class NwwViolated(DomainError):
    pass


class ZeroParameter(DomainError):
    pass


class SpecParseError(UnivalenceError, ValueError):
    """Malformed function spec or coefficient list.

    ``offset`` is the byte offset of the first offending character.
    """

    def __init__(self, message: str, offset: int, text: str = ""):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at byte offset {offset}")
