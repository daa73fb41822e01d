"""Exception hierarchy shared by all modules."""


class DotdepthError(Exception):
    """Base class for all library errors."""


class InputError(DotdepthError):
    """Malformed input: bad regex, bad JSON, alphabet mismatch, bad flags."""


class RegexSyntaxError(InputError):
    """Regex could not be parsed; carries the 0-based offset of the failure."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class EmptyWordError(InputError):
    """The empty word was supplied where languages live in non-empty words."""


class PreconditionError(DotdepthError):
    """An operation's documented precondition does not hold."""


class ResourceError(DotdepthError):
    """A configurable size cap was exceeded; carries the cap that fired."""

    def __init__(self, message: str, cap: int):
        super().__init__(f"{message} (cap: {cap})")
        self.cap = cap


class FalsificationError(DotdepthError):
    """An internally guaranteed bound failed; indicates an implementation bug."""
