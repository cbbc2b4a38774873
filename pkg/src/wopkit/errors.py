"""Exception hierarchy shared by all wopkit modules."""


class WopkitError(Exception):
    """Base class for every error raised by wopkit."""


class InvalidPairError(WopkitError, ValueError):
    pass


class InvariantError(WopkitError, ValueError):
    """A weak order or preference partition failed its structural checks."""


class InvalidRankingError(WopkitError, ValueError):
    pass


class MoveError(WopkitError, ValueError):
    pass


class ParameterError(WopkitError, ValueError):
    pass


class ResourceLimitError(WopkitError):
    """Requested size exceeds the enumeration guard."""


class RecordError(WopkitError, ValueError):
    """An inequality record or input file is malformed."""
