"""Exception hierarchy shared by every doflab module."""


class DofLabError(Exception):
    """Base class for all errors raised by doflab."""


class ParameterError(DofLabError, ValueError):
    """A numeric parameter is outside its valid domain."""


class SizeError(ParameterError):
    """Network size parameters are invalid for the requested topology."""


class KindError(DofLabError, TypeError):
    """An operation was applied to an instance of the wrong kind."""


class CausalityError(DofLabError):
    """An encoder tried to read a history it is not entitled to."""


class PowerError(DofLabError):
    """Total transmit power in a channel use exceeded the budget."""


class DimensionError(DofLabError, ValueError):
    """Extension length or array shapes do not match a design."""


class InvalidFocusError(DofLabError, ValueError):
    """The focus pair of a cooperation collapse is not admissible."""


class EmptyMessagesError(DofLabError, ValueError):
    """Nulling would leave an instance with no messages."""


class RankError(DofLabError, ArithmeticError):
    """A zero-forcing system is singular."""


class InstabilityError(DofLabError, RuntimeError):
    """Too many Monte Carlo trials failed their decodability checks."""
