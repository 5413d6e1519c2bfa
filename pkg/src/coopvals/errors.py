"""Exception hierarchy for the coopvals package.

Two error families matter to callers.  ParseError covers malformed game
files and is mapped to exit code 2 by the command line tool.  DomainError
covers violated mathematical preconditions (class guards, bound order,
degenerate denominators) and is mapped to exit code 1.
"""

__all__ = [
    "CoopvalsError",
    "ParseError",
    "DomainError",
    "PlayerCountExceeded",
    "TooFewPlayers",
    "InvalidPlayerIndex",
    "DuplicateCoalition",
    "NonzeroEmptyCoalition",
    "EmptyBaseCoalition",
    "NonPositiveScale",
    "UnknownBoundFunctional",
    "NonCovariantUpperBound",
    "NotRegularLowerBound",
    "NotInClass",
    "BoundOrderViolated",
    "NotBalanced",
    "DegenerateBounds",
    "SamplerExhausted",
    "PreconditionNotMet",
]


class CoopvalsError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(CoopvalsError, ValueError):
    """Malformed game file: bad JSON, bad coalition key, bad rational literal."""


class DomainError(CoopvalsError):
    """A mathematical precondition does not hold for the given input."""


class PlayerCountExceeded(DomainError):
    """More players than the configured cap (COOPVALS_MAX_PLAYERS, default 20)."""


class TooFewPlayers(DomainError):
    """The operation needs more players than the game has."""


class InvalidPlayerIndex(DomainError, ValueError):
    """A coalition mentions a player outside the game's player set."""


class DuplicateCoalition(DomainError, ValueError):
    """The same coalition appears twice in a game description."""


class NonzeroEmptyCoalition(DomainError, ValueError):
    """The empty coalition must have worth 0 exactly."""


class EmptyBaseCoalition(DomainError, ValueError):
    """Base and unanimity games require a nonempty carrier coalition."""


class NonPositiveScale(DomainError, ValueError):
    """Covariance transforms require a strictly positive scale factor."""


class UnknownBoundFunctional(DomainError, KeyError):
    """No bound functional with the given identifier is registered."""


class NonCovariantUpperBound(DomainError):
    """Deriving a lower bound needs a translation covariant upper bound."""


class NotRegularLowerBound(DomainError):
    """The lower bound does not vanish on the shifted game v - mu(v)."""


class NotInClass(DomainError):
    """The game lies outside the class on which the operation is defined."""

    def __init__(self, class_name: str):
        self.class_name = class_name
        super().__init__(class_name)

    def __str__(self) -> str:
        return f"not applicable: {self.class_name}"


class BoundOrderViolated(DomainError):
    """Some component of the lower bound exceeds the upper bound."""


class NotBalanced(DomainError):
    """v(N) lies outside the bracket between the bound sums."""


class DegenerateBounds(DomainError):
    """The bound pair collapses in a way the defining formula cannot handle."""


class SamplerExhausted(DomainError, RuntimeError):
    """Rejection sampling hit its retry cap without an in-class game."""


class PreconditionNotMet(DomainError):
    """A checked axiom precondition fails; the check is a skip, not a failure."""
