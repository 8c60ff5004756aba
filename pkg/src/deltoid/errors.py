"""Exception taxonomy shared by all deltoid modules."""


class DeltoidError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(DeltoidError, ValueError):
    """An argument violates a documented precondition."""


class InvalidStateError(DeltoidError, ValueError):
    """An operation would produce a value outside its declared domain."""


class ResourceLimitError(DeltoidError, RuntimeError):
    """A size cap was exceeded (override with DELTOID_MAX_N where documented)."""


class NotADeltaMatroidError(DeltoidError, ValueError):
    """A feasible family fails the symmetric exchange axiom.

    Carries a witness triple (F1, F2, i) for which no exchange partner exists.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidCombinationError(DeltoidError, ValueError):
    """A signed Minkowski combination does not define a valid polytope."""


class InternalVerificationError(DeltoidError, RuntimeError):
    """A mathematically guaranteed invariant failed; indicates a bug."""
