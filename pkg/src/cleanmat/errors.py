"""Exception types shared across the package."""


class CleanmatError(Exception):
    """Base class for all package errors."""


class NonRing(CleanmatError):
    """An operation table fails a ring axiom.

    Carries ``axiom`` (name) and ``witness`` (the offending element triple).
    """

    def __init__(self, axiom, witness=None):
        self.axiom = axiom
        self.witness = witness
        msg = f"table is not a commutative unital ring: {axiom}"
        if witness is not None:
            msg += f" fails at {witness}"
        super().__init__(msg)


class NotPrime(CleanmatError):
    pass


class UnsupportedSize(CleanmatError):
    pass


class RingMismatch(CleanmatError):
    pass


class IncompleteCover(CleanmatError):
    """Idempotents handed to a glue operation do not sum to 1."""


class NonMonicDivisor(CleanmatError):
    pass


class BudgetExceeded(CleanmatError):
    pass


class InfiniteRing(CleanmatError):
    pass


class NotCleanRing(CleanmatError):
    pass


class PreconditionNotJClean(CleanmatError):
    pass


class TwoNotUnit(CleanmatError):
    """Raised by the square-root supplement when 2 is not invertible."""


class NotInRadical(CleanmatError):
    pass


class NotInModule(CleanmatError):
    """A pair fails membership in the rank-2 module over Z[sqrt(-5)]."""


class VerificationFailed(CleanmatError):
    """A constructed certificate failed its mandatory re-check."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))
