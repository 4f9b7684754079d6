"""Exception hierarchy shared by every module."""


class PisotTriplesError(Exception):
    """Base class for all library errors."""


class DomainError(PisotTriplesError, ValueError):
    """An input violates an operation's precondition."""


class FieldMismatchError(DomainError):
    pass


class CapExceeded(PisotTriplesError):
    """Splitting-field construction needed a degree above the configured cap."""

    def __init__(self, cap, partial_degree, needed_degree=None):
        self.cap = cap
        self.partial_degree = partial_degree
        self.needed_degree = needed_degree
        msg = f"degree cap {cap} exceeded (reached degree {partial_degree}"
        if needed_degree is not None:
            msg += f", next step needs {needed_degree}"
        super().__init__(msg + ")")


class UndecidableError(PisotTriplesError):
    """Refinement reached its precision ceiling without a decision."""


class BudgetExceeded(PisotTriplesError):
    """Integer factorization ran out of its time budget.

    ``partial`` holds the primes found so far and ``cofactor`` the
    unfactored remainder. The search layer adds ``z`` and ``checkpoint``.
    """

    def __init__(self, n, partial, cofactor, budget_ms):
        self.n = n
        self.partial = partial
        self.cofactor = cofactor
        self.budget_ms = budget_ms
        self.z = None
        self.checkpoint = None
        super().__init__(
            f"factorization budget of {budget_ms} ms exhausted on {n}; "
            f"unfactored cofactor {cofactor}"
        )


class Cancelled(PisotTriplesError):
    """The caller's cancellation token fired."""


class InternalError(PisotTriplesError, AssertionError):
    """An exact self-check failed; indicates a bug, not bad input."""
