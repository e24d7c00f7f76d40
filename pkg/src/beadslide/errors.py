"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`BeadError`,
so callers (and the CLI) can separate input problems from bugs.
"""


class BeadError(Exception):
    """Base class for all package errors."""


# -- rational / JSON parsing ------------------------------------------------

class MalformedRational(BeadError, ValueError):
    pass


class NonCanonicalRational(MalformedRational):
    """A well-formed ``p/q`` string that is not in lowest terms."""


class MalformedInput(BeadError, ValueError):
    pass


# -- configurations ---------------------------------------------------------

class NotMonotone(BeadError, ValueError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DimensionMismatch(BeadError, ValueError):
    pass


class BasePointMismatch(BeadError, ValueError):
    pass


class IndexOutOfRange(BeadError, IndexError):
    pass


class InadmissibleSlide(BeadError, ValueError):
    pass


class TooFewBeads(BeadError, ValueError):
    pass


# -- planner ----------------------------------------------------------------

class PreconditionOrder(BeadError, ValueError):
    """Source is not componentwise below the target."""


class PreconditionSlideable(BeadError, ValueError):
    """Target violates b_k > b_{k-2}."""


class InternalBoundExceeded(BeadError, RuntimeError):
    """The sweep loop outran its precomputed bound. Always a bug."""


class NoCertificate(BeadError):
    """The best-effort planner gave up. Not a proof of unreachability."""

    def __init__(self, message, sweeps_used=0):
        super().__init__(message)
        self.sweeps_used = sweeps_used


class NonpositiveEpsilon(BeadError, ValueError):
    pass


class PatternMismatch(BeadError, ValueError):
    pass


# -- majorization -----------------------------------------------------------

class NotNondecreasing(BeadError, ValueError):
    pass


class NotConcave(BeadError, ValueError):
    pass


class BasePointNotZero(BeadError, ValueError):
    pass


class PreconditionDominance(BeadError, ValueError):
    pass


class PreconditionSorted(BeadError, ValueError):
    pass


class PreconditionTotals(BeadError, ValueError):
    pass


class PreconditionDomain(BeadError, ValueError):
    """An input lies outside the domain where the test function is defined."""


class DerivativeUnavailable(BeadError, ValueError):
    pass


class DerivativeMismatch(DerivativeUnavailable):
    """Supplied derivative disagrees with central finite differences."""


class UnknownFunction(BeadError, ValueError):
    pass


# -- oracle -----------------------------------------------------------------

class BudgetExceeded(BeadError, RuntimeError):
    pass


class OffLattice(BeadError, ValueError):
    pass
