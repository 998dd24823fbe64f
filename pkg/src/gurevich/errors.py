"""Exception types shared across the toolkit.

Structural problems (validation violations, implements-relation failures)
are returned as data by the operations that find them; exceptions are
reserved for conditions that make the requested computation impossible.
"""


class GurevichError(Exception):
    """Base class for all toolkit errors."""


class EmptyAutomaton(GurevichError):
    """An operation met the distinguished zero-state automaton.

    The library itself never raises this: trim and product return the
    zero-state value and every energy downstream of it is 0.  The class
    exists for callers that want to refuse the empty value explicitly.
    """


class NotConverged(GurevichError):
    """Power iteration ran out of iterations above tolerance.

    Carries the partial SpectralResult in ``result`` so callers can
    inspect the residual.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NotStronglyConnected(GurevichError):
    """A single-component operation received a non-strongly-connected input."""


class NotDeterministic(GurevichError):
    """A DFA-only operation received a nondeterministic automaton."""


class Overflow(GurevichError):
    """A partition sum left the double range; ``n`` names the first bad length."""

    def __init__(self, message, n=None):
        super().__init__(message)
        self.n = n


class StateCapExceeded(GurevichError):
    """A state-set construction (determinization, block translation) passed its cap."""


class BlockAlphabetTooLarge(GurevichError):
    """A block tuple alphabet would exceed the configured cap; ``count`` is the offender."""

    def __init__(self, message, count=None):
        super().__init__(message)
        self.count = count


class UnknownSymbol(GurevichError):
    """A word or cost table referenced a symbol outside the declared alphabet."""


class DocumentError(GurevichError):
    """An input file failed to parse or failed validation."""
