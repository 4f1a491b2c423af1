"""Exception types shared across the package."""

from __future__ import annotations


class ChannelValidationError(ValueError):
    """A channel violates a structural invariant (dimensions, sign, emptiness).

    ``receiver`` and ``state`` locate the offending entry (0-based) when known.
    """

    def __init__(self, message, *, receiver=None, state=None):
        super().__init__(message)
        self.receiver = receiver
        self.state = state


class GuardExceededError(ValueError):
    """Requested combinatorial work above the configured safety guard."""


class EmptyRegionError(ValueError):
    """The polyhedral region is empty; the requested optimum does not exist."""


class InfeasibleTargetError(ValueError):
    """GDoF target outside the polyhedral region.

    Carries a negative-circuit witness from the feasibility test: ``cycle`` is
    the vertex sequence and ``cycle_length`` its (strictly negative) length.
    """

    def __init__(self, message, *, cycle=None, cycle_length=None):
        super().__init__(message)
        self.cycle = cycle
        self.cycle_length = cycle_length


class PolyhedralViolationError(ValueError):
    """A power allocation drives some user's rate expression negative."""

    def __init__(self, message, *, user=None, state=None):
        super().__init__(message)
        self.user = user
        self.state = state


class NonConvergenceError(RuntimeError):
    """Fixed-point iteration hit its cap without reaching an exact fixed point."""

    def __init__(self, message, *, trace=None):
        super().__init__(message)
        self.trace = trace
