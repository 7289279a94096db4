"""Exception types shared across the package."""


class CapExceeded(Exception):
    """An exact routine was asked to run above its documented size cap."""


class Infeasible(ValueError):
    """The instance has no solution (e.g. a hitting set with an empty edge)."""


class InvariantViolation(RuntimeError):
    """A structural property that the theory guarantees failed on an instance."""
