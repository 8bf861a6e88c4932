"""Exception types shared across modules."""


class MembershipError(ValueError):
    """A valuation is not in the type space it was checked against."""


class InconsistencyError(RuntimeError):
    """An internal invariant failed (negative cycle, characterization mismatch, ...).

    These cannot occur on valid input; seeing one means a bug.
    """
