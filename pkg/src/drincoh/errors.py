"""Shared exception types."""


class DeskScaleExceeded(ValueError):
    """An enumeration would exceed the configured desk-scale size guard."""


class ExactnessError(AssertionError):
    """A complex failed d∘d = 0 or an exactness check that must hold.

    Raised as a fatal diagnostic: it indicates a sign or indexing bug in the
    construction, never a tolerable numerical condition.
    """


class LESUnderdetermined(RuntimeError):
    """The long-exact-sequence deduction rules did not determine a degree.

    Raised instead of guessing; carries the degree and the ambiguous
    summands in its message.
    """
