class ConstraintError(ValueError):
    """An argument violates one of the domain bounds; the message names the bound."""


class UnsupportedDigitError(ConstraintError):
    """No corollary construction exists for the requested digit."""
