"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid user input: a malformed file or a violated model invariant."""


class ParseError(InputError):
    """Malformed text input; the message carries the offending line number."""


class ValidationError(InputError):
    """A domain object or argument violates one of its invariants."""
