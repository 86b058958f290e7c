"""Exception hierarchy shared by the library and the command line."""


class CykitError(Exception):
    """Base class for all library errors."""


class DomainError(CykitError, ValueError):
    """An argument lies outside the domain of an operation."""


class PreconditionError(CykitError, ValueError):
    """An operation was called on input violating its stated precondition."""


class UnsupportedSingularityError(PreconditionError):
    """A rational function has a pole of order >= 2 where only simple poles are handled."""


class StructuralError(CykitError):
    """A construction that should exist (e.g. an annihilating operator) was not found."""


class EnumerationError(CykitError):
    """A recurrence hit a vanishing leading coefficient."""

    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or f"leading coefficient vanishes at step n={step}")


class SignatureError(CykitError):
    """No quadratic signature could be extracted from a recursion."""


class NotFoundError(CykitError, KeyError):
    """Catalog lookup failed."""

    def __init__(self, key, near=()):
        self.key = key
        self.near = list(near)
        msg = f"no catalog entry {key!r}"
        if self.near:
            msg += "; did you mean: " + ", ".join(self.near)
        super().__init__(msg)

    def __str__(self):
        return self.args[0]


class OperatorSyntaxError(CykitError, ValueError):
    """Malformed operator text."""

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = list(expected)
        text = f"{message} at position {position}"
        if self.expected:
            text += " (expected " + " or ".join(self.expected) + ")"
        super().__init__(text)


class InconsistencyError(CykitError):
    """Internal cross-checks disagree (e.g. a printed table value fails recomputation)."""
