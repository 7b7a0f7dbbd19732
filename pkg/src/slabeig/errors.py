"""Exception hierarchy shared by all modules."""


class SlabError(Exception):
    """Base class for solver errors."""


class DomainError(SlabError, ValueError):
    """An argument lies outside the domain of an operation."""


class ParseError(SlabError, ValueError):
    """A potential expression does not follow the grammar.

    Attributes
    ----------
    position : int
        Zero-based character offset where parsing failed.
    """

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} (at position {position} in {text!r})")


class ValidationError(SlabError, ValueError):
    """A value violates an invariant; ``field`` names the offender."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class PreconditionError(SlabError, ValueError):
    """Raised when a bracket does not enclose a sign change."""


class StaleEnergyError(SlabError):
    """The energy handed to the reconstruction is not an eigenvalue."""


class SpectrumExhausted(SlabError):
    """No more bound levels exist past this index."""
