"""Exception types.  Every domain error derives from :class:`MfkitError`."""


class MfkitError(Exception):
    """Base class for domain errors reported by the library and the CLI."""


class InvalidColor(MfkitError, ValueError):
    pass


class InvalidColorSet(MfkitError, ValueError):
    pass


class InvalidCut(MfkitError, ValueError):
    pass


class OracleUnstable(MfkitError, ArithmeticError):
    pass


class GluingError(MfkitError, ValueError):
    pass


class GPrimeTooSmall(MfkitError, ValueError):
    """The target genus is below 4."""


class GenusTooSmall(MfkitError, ValueError):
    """The ambient genus g violates g >= 2 g' - 1."""


class NotEmbeddable(MfkitError, ValueError):
    pass


class NotARepresentation(MfkitError, ValueError):
    def __init__(self, message: str, relator: int | None = None):
        super().__init__(message)
        self.relator = relator


class SchemaError(MfkitError, ValueError):
    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer}: {message}" if pointer else message)
        self.pointer = pointer


class HypothesisFailure(MfkitError, ValueError):
    """An assumed structural property (II, irreducibility, ...) does not hold."""
