"""Exception hierarchy shared by every module of the package."""


class EPRBellError(ValueError):
    """Base class for input errors raised by the package."""


class ZeroVector(EPRBellError):
    """A measurement direction was requested from a (near) zero vector."""


class ScenarioError(EPRBellError):
    """Malformed scenario, e.g. an empty or duplicated list of settings."""


class ShapeMismatch(EPRBellError):
    """A probability table does not match the shape implied by its scenario."""


class ModelError(EPRBellError):
    """A hidden-variable model violates one of its invariants."""


class ParseError(EPRBellError):
    """A JSON document could not be turned into a domain object.

    ``path`` names the offending location, e.g. ``$.settings_a[1][2]``.
    """

    def __init__(self, path, message):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


class TooLarge(Exception):
    """Deterministic-strategy enumeration would exceed the size guard."""
