"""Exception types shared across the package."""


class SupbridgeError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(SupbridgeError, ValueError):
    """A numeric argument lies outside its documented domain."""


class AdmissibilityError(SupbridgeError, ValueError):
    """A braid modulation pair violates one of its admissibility conditions.

    The violated condition is recorded in ``condition`` as one of
    ``"in-torus"``, ``"as-eta"`` or ``"like-eta"``.
    """

    def __init__(self, condition: str, message: str):
        self.condition = condition
        super().__init__(f"{condition}: {message}")


class TopologyError(SupbridgeError, RuntimeError):
    """An operation would make the curve intersect itself."""


class StructuralError(SupbridgeError, ValueError):
    """A composite curve lacks the structure an operation requires."""


class RepresentationError(SupbridgeError, ValueError):
    """A curve cannot be expressed in the requested representation."""


class DegenerateProjectionError(SupbridgeError, ArithmeticError):
    """The projection is constant or too flat to count reliably."""


class NumericalError(SupbridgeError, ArithmeticError):
    """A numeric solve failed to bracket or converge."""
