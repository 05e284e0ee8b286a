"""Exception types raised by the cruise planning core."""


class DomainError(ValueError):
    """An input lies outside the domain where a model is defined.

    ``field`` names the offending parameter when one can be singled out.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class ModelViolationError(ArithmeticError):
    """The battery model left its valid region (non-positive supply voltage)."""


class ChargeDepletionError(ArithmeticError):
    """No admissible positive charge root exists: the battery empties first."""
