"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """An input violates a documented precondition."""


class UnsupportedModelError(InvalidParameterError):
    """The requested model combination is outside what the method supports."""


class ModelInconsistencyError(ValueError):
    """Fading-family coefficients do not describe a valid distribution."""


class NumericFailure(RuntimeError):
    """An iterative numeric routine failed to converge."""


class ScenarioParseError(ValueError):
    """A scenario file could not be parsed or validated."""
