class NumericalWarning(UserWarning):
    """Non-fatal numerical condition (shrinking, clamping, divergence counts)."""


class InvalidInputError(ValueError):
    pass


class UnsupportedModelError(ValueError):
    pass


class LevelOverflowError(ValueError):
    pass


class DegenerateSampleError(ValueError):
    pass


class DensitySupportError(ValueError):
    pass


class SupportError(ValueError):
    pass


class ConfigValidationError(ValueError):
    pass


class ParseError(ValueError):
    """
    Malformed z-score input.

    Args:
        message (str): What went wrong
        line (int | None): 1-based line number in the input file, if known
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message)


class EstimatorFailure(RuntimeError):
    """
    Base class for estimator failures. The simulation harness counts these
    per replication instead of aborting the run.
    """


class ThresholdNotFoundError(EstimatorFailure):
    pass


class NonPositiveVarianceError(EstimatorFailure):
    pass


class DegenerateModulusError(EstimatorFailure):
    pass


class DivergenceError(EstimatorFailure):
    pass


class NumericalIntegrationError(EstimatorFailure):
    pass


class ConstructionFailedError(RuntimeError):
    pass
