"""
Exceptions raised by the simulation core.

Each error carries a short machine-readable ``code`` next to its message.
"""


class SimulationError(ValueError):
    code = "SIMULATION_ERROR"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.message = message


class InvalidConfigurationError(SimulationError):
    code = "INVALID_CONFIGURATION"


class InvalidDistanceError(SimulationError):
    code = "INVALID_DISTANCE"


class InvalidPairError(SimulationError):
    code = "INVALID_PAIR"


class NotReadyError(SimulationError):
    """Raised when a node lacks the fitness history a decision needs."""
    code = "NOT_READY"
