"""
Exceptions raised by the simulator and its harness
"""


class SimulationError(Exception):
    """Base class for every error raised by the simulator"""


class InvalidConfig(SimulationError, ValueError):
    """Pose configuration outside the equilibrium model's domain"""


class SingularConfig(InvalidConfig):
    """Joint angle magnitude at (or numerically at) the singular point"""


class InvalidSurface(SimulationError, ValueError):
    """Work surface inclination outside the supported range"""


class TiltSingular(SimulationError):
    """Vehicle tilt too close to 90 degrees for the thrust projection"""


class NonFinite(SimulationError, ArithmeticError):
    """State left the finite range during integration"""


class CaseValidationError(SimulationError, ValueError):
    """Scenario file is malformed or violates a scenario invariant"""


class DidNotEngage(SimulationError):
    """Contact was never detected within the scenario duration"""


class Diverged(SimulationError):
    """Closed-loop simulation blew up"""
