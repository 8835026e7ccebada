"""Exception hierarchy shared across the package."""


class SimulationError(Exception):
    """Base class for model construction and solver failures."""


class SchemeError(SimulationError):
    """Invalid level-scheme topology or field assignment."""


class RateError(SimulationError):
    """Relaxation-rate set that cannot be realized by a Lindblad dissipator."""


class SolverError(SimulationError):
    """Steady-state or time-integration failure."""


class PhysicsError(SimulationError):
    """A physical sanity check (passivity, conservation) was violated."""


class ScenarioError(SimulationError):
    """A scenario run failed; carries the offending grid point."""


class ConfigError(SimulationError):
    """Malformed or unrecognized run configuration."""
