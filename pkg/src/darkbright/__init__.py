"""darkbright: coherence effects of bright and dark excitons in carbon nanotubes.

Semiclassical density-matrix toolkit covering the standard multiphoton
excitation schemes (lambda, double-lambda, N, ladder-lambda) over the
bright/dark exciton states of single-walled nanotubes: rotating-frame model
construction, Lindblad steady states and dynamics, coherent population
trapping and transparency observables, and packaged scan scenarios.
"""

from .analytics import (ComplexLinewidths, Susceptibility, ThresholdResult,
                        cpt_threshold, cw_probe_coherence,
                        cw_probe_coherence_engine, dark_bright_split,
                        fwm_generated_coherence, group_index, susceptibility,
                        threshold_margin)
from .backend import active_backend, compiled_available
from .constants import CONSTANTS, PhysicalConstants, angular_to_ev, ev_to_angular
from .conversions import (intensity_from_pulse, intensity_from_rabi,
                          rabi_from_intensity)
from .dissipation import DecayChannel, RateSet, build_dissipator
from .errors import (ConfigError, PhysicsError, RateError, ScenarioError,
                     SchemeError, SimulationError, SolverError)
from .evolve import EvolveResult, LindbladGenerator, evolve
from .hamiltonian import build_hamiltonian, coupling_matrix, frame_diagonal
from .liouville import (Liouvillian, assemble_liouvillian, basis_ket,
                        coherence, population, pure_density, steady_state,
                        unvec, validate_density_matrix, vec)
from .presets import paper_rate_set
from .pulses import PulseEnvelope
from .scenarios import (SCENARIOS, ScanTable, ScenarioSpec, SweepSpec,
                        run_cpt_scan, run_eit_scan, run_fwm_scan,
                        run_stirap_delay_scan, run_threshold_map)
from .schemes import (DriveField, LevelScheme, SchemeKind, Transition,
                      build_scheme, resolve_fields)
from .stirap import StirapResult, stirap_run

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS", "ComplexLinewidths", "ConfigError", "DecayChannel",
    "DriveField", "EvolveResult", "LevelScheme", "LindbladGenerator",
    "Liouvillian", "PhysicalConstants", "PhysicsError", "PulseEnvelope",
    "RateError", "RateSet", "SCENARIOS", "ScanTable", "ScenarioError",
    "ScenarioSpec", "SchemeError", "SchemeKind", "SimulationError",
    "SolverError", "StirapResult", "Susceptibility", "SweepSpec",
    "ThresholdResult", "Transition", "active_backend", "angular_to_ev",
    "assemble_liouvillian", "basis_ket", "build_dissipator",
    "build_hamiltonian", "build_scheme", "coherence", "compiled_available",
    "coupling_matrix", "cpt_threshold", "cw_probe_coherence",
    "cw_probe_coherence_engine", "dark_bright_split", "ev_to_angular",
    "evolve", "frame_diagonal", "fwm_generated_coherence", "group_index",
    "intensity_from_pulse", "intensity_from_rabi", "paper_rate_set",
    "population", "pure_density", "rabi_from_intensity", "resolve_fields",
    "run_cpt_scan", "run_eit_scan", "run_fwm_scan", "run_stirap_delay_scan",
    "run_threshold_map", "steady_state", "stirap_run", "susceptibility",
    "threshold_margin", "unvec", "validate_density_matrix", "vec",
]
