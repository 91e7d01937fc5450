"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension
"""

from .grid import SpaceTimeGrid, SampledField, InvalidGridException
from .generators import (HamiltonianGenerator, LinearHamiltonian, OscillatoryHamiltonian,
                         StandingWaveHamiltonian)
from .datum import InitialDatum, combine, DatumException
from .scenarios import (NearIncompressiblePair, ScenarioConfig, build_scenario, from_hamiltonian,
                        pair_from_tables, generator_for, UnknownScenarioException,
                        DensityBoundException)
from .validation import validate_pair, ValidationReport
from .report import Diagnostic, Suite
from .config import RunConfig, load_config, read_items, config_from_items
from .input_validate import ConfigException
from .profiles import Profile, require_inside, SupportException
