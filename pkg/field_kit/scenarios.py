"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Nearly incompressible pairs (b, rho) and the named scenarios that produce them.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from errors import IsolineException
from .generators import (HamiltonianGenerator, LinearHamiltonian, OscillatoryHamiltonian,
                         StandingWaveHamiltonian)
from .grid import SpaceTimeGrid, SampledField

logger = logging.getLogger(__name__)

SCENARIO_KINDS = ('zero_field', 'constant_field', 'hamiltonian_first',
                  'oscillatory_n', 'standing_wave')

# Slack for bounds declared by a generator against values computed at the nodes
_BOUND_ROUNDING = 1e-12


@dataclass(frozen=True, eq=False)
class NearIncompressiblePair:
    """Sampled velocity b with a density rho bounded in [C1, C2].
    generator is the closed form the tables came from, if any."""
    b: SampledField
    rho: SampledField
    C1: float
    C2: float
    b_max: float
    continuity_residual: float
    generator: HamiltonianGenerator = None
    name: str = 'tables'

    @property
    def grid(self) -> SpaceTimeGrid:
        return self.rho.grid

    @property
    def flux(self) -> np.ndarray:
        """Node table of rho*b."""
        return self.rho.values * self.b.values

    def padded_interval(self) -> tuple:
        return self.grid.padded_interval(self.b_max)

    def describe(self) -> dict:
        out_dict = {'name': self.name, 'C1': self.C1, 'C2': self.C2, 'b_max': self.b_max,
                    'continuity_residual': self.continuity_residual}
        if self.generator is not None:
            out_dict.update(self.generator.describe())
        return out_dict


@dataclass(frozen=True)
class ScenarioConfig:
    kind: str
    grid: SpaceTimeGrid
    params: dict = field(default_factory=dict)


def continuity_residual(b: SampledField, rho: SampledField) -> tuple:
    """max over interior nodes of |D_t rho + D_x(rho b)| * dt, centred differences.
    Returns (residual, (i, j)) with the node where the maximum is attained."""
    grid = rho.grid
    q = rho.values * b.values
    d_t = (rho.values[2:, 1:-1] - rho.values[:-2, 1:-1]) / (2 * grid.dt)
    d_x = (q[1:-1, 2:] - q[1:-1, :-2]) / (2 * grid.dx)
    defect = np.abs(d_t + d_x) * grid.dt
    i, j = np.unravel_index(np.argmax(defect), defect.shape)
    return float(defect[i, j]), (int(i) + 1, int(j) + 1)


def from_hamiltonian(generator: HamiltonianGenerator, grid: SpaceTimeGrid,
                     name: str = None) -> NearIncompressiblePair:
    """Samples rho = dH/dx and b = -(dH/dt)/(dH/dx) at the nodes."""
    t, x = grid.mesh()
    h_x = np.asarray(generator.H_x(t, x), dtype=float)
    if h_x.min() <= 0:
        i, j = np.unravel_index(np.argmin(h_x), h_x.shape)
        raise DensityBoundException('rho', float(h_x[i, j]), 'dH/dx > 0', grid.node(i, j))
    b_values = -np.asarray(generator.H_t(t, x), dtype=float) / h_x

    _check_declared(h_x, b_values, generator, grid)
    rho = SampledField(grid, h_x)
    b = SampledField(grid, b_values)
    residual, _ = continuity_residual(b, rho)
    pair = NearIncompressiblePair(b, rho, generator.C1, generator.C2, generator.b_max,
                                  residual, generator, name or generator.name)
    logger.debug(f'Pair {pair.name} sampled on {grid.shape} nodes, residual {residual:.3e}')
    return pair


def _check_declared(rho: np.ndarray, b: np.ndarray, generator: HamiltonianGenerator,
                    grid: SpaceTimeGrid) -> None:
    if rho.min() < generator.C1 - _BOUND_ROUNDING:
        i, j = np.unravel_index(np.argmin(rho), rho.shape)
        raise DensityBoundException('rho', float(rho[i, j]), f'rho >= C1 = {generator.C1}',
                                    grid.node(i, j))
    if rho.max() > generator.C2 + _BOUND_ROUNDING:
        i, j = np.unravel_index(np.argmax(rho), rho.shape)
        raise DensityBoundException('rho', float(rho[i, j]), f'rho <= C2 = {generator.C2}',
                                    grid.node(i, j))
    if np.abs(b).max() > generator.b_max + _BOUND_ROUNDING:
        i, j = np.unravel_index(np.argmax(np.abs(b)), b.shape)
        raise DensityBoundException('b', float(b[i, j]), f'|b| <= b_max = {generator.b_max}',
                                    grid.node(i, j))


def pair_from_tables(b, rho, grid: SpaceTimeGrid, name: str = 'tables') -> NearIncompressiblePair:
    """Admits an arbitrary sampled pair; bounds are the measured extremes.
    Whether it solves the continuity equation is left to validate_pair."""
    rho = rho if isinstance(rho, SampledField) else SampledField(grid, rho)
    b = b if isinstance(b, SampledField) else SampledField(grid, b)
    if rho.min <= 0:
        i, j = np.unravel_index(np.argmin(rho.values), rho.values.shape)
        raise DensityBoundException('rho', rho.min, 'rho > 0', grid.node(i, j))
    residual, _ = continuity_residual(b, rho)
    return NearIncompressiblePair(b, rho, rho.min, rho.max, b.sup_norm(), residual, None, name)


def generator_for(kind: str, params: dict) -> HamiltonianGenerator:
    """Maps a scenario kind and its parameters to the generator that synthesizes it."""
    try:
        if kind == 'zero_field':
            return LinearHamiltonian(0.0)
        if kind == 'constant_field':
            return LinearHamiltonian(params.get('c', 1.0))
        if kind == 'hamiltonian_first':
            return OscillatoryHamiltonian(params.get('amplitude', 0.5),
                                          params.get('wavenumber', 1.0))
        if kind == 'oscillatory_n':
            return OscillatoryHamiltonian(0.5, int(params.get('n', 1)))
        if kind == 'standing_wave':
            return StandingWaveHamiltonian(params.get('amplitude', 0.5))
    except ValueError as e:
        raise DensityBoundException(kind, params, str(e)) from e
    raise UnknownScenarioException(kind)


def build_scenario(config: ScenarioConfig) -> NearIncompressiblePair:
    if config.kind not in SCENARIO_KINDS:
        raise UnknownScenarioException(config.kind)
    generator = generator_for(config.kind, config.params)
    logger.info(f'Building scenario {config.kind} ({generator.describe()})')
    return from_hamiltonian(generator, config.grid, config.kind)


class UnknownScenarioException(IsolineException):
    """Raised when a scenario kind is not one of SCENARIO_KINDS."""

    def __init__(self, kind: str):
        super().__init__(f'unknown scenario "{kind}", expected one of {SCENARIO_KINDS}')
        self.kind = kind


class DensityBoundException(IsolineException):
    """Raised when a density or velocity leaves its admissible range."""

    def __init__(self, name: str, value, requirement: str, node: tuple = None):
        detail = f'{name} = {value} violates {requirement}'
        if node is not None:
            detail = detail + f' at (t, x) = {node}'
        super().__init__(detail)
        self.name = name
        self.value = value
        self.requirement = requirement
        self.node = node
