"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Families of nearly incompressible pairs with uniform bounds and the flows they carry.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from errors import IsolineException
from field_kit.generators import HamiltonianGenerator, OscillatoryHamiltonian
from field_kit.grid import SpaceTimeGrid
from field_kit.scenarios import NearIncompressiblePair, from_hamiltonian
from flow.levelset import FlowMap, build_flow
from hamiltonian.construct import sample_generator

logger = logging.getLogger(__name__)

# H_n = x + sin(n(x - t)) / (2n)
OSCILLATORY_AMPLITUDE = 0.5
# Grid points per quarter oscillation of the finest member
RESOLUTION_FACTOR = 8
K_MARGIN = 0.1


@dataclass(frozen=True, eq=False)
class FamilyMember:
    label: float
    pair: NearIncompressiblePair
    flow: FlowMap


@dataclass(frozen=True, eq=False)
class FlowFamily:
    """Members share one grid and the uniform constants C1, C2, b_max.
    K = (t_a, t_b, x_a, x_b) is the compact evaluation set inside the padded region."""
    members: list
    K: tuple
    C1: float
    C2: float
    b_max: float

    @property
    def grid(self) -> SpaceTimeGrid:
        return self.members[0].pair.grid

    @property
    def labels(self) -> list:
        return [member.label for member in self.members]

    def k_indices(self) -> tuple:
        """Node indices (time, space) of the grid points inside K."""
        t_a, t_b, x_a, x_b = self.K
        grid = self.grid
        slack = 1e-9 * max(grid.dt, grid.dx)
        ti = np.flatnonzero((grid.t >= t_a - slack) & (grid.t <= t_b + slack))
        xj = np.flatnonzero((grid.x >= x_a - slack) & (grid.x <= x_b + slack))
        return ti, xj

    def restrict(self, values: np.ndarray) -> np.ndarray:
        ti, xj = self.k_indices()
        return values[np.ix_(ti, xj)]

    def sup_distance(self, first: int, second: int) -> float:
        """sup over K of |X_first - X_second|."""
        return float(np.abs(self.restrict(self.members[first].flow.X)
                            - self.restrict(self.members[second].flow.X)).max())

    def distance_to_identity(self, index: int) -> float:
        _, x = self.grid.mesh()
        return float(np.abs(self.restrict(self.members[index].flow.X) - self.restrict(x)).max())


def compact_set(grid: SpaceTimeGrid, b_max: float) -> tuple:
    """K = [0.1 T, 0.9 T] x [x_min + b_max T + 0.1, x_max - b_max T - 0.1]."""
    x_a, x_b = grid.padded_interval(b_max)
    K = (0.1 * grid.T, 0.9 * grid.T, x_a + K_MARGIN, x_b - K_MARGIN)
    if not K[2] < K[3]:
        raise FamilySetupException('K', K, 'non-empty spatial interval inside the padded region')
    return K


def _build_member(generator: HamiltonianGenerator, grid: SpaceTimeGrid, label) -> FamilyMember:
    pair = from_hamiltonian(generator, grid, f'member {label}')
    flow = build_flow(sample_generator(generator, grid))
    logger.debug(f'Family member {label} built, L = {flow.L:.6f}')
    return FamilyMember(label, pair, flow)


def family_from_generators(generators: list, labels: list, grid: SpaceTimeGrid,
                           workers: int = 1, constants: tuple = None) -> FlowFamily:
    """constants = (C1, C2, b_max) overrides the uniform constants, which default to
    min C1, max C2 and max b_max over the generators."""
    if len(generators) == 0 or len(generators) != len(labels):
        raise FamilySetupException('generators', len(generators),
                                   f'a non-empty list matching {len(labels)} labels')
    if constants is None:
        constants = (min(g.C1 for g in generators), max(g.C2 for g in generators),
                     max(g.b_max for g in generators))
    C1, C2, b_max = constants
    K = compact_set(grid, b_max)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            members = list(executor.map(_build_member, generators,
                                        [grid] * len(generators), labels))
    else:
        members = [_build_member(g, grid, label) for g, label in zip(generators, labels)]
    logger.info(f'Family of {len(members)} members built on {grid.shape} nodes')
    return FlowFamily(members, K, C1, C2, b_max)


def oscillatory_family(n_list: list, grid: SpaceTimeGrid, workers: int = 1) -> FlowFamily:
    """Members H_n = x + sin(n(x - t)) / (2n) with the uniform constants C1 = 1/2,
    C2 = 3/2, b_max = 1; n = 0 is the identity generator H = x.
    Raises FamilySetupException when dx > pi / (8 max n)."""
    n_list = [int(n) for n in n_list]
    if len(n_list) == 0 or min(n_list) < 0:
        raise FamilySetupException('n_list', n_list, 'non-empty list of integers n >= 0')
    n_top = max(n_list)
    if n_top > 0:
        finest = math.pi / (RESOLUTION_FACTOR * n_top)
        if grid.dx > finest * (1 + 1e-12):
            raise FamilySetupException('dx', grid.dx, f'dx <= pi / (8 max n) = {finest}')
    generators = [OscillatoryHamiltonian(OSCILLATORY_AMPLITUDE, n) for n in n_list]
    a = OSCILLATORY_AMPLITUDE
    return family_from_generators(generators, n_list, grid, workers,
                                  constants=(1 - a, 1 + a, a / (1 - a)))


class FamilySetupException(IsolineException):
    """Raised when a family cannot be built on the requested grid."""

    def __init__(self, name: str, value, requirement: str):
        super().__init__(f'{name} = {value} violates {requirement}')
        self.name = name
        self.value = value
        self.requirement = requirement
