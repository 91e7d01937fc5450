"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Shared scenarios. Built once per session; every object in them is immutable.
"""

from dataclasses import dataclass

import pytest

from field_kit import SpaceTimeGrid, ScenarioConfig, NearIncompressiblePair, build_scenario
from flow import FlowMap, build_flow
from hamiltonian import HamiltonianField, build_hamiltonian


@dataclass(frozen=True, eq=False)
class Stage:
    pair: NearIncompressiblePair
    H: HamiltonianField
    flow: FlowMap

    @property
    def grid(self):
        return self.pair.grid


def build_stage(kind: str, grid: SpaceTimeGrid, **params) -> Stage:
    pair = build_scenario(ScenarioConfig(kind, grid, params))
    H = build_hamiltonian(pair)
    return Stage(pair, H, build_flow(H))


@pytest.fixture(scope='session')
def stage_factory():
    return build_stage


@pytest.fixture(scope='session')
def window_grid():
    return SpaceTimeGrid(1.0, -4.0, 4.0, 128, 128)


@pytest.fixture(scope='session')
def zero_stage(window_grid):
    return build_stage('zero_field', window_grid)


@pytest.fixture(scope='session')
def constant_stage():
    # dt = dx: translation by a node time lands on a node
    return build_stage('constant_field', SpaceTimeGrid(1.0, -4.0, 4.0, 64, 512), c=1.0)


@pytest.fixture(scope='session')
def first_stage(window_grid):
    return build_stage('hamiltonian_first', window_grid)


@pytest.fixture(scope='session')
def first_stage_256():
    return build_stage('hamiltonian_first', SpaceTimeGrid(1.0, -4.0, 4.0, 256, 256))


@pytest.fixture(scope='session')
def first_stage_512():
    return build_stage('hamiltonian_first', SpaceTimeGrid(1.0, -4.0, 4.0, 512, 512))


@pytest.fixture(scope='session')
def standing_wave_256():
    return build_stage('standing_wave', SpaceTimeGrid(1.0, -4.0, 4.0, 256, 256))
