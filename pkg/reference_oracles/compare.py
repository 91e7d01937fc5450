"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Cross validation of the pushforward solution against the reference oracles.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid

from field_kit.datum import InitialDatum
from field_kit.scenarios import NearIncompressiblePair, from_hamiltonian
from flow.checks import check_times
from flow.levelset import FlowMap, build_flow
from hamiltonian.construct import build_hamiltonian, sample_generator
from transport.solution import TransportSolution, solve_cauchy
from . import characteristics, fv_upwind

logger = logging.getLogger(__name__)

ORACLES = ('fv', 'characteristics')


@dataclass(frozen=True)
class CrossValidation:
    """L1 distance over the padded region, max over the check times, per oracle.
    ratios holds distance(grid) / distance(grid refined twice) when the pair has a generator."""
    distances: dict
    ratios: dict = field(default_factory=dict)
    times: list = field(default_factory=list)


def l1_distance(first: TransportSolution, second: TransportSolution, interval: tuple,
                indices: list) -> float:
    grid = first.grid
    inside = (grid.x >= interval[0]) & (grid.x <= interval[1])
    gaps = np.abs(first.u.values[indices][:, inside] - second.u.values[indices][:, inside])
    return float(trapezoid(gaps, grid.x[inside], axis=1).max())


def run_oracle(name: str, pair: NearIncompressiblePair, datum: InitialDatum) -> TransportSolution:
    if name == 'fv':
        return fv_upwind.fv_upwind_solve(pair, datum)
    if name == 'characteristics':
        return characteristics.characteristics_solve(pair.generator, datum, pair.grid)
    raise ValueError(f'oracle must be one of {ORACLES}, got {name}')


def _distances(pair: NearIncompressiblePair, flow: FlowMap, datum: InitialDatum,
               oracles: tuple) -> tuple:
    sol = solve_cauchy(pair, flow, datum)
    indices = check_times(pair.grid)
    interval = pair.padded_interval()
    distances = {name: l1_distance(sol, run_oracle(name, pair, datum), interval, indices)
                 for name in oracles}
    return distances, [float(pair.grid.t[i]) for i in indices]


def cross_validate(pair: NearIncompressiblePair, flow: FlowMap, datum: InitialDatum,
                   oracles: tuple = ORACLES, refine: bool = True) -> CrossValidation:
    """Raises OraclePreconditionException when an oracle cannot run on the pair or datum."""
    for name in oracles:
        if name == 'fv':
            fv_upwind.check_preconditions(pair, datum)
        elif name == 'characteristics':
            characteristics.check_preconditions(pair.generator)
        else:
            raise ValueError(f'oracle must be one of {ORACLES}, got {name}')

    distances, times = _distances(pair, flow, datum, oracles)
    ratios = {name: None for name in oracles}
    if refine and pair.generator is not None:
        fine_grid = pair.grid.refined(2)
        fine_pair = from_hamiltonian(pair.generator, fine_grid, pair.name)
        if flow.H.generator is not None:
            fine_H = sample_generator(pair.generator, fine_grid)
        else:
            fine_H = build_hamiltonian(fine_pair)
        fine_flow = build_flow(fine_H, flow.interpolant)
        fine_distances, _ = _distances(fine_pair, fine_flow, datum, oracles)
        for name in oracles:
            if fine_distances[name] > 0:
                ratios[name] = distances[name] / fine_distances[name]
        logger.info(f'Cross validation distances {distances}, refined {fine_distances}')
    else:
        logger.info(f'Cross validation distances {distances}')
    return CrossValidation(distances, ratios, times)
