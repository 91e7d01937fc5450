"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

The named pipelines. Each takes a RunConfig and a RunOutput, writes its tables
and returns the invariant suites it ran.
"""

import logging
from dataclasses import dataclass

import numpy as np

from compactness_lab import (oscillatory_family, equicontinuity_modulus, extract_convergent,
                             family_report)
from errors import IsolineException
from field_kit.config import RunConfig
from field_kit.datum import InitialDatum
from field_kit.report import Suite
from field_kit.scenarios import NearIncompressiblePair, build_scenario
from field_kit.validation import validate_pair
from flow.checks import ode_residual, pushforward_check, default_probes
from flow.levelset import FlowMap, build_flow
from hamiltonian.cone import cone_bound_check
from hamiltonian.construct import HamiltonianField, build_hamiltonian
from out import RunOutput
from reference_oracles import OraclePreconditionException, cross_validate
from transport.observable import conserved_observable, default_level_profile, uniqueness_probe
from transport.solution import TransportSolution, solve_cauchy
from transport.testfunctions import LevelProfile, default_test_suite
from transport.weak import weak_residual

logger = logging.getLogger(__name__)

PIPELINES = ('flow', 'solve', 'verify', 'compactness')

# n sup_K |X_n - id| <= 2 + RATE_SLACK for every oscillatory member
RATE_SLACK = 0.1


@dataclass(frozen=True, eq=False)
class FlowStage:
    pair: NearIncompressiblePair
    H: HamiltonianField
    flow: FlowMap
    suites: list


def _flow_stage(config: RunConfig, output: RunOutput) -> FlowStage:
    tol = config.tolerances
    pair = build_scenario(config.scenario)
    validation = validate_pair(pair, tol['continuity'])
    if not validation.passed:
        raise PairValidationException(pair.name, validation.continuity_residual,
                                      validation.worst_node, validation.bounds_hold)
    H = build_hamiltonian(pair, tol['slope'])
    flow = build_flow(H, tolerances={'inversion': tol['inversion'], 'lipschitz': tol['lipschitz']})
    output.write_table('flow.csv', *flow.flow_table())
    output.write_table('levels.csv', *flow.level_table())
    return FlowStage(pair, H, flow, [validation.suite(), H.diagnostics, flow.diagnostics])


def _solve_stage(config: RunConfig, output: RunOutput, stage: FlowStage,
                 datum: InitialDatum) -> tuple:
    tol = config.tolerances
    sol = solve_cauchy(stage.pair, stage.flow, datum)
    output.write_table('solution.csv', *sol.table())

    residuals = weak_residual(sol, stage.pair, default_test_suite(stage.pair.grid, stage.pair.b_max))
    output.write_table('weak_residuals.csv', ('test_id', 'residual'),
                       np.column_stack([np.arange(len(residuals)), residuals]))
    weak = Suite('weak')
    worst = int(np.argmax(residuals))
    weak.add('max_residual', residuals[worst], residuals[worst] <= tol['weak'], f'test {worst}')

    mass = conserved_observable(sol, stage.H, LevelProfile('unit'))
    output.write_table('observable.csv', *mass.table())
    observable = Suite('observable')
    lo, hi = stage.pair.padded_interval()
    s_lo, s_hi = datum.support
    if lo <= s_lo and s_hi <= hi:
        observable.add('mass_drift', mass.drift, mass.drift <= tol['drift'])
    else:
        # mass may cross the window edges
        observable.add('mass_drift', mass.drift, where='datum support leaves the padded region')
    return sol, [weak, observable]


def run_flow(config: RunConfig, output: RunOutput) -> list:
    return _flow_stage(config, output).suites


def run_solve(config: RunConfig, output: RunOutput) -> list:
    stage = _flow_stage(config, output)
    _, suites = _solve_stage(config, output, stage, config.datum(stage.pair.generator))
    return stage.suites + suites


def _solution_suite(config: RunConfig, stage: FlowStage, sol: TransportSolution) -> Suite:
    """The density solves the equation with its own initial value; nonnegative data stay so."""
    suite = Suite('solution')
    pair = stage.pair
    if pair.generator is not None:
        density = solve_cauchy(pair, stage.flow,
                               InitialDatum('density_profile', generator=pair.generator))
        lo, hi = pair.padded_interval()
        inside = (pair.grid.x >= lo) & (pair.grid.x <= hi)
        defect = float(np.abs(density.u.values - pair.rho.values)[:, inside].max())
        suite.add('density_defect', defect, defect <= config.tolerances['density'])
    if np.all(sol.datum(pair.grid.x) >= 0):
        suite.add('u_min', sol.u.min, sol.u.min >= 0)
    return suite


def _probe_suite(config: RunConfig, output: RunOutput, stage: FlowStage,
                 sol: TransportSolution) -> Suite:
    probe = config.probe
    f = None
    if probe['level_center'] is not None and probe['level_width'] is not None:
        f = LevelProfile('bump', probe['level_center'], probe['level_width'])
    table = uniqueness_probe(stage.pair, stage.H, stage.flow, probe['eps_list'], f=f, u=sol,
                             tau=probe['tau'])
    output.write_table('probe.csv', *table.table())
    return table.suite(config.tolerances['probe_slack'], floor=config.tolerances['pushforward'])


def _oracle_suite(stage: FlowStage, datum: InitialDatum) -> Suite:
    """Distances to the reference oracles, recorded without a verdict."""
    suite = Suite('oracles')
    for oracle in ('fv', 'characteristics'):
        try:
            comparison = cross_validate(stage.pair, stage.flow, datum, (oracle,), refine=False)
        except OraclePreconditionException as e:
            logger.info(f'Oracle {oracle} skipped: {e.reason}')
            continue
        suite.add(f'l1_distance_{oracle}', comparison.distances[oracle])
    return suite


def run_verify(config: RunConfig, output: RunOutput) -> list:
    tol = config.tolerances
    stage = _flow_stage(config, output)
    pair, H, flow = stage.pair, stage.H, stage.flow
    suites = list(stage.suites)

    suites.append(cone_bound_check(H, tol['cone'], seed=config.seed).suite())
    suites.append(ode_residual(flow, pair).suite(tol['ode']))
    suites.append(pushforward_check(flow, pair, default_probes(pair), tol['pushforward']).suite())

    datum = config.datum(pair.generator)
    sol, solve_suites = _solve_stage(config, output, stage, datum)
    suites.append(_solution_suite(config, stage, sol))
    suites.extend(solve_suites)

    level = conserved_observable(sol, H, default_level_profile(H, pair, 0.5 * pair.grid.T))
    observable = Suite('level_observable')
    observable.add('drift', level.drift, level.drift <= tol['drift'])
    suites.append(observable)

    suites.append(_probe_suite(config, output, stage, sol))
    suites.append(_oracle_suite(stage, datum))
    return suites


def run_compactness(config: RunConfig, output: RunOutput) -> list:
    tol = config.tolerances
    family = oscillatory_family(config.compactness['n_list'], config.grid, config.workers)
    modulus = equicontinuity_modulus(family, tol['modulus'], seed=config.seed)
    chain = extract_convergent(family, config.compactness['delta'])
    output.write_table('family.csv', *family_report(family, modulus, chain))

    suites = [modulus.suite(family.labels)]
    rate = Suite('convergence')
    scaled = [n * d for n, d in zip(family.labels, chain.distances_to_identity) if n > 0]
    if scaled:
        rate.add('n_sup_dist_to_id', max(scaled), max(scaled) <= 2 + RATE_SLACK)
    rate.add('chain_length', len(chain.indices))
    suites.append(rate)
    return suites


RUNNERS = {'flow': run_flow, 'solve': run_solve, 'verify': run_verify,
           'compactness': run_compactness}


class PairValidationException(IsolineException):
    """Raised when a sampled pair does not solve the continuity equation within
    tolerance, or its density leaves [C1, C2]. Nothing downstream is built."""

    def __init__(self, pair: str, residual: float, node: tuple, bounds_hold: bool):
        detail = f'pair {pair} fails validation: continuity residual {residual:.3e} at node {node}'
        if not bounds_hold:
            detail = detail + ', density or velocity bounds violated'
        super().__init__(detail)
        self.pair = pair
        self.residual = residual
        self.node = node
        self.bounds_hold = bounds_hold
