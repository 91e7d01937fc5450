"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Characteristics of a closed-form field b = -H_t / H_x by classical fixed-step RK4.
"""

import logging
from dataclasses import dataclass

import numpy as np

from field_kit.datum import InitialDatum
from field_kit.generators import HamiltonianGenerator
from field_kit.grid import SpaceTimeGrid, SampledField
from transport.solution import TransportSolution
from .fv_upwind import OraclePreconditionException

logger = logging.getLogger(__name__)


class RK4Stepper:
    """Classical fourth order Runge-Kutta step of y' = rhs(t, y)."""

    def __call__(self, y, t, dt, rhs):
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * dt, y + 0.5 * dt * k1)
        k3 = rhs(t + 0.5 * dt, y + 0.5 * dt * k2)
        k4 = rhs(t + dt, y + dt * k3)
        return y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    x: np.ndarray

    @property
    def endpoint(self):
        return self.x[-1]


def check_preconditions(generator: HamiltonianGenerator) -> None:
    if generator is None:
        raise OraclePreconditionException('characteristics', 'the pair has no closed-form generator')
    if not generator.smooth:
        raise OraclePreconditionException('characteristics',
                                          f'generator {generator.name} is not smooth')


def integrate_characteristics(generator: HamiltonianGenerator, x0, t_end: float,
                              n_steps: int, t0: float = 0.0) -> Trajectory:
    """Trajectory from (t0, x0) to t_end; x0 may be an array of starting points."""
    check_preconditions(generator)
    stepper = RK4Stepper()
    dt = (t_end - t0) / n_steps
    times = t0 + np.arange(n_steps + 1) * dt
    x = np.empty((n_steps + 1,) + np.shape(x0))
    x[0] = x0
    for n in range(n_steps):
        x[n + 1] = stepper(x[n], times[n], dt, generator.b)
    return Trajectory(times, x)


def characteristics_solve(generator: HamiltonianGenerator, datum: InitialDatum,
                          grid: SpaceTimeGrid, n_steps: int = 64) -> TransportSolution:
    """u(t, x) = u0(y) exp(-int_0^t b_x along the characteristic), y its foot at t = 0.
    Every node is traced back to t = 0 with n_steps steps, all rows at once."""
    check_preconditions(generator)
    stepper = RK4Stepper()
    t, x = grid.mesh()

    def rhs(s, state):
        position = state[0]
        return np.stack([generator.b(s, position), generator.b_x(s, position)])

    # state: (position, int_t^s b_x); integrated from s = t down to s = 0
    state = np.stack([x, np.zeros_like(x)])
    dt = -t / n_steps
    s = t.copy()
    for _ in range(n_steps):
        state = stepper(state, s, dt, rhs)
        s = s + dt
    foot, stretch = state
    u = datum(foot) * np.exp(stretch)
    logger.debug(f'Characteristics oracle traced {x.size} nodes with {n_steps} RK4 steps each')
    return TransportSolution(SampledField(grid, u), datum, None, (grid.x_min, grid.x_max),
                             'characteristics')
