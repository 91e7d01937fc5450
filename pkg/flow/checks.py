"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Checks that a computed flow is the flow of its pair:
level sets solve dY/dt = b(t, Y), and Y(t, .) and X(t, .) push Lebesgue
measure (resp. rho(0, .) dx) forward to rho(t, .) dx.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from field_kit.profiles import Profile, require_inside
from field_kit.report import Suite
from field_kit.scenarios import NearIncompressiblePair
from .levelset import FlowMap

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OdeResidual:
    centred: float
    integral: float
    node: tuple

    def __float__(self) -> float:
        return self.centred

    def suite(self, tol: float) -> Suite:
        suite = Suite('ode')
        suite.add('centred_residual', self.centred, self.centred <= tol, f'(t, h) = {self.node}')
        suite.add('integral_residual', self.integral, self.integral <= tol)
        return suite


def ode_residual(flow: FlowMap, pair: NearIncompressiblePair) -> OdeResidual:
    """Centred: max over interior times of |(Y(t+dt) - Y(t-dt)) / 2dt - b(t, Y(t))|.
    Integral: max of |Y(t) - Y(0) - trapezoid of b(s, Y(s)) over [0, t]|."""
    grid = flow.grid
    t = np.broadcast_to(grid.t[:, np.newaxis], flow.Y.shape)
    velocity = pair.b(t, flow.Y)

    centred = np.abs((flow.Y[2:] - flow.Y[:-2]) / (2 * grid.dt) - velocity[1:-1])
    i, k = np.unravel_index(np.argmax(centred), centred.shape)
    node = (float(grid.t[i + 1]), float(flow.h_grid[k]))

    travelled = cumulative_trapezoid(velocity, dx=grid.dt, axis=0, initial=0)
    integral = np.abs(flow.Y - flow.Y[0] - travelled)
    return OdeResidual(float(centred[i, k]), float(integral.max()), node)


@dataclass(frozen=True)
class PushforwardReport:
    level_defect: float
    flow_defect: float
    tol: float
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return max(self.level_defect, self.flow_defect) <= self.tol

    def suite(self) -> Suite:
        suite = Suite('pushforward')
        suite.add('level_defect', self.level_defect, self.level_defect <= self.tol)
        suite.add('flow_defect', self.flow_defect, self.flow_defect <= self.tol)
        return suite


def check_times(grid, count: int = 5) -> list:
    """Node indices of count evenly spread times, including 0 and T."""
    return sorted({grid.time_index(t) for t in np.linspace(0, grid.T, count)})


def pushforward_check(flow: FlowMap, pair: NearIncompressiblePair, probes: list,
                      tol: float = 1e-3, times: list = None) -> PushforwardReport:
    """For every probe phi and time t compares, by trapezoidal quadrature,
    int phi(Y(t, h)) dh and int phi(X(t, x)) rho(0, x) dx with int phi(y) rho(t, y) dy.
    Raises SupportException if a probe leaves the padded region."""
    grid = flow.grid
    lo, hi = pair.padded_interval()
    for probe in probes:
        require_inside(probe, lo, hi, f'probe {probe.describe()}')

    indices = check_times(grid) if times is None else [grid.time_index(t) for t in times]
    rho = pair.rho.values
    rows = []
    level_defect = flow_defect = 0.0
    for number, probe in enumerate(probes):
        for i in indices:
            target = trapezoid(probe(grid.x) * rho[i], dx=grid.dx)
            via_levels = trapezoid(probe(flow.Y[i]), flow.h_grid)
            via_flow = trapezoid(probe(flow.X[i]) * rho[0], dx=grid.dx)
            rows.append((number, float(grid.t[i]), abs(via_levels - target), abs(via_flow - target)))
            level_defect = max(level_defect, abs(via_levels - target))
            flow_defect = max(flow_defect, abs(via_flow - target))

    report = PushforwardReport(float(level_defect), float(flow_defect), tol, rows)
    if not report.passed:
        logger.warning(f'Pushforward defects {level_defect:.3e} (levels), '
                       f'{flow_defect:.3e} (flow) exceed {tol:.1e}')
    return report


def default_probes(pair: NearIncompressiblePair) -> list:
    """One gaussian probe centred in the padded region, reaching half of it."""
    lo, hi = pair.padded_interval()
    return [Profile('gaussian', 0.5 * (lo + hi), (hi - lo) / 24)]
