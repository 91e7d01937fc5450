"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Residual of the distributional formulation
int int u (d_t phi + b d_x phi) dx dt + int u0 phi(0, .) dx = 0.
"""

import logging
from dataclasses import dataclass, field, replace

from scipy.integrate import trapezoid

from field_kit.datum import InitialDatum
from field_kit.profiles import SupportException
from field_kit.scenarios import NearIncompressiblePair
from flow.levelset import FlowMap
from .solution import TransportSolution, solve_cauchy
from .testfunctions import TestFunction, default_test_suite

logger = logging.getLogger(__name__)


def check_test_support(test: TestFunction, grid) -> None:
    lo, hi = test.space.support
    if lo <= grid.x_min or hi >= grid.x_max:
        raise SupportException(f'test function {test.describe()}', (lo, hi),
                               (grid.x_min, grid.x_max))
    if test.time.tc > grid.T:
        raise SupportException(f'test function {test.describe()}', (0.0, test.time.tc),
                               (0.0, grid.T))


def weak_residual(sol: TransportSolution, pair: NearIncompressiblePair, tests: list) -> list:
    """Absolute residual per test function, trapezoidal quadrature on the nodes."""
    grid = sol.grid
    t, x = grid.mesh()
    u = sol.u.values
    b = pair.b.values
    initial = sol.datum(grid.x)
    residuals = []
    for test in tests:
        check_test_support(test, grid)
        integrand = u * (test.d_t(t, x) + b * test.d_x(t, x))
        bulk = trapezoid(trapezoid(integrand, dx=grid.dx, axis=1), dx=grid.dt)
        boundary = trapezoid(initial * test(0.0, grid.x), dx=grid.dx)
        residuals.append(float(abs(bulk + boundary)))
    logger.debug(f'Weak residuals: {", ".join(f"{r:.3e}" for r in residuals)}')
    return residuals


@dataclass(frozen=True)
class ClipStudy:
    """Weak residual (max over the tests) for every clip level of a singular datum."""
    clips: list
    residuals: list = field(default_factory=list)

    def spread(self) -> float:
        return float(max(self.residuals) - min(self.residuals))


def clip_study(pair: NearIncompressiblePair, flow: FlowMap, datum: InitialDatum, clips: list,
               tests: list = None) -> ClipStudy:
    """Solves with the datum clipped at each level in clips (growing)."""
    tests = tests or default_test_suite(pair.grid, pair.b_max)
    residuals = []
    for clip in clips:
        sol = solve_cauchy(pair, flow, replace(datum, clip=clip))
        residuals.append(max(weak_residual(sol, pair, tests)))
        logger.info(f'Clip {clip:g}: max weak residual {residuals[-1]:.3e}')
    return ClipStudy(list(clips), residuals)
