"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Solution of the Cauchy problem by pushing the initial measure forward along the flow:
u(t, x) = u0(X^-1(t, x)) rho(t, x) / rho(0, X^-1(t, x)).
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from field_kit.datum import InitialDatum
from field_kit.grid import SampledField
from field_kit.profiles import SupportException
from field_kit.scenarios import NearIncompressiblePair
from flow.levelset import FlowMap

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TransportSolution:
    u: SampledField
    datum: InitialDatum
    source_flow: FlowMap = None
    mass_window: tuple = None
    method: str = 'pushforward'

    @property
    def grid(self):
        return self.u.grid

    def mass(self) -> np.ndarray:
        """Integral of u(t, .) over mass_window (the whole window if unset), per time node."""
        grid = self.grid
        lo, hi = self.mass_window or (grid.x_min, grid.x_max)
        inside = (grid.x >= lo) & (grid.x <= hi)
        return trapezoid(self.u.values[:, inside], grid.x[inside], axis=1)

    def table(self) -> tuple:
        t, x = self.grid.mesh()
        return ('t', 'x', 'u'), np.column_stack([t.ravel(), x.ravel(), self.u.values.ravel()])


def check_datum_support(datum: InitialDatum, pair: NearIncompressiblePair) -> None:
    """A finite support must sit inside the padded region; an unbounded one is only logged."""
    lo, hi = pair.padded_interval()
    support_lo, support_hi = datum.support
    if np.isfinite(support_lo) and np.isfinite(support_hi):
        if support_lo < lo or support_hi > hi:
            raise SupportException(f'datum {datum.kind}', (support_lo, support_hi), (lo, hi))
    elif support_lo < lo or support_hi > hi:
        logger.warning(f'Datum {datum.kind} has unbounded support {(support_lo, support_hi)}; '
                       f'values beyond {(lo, hi)} are influenced by the window edges')


def solve_cauchy(pair: NearIncompressiblePair, flow: FlowMap, datum: InitialDatum) -> TransportSolution:
    check_datum_support(datum, pair)
    grid = pair.grid
    foot = flow.Xinv
    rho = pair.rho.values
    rho_foot = pair.rho(np.zeros_like(foot), foot)
    u = datum(foot) * rho / rho_foot
    logger.debug(f'Solved {datum.kind} on {pair.name}, sup |u| = {np.abs(u).max():.4g}')
    return TransportSolution(SampledField(grid, u), datum, flow, (grid.x_min, grid.x_max))
