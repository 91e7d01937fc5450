"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Builds the Hamiltonian H of a pair (rho, b): dH/dx = rho, dH/dt = -rho b,
normalized by H(0, x_min) = 0.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from errors import IsolineException
from field_kit.generators import HamiltonianGenerator
from field_kit.grid import SpaceTimeGrid, SampledField
from field_kit.report import Suite
from field_kit.scenarios import NearIncompressiblePair
from .slices import MonotoneSlice

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HamiltonianField:
    """Node table of H next to the node table of dH/dx = rho.
    generator is set when the values are sampled from a closed form."""
    H: SampledField
    rho: SampledField
    C1: float
    C2: float
    b_max: float
    diagnostics: Suite = None
    generator: HamiltonianGenerator = None

    @property
    def grid(self) -> SpaceTimeGrid:
        return self.H.grid

    def slice(self, i: int, interpolant: str = 'hermite') -> MonotoneSlice:
        return MonotoneSlice(self.grid.x, self.H.values[i], self.rho.values[i], interpolant)

    def at_time(self, t: float, interpolant: str = 'hermite') -> MonotoneSlice:
        """Slice at any t in [0, T], linear in time between node slices."""
        grid = self.grid
        position = np.clip(t / grid.dt, 0, grid.nt)
        i = min(int(np.floor(position)), grid.nt - 1)
        weight = position - i
        if weight == 0:
            return self.slice(i, interpolant)
        if weight == 1:
            return self.slice(i + 1, interpolant)
        values = (1 - weight) * self.H.values[i] + weight * self.H.values[i + 1]
        rho = (1 - weight) * self.rho.values[i] + weight * self.rho.values[i + 1]
        return MonotoneSlice(grid.x, values, rho, interpolant)

    def evaluate(self, t: float, x, interpolant: str = 'hermite') -> np.ndarray:
        return self.at_time(t, interpolant)(x)

    def realized_levels(self) -> tuple:
        """Levels realized inside the window at every node time."""
        return float(self.H.values[:, 0].max()), float(self.H.values[:, -1].min())

    def lipschitz(self) -> float:
        return max(self.C2, self.C2 * self.b_max)


def slope_checks(H: HamiltonianField, tol: float) -> Suite:
    """x-slopes in [C1 - tol, C2 + tol], t-slopes within C2 b_max + tol, H(0, x_min) = 0."""
    grid = H.grid
    values = H.H.values
    suite = Suite('hamiltonian')

    x_slope = np.diff(values, axis=1) / grid.dx
    i, j = np.unravel_index(np.argmin(x_slope), x_slope.shape)
    suite.add('x_slope_min', x_slope[i, j], x_slope[i, j] >= H.C1 - tol, f'node {(int(i), int(j))}')
    i, j = np.unravel_index(np.argmax(x_slope), x_slope.shape)
    suite.add('x_slope_max', x_slope[i, j], x_slope[i, j] <= H.C2 + tol, f'node {(int(i), int(j))}')

    t_slope = np.abs(np.diff(values, axis=0)) / grid.dt
    i, j = np.unravel_index(np.argmax(t_slope), t_slope.shape)
    suite.add('t_slope_abs_max', t_slope[i, j], t_slope[i, j] <= H.C2 * H.b_max + tol,
              f'node {(int(i), int(j))}')

    suite.add('normalization', values[0, 0], values[0, 0] == 0.0)
    return suite


def build_hamiltonian(pair: NearIncompressiblePair, tol: float = 1e-6) -> HamiltonianField:
    """H(0, .) is the cumulative trapezoid of rho(0, .); every column is then integrated
    in time with the trapezoid rule on -rho b.
    Raises SlopeInvariantException when a slope leaves its bound by more than tol."""
    grid = pair.grid
    rho = pair.rho.values
    flux = pair.flux

    h_initial = cumulative_trapezoid(rho[0], dx=grid.dx, initial=0)
    transported = cumulative_trapezoid(flux, dx=grid.dt, axis=0, initial=0)
    values = h_initial[np.newaxis, :] - transported

    H = HamiltonianField(SampledField(grid, values), pair.rho, pair.C1, pair.C2, pair.b_max)
    suite = slope_checks(H, tol)

    # d/dx of the time integral of rho b against rho(0) - rho(t), interior columns
    d_x = (transported[:, 2:] - transported[:, :-2]) / (2 * grid.dx)
    defect = np.abs(d_x - (rho[0, 1:-1] - rho[:, 1:-1]))
    suite.add('path_independence_defect', defect.max())

    for diagnostic in suite.failures():
        raise SlopeInvariantException(diagnostic.name, diagnostic.value, diagnostic.where)
    logger.debug(f'Hamiltonian of {pair.name} built, '
                 f'path independence defect {defect.max():.3e}')
    return HamiltonianField(H.H, H.rho, H.C1, H.C2, H.b_max, suite, pair.generator)


def sample_generator(generator: HamiltonianGenerator, grid: SpaceTimeGrid,
                     tol: float = 1e-6) -> HamiltonianField:
    """Exact node values of a closed-form Hamiltonian, shifted so H(0, x_min) = 0."""
    t, x = grid.mesh()
    values = np.asarray(generator.H(t, x), dtype=float)
    values = values - float(generator.H(0.0, grid.x_min))
    values[0, 0] = 0.0
    rho = SampledField(grid, np.asarray(generator.H_x(t, x), dtype=float))
    H = HamiltonianField(SampledField(grid, values), rho, generator.C1, generator.C2,
                         generator.b_max, generator=generator)
    suite = slope_checks(H, tol)
    for diagnostic in suite.failures():
        raise SlopeInvariantException(diagnostic.name, diagnostic.value, diagnostic.where)
    return HamiltonianField(H.H, H.rho, H.C1, H.C2, H.b_max, suite, generator)


class SlopeInvariantException(IsolineException):
    """Raised when a sampled Hamiltonian breaks its slope bounds.
    The input pair does not satisfy the continuity equation well enough."""

    def __init__(self, name: str, value: float, where: str = ''):
        detail = f'{name} = {value}'
        if where:
            detail = detail + f' at {where}'
        super().__init__(detail)
        self.name = name
        self.value = value
        self.where = where
