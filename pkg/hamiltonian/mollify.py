"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Space-time mollification of a Hamiltonian.

H is first extended to negative times by H(-t, x) = H(t, x), then convolved with a
product kernel of 1D bumps exp(-1 / (1 - s^2)) of radius eps. Each 1D kernel is
normalized to unit discrete mass and is symmetric, so affine H is reproduced.
The result lives on [0, T - eps] x [x_min + eps, x_max - eps] (up to whole cells).
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from errors import IsolineException
from field_kit.grid import SpaceTimeGrid, SampledField
from field_kit.report import Suite
from .construct import HamiltonianField, SlopeInvariantException

logger = logging.getLogger(__name__)

# Nodes per kernel radius needed to resolve the bump
_MIN_NODES_PER_RADIUS = 3


def bump_weights(radius: float, spacing: float) -> np.ndarray:
    """Unit-sum samples of exp(-1 / (1 - s^2)) at offsets m * spacing, |s| < 1."""
    half = int(np.floor(radius / spacing))
    s = np.arange(-half, half + 1) * spacing / radius
    inside = np.abs(s) < 1
    weights = np.zeros_like(s)
    weights[inside] = np.exp(-1.0 / (1.0 - s[inside] ** 2))
    return weights / weights.sum()


@dataclass(frozen=True, eq=False)
class MollifiedHamiltonian:
    """H_eps on a sub-grid whose node (i, j) is node (i, j + j_offset) of the source grid.
    Rows from i_valid on are averages of H over t >= 0 only; earlier rows also see the
    reflected layer."""
    eps: float
    H_eps: SampledField
    kernel: np.ndarray
    j_offset: int
    i_valid: int
    sup_distance: float
    diagnostics: Suite = None

    @property
    def grid(self) -> SpaceTimeGrid:
        return self.H_eps.grid

    def gradient(self) -> tuple:
        """(dH_eps/dt, dH_eps/dx) by second-order differences."""
        grid = self.grid
        return tuple(np.gradient(self.H_eps.values, grid.dt, grid.dx, edge_order=2))


def mollify(H: HamiltonianField, eps: float, tol: float = 1e-6) -> MollifiedHamiltonian:
    grid = H.grid
    if not eps > 0:
        raise KernelResolutionException(eps, 'eps > 0')
    resolution = _MIN_NODES_PER_RADIUS * max(grid.dt, grid.dx)
    if eps < resolution:
        raise KernelResolutionException(eps, f'eps >= {resolution} (kernel under-resolved)')
    largest = min(grid.T / 4, (grid.x_max - grid.x_min) / 8)
    if eps > largest:
        raise KernelResolutionException(eps, f'eps <= {largest} (kernel too large for window)')

    weights_t = bump_weights(eps, grid.dt)
    weights_x = bump_weights(eps, grid.dx)
    kt = len(weights_t) // 2
    kx = len(weights_x) // 2
    kernel = np.outer(weights_t, weights_x)

    values = H.H.values
    reflected = np.concatenate([values[kt:0:-1], values], axis=0)
    smoothed = fftconvolve(reflected, kernel, mode='valid')

    sub_grid = SpaceTimeGrid(T=(grid.nt - kt) * grid.dt,
                             x_min=grid.x_min + kx * grid.dx,
                             x_max=grid.x_min + (grid.nx - kx) * grid.dx,
                             nt=grid.nt - kt, nx=grid.nx - 2 * kx)
    H_eps = SampledField(sub_grid, smoothed)

    x_slope = np.diff(smoothed, axis=1) / grid.dx
    if x_slope.min() <= 0:
        i, j = np.unravel_index(np.argmin(x_slope), x_slope.shape)
        raise SlopeInvariantException('mollified x_slope', float(x_slope[i, j]),
                                      f'node {(int(i), int(j) + kx)}, eps = {eps}')

    sup_distance = float(np.abs(smoothed - values[:grid.nt + 1 - kt, kx:grid.nx + 1 - kx]).max())
    bound = H.lipschitz() * eps
    suite = Suite(f'mollify eps={eps:g}')
    suite.add('x_slope_min', x_slope.min(), x_slope.min() >= H.C1 - tol)
    suite.add('sup_distance', sup_distance, sup_distance <= bound + tol)
    logger.debug(f'Mollified at eps {eps}: kernel {kernel.shape}, sup|H_eps - H| = {sup_distance:.3e}')
    return MollifiedHamiltonian(eps, H_eps, kernel, kx, kt, sup_distance, suite)


class KernelResolutionException(IsolineException):
    """Raised when the mollification radius does not fit the grid or window."""

    def __init__(self, eps: float, requirement: str):
        super().__init__(f'eps = {eps} violates {requirement}')
        self.eps = eps
        self.requirement = requirement
