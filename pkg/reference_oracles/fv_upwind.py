"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

First-order conservative upwind finite volumes for d_t u + d_x(b u) = 0.
Cells are centred on the x nodes of the scenario grid, faces half way between.
Outflow boundaries copy the edge cell into a ghost cell.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from errors import IsolineException
from field_kit.datum import InitialDatum
from field_kit.grid import SampledField
from field_kit.scenarios import NearIncompressiblePair
from transport.solution import TransportSolution, check_datum_support

logger = logging.getLogger(__name__)

CFL = 0.9


@dataclass(frozen=True)
class FVState:
    u: np.ndarray
    t: float
    dx: float

    def mass(self) -> float:
        return float(self.u.sum() * self.dx)

    def step(self, face_b: np.ndarray, tau: float) -> 'FVState':
        """face_b holds b on the len(u) + 1 faces, outermost faces included."""
        padded = np.concatenate([self.u[:1], self.u, self.u[-1:]])
        flux = np.maximum(face_b, 0) * padded[:-1] + np.minimum(face_b, 0) * padded[1:]
        return FVState(self.u - tau / self.dx * np.diff(flux), self.t + tau, self.dx)


def check_preconditions(pair: NearIncompressiblePair, datum: InitialDatum) -> None:
    if not datum.bounded:
        raise OraclePreconditionException('fv', f'datum {datum.kind} is unbounded')


def substeps(pair: NearIncompressiblePair) -> int:
    """Substeps per scenario step keeping b_max tau / dx <= CFL."""
    grid = pair.grid
    if pair.b_max == 0:
        return 0
    return max(1, math.ceil(grid.dt * pair.b_max / (CFL * grid.dx)))


def fv_upwind_solve(pair: NearIncompressiblePair, datum: InitialDatum) -> TransportSolution:
    """Face velocities are bilinear samples at the substep midpoint time."""
    check_preconditions(pair, datum)
    check_datum_support(datum, pair)
    grid = pair.grid
    x = grid.x
    state = FVState(np.asarray(datum(x), dtype=float), 0.0, grid.dx)
    u = np.empty(grid.shape)
    u[0] = state.u

    m = substeps(pair)
    if m == 0:
        u[:] = state.u
        logger.debug('FV oracle: b_max = 0, identity evolution')
        return TransportSolution(SampledField(grid, u), datum, None, (grid.x_min, grid.x_max),
                                 'fv_upwind')

    faces = np.concatenate([x - 0.5 * grid.dx, x[-1:] + 0.5 * grid.dx])
    tau = grid.dt / m
    initial_mass = state.mass()
    for i in range(grid.nt):
        for k in range(m):
            t_mid = grid.t[i] + (k + 0.5) * tau
            state = state.step(pair.b(np.full(faces.shape, t_mid), faces), tau)
        u[i + 1] = state.u
    logger.debug(f'FV oracle: {grid.nt} x {m} steps, mass drift {state.mass() - initial_mass:.3e}')
    return TransportSolution(SampledField(grid, u), datum, None, (grid.x_min, grid.x_max),
                             'fv_upwind')


class OraclePreconditionException(IsolineException):
    """Raised when a reference oracle is asked to solve a problem outside its scope."""

    def __init__(self, oracle: str, reason: str):
        super().__init__(f'{oracle} oracle: {reason}')
        self.oracle = oracle
        self.reason = reason
