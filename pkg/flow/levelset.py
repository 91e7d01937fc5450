"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Level-set trajectories Y(t, h) of a Hamiltonian and the flow they carry:
X(t, x) = Y(t, H(0, x)) and X^-1(t, x) = Y(0, H(t, x)).
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from errors import IsolineException
from field_kit.grid import InvalidGridException
from field_kit.report import Suite
from hamiltonian.construct import HamiltonianField
from hamiltonian.slices import LevelOutOfRangeException

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCES = {'inversion': 1e-10, 'lipschitz': 1e-3}


def invert_in_x(H: HamiltonianField, t: float, h, interpolant: str = 'hermite',
                extend: bool = False):
    """x with H(t, x) = h on the interpolated slice at time t.
    Raises LevelOutOfRangeException for a level the slice does not realize inside the
    window, unless extend is set."""
    if not 0 <= t <= H.grid.T:
        raise InvalidGridException('t', t, f'0 <= t <= T = {H.grid.T}')
    try:
        x = H.at_time(t, interpolant).invert(h, extend)
    except LevelOutOfRangeException as e:
        raise LevelOutOfRangeException(e.level, e.lo, e.hi, t) from e
    return float(x) if np.ndim(x) == 0 else x


@dataclass(frozen=True, eq=False)
class FlowMap:
    """Y is tabulated on (grid.t, h_grid), X and Xinv on (grid.t, grid.x).
    escaped marks X nodes whose level leaves the window at that time and
    escaped_inverse the same for Xinv; those entries are linear extensions."""
    H: HamiltonianField
    h_grid: np.ndarray
    Y: np.ndarray
    X: np.ndarray
    Xinv: np.ndarray
    escaped: np.ndarray
    escaped_inverse: np.ndarray
    L: float
    interpolant: str
    diagnostics: Suite = None

    @property
    def grid(self):
        return self.H.grid

    def level_spline(self, i: int) -> CubicHermiteSpline:
        """h -> Y(t_i, h) with slopes 1 / rho(t_i, Y)."""
        slopes = 1.0 / self.H.slice(i, self.interpolant).derivative(self.Y[i])
        return CubicHermiteSpline(self.h_grid, self.Y[i], slopes)

    def flow_table(self) -> tuple:
        """Header and rows (t, x, X, Xinv), t-major."""
        t, x = self.grid.mesh()
        rows = np.column_stack([t.ravel(), x.ravel(), self.X.ravel(), self.Xinv.ravel()])
        return ('t', 'x', 'X', 'Xinv'), rows

    def level_table(self) -> tuple:
        t, h = np.meshgrid(self.grid.t, self.h_grid, indexing='ij')
        return ('t', 'h', 'Y'), np.column_stack([t.ravel(), h.ravel(), self.Y.ravel()])


def build_flow(H: HamiltonianField, interpolant: str = 'hermite',
               tolerances: dict = None) -> FlowMap:
    """Fills Y, X and Xinv by slice inversion and records the flow diagnostics.
    Raises FlowInvariantException when an inversion misses its level."""
    tol = dict(DEFAULT_TOLERANCES, **(tolerances or {}))
    grid = H.grid
    h_lo, h_hi = H.realized_levels()
    if not h_lo < h_hi:
        raise FlowInvariantException('realized level range', h_hi - h_lo, 'non-empty', None)
    h_grid = np.linspace(h_lo, h_hi, grid.nx + 1)

    slices = [H.slice(i, interpolant) for i in range(grid.nt + 1)]
    h_initial = H.H.values[0]
    Y = np.empty((grid.nt + 1, grid.nx + 1))
    X = np.empty_like(Y)
    Xinv = np.empty_like(Y)
    escaped = np.zeros(Y.shape, dtype=bool)
    escaped_inverse = np.zeros(Y.shape, dtype=bool)
    for i, level_slice in enumerate(slices):
        lo, hi = level_slice.level_range
        Y[i] = level_slice.invert(h_grid)
        X[i] = level_slice.invert(h_initial, extend=True)
        escaped[i] = (h_initial < lo) | (h_initial > hi)
        Xinv[i] = slices[0].invert(H.H.values[i], extend=True)
        escaped_inverse[i] = ((H.H.values[i] < slices[0].level_range[0])
                              | (H.H.values[i] > slices[0].level_range[1]))

    defect = np.abs(np.array([s(X[i]) for i, s in enumerate(slices)]) - h_initial)
    i, j = np.unravel_index(np.argmax(defect), defect.shape)
    if defect[i, j] > tol['inversion']:
        raise FlowInvariantException('defining relation |H(t, X) - H(0, x)|', float(defect[i, j]),
                                     f'<= {tol["inversion"]}', grid.node(int(i), int(j)))

    flow = FlowMap(H, h_grid, Y, X, Xinv, escaped, escaped_inverse, 0.0, interpolant)
    suite, L = _flow_suite(flow, slices, float(defect.max()), tol)
    logger.debug(f'Flow built on {grid.shape} nodes with {interpolant} slices, L = {L:.6f}, '
                 f'{int(escaped.sum())} escaped nodes')
    return FlowMap(H, h_grid, Y, X, Xinv, escaped, escaped_inverse, L, interpolant, suite)


def _flow_suite(flow: FlowMap, slices: list, defining: float, tol: dict) -> tuple:
    grid = flow.grid
    H = flow.H
    x = grid.x
    kept = ~flow.escaped
    suite = Suite('flow')
    suite.add('defining_relation', defining, defining <= tol['inversion'])

    initial = float(np.abs(flow.X[0] - x).max())
    suite.add('initial_identity', initial, initial <= tol['inversion'])

    d_h = flow.h_grid[1] - flow.h_grid[0]
    h_lip = float((np.abs(np.diff(flow.Y, axis=1)) / d_h).max())
    suite.add('h_lipschitz', h_lip, h_lip <= 1 / H.C1 + tol['lipschitz'])
    t_lip = float((np.abs(np.diff(flow.Y, axis=0)) / grid.dt).max())
    suite.add('t_lipschitz', t_lip, t_lip <= H.b_max + tol['lipschitz'])

    pair_kept = kept[:, 1:] & kept[:, :-1]
    quotient = np.diff(flow.X, axis=1)[pair_kept] / grid.dx
    q_min, q_max = float(quotient.min()), float(quotient.max())
    suite.add('x_quotient_min', q_min, q_min >= H.C1 / H.C2 - tol['lipschitz'])
    suite.add('x_quotient_max', q_max, q_max <= H.C2 / H.C1 + tol['lipschitz'])
    L = 1.0 / q_min
    suite.add('compression_L', L, H.C1 / H.C2 - tol['lipschitz'] <= L <= H.C2 / H.C1 + tol['lipschitz'])

    representation = 0.0
    for i in range(grid.nt + 1):
        inside = kept[i]
        via_levels = flow.level_spline(i)(H.H.values[0, inside])
        representation = max(representation, float(np.abs(via_levels - flow.X[i, inside]).max()))
    suite.add('representation_defect', representation, representation <= tol['lipschitz'])

    round_trip = max(float(np.abs(slices[0].invert(s(flow.X[i]), extend=True) - x).max())
                     for i, s in enumerate(slices))
    suite.add('round_trip', round_trip, round_trip <= 2 * tol['inversion'] * max(1.0, 1 / H.C1))

    modulus = flow_modulus_ratio(flow.X, grid, H.C1, H.C2, H.b_max, kept)
    suite.add('flow_modulus_ratio', modulus, modulus <= 1 + tol['lipschitz'])
    return suite, L


def flow_modulus_ratio(X: np.ndarray, grid, C1: float, C2: float, b_max: float,
                       kept: np.ndarray = None) -> float:
    """max over adjacent node pairs of |dX| / ((C2/C1)|dx| + b_max |dt|)."""
    kept = np.ones(X.shape, dtype=bool) if kept is None else kept
    in_x = np.abs(np.diff(X, axis=1))[kept[:, 1:] & kept[:, :-1]] / (C2 / C1 * grid.dx)
    ratio = float(in_x.max())
    if b_max > 0:
        in_t = np.abs(np.diff(X, axis=0))[kept[1:] & kept[:-1]] / (b_max * grid.dt)
        ratio = max(ratio, float(in_t.max()))
    return ratio


class FlowInvariantException(IsolineException):
    """Raised when a flow table breaks a defining property at a node."""

    def __init__(self, name: str, value: float, requirement: str, node: tuple):
        detail = f'{name} = {value} violates {requirement}'
        if node is not None:
            detail = detail + f' at (t, x) = {node}'
        super().__init__(detail)
        self.name = name
        self.value = value
        self.requirement = requirement
        self.node = node
