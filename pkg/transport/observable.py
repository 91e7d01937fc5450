"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Observables built from the Hamiltonian.

I(t) = int u(t, x) f(H(t, x)) dx does not depend on t for a weak solution u.
The uniqueness probe tests the weak formulation with phi_eps = f(H_eps); the
defect D(eps) = |int int u (d_t phi_eps + b d_x phi_eps)| must vanish as eps -> 0.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid

from field_kit.datum import InitialDatum
from field_kit.profiles import SupportException
from field_kit.report import Suite
from field_kit.scenarios import NearIncompressiblePair
from flow.levelset import FlowMap
from hamiltonian.construct import HamiltonianField
from hamiltonian.mollify import mollify
from .solution import TransportSolution, solve_cauchy
from .testfunctions import LevelProfile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ObservableRecord:
    times: np.ndarray
    values: np.ndarray
    target: float

    @property
    def drift(self) -> float:
        return float(np.abs(self.values - self.target).max())

    def table(self) -> tuple:
        return ('t', 'I'), np.column_stack([self.times, self.values])


def conserved_observable(sol: TransportSolution, H: HamiltonianField, f: LevelProfile,
                         times: list = None) -> ObservableRecord:
    """I(t) at the node times nearest to times (all nodes by default), and the
    target int u0 f(H(0, .)). A bounded f must stay inside the levels realized in
    the window at each requested time; the unit profile gives the mass."""
    grid = sol.grid
    indices = range(grid.nt + 1) if times is None else [grid.time_index(t) for t in times]
    lo, hi = f.support
    values = []
    for i in indices:
        level = H.H.values[i]
        if np.isfinite(lo) and not (level[0] < lo and hi < level[-1]):
            raise SupportException(f'level profile {f.describe()} at t = {grid.t[i]}', (lo, hi),
                                   (float(level[0]), float(level[-1])))
        values.append(trapezoid(sol.u.values[i] * f(level), dx=grid.dx))
    target = trapezoid(sol.datum(grid.x) * f(H.H.values[0]), dx=grid.dx)
    return ObservableRecord(grid.t[list(indices)].copy(), np.array(values), float(target))


@dataclass(frozen=True)
class ProbeRow:
    eps: float
    D: float
    boundary: float
    gap: float


@dataclass(frozen=True)
class ProbeTable:
    tau: float
    f: LevelProfile
    rows: list = field(default_factory=list)

    def decreasing(self, slack: float = 0.1) -> bool:
        """D shrinks along the eps list, each step allowed to grow by at most slack."""
        return all(later.D < (1 + slack) * earlier.D or later.D == 0
                   for earlier, later in zip(self.rows, self.rows[1:]))

    def suite(self, slack: float, floor: float = 0.0) -> Suite:
        """floor: D values at or below it count as vanished."""
        suite = Suite('uniqueness_probe')
        for row in self.rows:
            suite.add(f'D(eps={row.eps:g})', row.D)
            suite.add(f'boundary_gap(eps={row.eps:g})', row.gap)
        vanished = all(row.D <= floor for row in self.rows)
        suite.add('decreasing', float(self.decreasing(slack)), vanished or self.decreasing(slack))
        return suite

    def table(self) -> tuple:
        return ('eps', 'D', 'boundary_gap'), np.array([[r.eps, r.D, r.gap] for r in self.rows])


def default_tau(grid, eps_list: list) -> float:
    """Node time nearest to the middle of (T/2, T - max eps)."""
    return float(grid.t[grid.time_index(0.5 * (0.5 * grid.T + grid.T - max(eps_list)))])


def default_level_profile(H: HamiltonianField, pair: NearIncompressiblePair, tau: float) -> LevelProfile:
    """Bump on the levels crossing the middle half of the padded region at time tau."""
    lo, hi = pair.padded_interval()
    middle, quarter = 0.5 * (lo + hi), 0.25 * (hi - lo)
    level_slice = H.at_time(tau)
    h_lo, h_hi = (float(level) for level in level_slice(np.array([middle - quarter, middle + quarter])))
    return LevelProfile('bump', 0.5 * (h_lo + h_hi), 0.5 * (h_hi - h_lo))


def default_probe_datum(pair: NearIncompressiblePair) -> InitialDatum:
    lo, hi = pair.padded_interval()
    return InitialDatum('gaussian_bump', center=0.5 * (lo + hi), width=(hi - lo) / 24)


def uniqueness_probe(pair: NearIncompressiblePair, H: HamiltonianField, flow: FlowMap,
                     eps_list: list, f: LevelProfile = None, u: TransportSolution = None,
                     tau: float = None, start: str = 'valid') -> ProbeTable:
    """For every eps: D(eps) = |int_t0^tau int u (d_t phi_eps + b d_x phi_eps)|, the boundary
    term B(eps) = |int u(tau) phi_eps(tau) - int u(t0) phi_eps(t0)| and the gap between the
    two before absolute values are taken. Both use the same start time t0.

    start='valid' (default) takes t0 = t[i_valid + 1], the first row whose centred differences
    of H_eps see no reflected data. start='zero' takes t0 = 0 and integrates through the
    reflected layer."""
    grid = pair.grid
    tau = default_tau(grid, eps_list) if tau is None else tau
    if not (0.5 * grid.T < tau < grid.T - max(eps_list)):
        raise SupportException('observation time', (tau, tau), (0.5 * grid.T, grid.T - max(eps_list)))
    i_tau = grid.time_index(tau)
    f = default_level_profile(H, pair, grid.t[i_tau]) if f is None else f
    u = solve_cauchy(pair, flow, default_probe_datum(pair)) if u is None else u

    rows = []
    for eps in eps_list:
        mollified = mollify(H, eps)
        sub = mollified.grid
        columns = slice(mollified.j_offset, mollified.j_offset + sub.nx + 1)
        i0 = 0 if start == 'zero' else mollified.i_valid + 1
        h_eps = mollified.H_eps.values[i0:i_tau + 1]
        _check_probe_support(f, h_eps, eps)

        d_t, d_x = (g[i0:i_tau + 1] for g in mollified.gradient())
        u_rows = u.u.values[i0:i_tau + 1, columns]
        b_rows = pair.b.values[i0:i_tau + 1, columns]
        integrand = u_rows * f.derivative(h_eps) * (d_t + b_rows * d_x)
        bulk = trapezoid(trapezoid(integrand, dx=grid.dx, axis=1), dx=grid.dt) if i_tau > i0 else 0.0
        phi = f(h_eps)
        boundary = (trapezoid(u_rows[-1] * phi[-1], dx=grid.dx)
                    - trapezoid(u_rows[0] * phi[0], dx=grid.dx))
        rows.append(ProbeRow(float(eps), float(abs(bulk)), float(abs(boundary)),
                             float(abs(boundary - bulk))))
        logger.debug(f'Probe eps {eps:g}: D = {abs(bulk):.3e}, B = {abs(boundary):.3e}')
    return ProbeTable(float(grid.t[i_tau]), f, rows)


def _check_probe_support(f: LevelProfile, h_eps: np.ndarray, eps: float) -> None:
    """f(H_eps) must vanish on the sub-window edges and be fully realized at tau."""
    edges = np.concatenate([f(h_eps[:, 0]), f(h_eps[:, -1])])
    lo, hi = f.support
    if np.any(edges != 0) or not (h_eps[-1, 0] < lo and hi < h_eps[-1, -1]):
        raise SupportException(f'level profile {f.describe()} at eps = {eps}', (lo, hi),
                               (float(h_eps[-1, 0]), float(h_eps[-1, -1])))
