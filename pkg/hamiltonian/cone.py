"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Cone bound for a Hamiltonian:
|H(t', x') - H(t, x)| >= C1 (|x' - x| - b_max |t' - t|) whenever |x' - x| > b_max |t' - t|.
"""

import logging
from dataclasses import dataclass

import numpy as np

from field_kit.report import Suite
from .construct import HamiltonianField

logger = logging.getLogger(__name__)

DEFAULT_PAIRS = 10_000
DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class ConeReport:
    worst_margin: float
    worst_pair: tuple
    n_pairs: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.worst_margin >= -self.tol

    def suite(self) -> Suite:
        suite = Suite('cone')
        suite.add('worst_margin', self.worst_margin, self.passed, f'pair {self.worst_pair}')
        suite.add('pairs', self.n_pairs)
        return suite


def sample_cone_pairs(H: HamiltonianField, n_pairs: int, seed: int) -> tuple:
    """Node index pairs ((i, j), (i2, j2)) strictly outside the cone |dx| <= b_max |dt|."""
    grid = H.grid
    rng = np.random.default_rng(seed)
    chunks = []
    accepted = 0
    for _ in range(100):
        i = rng.integers(0, grid.nt + 1, size=(2, 2 * n_pairs))
        j = rng.integers(0, grid.nx + 1, size=(2, 2 * n_pairs))
        outside = np.abs(j[1] - j[0]) * grid.dx > H.b_max * np.abs(i[1] - i[0]) * grid.dt
        chunks.append((i[:, outside], j[:, outside]))
        accepted += int(outside.sum())
        if accepted >= n_pairs:
            break
    i = np.concatenate([c[0] for c in chunks], axis=1)[:, :n_pairs]
    j = np.concatenate([c[1] for c in chunks], axis=1)[:, :n_pairs]
    return i, j


def cone_bound_check(H: HamiltonianField, tol: float = 1e-5, n_pairs: int = DEFAULT_PAIRS,
                     seed: int = DEFAULT_SEED) -> ConeReport:
    """Never raises; a violation beyond tol is reported with passed = False."""
    grid = H.grid
    i, j = sample_cone_pairs(H, n_pairs, seed)
    values = H.H.values
    d_h = np.abs(values[i[1], j[1]] - values[i[0], j[0]])
    d_x = np.abs(j[1] - j[0]) * grid.dx
    d_t = np.abs(i[1] - i[0]) * grid.dt
    margin = d_h - H.C1 * (d_x - H.b_max * d_t)

    k = int(np.argmin(margin))
    worst_pair = (grid.node(int(i[0, k]), int(j[0, k])), grid.node(int(i[1, k]), int(j[1, k])))
    report = ConeReport(float(margin[k]), worst_pair, len(margin), tol)
    if not report.passed:
        logger.warning(f'Cone bound violated by {-report.worst_margin:.3e} at {worst_pair}')
    return report
