"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Uniform modulus of a flow family on K and extraction of a uniformly Cauchy chain.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from field_kit.report import Suite
from .family import FlowFamily

logger = logging.getLogger(__name__)

DEFAULT_PAIRS = 10_000
DEFAULT_SEED = 20240601

FAMILY_HEADER = ('n', 'C1_meas', 'C2_meas', 'bmax_meas', 'TV_b', 'modulus_ratio',
                 'sup_dist_to_id')


@dataclass(frozen=True)
class ModulusReport:
    """ratios[k] is the worst ratio |dX| / ((C2/C1)|dx| + b_max |dt|) of member k."""
    ratios: list
    n_pairs: int
    tol: float

    @property
    def worst_ratio(self) -> float:
        return max(self.ratios)

    @property
    def worst_member(self) -> int:
        return int(np.argmax(self.ratios))

    @property
    def passed(self) -> bool:
        return self.worst_ratio <= 1 + self.tol

    def suite(self, labels: list = None) -> Suite:
        labels = labels if labels is not None else list(range(len(self.ratios)))
        suite = Suite('compactness')
        suite.add('modulus_ratio', self.worst_ratio, self.passed,
                  f'member {labels[self.worst_member]}')
        suite.add('pairs', self.n_pairs)
        return suite


@dataclass(frozen=True)
class ConvergentChain:
    """indices of a delta-chain ending at the limit candidate, ascending.
    found is False when no chain of two or more members exists."""
    indices: list
    labels: list
    links: list
    delta: float
    distances_to_identity: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return len(self.indices) >= 2

    @property
    def limit_label(self):
        return self.labels[-1]


def sample_pairs(family: FlowFamily, n_pairs: int, seed: int) -> tuple:
    """Node index pairs inside K: every adjacent pair along x and along t, then n_pairs
    random pairs that differ in both time and space."""
    ti, xj = family.k_indices()
    i_grid, j_grid = np.meshgrid(ti, xj, indexing='ij')
    along_x = (np.stack([i_grid[:, :-1].ravel(), i_grid[:, 1:].ravel()]),
               np.stack([j_grid[:, :-1].ravel(), j_grid[:, 1:].ravel()]))
    along_t = (np.stack([i_grid[:-1].ravel(), i_grid[1:].ravel()]),
               np.stack([j_grid[:-1].ravel(), j_grid[1:].ravel()]))

    rng = np.random.default_rng(seed)
    i_chunks, j_chunks = [], []
    accepted = 0
    while accepted < n_pairs and len(ti) > 1 and len(xj) > 1:
        i = rng.choice(ti, size=(2, 2 * n_pairs))
        j = rng.choice(xj, size=(2, 2 * n_pairs))
        diagonal = (i[0] != i[1]) & (j[0] != j[1])
        i_chunks.append(i[:, diagonal])
        j_chunks.append(j[:, diagonal])
        accepted += int(diagonal.sum())
    diagonal_i = np.concatenate(i_chunks, axis=1)[:, :n_pairs] if i_chunks else np.empty((2, 0), int)
    diagonal_j = np.concatenate(j_chunks, axis=1)[:, :n_pairs] if j_chunks else np.empty((2, 0), int)

    i = np.concatenate([along_x[0], along_t[0], diagonal_i], axis=1)
    j = np.concatenate([along_x[1], along_t[1], diagonal_j], axis=1)
    return i, j


def modulus_ratio(X: np.ndarray, i: np.ndarray, j: np.ndarray, grid, C1: float, C2: float,
                  b_max: float) -> float:
    d_X = np.abs(X[i[1], j[1]] - X[i[0], j[0]])
    bound = C2 / C1 * np.abs(j[1] - j[0]) * grid.dx + b_max * np.abs(i[1] - i[0]) * grid.dt
    # a zero bound only occurs for time pairs of a static family, where dX must vanish too
    ratio = np.divide(d_X, bound, out=np.where(d_X > 0, np.inf, 0.0), where=bound > 0)
    return float(ratio.max())


def equicontinuity_modulus(family: FlowFamily, tol: float = 1e-3, n_pairs: int = DEFAULT_PAIRS,
                           seed: int = DEFAULT_SEED) -> ModulusReport:
    """Never raises; the same pair sample is scanned for every member."""
    i, j = sample_pairs(family, n_pairs, seed)
    ratios = [modulus_ratio(member.flow.X, i, j, family.grid, family.C1, family.C2,
                            family.b_max)
              for member in family.members]
    report = ModulusReport(ratios, i.shape[1], tol)
    if report.passed:
        logger.info(f'Modulus ratio {report.worst_ratio:.6f} over {report.n_pairs} pairs')
    else:
        logger.warning(f'Modulus ratio {report.worst_ratio:.6f} exceeds 1 + {tol} '
                       f'for member {family.labels[report.worst_member]}')
    return report


def extract_convergent(family: FlowFamily, delta: float) -> ConvergentChain:
    """Greedy backward chain from the last member: a member joins when its sup distance on K
    to the earliest member already in the chain is at most delta."""
    last = len(family.members) - 1
    chain = [last]
    links = []
    for k in range(last - 1, -1, -1):
        distance = family.sup_distance(k, chain[0])
        if distance <= delta:
            chain.insert(0, k)
            links.insert(0, distance)

    to_identity = [family.distance_to_identity(k) for k in range(len(family.members))]
    result = ConvergentChain(chain, [family.labels[k] for k in chain], links, delta, to_identity)
    if result.found:
        logger.info(f'Chain {result.labels} within delta = {delta}, limit {result.limit_label}')
    else:
        logger.warning(f'No chain of two members within delta = {delta}')
    return result


def total_variation(values: np.ndarray, axis: int = 1) -> float:
    """max over time of the total variation in x of a node table."""
    return float(np.abs(np.diff(values, axis=axis)).sum(axis=axis).max())


def family_report(family: FlowFamily, modulus: ModulusReport,
                  chain: ConvergentChain = None) -> tuple:
    """Header and one row per member: label, measured bounds, TV of b, ratio, sup |X - id|."""
    rows = []
    for k, member in enumerate(family.members):
        pair = member.pair
        to_identity = (chain.distances_to_identity[k] if chain is not None
                       else family.distance_to_identity(k))
        rows.append([member.label, pair.rho.min, pair.rho.max, pair.b.sup_norm(),
                     total_variation(pair.b.values), modulus.ratios[k], to_identity])
    return FAMILY_HEADER, np.array(rows, dtype=float)
