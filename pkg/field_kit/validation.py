"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Checks the near-incompressibility hypothesis on a sampled pair.
"""

import logging
from dataclasses import dataclass

from .report import Suite
from .scenarios import NearIncompressiblePair, continuity_residual

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ValidationReport:
    rho_min: float
    rho_max: float
    b_sup: float
    continuity_residual: float
    worst_node: tuple
    tol: float
    bounds_hold: bool

    @property
    def passed(self) -> bool:
        return self.bounds_hold and self.continuity_residual <= self.tol

    def suite(self) -> Suite:
        suite = Suite('pair')
        suite.add('rho_min', self.rho_min, self.bounds_hold)
        suite.add('rho_max', self.rho_max, self.bounds_hold)
        suite.add('b_sup', self.b_sup, self.bounds_hold)
        suite.add('continuity_residual', self.continuity_residual,
                  self.continuity_residual <= self.tol, f'node {self.worst_node}')
        return suite


def validate_pair(pair: NearIncompressiblePair, tol: float) -> ValidationReport:
    """Never raises; the verdict is in ValidationReport.passed."""
    residual, node = continuity_residual(pair.b, pair.rho)
    rho_min, rho_max, b_sup = pair.rho.min, pair.rho.max, pair.b.sup_norm()
    bounds_hold = (pair.C1 > 0 and rho_min >= pair.C1 - 1e-12
                   and rho_max <= pair.C2 + 1e-12 and b_sup <= pair.b_max + 1e-12)
    report = ValidationReport(rho_min, rho_max, b_sup, residual, node, tol, bounds_hold)
    if not report.passed:
        logger.warning(f'Pair {pair.name} failed validation: residual {residual:.3e} '
                       f'(tol {tol:.1e}) at node {node}, bounds hold: {bounds_hold}')
    return report
