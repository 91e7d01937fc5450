"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Initial data for the Cauchy problem.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from errors import IsolineException
from .generators import HamiltonianGenerator

KINDS = ('constant', 'gaussian_bump', 'step', 'inv_sqrt_singularity',
         'composite', 'density_profile')


@dataclass(frozen=True, eq=False)
class InitialDatum:
    """Pointwise evaluable initial condition.

    inv_sqrt_singularity is stored clipped: min(clip, height*|x - center|^(-1/2));
    the unclipped profile is the locally integrable datum being modelled.
    composite is a weighted sum of `components`."""
    kind: str
    center: float = 0.0
    height: float = 1.0
    width: float = 0.25
    clip: float = 100.0
    components: tuple = ()
    weights: tuple = ()
    generator: HamiltonianGenerator = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DatumException(self.kind, f'kind must be one of {KINDS}')
        if self.kind == 'gaussian_bump' and not self.width > 0:
            raise DatumException(self.kind, 'width must be positive')
        if self.kind == 'inv_sqrt_singularity' and not (0 < self.clip < np.inf):
            raise DatumException(self.kind, 'clip must be finite and positive')
        if self.kind == 'composite' and len(self.components) != len(self.weights):
            raise DatumException(self.kind, 'one weight per component')
        if self.kind == 'density_profile' and self.generator is None:
            raise DatumException(self.kind, 'a generator is required')

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.kind == 'constant':
            return np.full(x.shape, self.height)
        if self.kind == 'gaussian_bump':
            return self.height * np.exp(-0.5 * ((x - self.center) / self.width) ** 2)
        if self.kind == 'step':
            # Value at the jump is the mean of both sides
            return self.height * np.where(x > self.center, 1.0,
                                          np.where(x < self.center, 0.0, 0.5))
        if self.kind == 'inv_sqrt_singularity':
            return np.minimum(self.clip, self.unclipped(x))
        if self.kind == 'density_profile':
            return self.height * self.generator.rho(0.0, x)
        total = np.zeros(x.shape)
        for weight, component in zip(self.weights, self.components):
            total = total + weight * component(x)
        return total

    def unclipped(self, x) -> np.ndarray:
        """The modelled datum; infinite at the singular point."""
        x = np.asarray(x, dtype=float)
        if self.kind != 'inv_sqrt_singularity':
            return self(x)
        distance = np.abs(x - self.center)
        with np.errstate(divide='ignore'):
            return np.where(distance > 0, self.height / np.sqrt(distance), np.inf)

    @property
    def support(self) -> tuple:
        """Closed interval outside which the datum vanishes (may be infinite)."""
        if self.kind == 'gaussian_bump':
            # Beyond 8 widths the profile is below 1e-14 of its height
            return self.center - 8 * self.width, self.center + 8 * self.width
        if self.kind == 'step':
            return (self.center, np.inf) if self.height != 0 else (0.0, 0.0)
        if self.kind == 'composite':
            bounds = [c.support for c, w in zip(self.components, self.weights) if w != 0]
            if not bounds:
                return 0.0, 0.0
            return min(lo for lo, _ in bounds), max(hi for _, hi in bounds)
        if self.height == 0:
            return 0.0, 0.0
        return -np.inf, np.inf

    @property
    def bounded(self) -> bool:
        if self.kind == 'composite':
            return all(c.bounded for c in self.components)
        return self.kind != 'inv_sqrt_singularity'

    @property
    def exceptional_points(self) -> tuple:
        if self.kind in ('step', 'inv_sqrt_singularity'):
            return (self.center,)
        if self.kind == 'composite':
            return tuple(p for c in self.components for p in c.exceptional_points)
        return ()

    def integral(self, lo: float, hi: float) -> float:
        """Integral of the unclipped datum over [lo, hi], with the
        singular point handed to the adaptive quadrature."""
        points = [p for p in self.exceptional_points if lo < p < hi]
        value, _ = quad(lambda s: float(self.unclipped(s)), lo, hi,
                        points=points or None, limit=200)
        return value

    def describe(self) -> dict:
        out_dict = {'kind': self.kind}
        if self.kind in ('gaussian_bump', 'step', 'inv_sqrt_singularity'):
            out_dict['center'] = self.center
        if self.kind != 'composite':
            out_dict['height'] = self.height
        if self.kind == 'gaussian_bump':
            out_dict['width'] = self.width
        if self.kind == 'inv_sqrt_singularity':
            out_dict['clip'] = self.clip
        if self.kind == 'composite':
            out_dict['weights'] = list(self.weights)
            out_dict['components'] = [c.describe() for c in self.components]
        return out_dict


def combine(weights, data) -> InitialDatum:
    return InitialDatum('composite', components=tuple(data), weights=tuple(weights))


class DatumException(IsolineException):
    """Raised when an initial datum is malformed."""

    def __init__(self, kind: str, requirement: str):
        super().__init__(f'datum "{kind}": {requirement}')
        self.kind = kind
        self.requirement = requirement
