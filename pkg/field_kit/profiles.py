"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Compactly supported 1D profiles with closed-form derivatives.
Used as spatial probes, as space factors of test functions and on the level axis.
"""

from dataclasses import dataclass

import numpy as np

from errors import IsolineException

PROFILE_KINDS = ('bump', 'triangle', 'gaussian', 'unit')

# Gaussian profiles are cut at this many widths
GAUSSIAN_CUT = 6.0


@dataclass(frozen=True)
class Profile:
    """bump: (1 - s^2)^3, triangle: 1 - |s|, gaussian: exp(-s^2 / 2), with
    s = (x - center) / width, zero outside the support. unit is 1 everywhere."""
    kind: str = 'bump'
    center: float = 0.0
    width: float = 1.0

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ValueError(f'profile kind must be one of {PROFILE_KINDS}, got {self.kind}')
        if not self.width > 0:
            raise ValueError(f'profile width must be positive, got {self.width}')

    @property
    def support(self) -> tuple:
        if self.kind == 'unit':
            return -np.inf, np.inf
        reach = GAUSSIAN_CUT * self.width if self.kind == 'gaussian' else self.width
        return self.center - reach, self.center + reach

    def _s(self, x) -> np.ndarray:
        return (np.asarray(x, dtype=float) - self.center) / self.width

    def __call__(self, x) -> np.ndarray:
        s = self._s(x)
        if self.kind == 'bump':
            return np.where(np.abs(s) < 1, (1 - s * s) ** 3, 0.0)
        if self.kind == 'triangle':
            return np.maximum(0.0, 1 - np.abs(s))
        if self.kind == 'gaussian':
            return np.where(np.abs(s) <= GAUSSIAN_CUT, np.exp(-0.5 * s * s), 0.0)
        return np.ones_like(s)

    def derivative(self, x) -> np.ndarray:
        s = self._s(x)
        if self.kind == 'bump':
            return np.where(np.abs(s) < 1, -6 * s * (1 - s * s) ** 2 / self.width, 0.0)
        if self.kind == 'triangle':
            return np.where(np.abs(s) < 1, -np.sign(s) / self.width, 0.0)
        if self.kind == 'gaussian':
            return np.where(np.abs(s) <= GAUSSIAN_CUT, -s * np.exp(-0.5 * s * s) / self.width, 0.0)
        return np.zeros_like(s)

    def inside(self, lo: float, hi: float) -> bool:
        support_lo, support_hi = self.support
        return lo <= support_lo and support_hi <= hi

    def describe(self) -> dict:
        return {'kind': self.kind, 'center': self.center, 'width': self.width}


def require_inside(profile: Profile, lo: float, hi: float, what: str) -> None:
    if not profile.inside(lo, hi):
        raise SupportException(what, profile.support, (lo, hi))


class SupportException(IsolineException):
    """Raised when a probe, datum or test function reaches outside the region
    where the computed flow is exact."""

    def __init__(self, what: str, support: tuple, allowed: tuple):
        super().__init__(f'{what} supported on {support}, must lie inside {allowed}')
        self.what = what
        self.support = support
        self.allowed = allowed
