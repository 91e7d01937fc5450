"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Test functions phi(t, x) = psi(x) chi(t) for the weak formulation,
and level profiles f for observables of the form f(H(t, x)).
"""

from dataclasses import dataclass

import numpy as np

from field_kit.profiles import Profile

TIME_KINDS = ('ramp', 'bump')


@dataclass(frozen=True)
class TimeProfile:
    """ramp: 1 - t/tc, bump: (1 - (t/tc)^2)^3, both zero for t >= tc."""
    kind: str = 'bump'
    tc: float = 1.0

    def __post_init__(self):
        if self.kind not in TIME_KINDS:
            raise ValueError(f'time profile kind must be one of {TIME_KINDS}, got {self.kind}')
        if not self.tc > 0:
            raise ValueError(f'time profile cutoff must be positive, got {self.tc}')

    def __call__(self, t) -> np.ndarray:
        r = np.asarray(t, dtype=float) / self.tc
        if self.kind == 'ramp':
            return np.where(r < 1, 1 - r, 0.0)
        return np.where(r < 1, (1 - r * r) ** 3, 0.0)

    def derivative(self, t) -> np.ndarray:
        # ramp: left derivative at the cutoff
        r = np.asarray(t, dtype=float) / self.tc
        if self.kind == 'ramp':
            return np.where(r <= 1, -1 / self.tc, 0.0)
        return np.where(r < 1, -6 * r * (1 - r * r) ** 2 / self.tc, 0.0)


@dataclass(frozen=True)
class TestFunction:
    space: Profile
    time: TimeProfile

    __test__ = False

    def __call__(self, t, x) -> np.ndarray:
        return self.time(t) * self.space(x)

    def d_t(self, t, x) -> np.ndarray:
        return self.time.derivative(t) * self.space(x)

    def d_x(self, t, x) -> np.ndarray:
        return self.time(t) * self.space.derivative(x)

    def describe(self) -> dict:
        return {'space': self.space.describe(), 'time': {'kind': self.time.kind, 'tc': self.time.tc}}


def default_test_suite(grid, b_max: float, count: int = 5) -> list:
    """count bumps spread over the padded region, strictly inside it, each with a time bump
    cut at 0.9 T."""
    lo, hi = grid.padded_interval(b_max)
    spacing = (hi - lo) / count
    time = TimeProfile('bump', 0.9 * grid.T)
    return [TestFunction(Profile('bump', lo + (k + 0.5) * spacing, 0.45 * spacing), time)
            for k in range(count)]


@dataclass(frozen=True)
class LevelProfile(Profile):
    """Profile on the level axis; bump or the constant unit profile."""

    def __post_init__(self):
        super().__post_init__()
        if self.kind not in ('bump', 'unit'):
            raise ValueError(f'level profile kind must be bump or unit, got {self.kind}')
