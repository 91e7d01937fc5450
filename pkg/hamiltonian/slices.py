"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Monotone interpolation of one time slice x -> H(t, x) and its inversion.

The hermite slice is the C1 cubic through the node values with the node
densities as derivatives. Cells where those derivatives are too far from the
secant for a monotone cubic (Fritsch-Carlson) are interpolated linearly.
Outside the window the slice continues linearly with its boundary density,
which is the Hamiltonian of a density extended constantly in x.
"""

import numpy as np

from errors import IsolineException

INTERPOLANTS = ('hermite', 'linear')

_NEWTON_RTOL = 1e-13
_NEWTON_MAX_ITER = 60


class MonotoneSlice:
    """Strictly increasing interpolant of (x, H) with node derivatives rho."""

    def __init__(self, x: np.ndarray, values: np.ndarray, rho: np.ndarray,
                 interpolant: str = 'hermite'):
        if interpolant not in INTERPOLANTS:
            raise ValueError(f'interpolant must be one of {INTERPOLANTS}, got {interpolant}')
        self.x = np.asarray(x, dtype=float)
        self.values = np.asarray(values, dtype=float)
        self.rho = np.asarray(rho, dtype=float)
        self.interpolant = interpolant
        self.dx = self.x[1] - self.x[0]

        secant = np.diff(self.values) / self.dx
        if np.any(secant <= 0):
            j = int(np.argmin(secant))
            raise SliceMonotonicityException(float(self.x[j]), float(secant[j]))
        self.secant = secant
        self.d_left, self.d_right = _limited_derivatives(secant, self.rho)

    @property
    def level_range(self) -> tuple:
        return float(self.values[0]), float(self.values[-1])

    def _cell(self, x: np.ndarray) -> tuple:
        j = np.clip(np.floor((x - self.x[0]) / self.dx).astype(int), 0, len(self.x) - 2)
        s = (x - self.x[j]) / self.dx
        return j, s

    def _cubic(self, j: np.ndarray, s: np.ndarray) -> np.ndarray:
        s2 = s * s
        s3 = s2 * s
        return ((2 * s3 - 3 * s2 + 1) * self.values[j] + (s3 - 2 * s2 + s) * self.dx * self.d_left[j]
                + (-2 * s3 + 3 * s2) * self.values[j + 1] + (s3 - s2) * self.dx * self.d_right[j])

    def _cubic_derivative(self, j: np.ndarray, s: np.ndarray) -> np.ndarray:
        """dH/dx of the cell cubic."""
        s2 = s * s
        return ((6 * s2 - 6 * s) * (self.values[j] - self.values[j + 1]) / self.dx
                + (3 * s2 - 4 * s + 1) * self.d_left[j] + (3 * s2 - 2 * s) * self.d_right[j])

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.interpolant == 'linear':
            inside = np.interp(x, self.x, self.values)
        else:
            inside = self._cubic(*self._cell(np.clip(x, self.x[0], self.x[-1])))
        below = self.values[0] + self.rho[0] * (x - self.x[0])
        above = self.values[-1] + self.rho[-1] * (x - self.x[-1])
        return np.where(x < self.x[0], below, np.where(x > self.x[-1], above, inside))

    def derivative(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.interpolant == 'linear':
            j, _ = self._cell(np.clip(x, self.x[0], self.x[-1]))
            inside = self.secant[j]
        else:
            inside = self._cubic_derivative(*self._cell(np.clip(x, self.x[0], self.x[-1])))
        return np.where(x < self.x[0], self.rho[0], np.where(x > self.x[-1], self.rho[-1], inside))

    def invert(self, h, extend: bool = False) -> np.ndarray:
        """Position x with H(x) = h.
        Levels outside the node range raise unless extend is set."""
        h = np.asarray(h, dtype=float)
        lo, hi = self.level_range
        outside = (h < lo) | (h > hi)
        if np.any(outside) and not extend:
            bad = h[outside].flat[0]
            raise LevelOutOfRangeException(float(bad), lo, hi)

        h_in = np.clip(h, lo, hi)
        j = np.clip(np.searchsorted(self.values, h_in, side='right') - 1, 0, len(self.x) - 2)
        s_linear = (h_in - self.values[j]) / (self.values[j + 1] - self.values[j])
        if self.interpolant == 'linear':
            inside = self.x[j] + s_linear * self.dx
        else:
            inside = self.x[j] + self._newton(j, s_linear, h_in) * self.dx

        below = self.x[0] + (h - lo) / self.rho[0]
        above = self.x[-1] + (h - hi) / self.rho[-1]
        return np.where(h < lo, below, np.where(h > hi, above, inside))

    def _newton(self, j: np.ndarray, s: np.ndarray, h: np.ndarray) -> np.ndarray:
        """Safeguarded Newton for cubic(j, s) = h on s in [0, 1]; bisects when a step
        leaves the bracket."""
        s = s.copy()
        lo = np.zeros_like(s)
        hi = np.ones_like(s)
        scale = np.maximum(1.0, np.abs(h))
        for _ in range(_NEWTON_MAX_ITER):
            f = self._cubic(j, s) - h
            if np.all(np.abs(f) <= _NEWTON_RTOL * scale):
                break
            lo = np.where(f < 0, s, lo)
            hi = np.where(f > 0, s, hi)
            slope = self._cubic_derivative(j, s) * self.dx
            with np.errstate(divide='ignore', invalid='ignore'):
                step = s - f / slope
            bad = ~np.isfinite(step) | (step <= lo) | (step >= hi)
            s = np.where(f == 0, s, np.where(bad, 0.5 * (lo + hi), step))
        return s


def _limited_derivatives(secant: np.ndarray, rho: np.ndarray) -> tuple:
    """Per-cell endpoint derivatives. A cell outside the Fritsch-Carlson circle of
    radius 3 is made linear: both derivatives become its secant."""
    d_left = np.maximum(rho[:-1], 0.0)
    d_right = np.maximum(rho[1:], 0.0)
    linear = np.hypot(d_left / secant, d_right / secant) > 3.0
    return np.where(linear, secant, d_left), np.where(linear, secant, d_right)


class LevelOutOfRangeException(IsolineException):
    """Raised when a level is not realized by a slice inside the window.
    The query escapes the window; the padding must be enlarged."""

    def __init__(self, level: float, lo: float, hi: float, t: float = None):
        detail = f'level h = {level} outside the slice range [{lo}, {hi}]'
        if t is not None:
            detail = detail + f' at t = {t}'
        super().__init__(detail)
        self.level = level
        self.lo = lo
        self.hi = hi
        self.t = t


class SliceMonotonicityException(IsolineException):
    """Raised when node values of a slice are not strictly increasing."""

    def __init__(self, x: float, secant: float):
        super().__init__(f'slice secant {secant} <= 0 on the cell starting at x = {x}')
        self.x = x
        self.secant = secant
