"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Provides the space-time grid and node-sampled fields.
Fields are bilinear inside the window and constant in x outside it.
"""

from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from errors import IsolineException


@dataclass(frozen=True)
class SpaceTimeGrid:
    """Uniform discretization of [0, T] x [x_min, x_max]."""
    T: float
    x_min: float
    x_max: float
    nt: int
    nx: int

    def __post_init__(self):
        if not (np.isfinite(self.T) and self.T > 0):
            raise InvalidGridException('T', self.T, 'T > 0')
        if not (np.isfinite(self.x_min) and np.isfinite(self.x_max) and self.x_max > self.x_min):
            raise InvalidGridException('x_max', self.x_max, f'x_max > x_min = {self.x_min}')
        if int(self.nt) != self.nt or self.nt < 2:
            raise InvalidGridException('nt', self.nt, 'integer nt >= 2')
        if int(self.nx) != self.nx or self.nx < 2:
            raise InvalidGridException('nx', self.nx, 'integer nx >= 2')
        object.__setattr__(self, 'nt', int(self.nt))
        object.__setattr__(self, 'nx', int(self.nx))

    @property
    def dt(self) -> float:
        return self.T / self.nt

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.nx

    @cached_property
    def t(self) -> np.ndarray:
        # Nodes by multiplication, never by repeated addition
        nodes = np.arange(self.nt + 1) * self.dt
        nodes.setflags(write=False)
        return nodes

    @cached_property
    def x(self) -> np.ndarray:
        nodes = self.x_min + np.arange(self.nx + 1) * self.dx
        nodes.setflags(write=False)
        return nodes

    @property
    def shape(self) -> tuple:
        return self.nt + 1, self.nx + 1

    def node(self, i: int, j: int) -> tuple:
        return i * self.dt, self.x_min + j * self.dx

    def mesh(self) -> tuple:
        """Returns (t, x) arrays of shape (nt+1, nx+1)."""
        return np.meshgrid(self.t, self.x, indexing='ij')

    def refined(self, factor: int = 2, nt: int = None, nx: int = None) -> 'SpaceTimeGrid':
        return replace(self,
                       nt=nt if nt is not None else self.nt * factor,
                       nx=nx if nx is not None else self.nx * factor)

    def padded_interval(self, b_max: float) -> tuple:
        """Spatial interval at distance b_max*T from the window edges.
        Nothing outside the window can reach it before time T."""
        pad = b_max * self.T
        return self.x_min + pad, self.x_max - pad

    def time_index(self, t: float) -> int:
        """Index of the node time closest to t."""
        return int(np.clip(np.rint(t / self.dt), 0, self.nt))

    def as_dict(self) -> dict:
        return {'T': self.T, 'x_min': self.x_min, 'x_max': self.x_max,
                'nt': self.nt, 'nx': self.nx}


@dataclass(frozen=True, eq=False)
class SampledField:
    """Finite values at the nodes of a grid."""
    grid: SpaceTimeGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != self.grid.shape:
            raise InvalidGridException('values', values.shape, f'shape {self.grid.shape}')
        if not np.all(np.isfinite(values)):
            bad = np.argwhere(~np.isfinite(values))[0]
            raise InvalidGridException('values', f'non-finite at node {tuple(bad)}', 'finite values')
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @cached_property
    def _interpolator(self) -> RegularGridInterpolator:
        return RegularGridInterpolator((self.grid.t, self.grid.x), self.values,
                                       method='linear', bounds_error=False, fill_value=None)

    def __call__(self, t, x) -> np.ndarray:
        """Bilinear evaluation; constant extension beyond [x_min, x_max]."""
        t, x = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(x, dtype=float))
        t = np.clip(t, 0.0, self.grid.t[-1])
        x = np.clip(x, self.grid.x_min, self.grid.x[-1])
        points = np.stack([t.ravel(), x.ravel()], axis=-1)
        return self._interpolator(points).reshape(t.shape)

    @property
    def min(self) -> float:
        return float(self.values.min())

    @property
    def max(self) -> float:
        return float(self.values.max())

    def sup_norm(self) -> float:
        return float(np.abs(self.values).max())


class InvalidGridException(IsolineException):
    """Raised when a grid parameter or a node table is not admissible."""

    def __init__(self, name: str, value, requirement: str):
        super().__init__(f'{name} = {value} violates {requirement}')
        self.name = name
        self.value = value
        self.requirement = requirement
