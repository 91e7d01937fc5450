"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Analytic Hamiltonian generators.
A generator H(t, x) with dH/dx > 0 defines an exact nearly incompressible pair:
rho = dH/dx and b = -(dH/dt) / (dH/dx).
"""

import numpy as np


class HamiltonianGenerator:
    """Base class for closed-form Hamiltonians.
    Subclasses supply H and its first and mixed/second x derivatives,
    and declare the density and velocity bounds they guarantee."""
    name = 'generator'

    C1: float = 1.0
    C2: float = 1.0
    b_max: float = 0.0

    def H(self, t, x) -> np.ndarray:
        raise NotImplementedError

    def H_t(self, t, x) -> np.ndarray:
        raise NotImplementedError

    def H_x(self, t, x) -> np.ndarray:
        raise NotImplementedError

    def H_xx(self, t, x) -> np.ndarray:
        raise NotImplementedError

    def H_tx(self, t, x) -> np.ndarray:
        raise NotImplementedError

    def rho(self, t, x) -> np.ndarray:
        return self.H_x(t, x)

    def b(self, t, x) -> np.ndarray:
        return -self.H_t(t, x) / self.H_x(t, x)

    def b_x(self, t, x) -> np.ndarray:
        """x derivative of b = -H_t / H_x."""
        h_x = self.H_x(t, x)
        return (self.H_t(t, x) * self.H_xx(t, x) - self.H_tx(t, x) * h_x) / h_x ** 2

    @property
    def smooth(self) -> bool:
        return True

    def describe(self) -> dict:
        return {'generator': self.name}


class LinearHamiltonian(HamiltonianGenerator):
    """H = x - c t: unit density translated at speed c."""
    name = 'linear'

    def __init__(self, c: float = 0.0):
        self.c = float(c)
        self.C1 = 1.0
        self.C2 = 1.0
        self.b_max = abs(self.c)

    def H(self, t, x):
        t, x = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(x, dtype=float))
        return x - self.c * t

    def H_t(self, t, x):
        return np.full(np.broadcast(np.asarray(t), np.asarray(x)).shape, -self.c)

    def H_x(self, t, x):
        return np.ones(np.broadcast(np.asarray(t), np.asarray(x)).shape)

    def H_xx(self, t, x):
        return np.zeros(np.broadcast(np.asarray(t), np.asarray(x)).shape)

    def H_tx(self, t, x):
        return np.zeros(np.broadcast(np.asarray(t), np.asarray(x)).shape)

    def describe(self) -> dict:
        return {'generator': self.name, 'c': self.c}


class OscillatoryHamiltonian(HamiltonianGenerator):
    """H = x + a sin(k(x - t)) / k.
    rho = 1 + a cos(k(x - t)) travels right at unit speed,
    b = a cos / (1 + a cos). k = 0 is the identity generator H = x."""
    name = 'oscillatory'

    def __init__(self, amplitude: float = 0.5, wavenumber: float = 1.0):
        if not 0 <= amplitude < 1:
            raise ValueError(f'amplitude must lie in [0, 1), got {amplitude}')
        self.a = float(amplitude)
        self.k = float(wavenumber)
        if self.k == 0:
            self.a = 0.0
        self.C1 = 1.0 - self.a
        self.C2 = 1.0 + self.a
        self.b_max = self.a / (1.0 - self.a)

    def _phase(self, t, x):
        return self.k * (np.asarray(x, dtype=float) - np.asarray(t, dtype=float))

    def H(self, t, x):
        t, x = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(x, dtype=float))
        if self.k == 0:
            return x.copy()
        return x + self.a * np.sin(self._phase(t, x)) / self.k

    def H_t(self, t, x):
        return -self.a * np.cos(self._phase(t, x))

    def H_x(self, t, x):
        return 1.0 + self.a * np.cos(self._phase(t, x))

    def H_xx(self, t, x):
        return -self.a * self.k * np.sin(self._phase(t, x))

    def H_tx(self, t, x):
        return self.a * self.k * np.sin(self._phase(t, x))

    def describe(self) -> dict:
        return {'generator': self.name, 'amplitude': self.a, 'wavenumber': self.k}


class StandingWaveHamiltonian(HamiltonianGenerator):
    """H = x + a sin(x) cos(t): rho = 1 + a cos(x) cos(t) breathes in place,
    b = a sin(x) sin(t) / (1 + a cos(x) cos(t))."""
    name = 'standing_wave'

    def __init__(self, amplitude: float = 0.5):
        if not 0 <= amplitude < 1:
            raise ValueError(f'amplitude must lie in [0, 1), got {amplitude}')
        self.a = float(amplitude)
        self.C1 = 1.0 - self.a
        self.C2 = 1.0 + self.a
        self.b_max = self.a / (1.0 - self.a)

    def H(self, t, x):
        t, x = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(x, dtype=float))
        return x + self.a * np.sin(x) * np.cos(t)

    def H_t(self, t, x):
        return -self.a * np.sin(x) * np.sin(t)

    def H_x(self, t, x):
        return 1.0 + self.a * np.cos(x) * np.cos(t)

    def H_xx(self, t, x):
        return -self.a * np.sin(x) * np.cos(t)

    def H_tx(self, t, x):
        return -self.a * np.cos(x) * np.sin(t)

    def describe(self) -> dict:
        return {'generator': self.name, 'amplitude': self.a}
