"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Upwind finite volume and RK4 characteristic oracles.
"""

import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from field_kit import (SpaceTimeGrid, ScenarioConfig, build_scenario, InitialDatum,
                       LinearHamiltonian, OscillatoryHamiltonian)
from reference_oracles import (fv_upwind_solve, OraclePreconditionException, RK4Stepper,
                               integrate_characteristics, characteristics_solve)
from reference_oracles import characteristics, fv_upwind

GAUSSIAN = InitialDatum('gaussian_bump', center=0.0, width=0.25)


def translated_error(nx: int) -> float:
    grid = SpaceTimeGrid(1.0, -4.0, 4.0, 64, nx)
    pair = build_scenario(ScenarioConfig('constant_field', grid, {'c': 1.0}))
    sol = fv_upwind_solve(pair, GAUSSIAN)
    return float(trapezoid(np.abs(sol.u.values[-1] - GAUSSIAN(grid.x - 1.0)), grid.x))


class KinkedHamiltonian(LinearHamiltonian):
    """Flags itself as not smooth; the characteristic oracle reads only the flag."""
    name = 'kinked'

    @property
    def smooth(self) -> bool:
        return False


class TestFiniteVolume:

    def test_zero_field_is_identity(self, zero_stage):
        sol = fv_upwind_solve(zero_stage.pair, GAUSSIAN)
        assert sol.method == 'fv_upwind'
        for row in sol.u.values:
            np.testing.assert_array_equal(row, GAUSSIAN(zero_stage.grid.x))
        assert fv_upwind.substeps(zero_stage.pair) == 0

    def test_substeps_respect_cfl(self, constant_stage):
        m = fv_upwind.substeps(constant_stage.pair)
        grid = constant_stage.grid
        assert m == 2
        assert grid.dt / m * constant_stage.pair.b_max / grid.dx <= fv_upwind.CFL

    def test_mass_is_conserved(self, constant_stage):
        sol = fv_upwind_solve(constant_stage.pair, GAUSSIAN)
        mass = sol.mass()
        assert np.abs(mass - mass[0]).max() <= 1e-12

    def test_first_order_convergence(self):
        assert translated_error(256) / translated_error(512) >= 1.6

    def test_step_stays_monotone(self, constant_stage):
        datum = InitialDatum('step', center=-0.9921875)
        sol = fv_upwind_solve(constant_stage.pair, datum)
        assert sol.u.values.min() >= -1e-15
        assert sol.u.values.max() <= 1 + 1e-15
        assert np.diff(sol.u.values, axis=1).min() >= -1e-15

    def test_single_step_flux(self):
        state = fv_upwind.FVState(np.array([0.0, 1.0, 0.0]), 0.0, 1.0)
        moved = state.step(np.full(4, 1.0), 0.5)
        np.testing.assert_allclose(moved.u, [0.0, 0.5, 0.5])
        assert moved.t == 0.5
        assert moved.mass() == pytest.approx(1.0)

    def test_unbounded_datum(self, zero_stage):
        with pytest.raises(OraclePreconditionException) as info:
            fv_upwind_solve(zero_stage.pair, InitialDatum('inv_sqrt_singularity', center=0.0))
        assert info.value.oracle == 'fv'


class TestCharacteristics:

    def test_rk4_step_matches_taylor(self):
        step = RK4Stepper()(1.0, 0.0, 0.1, lambda t, y: y)
        assert step == pytest.approx(sum(0.1 ** k / math.factorial(k) for k in range(5)), abs=1e-15)

    def test_rk4_reaches_e(self):
        y = 1.0
        for n in range(10):
            y = RK4Stepper()(y, 0.1 * n, 0.1, lambda t, y: y)
        assert y == pytest.approx(math.e, abs=5e-6)

    def test_translation(self):
        assert integrate_characteristics(LinearHamiltonian(1.0), 0.0, 1.0, 10).endpoint == \
            pytest.approx(1.0, abs=1e-14)
        trajectory = integrate_characteristics(LinearHamiltonian(0.0), 0.3, 1.0, 10)
        np.testing.assert_array_equal(trajectory.x, 0.3)
        assert trajectory.t[-1] == pytest.approx(1.0)

    def test_hamiltonian_is_constant_along_trajectories(self):
        generator = OscillatoryHamiltonian(0.5, 1)
        x0 = np.linspace(-1.0, 1.0, 5)
        trajectory = integrate_characteristics(generator, x0, 1.0, 200)
        levels = generator.H(trajectory.t[:, None], trajectory.x)
        np.testing.assert_allclose(levels, np.broadcast_to(generator.H(0.0, x0), levels.shape),
                                   atol=1e-8)

    def test_solve_translates_datum(self, constant_stage):
        grid = constant_stage.grid
        sol = characteristics_solve(constant_stage.pair.generator, GAUSSIAN, grid)
        t, x = grid.mesh()
        np.testing.assert_allclose(sol.u.values, GAUSSIAN(x - t), atol=1e-12)
        assert sol.method == 'characteristics'

    def test_solve_carries_density(self):
        grid = SpaceTimeGrid(1.0, -2.0, 2.0, 8, 64)
        generator = OscillatoryHamiltonian(0.5, 1)
        datum = InitialDatum('density_profile', generator=generator)
        sol = characteristics_solve(generator, datum, grid)
        t, x = grid.mesh()
        np.testing.assert_allclose(sol.u.values, generator.rho(t, x), atol=1e-6)

    @pytest.mark.parametrize('generator', [None, KinkedHamiltonian(1.0)])
    def test_needs_smooth_generator(self, generator):
        with pytest.raises(OraclePreconditionException) as info:
            characteristics.check_preconditions(generator)
        assert info.value.oracle == 'characteristics'
