"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Pushforward solutions, weak residuals, observables and the uniqueness probe.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from field_kit import InitialDatum, combine, Profile, SpaceTimeGrid
from field_kit.profiles import SupportException
from reference_oracles import characteristics, cross_validate
from transport import (solve_cauchy, TimeProfile, TestFunction, LevelProfile, default_test_suite,
                       weak_residual, clip_study, conserved_observable, uniqueness_probe,
                       default_level_profile, default_tau, ProbeRow, ProbeTable)

GAUSSIAN = InitialDatum('gaussian_bump', center=-0.5, width=0.25)

# Half way between two x nodes of the constant stage
STEP_CENTER = -0.9921875


def density_defect(stage) -> float:
    """sup over the padded region of |u - rho| for u started from rho(0, .)."""
    datum = InitialDatum('density_profile', generator=stage.pair.generator)
    sol = solve_cauchy(stage.pair, stage.flow, datum)
    lo, hi = stage.pair.padded_interval()
    inside = (stage.grid.x >= lo) & (stage.grid.x <= hi)
    return float(np.abs(sol.u.values - stage.pair.rho.values)[:, inside].max())


def level_drift(stage) -> float:
    sol = solve_cauchy(stage.pair, stage.flow, GAUSSIAN)
    return conserved_observable(sol, stage.H, default_level_profile(stage.H, stage.pair, 0.5)).drift


class TestSolveCauchy:

    def test_zero_field_keeps_datum(self, zero_stage):
        sol = solve_cauchy(zero_stage.pair, zero_stage.flow, GAUSSIAN)
        for row in sol.u.values:
            np.testing.assert_allclose(row, GAUSSIAN(zero_stage.grid.x), atol=1e-12)

    def test_constant_field_translates_step(self, constant_stage):
        datum = InitialDatum('step', center=STEP_CENTER)
        sol = solve_cauchy(constant_stage.pair, constant_stage.flow, datum)
        t, x = constant_stage.grid.mesh()
        lo, hi = constant_stage.pair.padded_interval()
        kept = ~constant_stage.flow.escaped_inverse & (x >= lo) & (x <= hi)
        np.testing.assert_array_equal(sol.u.values[kept], datum(x - t)[kept])

    def test_density_is_a_solution(self, first_stage_256):
        assert density_defect(first_stage_256) <= 5e-3

    @pytest.mark.slow
    def test_density_defect_under_refinement(self, first_stage_256, first_stage_512):
        assert density_defect(first_stage_256) / density_defect(first_stage_512) >= 3

    def test_linear_in_the_datum(self, first_stage):
        second = InitialDatum('gaussian_bump', center=0.5, width=0.2)
        stage = first_stage
        mixed = solve_cauchy(stage.pair, stage.flow, combine((2.0, -0.5), (GAUSSIAN, second)))
        first_sol = solve_cauchy(stage.pair, stage.flow, GAUSSIAN)
        second_sol = solve_cauchy(stage.pair, stage.flow, second)
        np.testing.assert_allclose(mixed.u.values,
                                   2.0 * first_sol.u.values - 0.5 * second_sol.u.values, atol=1e-12)

    def test_nonnegative_datum_stays_nonnegative(self, first_stage):
        sol = solve_cauchy(first_stage.pair, first_stage.flow, GAUSSIAN)
        assert sol.u.values.min() >= 0.0

    def test_datum_outside_padded_region(self, first_stage):
        with pytest.raises(SupportException):
            solve_cauchy(first_stage.pair, first_stage.flow,
                         InitialDatum('gaussian_bump', center=2.5, width=0.25))

    def test_mass_is_conserved(self, first_stage_256):
        stage = first_stage_256
        sol = solve_cauchy(stage.pair, stage.flow, GAUSSIAN)
        mass = sol.mass()
        assert np.abs(mass - mass[0]).max() <= 1e-3
        header, rows = sol.table()
        assert header == ('t', 'x', 'u')
        assert rows.shape == (stage.grid.shape[0] * stage.grid.shape[1], 3)


class TestTestFunctions:

    @settings(max_examples=50, deadline=None)
    @given(t=st.floats(0.01, 0.85))
    def test_time_bump_derivative(self, t):
        profile = TimeProfile('bump', 0.9)
        h = 1e-6
        numeric = (profile(t + h) - profile(t - h)) / (2 * h)
        assert float(profile.derivative(t)) == pytest.approx(float(numeric), abs=1e-5)

    def test_ramp_left_derivative_at_cutoff(self):
        profile = TimeProfile('ramp', 0.5)
        assert float(profile(0.25)) == pytest.approx(0.5)
        assert float(profile.derivative(0.5)) == pytest.approx(-2.0)
        assert float(profile.derivative(0.75)) == 0.0

    @settings(max_examples=50, deadline=None)
    @given(x=st.floats(-0.95, 0.95), kind=st.sampled_from(['bump', 'gaussian']))
    def test_space_derivative(self, x, kind):
        profile = Profile(kind, 0.1, 0.4)
        h = 1e-6
        numeric = (profile(x + h) - profile(x - h)) / (2 * h)
        assert float(profile.derivative(x)) == pytest.approx(float(numeric), abs=1e-5)

    def test_product_rule(self):
        test = TestFunction(Profile('bump', 0.0, 1.0), TimeProfile('bump', 1.0))
        assert float(test(0.5, 0.5)) == pytest.approx(0.75 ** 3 * 0.75 ** 3)
        assert float(test.d_x(0.0, 0.5)) == pytest.approx(float(Profile('bump').derivative(0.5)))

    @pytest.mark.parametrize('args', [('cosine', 1.0), ('bump', 0.0)])
    def test_rejects_bad_time_profile(self, args):
        with pytest.raises(ValueError):
            TimeProfile(*args)

    def test_level_profile_kinds(self):
        assert LevelProfile('unit')(np.array([1e6])) == 1.0
        with pytest.raises(ValueError):
            LevelProfile('triangle')

    def test_default_suite_inside_padded_region(self, window_grid):
        tests = default_test_suite(window_grid, 1.0)
        assert len(tests) == 5
        for test in tests:
            lo, hi = test.space.support
            assert -3.0 < lo and hi < 3.0
            assert test.time.tc == pytest.approx(0.9)


class TestWeakResidual:

    def test_zero_field_residual_is_quadrature_error(self, zero_stage):
        sol = solve_cauchy(zero_stage.pair, zero_stage.flow, GAUSSIAN)
        residuals = weak_residual(sol, zero_stage.pair, default_test_suite(zero_stage.grid, 0.0))
        assert max(residuals) <= 1e-4

    def test_first_within_tolerance(self, first_stage_256):
        stage = first_stage_256
        sol = solve_cauchy(stage.pair, stage.flow, GAUSSIAN)
        residuals = weak_residual(sol, stage.pair, default_test_suite(stage.grid, stage.pair.b_max))
        assert max(residuals) <= 1e-2

    @pytest.mark.slow
    def test_first_decreases_under_refinement(self, first_stage_256, first_stage_512):
        def worst(stage):
            sol = solve_cauchy(stage.pair, stage.flow, GAUSSIAN)
            return max(weak_residual(sol, stage.pair,
                                     default_test_suite(stage.grid, stage.pair.b_max)))

        assert worst(first_stage_256) / worst(first_stage_512) >= 3

    def test_test_function_must_fit_window(self, zero_stage):
        sol = solve_cauchy(zero_stage.pair, zero_stage.flow, GAUSSIAN)
        reaching = TestFunction(Profile('bump', 3.8, 0.5), TimeProfile('bump', 0.5))
        with pytest.raises(SupportException):
            weak_residual(sol, zero_stage.pair, [reaching])
        late = TestFunction(Profile('bump', 0.0, 0.5), TimeProfile('bump', 2.0))
        with pytest.raises(SupportException):
            weak_residual(sol, zero_stage.pair, [late])

    def test_clip_study(self, zero_stage):
        datum = InitialDatum('inv_sqrt_singularity', center=0.0)
        study = clip_study(zero_stage.pair, zero_stage.flow, datum, [10.0, 100.0])
        assert study.clips == [10.0, 100.0]
        assert len(study.residuals) == 2
        assert 0.0 <= study.spread() <= 1e-3


class TestObservable:

    def test_zero_datum_has_no_drift(self, first_stage):
        sol = solve_cauchy(first_stage.pair, first_stage.flow, InitialDatum('constant', height=0.0))
        record = conserved_observable(sol, first_stage.H, LevelProfile('unit'))
        assert record.drift == 0.0
        assert record.target == 0.0

    def test_unit_profile_gives_mass(self, first_stage_256):
        stage = first_stage_256
        sol = solve_cauchy(stage.pair, stage.flow, GAUSSIAN)
        record = conserved_observable(sol, stage.H, LevelProfile('unit'))
        assert record.target == pytest.approx(GAUSSIAN.integral(-4.0, 4.0), abs=1e-6)
        assert record.drift <= 1e-3

    def test_level_bump_is_conserved(self, first_stage_256):
        stage = first_stage_256
        sol = solve_cauchy(stage.pair, stage.flow, GAUSSIAN)
        f = default_level_profile(stage.H, stage.pair, 0.5)
        record = conserved_observable(sol, stage.H, f)
        assert record.drift <= 5e-3
        header, rows = record.table()
        assert header == ('t', 'I')
        assert rows.shape == (stage.grid.nt + 1, 2)

    @pytest.mark.slow
    def test_level_drift_under_refinement(self, first_stage_256, first_stage_512):
        assert level_drift(first_stage_256) / level_drift(first_stage_512) >= 3

    def test_selected_times(self, first_stage):
        sol = solve_cauchy(first_stage.pair, first_stage.flow, GAUSSIAN)
        record = conserved_observable(sol, first_stage.H, LevelProfile('unit'), times=[0.0, 0.5])
        np.testing.assert_allclose(record.times, [0.0, 0.5])

    def test_level_profile_beyond_realized_levels(self, first_stage):
        sol = solve_cauchy(first_stage.pair, first_stage.flow, GAUSSIAN)
        with pytest.raises(SupportException):
            conserved_observable(sol, first_stage.H, LevelProfile('bump', 100.0, 1.0))


class TestUniquenessProbe:

    def test_vanishes_for_constant_field(self, constant_stage):
        stage = constant_stage
        table = uniqueness_probe(stage.pair, stage.H, stage.flow, [0.2, 0.1, 0.05])
        assert [row.eps for row in table.rows] == [0.2, 0.1, 0.05]
        assert all(row.D <= 1e-3 for row in table.rows)
        assert table.suite(0.1, floor=1e-3).passed

    def test_default_observation_time(self, constant_stage):
        tau = default_tau(constant_stage.grid, [0.2, 0.1, 0.05])
        assert 0.5 < tau < 0.8
        assert tau / constant_stage.grid.dt == pytest.approx(round(tau / constant_stage.grid.dt))

    def test_zero_datum(self, constant_stage):
        stage = constant_stage
        u = solve_cauchy(stage.pair, stage.flow, InitialDatum('constant', height=0.0))
        table = uniqueness_probe(stage.pair, stage.H, stage.flow, [0.2, 0.1], u=u)
        assert all(row.D == 0.0 and row.boundary == 0.0 for row in table.rows)

    def test_boundary_term_starts_past_reflected_layer(self, constant_stage):
        # from t[i_valid + 1] on H_eps is the exact translate, so both boundary rows carry
        # the same integral
        stage = constant_stage
        table = uniqueness_probe(stage.pair, stage.H, stage.flow, [0.2, 0.1])
        for row in table.rows:
            assert row.boundary <= 1e-6
            assert row.gap == pytest.approx(row.D, abs=1e-6)

    def test_from_time_zero(self, constant_stage):
        stage = constant_stage
        table = uniqueness_probe(stage.pair, stage.H, stage.flow, [0.2, 0.1], start='zero')
        assert len(table.rows) == 2
        header, rows = table.table()
        assert header == ('eps', 'D', 'boundary_gap')
        assert rows.shape == (2, 3)

    def test_observation_time_range(self, constant_stage):
        stage = constant_stage
        with pytest.raises(SupportException):
            uniqueness_probe(stage.pair, stage.H, stage.flow, [0.2], tau=0.3)

    def test_decreasing_with_slack(self):
        f = LevelProfile('unit')
        rows = [ProbeRow(0.2, 1e-2, 0.0, 0.0), ProbeRow(0.1, 1.05e-2, 0.0, 0.0)]
        assert ProbeTable(0.5, f, rows).decreasing(0.1)
        rows.append(ProbeRow(0.05, 2e-2, 0.0, 0.0))
        table = ProbeTable(0.5, f, rows)
        assert not table.decreasing(0.1)
        assert not table.suite(0.1).passed
        assert table.suite(0.1, floor=0.1).passed

    @pytest.mark.slow
    def test_first_decreases_at_fine_resolution(self, first_stage_512):
        stage = first_stage_512
        table = uniqueness_probe(stage.pair, stage.H, stage.flow, [0.2, 0.1, 0.05])
        assert table.suite(0.1, floor=1e-3).passed


class TestCrossValidation:

    def test_constant_field_against_characteristics(self, constant_stage):
        datum = InitialDatum('gaussian_bump', center=0.0, width=0.25)
        report = cross_validate(constant_stage.pair, constant_stage.flow, datum, refine=False)
        assert report.distances['characteristics'] <= 1e-6
        assert report.distances['fv'] <= 0.1
        assert report.ratios == {'fv': None, 'characteristics': None}
        assert report.times[0] == 0.0 and report.times[-1] == pytest.approx(1.0)

    def test_zero_field_agrees_exactly(self, zero_stage):
        report = cross_validate(zero_stage.pair, zero_stage.flow, GAUSSIAN, refine=False)
        assert max(report.distances.values()) <= 1e-10

    def test_characteristics_oracle_agrees_pointwise(self, first_stage_256):
        stage = first_stage_256
        grid = SpaceTimeGrid(1.0, -4.0, 4.0, 8, 256)
        oracle = characteristics.characteristics_solve(stage.pair.generator, GAUSSIAN, grid)
        sol = solve_cauchy(stage.pair, stage.flow, GAUSSIAN)
        lo, hi = stage.pair.padded_interval()
        inside = (grid.x >= lo) & (grid.x <= hi)
        # the oracle grid shares the x nodes and every 32nd time node
        defect = np.abs(oracle.u.values[:, inside] - sol.u.values[::32, inside]).max()
        assert defect <= 5e-3

    @pytest.mark.slow
    def test_fv_converges_at_first_order(self, first_stage_256):
        stage = first_stage_256
        report = cross_validate(stage.pair, stage.flow, GAUSSIAN, oracles=('fv',))
        assert report.ratios['fv'] >= 1.7
