"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Level-set flow: defining relation, Lipschitz bounds, ODE residual and pushforwards.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from field_kit import InvalidGridException, OscillatoryHamiltonian, Profile, SpaceTimeGrid
from flow import (invert_in_x, build_flow, ode_residual, pushforward_check, default_probes,
                  check_times)
from field_kit.profiles import SupportException
from hamiltonian import LevelOutOfRangeException, sample_generator
from reference_oracles import integrate_characteristics


def diagnostic(suite, name):
    return next(d for d in suite.diagnostics if d.name == name)


class TestInversion:

    def test_scalar_in_scalar_out(self, zero_stage):
        x = invert_in_x(zero_stage.H, 0.5, 3.0)
        assert isinstance(x, float)
        assert x == pytest.approx(-1.0, abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(t=st.floats(0.0, 1.0), x=st.floats(-2.0, 2.0))
    def test_inverts_the_interpolated_slice(self, first_stage, t, x):
        H = first_stage.H
        h = float(H.evaluate(t, x))
        assert invert_in_x(H, t, h) == pytest.approx(x, abs=1e-10)

    def test_time_outside_window(self, zero_stage):
        with pytest.raises(InvalidGridException):
            invert_in_x(zero_stage.H, 1.5, 1.0)

    def test_level_outside_window_names_time(self, zero_stage):
        with pytest.raises(LevelOutOfRangeException) as info:
            invert_in_x(zero_stage.H, 0.25, 100.0)
        assert info.value.t == 0.25

    def test_linear_interpolant(self, constant_stage):
        x = invert_in_x(constant_stage.H, 0.5, 4.0, interpolant='linear')
        assert x == pytest.approx(0.5, abs=1e-12)


class TestFlow:

    def test_zero_field_flow_is_identity(self, zero_stage):
        _, x = zero_stage.grid.mesh()
        np.testing.assert_allclose(zero_stage.flow.X, x, atol=1e-12)
        np.testing.assert_allclose(zero_stage.flow.Xinv, x, atol=1e-12)
        assert zero_stage.flow.L == pytest.approx(1.0)

    def test_constant_field_translates(self, constant_stage):
        flow = constant_stage.flow
        t, x = constant_stage.grid.mesh()
        kept = ~flow.escaped
        np.testing.assert_allclose(flow.X[kept], (x + t)[kept], atol=1e-10)
        kept_inverse = ~flow.escaped_inverse
        np.testing.assert_allclose(flow.Xinv[kept_inverse], (x - t)[kept_inverse], atol=1e-10)
        j = int(np.argmin(np.abs(constant_stage.grid.x)))
        assert flow.X[-1, j] == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize('name', ['defining_relation', 'initial_identity', 'x_quotient_min',
                                      'x_quotient_max', 'round_trip'])
    def test_first_flow_diagnostics(self, first_stage, name):
        assert diagnostic(first_stage.flow.diagnostics, name).passed

    def test_first_defining_relation_at_nodes(self, first_stage_256):
        flow = first_stage_256.flow
        H = first_stage_256.H
        defect = max(np.abs(H.slice(i)(flow.X[i]) - H.H.values[0]).max()
                     for i in range(flow.grid.nt + 1))
        assert defect <= 1e-10
        grid = flow.grid
        h_lip = (np.abs(np.diff(flow.Y, axis=1)) / np.diff(flow.h_grid)[0]).max()
        t_lip = (np.abs(np.diff(flow.Y, axis=0)) / grid.dt).max()
        assert h_lip <= 1 / H.C1 + 1e-3
        assert t_lip <= H.b_max + 1e-3
        assert diagnostic(flow.diagnostics, 'flow_modulus_ratio').passed

    @pytest.mark.parametrize('name', ['h_lipschitz', 't_lipschitz', 'x_quotient_min',
                                      'x_quotient_max', 'compression_L', 'flow_modulus_ratio'])
    def test_standing_wave_bounds(self, standing_wave_256, name):
        # rho reaches C1 at t = 0, x = pi
        assert diagnostic(standing_wave_256.flow.diagnostics, name).passed

    def test_compression_constant_range(self, first_stage):
        flow = first_stage.flow
        assert 1 / 3 - 1e-3 <= flow.L <= 3 + 1e-3

    def test_tables(self, first_stage):
        grid = first_stage.grid
        header, rows = first_stage.flow.flow_table()
        assert header == ('t', 'x', 'X', 'Xinv')
        assert rows.shape == ((grid.nt + 1) * (grid.nx + 1), 4)
        header, rows = first_stage.flow.level_table()
        assert header == ('t', 'h', 'Y')
        assert rows.shape[1] == 3

    def test_level_spline_reproduces_flow(self, first_stage):
        flow = first_stage.flow
        i = flow.grid.nt // 2
        kept = ~flow.escaped[i]
        via_levels = flow.level_spline(i)(flow.H.H.values[0, kept])
        np.testing.assert_allclose(via_levels, flow.X[i, kept], atol=1e-3)

    def test_flow_matches_characteristic(self):
        """Flow of the exact Hamiltonian against a Richardson-checked RK4 trajectory."""
        grid = SpaceTimeGrid(1.0, -4.0, 4.0, 512, 512)
        generator = OscillatoryHamiltonian(0.5, 1)
        flow = build_flow(sample_generator(generator, grid))
        coarse = integrate_characteristics(generator, 0.0, 1.0, 100).endpoint
        fine = integrate_characteristics(generator, 0.0, 1.0, 200).endpoint
        assert abs(coarse - fine) <= 1e-8
        j = int(np.argmin(np.abs(grid.x)))
        assert flow.X[-1, j] == pytest.approx(fine, abs=1e-4)


class TestOdeResidual:

    def test_vanishes_for_constant_field(self, constant_stage):
        residual = ode_residual(constant_stage.flow, constant_stage.pair)
        assert float(residual) <= 1e-9
        assert residual.integral <= 1e-9

    def test_first_within_tolerance(self, first_stage_256):
        residual = ode_residual(first_stage_256.flow, first_stage_256.pair)
        assert residual.suite(5e-2).passed

    @pytest.mark.slow
    def test_second_order_under_refinement(self, first_stage_256, first_stage_512):
        coarse = float(ode_residual(first_stage_256.flow, first_stage_256.pair))
        fine = float(ode_residual(first_stage_512.flow, first_stage_512.pair))
        assert coarse / fine >= 3


class TestPushforward:

    def test_exact_for_zero_and_constant(self, zero_stage, constant_stage):
        for stage in (zero_stage, constant_stage):
            report = pushforward_check(stage.flow, stage.pair, default_probes(stage.pair), tol=1e-8)
            assert report.passed

    @pytest.mark.slow
    def test_first_within_tolerance(self, first_stage_512):
        stage = first_stage_512
        report = pushforward_check(stage.flow, stage.pair, default_probes(stage.pair))
        assert report.passed
        assert report.suite().passed

    def test_probe_must_stay_in_padded_region(self, first_stage):
        with pytest.raises(SupportException):
            pushforward_check(first_stage.flow, first_stage.pair, [Profile('bump', 3.5, 0.25)])

    def test_check_times_include_ends(self, window_grid):
        indices = check_times(window_grid)
        assert indices[0] == 0
        assert indices[-1] == window_grid.nt
        assert len(indices) == 5
