"""
Static-equilibrium force model: closed forms, residuals, envelope, limits
"""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sim.errors import InvalidConfig, InvalidSurface, SingularConfig
from sim.force_model import (
    ENVELOPE_COLUMNS, ceiling_force_limit, closed_form, envelope_frame, envelope_sweep,
    equilibrium_forces, force_increment, linear_solve_equilibrium, residual, singularity_margin,
    sweep_grid, thrust_increment,
)
from sim.geometry import solve_joint_angle
from sim.models import GRAVITY, EquilibriumSolution, MassGeometry, PoseConfig, UamParams

from tests.conftest import TABLE_CASES


def pose(beta_deg, phi_deg):
    return solve_joint_angle(math.radians(beta_deg), math.radians(phi_deg))


class TestEquilibriumForces:

    @pytest.mark.parametrize("case,beta,phi,alpha,f_E,T_sum", TABLE_CASES)
    def test_published_table_from_one_weight(self, mg_table, case, beta, phi, alpha, f_E, T_sum):
        sol = equilibrium_forces(pose(beta, phi), mg_table)
        assert sol.f_E == pytest.approx(f_E, abs=2e-3)
        assert sol.T_sum == pytest.approx(T_sum, abs=2e-3)
        assert sol.f_E_Z == pytest.approx(sol.f_E * math.cos(math.radians(abs(beta))), abs=1e-15)

    def test_back_solved_weight(self, G_t_table):
        assert G_t_table == pytest.approx(7.4530, abs=1e-3)

    def test_zero_roll_is_hover(self):
        mg = MassGeometry(m_B=0.7, m_E=0.06, g=9.81)
        sol = equilibrium_forces(PoseConfig.from_degrees(40, 0, 40), mg)
        assert sol.f_E == 0.0
        assert sol.T_sum == pytest.approx(mg.G_t)

    def test_linear_solve_agrees(self):
        mg = MassGeometry.from_total_weight(10.0)
        sol = equilibrium_forces(PoseConfig.from_degrees(45, 22.5, 22.5), mg)
        T_sum, f_E = linear_solve_equilibrium(math.radians(45), math.radians(22.5), 10.0)
        assert sol.T_sum == pytest.approx(T_sum, abs=1e-9)
        assert sol.f_E == pytest.approx(f_E, abs=1e-9)

    def test_torque_diagnostic(self):
        mg = MassGeometry(m_B=0.7, m_E=0.06, g=9.81, l_E=0.2, l_GE=0.05)
        sol = equilibrium_forces(pose(-60, -10), mg)
        assert sol.tau_sum_X == pytest.approx(sol.f_E * 0.2 - 0.06 * 9.81 * 0.05)

    def test_singular_joint_angle(self):
        mg = MassGeometry.from_total_weight(10.0)
        with pytest.raises(SingularConfig):
            equilibrium_forces(PoseConfig(0.5, 0.5 - 1e-8, 1e-8), mg)

    def test_horizontal_surface_has_no_closed_form(self):
        with pytest.raises(InvalidConfig):
            equilibrium_forces(PoseConfig(0.0, 0.0, 0.0), MassGeometry.from_total_weight(10.0))

    def test_non_orthogonal_pose_rejected(self):
        with pytest.raises(InvalidConfig):
            equilibrium_forces(PoseConfig.from_degrees(60, 10, 40), MassGeometry.from_total_weight(10.0))

    def test_vectorized_oracle(self):
        """Closed form against a batched 2x2 solve over random poses"""
        rng = np.random.default_rng(7)
        n = 100_000
        beta0 = rng.uniform(0.05, math.pi / 2, n)
        phi0 = beta0 * rng.uniform(0.0, 0.9, n)
        G_t = rng.uniform(1.0, 50.0, n)

        f_E = G_t * np.sin(phi0) / np.sin(beta0 - phi0)
        T_sum = G_t * np.sin(beta0) / np.sin(beta0 - phi0)

        A = np.empty((n, 2, 2))
        A[:, 0, 0], A[:, 0, 1] = np.cos(phi0), -np.cos(beta0)
        A[:, 1, 0], A[:, 1, 1] = np.sin(phi0), -np.sin(beta0)
        b = np.stack([G_t, np.zeros(n)], axis=1)[..., None]
        x = np.linalg.solve(A, b)[..., 0]

        np.testing.assert_allclose(T_sum, x[:, 0], rtol=1e-9, atol=1e-9)
        np.testing.assert_allclose(f_E, x[:, 1], rtol=1e-9, atol=1e-9)

        for i in rng.choice(n, size=200, replace=False):
            mg = MassGeometry.from_total_weight(float(G_t[i]))
            sol = equilibrium_forces(PoseConfig(float(beta0[i]), float(phi0[i]), float(beta0[i] - phi0[i])), mg)
            assert sol.f_E == pytest.approx(f_E[i], rel=1e-12, abs=1e-12)
            assert sol.T_sum == pytest.approx(T_sum[i], rel=1e-12)


class TestResidual:

    @given(beta=st.floats(min_value=0.05, max_value=math.pi / 2), frac=st.floats(min_value=0.0, max_value=0.95),
           l_E=st.floats(min_value=0.0, max_value=0.5), l_GE=st.floats(min_value=0.0, max_value=0.2))
    def test_equilibrium_has_zero_residual(self, beta, frac, l_E, l_GE):
        mg = MassGeometry(m_B=0.7, m_E=0.06, g=9.81, l_E=l_E, l_GE=l_GE)
        config = PoseConfig(beta, frac * beta, beta - frac * beta)
        r = residual(config, mg, equilibrium_forces(config, mg))
        assert max(abs(x) for x in r) < 1e-9

    def test_perturbed_force(self):
        mg = MassGeometry(m_B=0.7, m_E=0.06, g=9.81)
        config = pose(60, 10)
        sol = equilibrium_forces(config, mg)
        bumped = EquilibriumSolution(sol.f_E + 1.0, sol.f_E_Z, sol.T_sum, sol.tau_sum_X)
        r_Z, r_Y, _ = residual(config, mg, bumped)
        assert r_Z == pytest.approx(-0.5, abs=1e-12)
        assert r_Y == pytest.approx(-math.sqrt(3) / 2, abs=1e-12)

    def test_signs_are_raw(self):
        mg = MassGeometry(m_B=0.7, m_E=0.06, g=9.81, l_E=0.1, l_GE=0.02)
        config = PoseConfig.from_degrees(30, 0, 30)
        r_Z, r_Y, r_X = residual(config, mg, EquilibriumSolution(0.0, 0.0, mg.G_t - 1.0, 0.0))
        assert r_Z == pytest.approx(-1.0)
        assert r_Y == 0.0
        assert r_X == pytest.approx(0.06 * 9.81 * 0.02)


class TestEnvelope:

    def test_two_points(self):
        mg = MassGeometry.from_total_weight(10.0)
        rows = envelope_sweep(math.radians(30), mg, 2)
        assert len(rows) == 2
        assert rows[0][0] == 0.0
        assert math.degrees(rows[1][0]) == pytest.approx(29.97)
        assert rows[0][1] == 0.0
        assert rows[0][3] == pytest.approx(10.0)

    def test_blow_up_near_singularity(self):
        mg = MassGeometry.from_total_weight(10.0)
        beta0 = math.radians(10)
        rows = envelope_sweep(beta0, mg, 1000)
        assert math.degrees(rows[-1][0]) == pytest.approx(9.99)
        assert rows[-1][1] > 50 * mg.G_t
        assert rows[-1][3] > 50 * mg.G_t

    @pytest.mark.parametrize("beta_deg", [10, 30, 60, 80, 90])
    def test_strictly_increasing(self, beta_deg):
        rows = np.array(envelope_sweep(math.radians(beta_deg), MassGeometry.from_total_weight(7.453), 200))
        assert np.all(np.diff(rows[:, 0]) > 0)
        assert np.all(np.diff(rows[:, 1]) > 0)
        assert np.all(np.diff(rows[:, 3]) > 0)

    def test_wall_thrust(self):
        mg = MassGeometry.from_total_weight(7.453)
        for phi0, _, f_E_Z, T_sum in envelope_sweep(math.pi / 2, mg, 50):
            assert T_sum == pytest.approx(mg.G_t / math.sin(math.pi / 2 - phi0))
            assert f_E_Z == pytest.approx(0.0, abs=1e-9)

    def test_frame_columns(self):
        frame = envelope_frame(math.radians(60), MassGeometry.from_total_weight(7.453), 10)
        assert list(frame.columns) == ENVELOPE_COLUMNS
        assert frame["phi0_deg"].iloc[-1] == pytest.approx(59.94)

    @pytest.mark.parametrize("beta0", [0.0, -0.1, math.radians(91)])
    def test_surface_out_of_range(self, beta0):
        with pytest.raises(InvalidSurface):
            sweep_grid(beta0, 10)

    def test_needs_two_points(self):
        with pytest.raises(ValueError):
            sweep_grid(0.5, 1)


class TestDivergenceAndOrdering:

    @pytest.mark.parametrize("beta_deg", [5, 20, 45])
    def test_force_diverges_at_singularity(self, beta_deg):
        beta0 = math.radians(beta_deg)
        f_E, _, _ = closed_form(beta0, beta0 * (1 - 1e-6), 1.0)
        assert f_E > 1e5

    @given(phi=st.floats(min_value=0.01, max_value=0.4), b1=st.floats(min_value=0.45, max_value=1.0),
           b2=st.floats(min_value=1.05, max_value=math.pi / 2))
    def test_shallower_surface_needs_more_force(self, phi, b1, b2):
        mg = MassGeometry.from_total_weight(7.453)
        shallow = equilibrium_forces(PoseConfig(b1, phi, b1 - phi), mg)
        steep = equilibrium_forces(PoseConfig(b2, phi, b2 - phi), mg)
        assert shallow.f_E > steep.f_E

    def test_increment_larger_on_shallower_surface(self, mg_table):
        d = math.radians(5)
        for phi0 in (math.radians(5), math.radians(10), math.radians(15)):
            at_30 = force_increment(math.radians(30), phi0, d, mg_table)
            at_60 = force_increment(math.radians(60), phi0, d, mg_table)
            at_90 = force_increment(math.radians(90), phi0, d, mg_table)
            assert at_30 > at_60 > at_90 > 0

    def test_thrust_increment_larger_on_shallower_surface(self, mg_table):
        d = math.radians(5)
        for phi0 in (math.radians(5), math.radians(10), math.radians(15)):
            at_30 = thrust_increment(math.radians(30), phi0, d, mg_table)
            at_60 = thrust_increment(math.radians(60), phi0, d, mg_table)
            at_90 = thrust_increment(math.radians(90), phi0, d, mg_table)
            assert at_30 > at_60 > at_90 > 0

    def test_thrust_increment_matches_table(self, mg_table):
        # cases 5 and 6: same 90 deg surface, roll 15 -> 20 deg
        step = thrust_increment(math.radians(90), math.radians(15), math.radians(5), mg_table)
        assert step == pytest.approx(7.9314 - 7.7160, abs=2e-3)

    @pytest.mark.parametrize("beta,phi,margin", [(30, 5, 25), (90, 15, 75)])
    def test_singularity_margin(self, beta, phi, margin):
        assert math.degrees(singularity_margin(pose(beta, phi))) == pytest.approx(margin)

    def test_margin_zero_at_singular_point(self):
        assert singularity_margin(PoseConfig(0.4, 0.4, 0.0)) == 0.0


class TestCeiling:

    def test_force_is_leftover_thrust(self):
        mg = MassGeometry.from_total_weight(7.5)
        assert ceiling_force_limit(mg, 16.0) == pytest.approx(8.5)

    def test_not_enough_thrust(self):
        with pytest.raises(InvalidConfig):
            ceiling_force_limit(MassGeometry.from_total_weight(7.5), 7.0)


class TestGravityDefault:

    def test_static_model_and_plant_share_gravity(self):
        assert MassGeometry(m_B=0.7, m_E=0.06).g == UamParams().g == GRAVITY
        assert MassGeometry.from_total_weight(7.453).m_B == pytest.approx(7.453 / GRAVITY)

    def test_default_plant_weighs_the_tabulated_amount(self):
        params = UamParams()
        assert params.m_t * params.g == pytest.approx(7.453, abs=1e-3)
