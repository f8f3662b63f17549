"""
IMU model, external wrench observer, contact detector
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sim.dynamics import arm_gravity_torque, dynamics_rhs
from sim.estimation import (
    ContactDetector, ObserverState, SimulatedImu, WrenchObserver, contact_detector,
    filter_weight, observer_step, project_on_pushing_axis,
)
from sim.geometry import solve_joint_angle, surface_frame
from sim.models import PlanarState, SurfaceDef, Wrench2D, WrenchEstimate

DT = 1e-3


def feed(observer, imu, state, u, ext, params, alpha, steps):
    est = None
    accel = dynamics_rhs(state, u, ext, params, alpha).dv
    for _ in range(steps):
        est = observer.update(imu.measure(state, accel), u, state.phi, DT)
    return est


@pytest.fixture
def case3_pose():
    return solve_joint_angle(math.radians(-60), math.radians(-10))


class TestImu:

    def test_specific_force_at_rest(self, params):
        imu = SimulatedImu(params.g)
        (sy, sz), omega = imu.measure(PlanarState(omega=0.3), (0.0, 0.0))
        assert (sy, sz) == pytest.approx((0.0, params.g))
        assert omega == 0.3

    def test_free_fall_reads_zero(self, params):
        (sy, sz), _ = SimulatedImu(params.g).measure(PlanarState(), (0.0, -params.g))
        assert (sy, sz) == pytest.approx((0.0, 0.0))

    def test_noise_is_seeded(self, params):
        a = SimulatedImu(params.g, accel_noise_std=0.05, gyro_noise_std=0.01, seed=11)
        b = SimulatedImu(params.g, accel_noise_std=0.05, gyro_noise_std=0.01, seed=11)
        for _ in range(20):
            assert a.measure(PlanarState(), (0.0, 0.0)) == b.measure(PlanarState(), (0.0, 0.0))

    def test_negative_noise_rejected(self, params):
        with pytest.raises(ValueError):
            SimulatedImu(params.g, accel_noise_std=-1.0)


class TestObserver:

    def test_filter_weight(self):
        assert filter_weight(20.0, 1e-3) == pytest.approx(1 - math.exp(-0.02))
        assert 0 < filter_weight(1.0, 1e-3) < filter_weight(100.0, 1e-3) < 1

    def test_pushing_axis_projection(self):
        # a force along the surface normal projects onto -Z_E with full magnitude
        beta = math.radians(-60)
        normal, _ = surface_frame(SurfaceDef(beta))
        assert project_on_pushing_axis((2 * normal[0], 2 * normal[1]), beta) == pytest.approx(2.0)

    def test_converges_within_five_time_constants(self, params, case3_pose):
        alpha, phi = case3_pose.alpha_signed, case3_pose.phi_signed
        gain = 20.0
        normal, _ = surface_frame(SurfaceDef(case3_pose.beta_signed))
        ext = Wrench2D((2.0 * normal[0], 2.0 * normal[1]), 0.0)
        state = PlanarState(phi=phi)

        observer = WrenchObserver(params, alpha, gain)
        est = feed(observer, SimulatedImu(params.g), state, (8.0, 0.0), ext, params, alpha,
                   int(round(5.0 / (gain * DT))))
        assert est.f_E_est == pytest.approx(2.0, rel=0.01)

    def test_recovers_arbitrary_force_vector(self, params, case3_pose):
        alpha, phi = case3_pose.alpha_signed, case3_pose.phi_signed
        gain = 20.0
        observer = WrenchObserver(params, alpha, gain)
        est = feed(observer, SimulatedImu(params.g), PlanarState(phi=phi), (8.0, 0.0),
                   Wrench2D((1.0, -2.0), 0.0), params, alpha, int(round(5.0 / (gain * DT))))
        assert est.interaction.f == pytest.approx((1.0, -2.0), rel=0.01)

    def test_arm_weight_is_not_interaction(self, params, case3_pose):
        """Holding the arm at rest leaves only the disturbance in the total estimate"""
        alpha, phi = case3_pose.alpha_signed, case3_pose.phi_signed
        state = PlanarState(phi=phi)
        u = (params.m_t * params.g, -arm_gravity_torque(phi, alpha, params))

        observer = WrenchObserver(params, alpha, 20.0)
        est = feed(observer, SimulatedImu(params.g), state, u, Wrench2D(), params, alpha, 1000)

        assert abs(est.f_E_est) < 0.01
        assert est.interaction.force_norm < 0.01
        assert est.total_ext.f[1] == pytest.approx(-params.m_E * params.g, abs=0.01)
        assert est.total_ext.tau_x == pytest.approx(arm_gravity_torque(phi, alpha, params), abs=1e-6)

    def test_torque_channel_tracks_contact_torque(self, params, case3_pose):
        alpha, phi = case3_pose.alpha_signed, case3_pose.phi_signed
        state = PlanarState(phi=phi)
        tau_contact = 0.04
        u = (params.m_t * params.g, -arm_gravity_torque(phi, alpha, params) - tau_contact)

        observer = WrenchObserver(params, alpha, 20.0)
        est = feed(observer, SimulatedImu(params.g), state, u, Wrench2D((0.0, 0.0), tau_contact),
                   params, alpha, 1000)
        assert est.interaction.tau_x == pytest.approx(tau_contact, abs=1e-3)

    def test_pure_step_returns_new_memory(self, params):
        memory = ObserverState()
        imu = ((0.0, params.g), 0.0)
        est, nxt = observer_step(memory, imu, (params.m_t * params.g, 0.0), 0.0, 0.0, params, 20.0, DT)
        assert memory.prev_omega is None
        assert nxt.prev_omega == 0.0
        assert nxt.prev_f_E == est.f_E_est

    def test_rate_uses_previous_estimate(self, params):
        observer = WrenchObserver(params, 0.0, 20.0)
        first = observer.update(((0.0, params.g), 0.0), (params.m_t * params.g + 1.0, 0.0), 0.0, DT)
        second = observer.update(((0.0, params.g), 0.0), (params.m_t * params.g + 1.0, 0.0), 0.0, DT)
        assert first.f_E_est_rate == 0.0
        assert second.f_E_est_rate == pytest.approx((second.f_E_est - first.f_E_est) / DT)

    def test_reset(self, params):
        observer = WrenchObserver(params, 0.0, 20.0)
        observer.update(((0.0, params.g + 1.0), 0.0), (0.0, 0.0), 0.0, DT)
        observer.reset()
        assert observer.memory == ObserverState()
        assert observer.estimate == WrenchEstimate()

    def test_bad_arguments(self, params):
        with pytest.raises(ValueError):
            WrenchObserver(params, 0.0, 0.0)
        with pytest.raises(ValueError):
            observer_step(ObserverState(), ((0.0, 0.0), 0.0), (0.0, 0.0), 0.0, 0.0, params, 20.0, 0.0)


class TestContactDetector:

    def test_threshold(self):
        assert contact_detector(WrenchEstimate(f_E_est=0.31), 0.3)
        assert not contact_detector(WrenchEstimate(f_E_est=0.29), 0.3)

    def test_hysteresis(self):
        detector = ContactDetector(0.3)
        sequence = [0.1, 0.31, 0.2, 0.16, 0.14, 0.25, 0.3]
        states = [detector.update(WrenchEstimate(f_E_est=f)) for f in sequence]
        assert states == [False, True, True, True, False, False, True]
        assert detector.rising_edges == 2

    @settings(max_examples=50)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_noisy_ramp_engages_once(self, seed):
        rng = np.random.default_rng(seed)
        ramp = np.linspace(0.0, 0.6, 600) * (1.0 + rng.uniform(-0.05, 0.05, 600))
        detector = ContactDetector(0.3)
        states = [detector.update(WrenchEstimate(f_E_est=float(f))) for f in ramp]
        assert detector.rising_edges == 1
        assert states[-1]

    def test_bad_threshold(self):
        with pytest.raises(ValueError):
            contact_detector(WrenchEstimate(), 0.0)
        with pytest.raises(ValueError):
            ContactDetector(0.3, release_ratio=1.5)

    def test_detects_contact_through_observer(self, params, case3_pose):
        alpha, phi = case3_pose.alpha_signed, case3_pose.phi_signed
        state = PlanarState(phi=phi)
        normal, _ = surface_frame(SurfaceDef(case3_pose.beta_signed))
        ext = Wrench2D((1.0 * normal[0], 1.0 * normal[1]), 0.0)
        observer = WrenchObserver(params, alpha, 20.0)
        detector = ContactDetector(0.3)
        imu = SimulatedImu(params.g)
        accel = dynamics_rhs(state, (8.0, 0.0), ext, params, alpha).dv

        engaged_at = None
        for k in range(200):
            est = observer.update(imu.measure(state, accel), (8.0, 0.0), phi, DT)
            if detector.update(est) and engaged_at is None:
                engaged_at = k
        assert engaged_at is not None
        assert detector.rising_edges == 1
