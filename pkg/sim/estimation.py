"""
IMU-only external wrench observer and the contact detector it feeds

The observer knows the composite inertia (m_t, I_xx) but only the vehicle
weight m_B*g. The arm weight and its torque therefore show up in the total
external estimate; they are exactly the disturbance D, which is subtracted
to leave the interaction wrench.
"""

import math
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from sim.dynamics import arm_gravity_torque, composite_inertia
from sim.geometry import axis_z
from sim.models import PlanarState, UamParams, Vec2, Wrench2D, WrenchEstimate

logger = logging.getLogger(__name__)

ImuSample = Tuple[Vec2, float]  # (specific force, roll rate)


class SimulatedImu:
    """
    Accelerometer and gyro at G_B, expressed in the inertial plane

    The accelerometer reads specific force a + g*e_z. Noise is zero-mean
    Gaussian from a seeded generator, so noisy runs stay reproducible.
    """

    def __init__(self, g: float, accel_noise_std: float = 0.0,
                 gyro_noise_std: float = 0.0, seed: int = 0):
        if accel_noise_std < 0 or gyro_noise_std < 0:
            raise ValueError("noise standard deviations must be non-negative")
        self.g = g
        self.accel_noise_std = accel_noise_std
        self.gyro_noise_std = gyro_noise_std
        self._rng = np.random.default_rng(seed)

    def measure(self, state: PlanarState, accel: Vec2) -> ImuSample:
        ay, az = accel[0], accel[1] + self.g
        omega = state.omega
        if self.accel_noise_std > 0:
            ny, nz = self._rng.normal(0.0, self.accel_noise_std, size=2)
            ay, az = ay + float(ny), az + float(nz)
        if self.gyro_noise_std > 0:
            omega += float(self._rng.normal(0.0, self.gyro_noise_std))
        return (ay, az), omega


@dataclass(frozen=True)
class ObserverState:
    """Filter memory carried between observer updates"""
    total_ext: Wrench2D = Wrench2D()
    prev_omega: Optional[float] = None
    prev_f_E: Optional[float] = None


def filter_weight(gain: float, dt: float) -> float:
    """Discrete first-order low-pass weight for time constant 1/gain"""
    return 1.0 - math.exp(-gain * dt)


def project_on_pushing_axis(force: Vec2, phi_e: float) -> float:
    """Component of a force along -Z_E of the end-effector frame"""
    zy, zz = axis_z(phi_e)
    return -(force[0] * zy + force[1] * zz)


def observer_step(memory: ObserverState, imu: ImuSample, u_applied: Tuple[float, float],
                  phi: float, alpha: float, params: UamParams, gain: float,
                  dt: float) -> Tuple[WrenchEstimate, ObserverState]:
    """
    One observer update

    Args:
        memory: filter state from the previous update
        imu: (specific force, roll rate) measured this sample
        u_applied: (T_sum, tau_X) the rotors produced over the last step
        phi: measured roll
        alpha: held joint angle
        gain: filter bandwidth K_obs, 1/s

    Returns:
        (estimate, new filter state)
    """
    if dt <= 0:
        raise ValueError("dt must be positive")

    (sy, sz), omega = imu
    T_sum, tau_x = u_applied
    ty, tz = axis_z(phi)
    m_t = params.m_t

    # Specific force back to kinematic acceleration, vehicle weight only
    raw_fy = m_t * sy - T_sum * ty
    raw_fz = m_t * (sz - params.g) - T_sum * tz + params.m_B * params.g

    if memory.prev_omega is None:
        omega_dot = 0.0
    else:
        omega_dot = (omega - memory.prev_omega) / dt
    raw_tau = composite_inertia(alpha, params) * omega_dot - tau_x

    raw = Wrench2D((raw_fy, raw_fz), raw_tau)
    if memory.prev_omega is None:
        # Torque channel has no rate yet; start it from the known arm torque
        raw = Wrench2D(raw.f, arm_gravity_torque(phi, alpha, params))

    w = filter_weight(gain, dt)
    total = memory.total_ext + (raw - memory.total_ext).scaled(w)

    disturbance = Wrench2D((0.0, -params.m_E * params.g), arm_gravity_torque(phi, alpha, params))
    interaction = total - disturbance

    f_E = project_on_pushing_axis(interaction.f, phi + alpha)
    f_E_rate = 0.0 if memory.prev_f_E is None else (f_E - memory.prev_f_E) / dt

    estimate = WrenchEstimate(total_ext=total, interaction=interaction,
                              f_E_est=f_E, f_E_est_rate=f_E_rate)
    return estimate, ObserverState(total_ext=total, prev_omega=omega, prev_f_E=f_E)


class WrenchObserver:
    """Per-run observer instance holding its own filter memory"""

    def __init__(self, params: UamParams, alpha: float, gain: float):
        if gain <= 0:
            raise ValueError("observer gain must be positive")
        self.params = params
        self.alpha = alpha
        self.gain = gain
        self.memory = ObserverState()
        self.estimate = WrenchEstimate()

    def update(self, imu: ImuSample, u_applied: Tuple[float, float], phi: float, dt: float) -> WrenchEstimate:
        self.estimate, self.memory = observer_step(
            self.memory, imu, u_applied, phi, self.alpha, self.params, self.gain, dt
        )
        return self.estimate

    def reset(self):
        self.memory = ObserverState()
        self.estimate = WrenchEstimate()


def contact_detector(est: WrenchEstimate, threshold: float, engaged: bool = False,
                     release_ratio: float = 0.5) -> bool:
    """Contact state after one estimate; releases only below release_ratio * threshold"""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    if engaged:
        return est.f_E_est >= release_ratio * threshold
    return est.f_E_est >= threshold


class ContactDetector:
    """Hysteresis switch on the estimated interaction force"""

    def __init__(self, threshold: float, release_ratio: float = 0.5):
        if threshold <= 0:
            raise ValueError("threshold must be positive")
        if not 0 < release_ratio <= 1:
            raise ValueError("release_ratio must lie in (0, 1]")
        self.threshold = threshold
        self.release_ratio = release_ratio
        self.engaged = False
        self.rising_edges = 0

    def update(self, est: WrenchEstimate) -> bool:
        engaged = contact_detector(est, self.threshold, self.engaged, self.release_ratio)
        if engaged and not self.engaged:
            self.rising_edges += 1
            logger.debug(f"Contact detected at f_E_est={est.f_E_est:.3f} N")
        elif self.engaged and not engaged:
            logger.debug(f"Contact released at f_E_est={est.f_E_est:.3f} N")
        self.engaged = engaged
        return engaged
