"""
Baseline flight control, the hybrid attitude/force interaction law, and the
mode switch between them

Baseline: altitude PD on total thrust, a lateral PD cascade that turns the
position error into a small roll command, and a roll PD with arm-gravity
compensation.

Interaction: the roll is driven to the fixed setpoint that fixes the force
direction, thrust carries the weight plus the vertical part of the desired
force, and a PID on the estimated force trims the thrust.
"""

import math
import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from sim.dynamics import arm_gravity_torque
from sim.errors import TiltSingular
from sim.estimation import ContactDetector
from sim.models import (
    Gains, MassGeometry, Mode, PlanarState, Setpoint, UamParams, Vec2, Wrench2D, WrenchEstimate,
)

logger = logging.getLogger(__name__)

TILT_COS_MIN = 0.05

Reference = Callable[[float], Tuple[Vec2, Vec2]]


@dataclass(frozen=True)
class ControlOutput:
    T_sum: float
    M: Tuple[float, float, float]
    mode: Mode
    u_f: float = 0.0
    phi_ref: float = 0.0

    @property
    def M_X(self) -> float:
        return self.M[0]


def _thrust_projection(phi: float) -> float:
    c = math.cos(phi)
    if abs(c) < TILT_COS_MIN:
        raise TiltSingular(f"roll {math.degrees(phi):.1f} deg leaves no vertical thrust component")
    return c


def _altitude_terms(state: PlanarState, sp: Setpoint, gains: Gains, m_B: float) -> float:
    e_z = state.p[1] - sp.p_d[1]
    e_vz = state.v[1] - sp.v_d[1]
    return -gains.k_p * e_z - gains.k_d * e_vz + m_B * sp.a_d[1]


def baseline_thrust(state: PlanarState, sp: Setpoint, gains: Gains, mg: MassGeometry) -> float:
    """
    Altitude-holding total thrust

    Only the vehicle mass enters the hover term; the arm weight is left to
    the PD offset until contact.
    """
    c = _thrust_projection(state.phi)
    return (_altitude_terms(state, sp, gains, mg.m_B) + mg.m_B * mg.g) / c


def attitude_moment(state: PlanarState, phi_d: float, gains: Gains, params: UamParams,
                    alpha: float, omega_d: float = 0.0) -> float:
    """Roll PD plus cancellation of the arm-gravity torque at the current attitude"""
    pd = -gains.k_phi_p * (state.phi - phi_d) - gains.k_phi_d * (state.omega - omega_d)
    return pd - arm_gravity_torque(state.phi, alpha, params)


def lateral_tilt(state: PlanarState, sp: Setpoint, gains: Gains, g: float) -> float:
    """Roll command that accelerates the vehicle toward the lateral reference"""
    a_y = (gains.pos_kp * (sp.p_d[0] - state.p[0])
           + gains.pos_kd * (sp.v_d[0] - state.v[0])
           + sp.a_d[0])
    phi_cmd = -math.atan(a_y / g)
    return max(-gains.max_tilt, min(gains.max_tilt, phi_cmd))


def disturbance_vectors(sp: Setpoint, mg: MassGeometry) -> Tuple[Wrench2D, Wrench2D]:
    """
    Feedforward disturbances at G_B

    D is the arm weight and its torque; D_E is the desired contact force
    along the surface normal and its torque through l_E.
    """
    k_s = sp.k_s
    w_E = mg.m_E * mg.g
    D = Wrench2D((0.0, -w_E), k_s * w_E * mg.l_GE)
    D_E = Wrench2D(
        (sp.f_E_d * math.sin(sp.beta), -sp.f_E_d * math.cos(sp.beta)),
        -k_s * sp.f_E_d * mg.l_E,
    )
    return D, D_E


class ForcePid:
    """PID on the interaction force error with a clamped integrator"""

    def __init__(self, K_p: float, K_d: float, K_i: float, clamp_factor: float = 2.0):
        self.K_p = K_p
        self.K_d = K_d
        self.K_i = K_i
        self.clamp_factor = clamp_factor
        self.integral = 0.0
        self.clamp = math.inf

    def reset(self, f_E_d: float):
        self.integral = 0.0
        self.clamp = self.clamp_factor * f_E_d / self.K_i if self.K_i > 0 else math.inf

    def update(self, error: float, error_rate: float, dt: float) -> float:
        self.integral = max(-self.clamp, min(self.clamp, self.integral + error * dt))
        return self.K_p * error + self.K_d * error_rate + self.K_i * self.integral

    @classmethod
    def from_gains(cls, gains: Gains) -> 'ForcePid':
        return cls(gains.K_p_f, gains.K_d_f, gains.K_i_f, gains.integral_clamp_factor)


def interaction_thrust(state: PlanarState, sp: Setpoint, est: WrenchEstimate, gains: Gains,
                       mg: MassGeometry, pid: ForcePid, dt: float) -> Tuple[float, float]:
    """
    Total thrust during contact

    Returns:
        (T_sum_int, u_f): feedforward thrust plus the force PID correction
    """
    c = _thrust_projection(state.phi)
    ff = _altitude_terms(state, sp, gains, mg.m_B) + mg.G_t + sp.f_E_d * math.cos(sp.beta0)
    u_f = pid.update(sp.f_E_d - est.f_E_est, -est.f_E_est_rate, dt)
    return (ff + u_f) / c, u_f


def controller_step(state: PlanarState, sp: Setpoint, est: WrenchEstimate, gains: Gains,
                    params: UamParams, mg: MassGeometry, alpha: float, dt: float,
                    pid: Optional[ForcePid] = None, omega_d: float = 0.0) -> ControlOutput:
    """
    One control update for the mode carried by the setpoint

    Baseline tracks sp.p_d with the lateral cascade choosing the roll.
    Interaction holds sp.phi_d and closes the force loop through pid.
    """
    if sp.mode == Mode.BASELINE:
        phi_cmd = lateral_tilt(state, sp, gains, params.g)
        T_sum = baseline_thrust(state, sp, gains, mg)
        M_X = attitude_moment(state, phi_cmd, gains, params, alpha)
        return ControlOutput(T_sum, (M_X, 0.0, 0.0), Mode.BASELINE, 0.0, phi_cmd)

    if pid is None:
        raise ValueError("interaction mode needs a force PID")
    T_sum, u_f = interaction_thrust(state, sp, est, gains, mg, pid, dt)
    _, D_E = disturbance_vectors(sp, mg)
    M_X = attitude_moment(state, sp.phi_d, gains, params, alpha, omega_d) - D_E.tau_x
    return ControlOutput(T_sum, (M_X, 0.0, 0.0), Mode.INTERACTION, u_f, sp.phi_d)


class HybridController:
    """
    Mode switch driven by the contact detector

    On a rising contact edge the altitude reference is latched where the
    vehicle is, the force integrator is reset and the roll reference slews
    from the current roll to phi_d. A falling edge returns to baseline
    tracking of the approach reference.
    """

    def __init__(self, params: UamParams, gains: Gains, mg: MassGeometry, beta: float,
                 phi_d: float, alpha: float, f_E_d: float, reference: Reference):
        self.params = params
        self.gains = gains
        self.mg = mg
        self.beta = beta
        self.phi_d = phi_d
        self.alpha = alpha
        self.f_E_d = f_E_d
        self.reference = reference

        self.mode = Mode.BASELINE
        self.detector = ContactDetector(gains.contact_threshold)
        self.pid = ForcePid.from_gains(gains)
        self.transitions = 0
        self._z_latch = 0.0
        self._phi_start = 0.0
        self._t_engage = 0.0

    def _roll_reference(self, t: float) -> Tuple[float, float]:
        """(phi_ref, omega_ref) along the post-contact slew"""
        gap = self.phi_d - self._phi_start
        reach = self.gains.roll_slew_rate * (t - self._t_engage)
        if reach >= abs(gap):
            return self.phi_d, 0.0
        direction = math.copysign(1.0, gap)
        return self._phi_start + direction * reach, direction * self.gains.roll_slew_rate

    def _enter(self, mode: Mode, t: float, state: PlanarState):
        self.mode = mode
        self.transitions += 1
        if mode == Mode.INTERACTION:
            self._z_latch = state.p[1]
            self._phi_start = state.phi
            self._t_engage = t
            self.pid.reset(self.f_E_d)
        logger.info(f"t={t:.3f} s: switched to {mode.value} mode")

    def setpoint(self, t: float) -> Setpoint:
        if self.mode == Mode.INTERACTION:
            phi_ref, _ = self._roll_reference(t)
            return Setpoint(Mode.INTERACTION, p_d=(0.0, self._z_latch), phi_d=phi_ref,
                            f_E_d=self.f_E_d, beta=self.beta)
        p_d, v_d = self.reference(t)
        return Setpoint(Mode.BASELINE, p_d=p_d, v_d=v_d, beta=self.beta)

    def step(self, t: float, state: PlanarState, est: WrenchEstimate, dt: float) -> ControlOutput:
        engaged = self.detector.update(est)
        if engaged and self.mode == Mode.BASELINE:
            self._enter(Mode.INTERACTION, t, state)
        elif not engaged and self.mode == Mode.INTERACTION:
            self._enter(Mode.BASELINE, t, state)

        sp = self.setpoint(t)
        omega_d = self._roll_reference(t)[1] if self.mode == Mode.INTERACTION else 0.0
        return controller_step(state, sp, est, self.gains, self.params, self.mg, self.alpha,
                               dt, pid=self.pid, omega_d=omega_d)
