"""
Planar rigid-body plant: vehicle with a held arm, penalty contact at the tip,
and a fixed-step RK4 integrator

The arm is locked at its joint angle for a whole run, so vehicle and arm move
as one rigid body of mass m_t. The translational state is the vehicle CoG G_B;
the arm's weight enters the rotational equation as a gravity torque about G_B.
"""

import logging
from typing import Callable, NamedTuple, Optional, Tuple

from sim.errors import NonFinite
from sim.geometry import axis_z, rotate, signed_distance, surface_frame
from sim.models import (
    ContactParams, MassGeometry, PlanarState, PoseConfig, SurfaceDef, UamParams,
    Vec2, Wrench2D, ZERO_WRENCH,
)

logger = logging.getLogger(__name__)

ExternalWrench = Callable[[PlanarState], Wrench2D]


class StateDerivative(NamedTuple):
    dy: float
    dz: float
    dvy: float
    dvz: float
    dphi: float
    domega: float

    @property
    def dv(self) -> Vec2:
        return (self.dvy, self.dvz)


# ---------------------------------------------------------------------
# Arm kinematics and mass properties
# ---------------------------------------------------------------------

def _point_on_arm(alpha: float, params: UamParams, fraction: float) -> Vec2:
    """Point at `fraction` of the arm length, body coordinates"""
    ay, az = axis_z(alpha)
    reach = fraction * params.arm_length
    return (reach * ay, params.joint_offset + reach * az)


def arm_tip_body(alpha: float, params: UamParams) -> Vec2:
    return _point_on_arm(alpha, params, 1.0)


def arm_cog_offset(phi: float, alpha: float, params: UamParams) -> Vec2:
    """Arm CoG relative to G_B, inertial coordinates"""
    return rotate(phi, _point_on_arm(alpha, params, params.arm_cog_fraction))


def ee_tip_position(state: PlanarState, alpha_signed: float, params: UamParams) -> Vec2:
    """Inertial position of the end-effector tip"""
    ry, rz = rotate(state.phi, arm_tip_body(alpha_signed, params))
    return (state.p[0] + ry, state.p[1] + rz)


def composite_inertia(alpha: float, params: UamParams) -> float:
    """Roll inertia about G_B of vehicle plus slender arm held at alpha"""
    cy, cz = _point_on_arm(alpha, params, params.arm_cog_fraction)
    arm_own = params.m_E * params.arm_length ** 2 / 12.0
    return params.I_body + params.m_E * (cy * cy + cz * cz) + arm_own


def arm_gravity_torque(phi: float, alpha: float, params: UamParams) -> float:
    """Signed torque of the arm weight about G_B"""
    ry, _ = arm_cog_offset(phi, alpha, params)
    return -ry * params.m_E * params.g


def moment_arms(config: PoseConfig, params: UamParams) -> Tuple[float, float]:
    """
    Moment arm magnitudes (l_E, l_GE) about G_B at a pose

    l_E is the distance from G_B to the line of the contact force (along the
    surface normal through the tip); l_GE is the horizontal distance from G_B
    to the arm CoG.
    """
    ry, rz = rotate(config.phi_signed, arm_tip_body(config.alpha_signed, params))
    ny, nz = surface_frame(SurfaceDef(config.beta_signed))[0]
    l_E = abs(ry * nz - rz * ny)
    l_GE = abs(arm_cog_offset(config.phi_signed, config.alpha_signed, params)[0])
    return l_E, l_GE


def mass_geometry_at(config: PoseConfig, params: UamParams) -> MassGeometry:
    l_E, l_GE = moment_arms(config, params)
    return params.mass_geometry(l_E=l_E, l_GE=l_GE)


# ---------------------------------------------------------------------
# Contact
# ---------------------------------------------------------------------

def contact_wrench(state: PlanarState, alpha: float, surface: SurfaceDef,
                   params: UamParams, cp: ContactParams) -> Wrench2D:
    """
    Penalty contact wrench acting on the vehicle, referred to G_B

    Zero on the free side of the surface. Beyond it, the normal force is a
    spring-damper on the penetration, clamped so it never pulls; friction is
    Coulomb, regularized linearly below v_stick.
    """
    tip = ee_tip_position(state, alpha, params)
    depth = -signed_distance(tip, surface)
    if depth <= 0.0:
        return ZERO_WRENCH

    (ny, nz), (ty, tz) = surface_frame(surface)
    ry, rz = tip[0] - state.p[0], tip[1] - state.p[1]
    vy = state.v[0] - state.omega * rz
    vz = state.v[1] + state.omega * ry

    depth_rate = -(vy * ny + vz * nz)
    f_n = max(0.0, cp.k_n * depth + cp.c_n * depth_rate)

    v_t = vy * ty + vz * tz
    slip = max(-1.0, min(1.0, v_t / cp.v_stick))
    f_t = -cp.mu * f_n * slip

    fy = f_n * ny + f_t * ty
    fz = f_n * nz + f_t * tz
    return Wrench2D((fy, fz), ry * fz - rz * fy)


# ---------------------------------------------------------------------
# Equations of motion
# ---------------------------------------------------------------------

def dynamics_rhs(state: PlanarState, u: Tuple[float, float], ext: Wrench2D,
                 params: UamParams, alpha: float) -> StateDerivative:
    """
    Newton-Euler equations of the composite body

    Args:
        u: (T_sum, M_X) applied by the propellers
        ext: external wrench at G_B (contact)
    """
    T_sum, M_X = u
    m_t = params.m_t
    ty, tz = axis_z(state.phi)

    dvy = (T_sum * ty + ext.f[0]) / m_t
    dvz = (T_sum * tz + ext.f[1]) / m_t - params.g
    torque = M_X + ext.tau_x + arm_gravity_torque(state.phi, alpha, params)
    domega = torque / composite_inertia(alpha, params)

    return StateDerivative(state.v[0], state.v[1], dvy, dvz, state.omega, domega)


def _offset(x: Tuple[float, ...], k: StateDerivative, h: float) -> PlanarState:
    return PlanarState.from_tuple([xi + h * ki for xi, ki in zip(x, k)])


def step_rk4(state: PlanarState, u: Tuple[float, float], dt: float, params: UamParams,
             alpha: float, ext_fn: Optional[ExternalWrench] = None) -> PlanarState:
    """
    Classical RK4 step with the propeller inputs held over the step

    The external wrench is re-evaluated at every stage through ext_fn, since
    it depends on the state (contact).
    """
    if dt <= 0:
        raise ValueError("dt must be positive")

    def rhs(s: PlanarState) -> StateDerivative:
        ext = ext_fn(s) if ext_fn is not None else ZERO_WRENCH
        return dynamics_rhs(s, u, ext, params, alpha)

    x = state.as_tuple()
    k1 = rhs(state)
    k2 = rhs(_offset(x, k1, dt / 2))
    k3 = rhs(_offset(x, k2, dt / 2))
    k4 = rhs(_offset(x, k3, dt))

    nxt = PlanarState.from_tuple([
        xi + dt / 6.0 * (a + 2.0 * b + 2.0 * c + d)
        for xi, a, b, c, d in zip(x, k1, k2, k3, k4)
    ])
    if not nxt.is_finite():
        raise NonFinite(f"state left the finite range: {nxt}")
    return nxt


def mechanical_energy(state: PlanarState, alpha: float, params: UamParams) -> float:
    """Kinetic plus potential energy of the composite body"""
    m_t = params.m_t
    kinetic = 0.5 * m_t * (state.v[0] ** 2 + state.v[1] ** 2)
    kinetic += 0.5 * composite_inertia(alpha, params) * state.omega ** 2
    potential = m_t * params.g * state.p[1]
    potential += params.m_E * params.g * arm_cog_offset(state.phi, alpha, params)[1]
    return kinetic + potential
