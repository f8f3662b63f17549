"""
Frames, angle conventions and the kinematic constraints of the pushing task

Angles are radians, positive anticlockwise about the inertial X axis; planar
vectors are (y, z) pairs in the inertial frame with Z pointing up.
"""

import math
import logging
from typing import Tuple

from sim.errors import InvalidConfig, InvalidSurface, SingularConfig
from sim.models import PoseConfig, SurfaceDef, Vec2

logger = logging.getLogger(__name__)

HALF_PI = math.pi / 2
ANGLE_TOL = 1e-12


def rotate(theta: float, vec: Vec2) -> Vec2:
    c, s = math.cos(theta), math.sin(theta)
    return (c * vec[0] - s * vec[1], s * vec[0] + c * vec[1])


def axis_z(theta: float) -> Vec2:
    """Z axis of a frame rotated by theta"""
    return (-math.sin(theta), math.cos(theta))


def sign_selector(beta_signed: float) -> int:
    return -1 if beta_signed < 0 else 1


def ee_orientation(phi_signed: float, alpha_signed: float) -> float:
    """Orientation of the end-effector frame: roll plus joint angle"""
    return phi_signed + alpha_signed


def _check_range(name: str, value: float):
    if not -HALF_PI - ANGLE_TOL <= value <= HALF_PI + ANGLE_TOL:
        raise InvalidSurface(f"{name} = {math.degrees(value):.3f} deg is outside [-90, 90] deg")


def solve_joint_angle(beta_signed: float, phi_desired: float) -> PoseConfig:
    """
    Joint angle that keeps the end-effector axis orthogonal to the surface

    Args:
        beta_signed: surface inclination
        phi_desired: commanded vehicle roll, same sign as the surface

    Returns:
        PoseConfig with alpha = k_s * (beta0 - phi0)
    """
    _check_range("beta", beta_signed)

    if beta_signed == 0.0:
        if phi_desired != 0.0:
            raise InvalidSurface("a horizontal surface only admits zero roll")
        return PoseConfig(0.0, 0.0, 0.0)

    if phi_desired != 0.0 and math.copysign(1.0, phi_desired) != math.copysign(1.0, beta_signed):
        raise InvalidConfig("roll and surface inclination must share the same sign")

    beta0, phi0 = abs(beta_signed), abs(phi_desired)
    if phi0 >= beta0:
        raise SingularConfig(
            f"|phi| = {math.degrees(phi0):.3f} deg must stay below |beta| = {math.degrees(beta0):.3f} deg"
        )

    k_s = sign_selector(beta_signed)
    return PoseConfig(beta_signed, k_s * phi0, k_s * (beta0 - phi0))


def validate_pose(config: PoseConfig) -> PoseConfig:
    """Check the constraints the equilibrium model relies on"""
    for name in ("beta_signed", "phi_signed", "alpha_signed"):
        _check_range(name, getattr(config, name))

    if abs(ee_orientation(config.phi_signed, config.alpha_signed) - config.beta_signed) > 1e-9:
        raise InvalidConfig("end-effector axis is not orthogonal to the surface (beta != phi + alpha)")

    signs = {math.copysign(1.0, x) for x in (config.beta_signed, config.phi_signed, config.alpha_signed) if x != 0.0}
    if len(signs) > 1:
        raise InvalidConfig("beta, phi and alpha must share the same sign")

    return config


def surface_frame(surface: SurfaceDef) -> Tuple[Vec2, Vec2]:
    """
    Unit normal (pointing toward the robot, below the surface) and tangent

    The tangent is the inertial Y axis rotated by beta; the normal is the
    surface's own Z axis flipped, i.e. the direction of the contact force the
    surface applies to the end-effector.
    """
    beta = surface.beta_signed
    tangent = (math.cos(beta), math.sin(beta))
    normal = (math.sin(beta), -math.cos(beta))
    return normal, tangent


def signed_distance(point: Vec2, surface: SurfaceDef) -> float:
    """Distance from the surface along its normal; negative when the point is beyond it"""
    normal, _ = surface_frame(surface)
    ay, az = surface.anchor_point
    return (point[0] - ay) * normal[0] + (point[1] - az) * normal[1]


def wrap_angle(theta: float) -> float:
    """Wrap to [-pi, pi)"""
    return (theta + math.pi) % (2.0 * math.pi) - math.pi
