"""
Static-equilibrium interaction force model

For a pose (beta, phi, alpha) with the end-effector axis orthogonal to the
work surface, the linear force balances along inertial Z and Y fix the
contact force and the total thrust as multiples of the total weight G_t:

    f_E   = G_t sin(phi0) / sin(alpha0)
    f_E_Z = f_E cos(beta0)
    T_sum = G_t sin(beta0) / sin(alpha0)

The torque balance about X only yields the propeller torque the vehicle must
produce; it does not constrain the forces.
"""

import math
import logging
from typing import List, Tuple

import numpy as np
import pandas as pd

from sim.errors import InvalidConfig, InvalidSurface, SingularConfig
from sim.geometry import HALF_PI, validate_pose
from sim.models import EquilibriumSolution, MassGeometry, PoseConfig

logger = logging.getLogger(__name__)

SINGULARITY_TOL = 1e-6  # rad, minimum joint angle magnitude
SWEEP_EPSILON = 1e-3  # relative offset of the last sweep point from beta0

ENVELOPE_COLUMNS = ["phi0_deg", "f_E_N", "f_E_Z_N", "T_sum_N"]


def closed_form(beta0: float, phi0: float, G_t: float) -> Tuple[float, float, float]:
    """Unguarded closed forms, (f_E, f_E_Z, T_sum); diverges as phi0 -> beta0"""
    sin_alpha = math.sin(beta0 - phi0)
    f_E = G_t * math.sin(phi0) / sin_alpha
    return f_E, f_E * math.cos(beta0), G_t * math.sin(beta0) / sin_alpha


def equilibrium_forces(config: PoseConfig, mg: MassGeometry) -> EquilibriumSolution:
    """
    Contact force and total thrust holding the pose in static equilibrium

    Args:
        config: pose with beta = phi + alpha and a shared sign
        mg: masses and moment arms

    Returns:
        EquilibriumSolution; tau_sum_X is the torque-balance diagnostic

    Raises:
        SingularConfig: alpha0 below SINGULARITY_TOL
        InvalidConfig: beta0 = 0 or phi0 >= beta0
    """
    validate_pose(config)
    beta0, phi0, alpha0 = config.magnitudes()

    if beta0 == 0.0:
        raise InvalidConfig("beta0 = 0 is thrust-limited, use ceiling_force_limit")
    if alpha0 < SINGULARITY_TOL:
        raise SingularConfig(f"alpha0 = {alpha0:.3e} rad is at the singular point")
    if phi0 >= beta0:
        raise InvalidConfig("phi0 must be smaller than beta0")

    f_E, f_E_Z, T_sum = closed_form(beta0, phi0, mg.G_t)
    tau_sum_X = f_E * mg.l_E - mg.m_E * mg.g * mg.l_GE

    return EquilibriumSolution(f_E=f_E, f_E_Z=f_E_Z, T_sum=T_sum, tau_sum_X=tau_sum_X)


def residual(config: PoseConfig, mg: MassGeometry, sol: EquilibriumSolution) -> Tuple[float, float, float]:
    """Raw imbalance of the Z force, Y force and X torque equations"""
    beta0, phi0, _ = config.magnitudes()
    r_Z = sol.T_sum * math.cos(phi0) - mg.m_E * mg.g - mg.m_B * mg.g - sol.f_E * math.cos(beta0)
    r_Y = sol.T_sum * math.sin(phi0) - sol.f_E * math.sin(beta0)
    r_X = sol.tau_sum_X + mg.m_E * mg.g * mg.l_GE - sol.f_E * mg.l_E
    return r_Z, r_Y, r_X


def linear_solve_equilibrium(beta0: float, phi0: float, G_t: float) -> Tuple[float, float]:
    """(T_sum, f_E) from solving the two linear force balances directly"""
    A = np.array([
        [math.cos(phi0), -math.cos(beta0)],
        [math.sin(phi0), -math.sin(beta0)],
    ])
    T_sum, f_E = np.linalg.solve(A, np.array([G_t, 0.0]))
    return float(T_sum), float(f_E)


def singularity_margin(config: PoseConfig) -> float:
    """Angular distance to the singular configuration (zero means singular)"""
    return config.beta0 - config.phi0


def _check_beta0(beta0: float):
    if not 0.0 < beta0 <= HALF_PI + 1e-12:
        raise InvalidSurface(f"beta0 = {math.degrees(beta0):.3f} deg is outside (0, 90] deg")


def sweep_grid(beta0: float, n_points: int) -> np.ndarray:
    _check_beta0(beta0)
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    return np.linspace(0.0, beta0 * (1.0 - SWEEP_EPSILON), n_points)


def envelope_sweep(beta0: float, mg: MassGeometry, n_points: int) -> List[Tuple[float, float, float, float]]:
    """
    Force profiles over phi0 in [0, beta0) for a fixed surface

    Returns:
        rows of (phi0, f_E, f_E_Z, T_sum), phi0 strictly increasing
    """
    rows = []
    for phi0 in sweep_grid(beta0, n_points):
        phi0 = float(phi0)
        sol = equilibrium_forces(PoseConfig(beta0, phi0, beta0 - phi0), mg)
        rows.append((phi0, sol.f_E, sol.f_E_Z, sol.T_sum))

    logger.debug(f"Envelope for beta0={math.degrees(beta0):.1f} deg: {len(rows)} points, "
                 f"f_E max {rows[-1][1]:.3f} N")
    return rows


def envelope_frame(beta0: float, mg: MassGeometry, n_points: int) -> pd.DataFrame:
    """envelope_sweep as a DataFrame in degrees/newtons, ready for CSV output"""
    data = np.array(envelope_sweep(beta0, mg, n_points))
    data[:, 0] = np.degrees(data[:, 0])
    return pd.DataFrame(data, columns=ENVELOPE_COLUMNS)


def _roll_step(beta0: float, phi0: float, dphi0: float, mg: MassGeometry):
    low = equilibrium_forces(PoseConfig(beta0, phi0, beta0 - phi0), mg)
    high = equilibrium_forces(PoseConfig(beta0, phi0 + dphi0, beta0 - phi0 - dphi0), mg)
    return low, high


def force_increment(beta0: float, phi0: float, dphi0: float, mg: MassGeometry) -> float:
    """Growth of f_E when the roll magnitude is raised from phi0 to phi0 + dphi0"""
    low, high = _roll_step(beta0, phi0, dphi0, mg)
    return high.f_E - low.f_E


def thrust_increment(beta0: float, phi0: float, dphi0: float, mg: MassGeometry) -> float:
    """Growth of T_sum for the same roll step"""
    low, high = _roll_step(beta0, phi0, dphi0, mg)
    return high.T_sum - low.T_sum


def ceiling_force_limit(mg: MassGeometry, total_thrust_max: float) -> float:
    """
    Pushing force available against a horizontal surface overhead

    With beta0 = phi0 = alpha0 = 0 the equilibrium does not fix the force;
    it is bounded only by how much thrust is left after carrying the weight.
    """
    f_max = total_thrust_max - mg.G_t
    if f_max < 0:
        raise InvalidConfig(f"thrust limit {total_thrust_max:.3f} N cannot carry the weight {mg.G_t:.3f} N")
    return f_max
