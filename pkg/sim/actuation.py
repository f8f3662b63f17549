"""
Propeller mixing: body wrench -> four rotor thrusts, with per-rotor saturation
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from sim.models import RotorCommand, RotorLayout, UamParams

logger = logging.getLogger(__name__)

SPIN_SIGNS = np.array([1.0, -1.0, 1.0, -1.0])  # (-1)^(i+1), rotors 1..4

_LAYOUT_ANGLES = {
    # Rotor bearing in the body X-Y plane, measured from +X_B
    RotorLayout.PLUS: (90.0, 0.0, 270.0, 180.0),
    RotorLayout.CROSS: (135.0, 45.0, 315.0, 225.0),
}


@dataclass(frozen=True)
class AllocationResult:
    """Rotor command plus the wrench asked for and the wrench actually produced"""
    rotors: RotorCommand
    T_sum_cmd: float
    M_X_cmd: float
    T_sum_ach: float
    M_X_ach: float
    saturated: bool

    @property
    def thrusts(self) -> Tuple[float, float, float, float]:
        return self.rotors.thrusts


def rotor_positions(params: UamParams) -> np.ndarray:
    """(4, 2) array of rotor (x, y) positions in the body frame"""
    angles = np.radians(_LAYOUT_ANGLES[params.layout])
    return params.rotor_arm * np.column_stack([np.cos(angles), np.sin(angles)])


@lru_cache(maxsize=32)
def mixing_matrix(params: UamParams) -> np.ndarray:
    """
    Maps rotor thrusts to (T_sum, M_X, M_Y, M_Z)

    Each thrust acts along +Z_B at r_i = (x_i, y_i), giving r_i x T_i e_z =
    (y_i T_i, -x_i T_i); rotor drag torque is k_am/k_af times the thrust with
    alternating spin direction.
    """
    pos = rotor_positions(params)
    matrix = np.vstack([
        np.ones(4),
        pos[:, 1],
        -pos[:, 0],
        SPIN_SIGNS * params.k_am / params.k_af,
    ])
    matrix.flags.writeable = False
    return matrix


def allocate(T_sum_cmd: float, M_cmd: Tuple[float, float, float], params: UamParams) -> AllocationResult:
    """
    Per-rotor thrusts for a commanded total thrust and body moment

    The mixing is solved exactly, then each rotor is clamped to [0, T_i_max].
    Nothing is redistributed after clamping; the result reports what the
    rotors actually deliver.
    """
    wrench = np.array([T_sum_cmd, *M_cmd], dtype=float)
    raw = np.linalg.solve(mixing_matrix(params), wrench)
    clamped = np.clip(raw, 0.0, params.T_i_max)
    saturated = bool(np.any(raw != clamped))

    rotors = RotorCommand(thrusts=tuple(float(t) for t in clamped), k_af=params.k_af)
    T_sum_ach, M_X_ach = achieved_wrench(rotors, 0.0, params)

    return AllocationResult(
        rotors=rotors,
        T_sum_cmd=float(T_sum_cmd),
        M_X_cmd=float(M_cmd[0]),
        T_sum_ach=T_sum_ach,
        M_X_ach=M_X_ach,
        saturated=saturated,
    )


def achieved_wrench(cmd: RotorCommand, phi: float, params: UamParams) -> Tuple[float, float]:
    """
    (T_sum, tau_X) produced by a rotor command

    Rolling about X leaves the X axis fixed, so tau_X is the same in the body
    and the inertial frame; phi does not enter.
    """
    T_sum, M_X, _, _ = mixing_matrix(params) @ np.asarray(cmd.thrusts)
    return float(T_sum), float(M_X)


def yaw_drag_torque(cmd: RotorCommand, params: UamParams) -> float:
    """Net rotor drag torque about Z_B, k_am * Omega_i^2 with alternating spin"""
    speeds_sq = np.square(cmd.speeds)
    return float(np.sum(SPIN_SIGNS * params.k_am * speeds_sq))
