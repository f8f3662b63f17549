"""
Value types shared by the simulator modules
"""

import math
from dataclasses import dataclass, asdict
from enum import Enum
from typing import Dict, Any, Tuple

import numpy as np

from sim.errors import InvalidConfig, CaseValidationError

Vec2 = Tuple[float, float]
GRAVITY = 9.81  # m/s^2, shared by the plant and the static force model


def _vec(value) -> Vec2:
    y, z = value
    return (float(y), float(z))


@dataclass(frozen=True)
class PoseConfig:
    """Surface inclination, vehicle roll and joint angle (signed, radians)"""
    beta_signed: float
    phi_signed: float
    alpha_signed: float

    @property
    def beta0(self) -> float:
        return abs(self.beta_signed)

    @property
    def phi0(self) -> float:
        return abs(self.phi_signed)

    @property
    def alpha0(self) -> float:
        return abs(self.alpha_signed)

    @property
    def k_s(self) -> int:
        """Sign selector: +1 for a positive surface angle, -1 for a negative one"""
        return -1 if self.beta_signed < 0 else 1

    @property
    def phi_e(self) -> float:
        """Orientation of the end-effector frame"""
        return self.phi_signed + self.alpha_signed

    def magnitudes(self) -> Tuple[float, float, float]:
        return self.beta0, self.phi0, self.alpha0

    @classmethod
    def from_degrees(cls, beta_deg: float, phi_deg: float, alpha_deg: float) -> 'PoseConfig':
        return cls(math.radians(beta_deg), math.radians(phi_deg), math.radians(alpha_deg))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "beta_deg": math.degrees(self.beta_signed),
            "phi_deg": math.degrees(self.phi_signed),
            "alpha_deg": math.degrees(self.alpha_signed),
        }


@dataclass(frozen=True)
class SurfaceDef:
    """Flat rigid work surface through anchor_point, inclined by beta_signed"""
    beta_signed: float
    anchor_point: Vec2 = (0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "anchor_point", _vec(self.anchor_point))


@dataclass(frozen=True)
class MassGeometry:
    """Masses and moment arms entering the static equilibrium balance"""
    m_B: float
    m_E: float
    g: float = GRAVITY
    l_E: float = 0.0
    l_GE: float = 0.0

    def __post_init__(self):
        if self.m_B <= 0:
            raise InvalidConfig(f"m_B must be positive, got {self.m_B}")
        if self.m_E < 0:
            raise InvalidConfig(f"m_E must be non-negative, got {self.m_E}")
        if self.g <= 0:
            raise InvalidConfig(f"g must be positive, got {self.g}")
        if self.l_E < 0 or self.l_GE < 0:
            raise InvalidConfig("moment arms are magnitudes and must be non-negative")

    @property
    def m_t(self) -> float:
        return self.m_B + self.m_E

    @property
    def G_t(self) -> float:
        """Total weight of vehicle and manipulator"""
        return (self.m_B + self.m_E) * self.g

    @classmethod
    def from_total_weight(cls, G_t: float, g: float = GRAVITY) -> 'MassGeometry':
        """Mass model with the whole weight on the vehicle (envelope plots only need G_t)"""
        return cls(m_B=G_t / g, m_E=0.0, g=g)


@dataclass(frozen=True)
class EquilibriumSolution:
    """Contact force, its vertical part, total thrust and propeller torque at equilibrium"""
    f_E: float
    f_E_Z: float
    T_sum: float
    tau_sum_X: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class RotorLayout(str, Enum):
    PLUS = "plus"
    CROSS = "cross"


@dataclass(frozen=True)
class UamParams:
    """Vehicle + arm composite: masses, geometry, propeller model, limits"""
    m_B: float = 0.69974
    m_E: float = 0.06
    g: float = GRAVITY
    I_body: float = 0.01  # vehicle roll inertia about G_B, arm excluded
    arm_length: float = 0.30
    joint_offset: float = 0.05
    arm_cog_fraction: float = 0.5
    rotor_arm: float = 0.17
    k_af: float = 8.5e-6
    k_am: float = 1.4e-7
    T_i_max: float = 4.0
    layout: RotorLayout = RotorLayout.PLUS

    def __post_init__(self):
        object.__setattr__(self, "layout", RotorLayout(self.layout))

    @property
    def m_t(self) -> float:
        return self.m_B + self.m_E

    def mass_geometry(self, l_E: float = 0.0, l_GE: float = 0.0) -> MassGeometry:
        return MassGeometry(m_B=self.m_B, m_E=self.m_E, g=self.g, l_E=l_E, l_GE=l_GE)

    def validate(self):
        positive = ("m_B", "g", "I_body", "arm_length", "joint_offset",
                    "rotor_arm", "k_af", "k_am", "T_i_max")
        for name in positive:
            if not getattr(self, name) > 0:
                raise CaseValidationError(f"params.{name} must be positive")
        if self.m_E < 0:
            raise CaseValidationError("params.m_E must be non-negative")
        if not 0 < self.arm_cog_fraction <= 1:
            raise CaseValidationError("params.arm_cog_fraction must lie in (0, 1]")
        return True

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["layout"] = self.layout.value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'UamParams':
        return cls(**data)


@dataclass(frozen=True)
class ContactParams:
    """Penalty contact: spring-damper normal law plus regularized Coulomb friction"""
    k_n: float = 5000.0
    c_n: float = 50.0
    mu: float = 0.8
    v_stick: float = 0.1

    def validate(self):
        if self.k_n <= 0:
            raise CaseValidationError("contact.k_n must be positive")
        if self.c_n < 0 or self.mu < 0:
            raise CaseValidationError("contact.c_n and contact.mu must be non-negative")
        if self.v_stick <= 0:
            raise CaseValidationError("contact.v_stick must be positive")
        return True

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ContactParams':
        return cls(**data)


@dataclass(frozen=True)
class Wrench2D:
    """Planar force (f_Y, f_Z) and torque about X"""
    f: Vec2 = (0.0, 0.0)
    tau_x: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "f", _vec(self.f))
        object.__setattr__(self, "tau_x", float(self.tau_x))

    def __add__(self, other: 'Wrench2D') -> 'Wrench2D':
        return Wrench2D((self.f[0] + other.f[0], self.f[1] + other.f[1]), self.tau_x + other.tau_x)

    def __sub__(self, other: 'Wrench2D') -> 'Wrench2D':
        return Wrench2D((self.f[0] - other.f[0], self.f[1] - other.f[1]), self.tau_x - other.tau_x)

    def scaled(self, k: float) -> 'Wrench2D':
        return Wrench2D((k * self.f[0], k * self.f[1]), k * self.tau_x)

    @property
    def force_norm(self) -> float:
        return math.hypot(*self.f)

    def is_finite(self) -> bool:
        return all(math.isfinite(x) for x in (*self.f, self.tau_x))


ZERO_WRENCH = Wrench2D()


@dataclass(frozen=True)
class PlanarState:
    """Vehicle CoG position/velocity in the (Y, Z) plane plus roll and roll rate"""
    p: Vec2 = (0.0, 0.0)
    v: Vec2 = (0.0, 0.0)
    phi: float = 0.0
    omega: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "p", _vec(self.p))
        object.__setattr__(self, "v", _vec(self.v))
        object.__setattr__(self, "phi", float(self.phi))
        object.__setattr__(self, "omega", float(self.omega))

    def as_tuple(self) -> Tuple[float, float, float, float, float, float]:
        return (self.p[0], self.p[1], self.v[0], self.v[1], self.phi, self.omega)

    @classmethod
    def from_tuple(cls, x) -> 'PlanarState':
        return cls((x[0], x[1]), (x[2], x[3]), x[4], x[5])

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple())

    @classmethod
    def from_array(cls, x: np.ndarray) -> 'PlanarState':
        return cls.from_tuple([float(v) for v in x])

    def is_finite(self) -> bool:
        return all(math.isfinite(x) for x in self.as_tuple())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": list(self.p),
            "v": list(self.v),
            "phi_deg": math.degrees(self.phi),
            "omega": self.omega,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'PlanarState':
        return cls(
            p=tuple(data.get("p", (0.0, 0.0))),
            v=tuple(data.get("v", (0.0, 0.0))),
            phi=math.radians(data.get("phi_deg", 0.0)),
            omega=data.get("omega", 0.0),
        )


@dataclass(frozen=True)
class RotorCommand:
    """Per-propeller thrusts after saturation"""
    thrusts: Tuple[float, float, float, float]
    k_af: float

    @property
    def speeds(self) -> Tuple[float, ...]:
        return tuple(math.sqrt(t / self.k_af) for t in self.thrusts)


@dataclass(frozen=True)
class WrenchEstimate:
    """Observer output: total external wrench, interaction part, force along -Z_E"""
    total_ext: Wrench2D = ZERO_WRENCH
    interaction: Wrench2D = ZERO_WRENCH
    f_E_est: float = 0.0
    f_E_est_rate: float = 0.0


@dataclass(frozen=True)
class Gains:
    """Controller, observer and detector tuning"""
    k_p: float = 60.0
    k_d: float = 12.0
    k_phi_p: float = 3.0
    k_phi_d: float = 0.31
    K_p_f: float = 0.5
    K_d_f: float = 0.02
    K_i_f: float = 3.0
    pos_kp: float = 4.0
    pos_kd: float = 3.0
    roll_slew_rate: float = math.radians(45.0)  # rad/s
    max_tilt: float = math.radians(20.0)
    integral_clamp_factor: float = 2.0
    observer_gain: float = 20.0  # 1/s
    contact_threshold: float = 0.3  # N

    def validate(self):
        for name, value in asdict(self).items():
            if value < 0:
                raise CaseValidationError(f"gains.{name} must be non-negative")
        if self.integral_clamp_factor <= 0 or self.observer_gain <= 0 or self.contact_threshold <= 0:
            raise CaseValidationError("integral clamp, observer gain and contact threshold must be positive")
        return True

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["roll_slew_deg_s"] = math.degrees(data.pop("roll_slew_rate"))
        data["max_tilt_deg"] = math.degrees(data.pop("max_tilt"))
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Gains':
        data = dict(data)
        if "roll_slew_deg_s" in data:
            data["roll_slew_rate"] = math.radians(data.pop("roll_slew_deg_s"))
        if "max_tilt_deg" in data:
            data["max_tilt"] = math.radians(data.pop("max_tilt_deg"))
        return cls(**data)


class Mode(str, Enum):
    BASELINE = "baseline"
    INTERACTION = "interaction"


@dataclass(frozen=True)
class Setpoint:
    """Reference for one control update"""
    mode: Mode = Mode.BASELINE
    p_d: Vec2 = (0.0, 0.0)
    v_d: Vec2 = (0.0, 0.0)
    a_d: Vec2 = (0.0, 0.0)
    phi_d: float = 0.0
    f_E_d: float = 0.0
    beta: float = 0.0  # signed surface inclination

    def __post_init__(self):
        if self.f_E_d < 0:
            raise InvalidConfig("f_E_d must be non-negative")

    @property
    def beta0(self) -> float:
        return abs(self.beta)

    @property
    def k_s(self) -> int:
        return -1 if self.beta < 0 else 1
