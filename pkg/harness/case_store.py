"""
Scenario definitions and their JSON storage
"""

import os
import json
import math
import logging
from dataclasses import dataclass, field, fields
from typing import Optional, List, Dict, Any

from config import Config
from sim.errors import CaseValidationError, SimulationError
from sim.geometry import solve_joint_angle
from sim.models import ContactParams, Gains, PlanarState, PoseConfig, UamParams
from utils.helpers import sanitize_filename

logger = logging.getLogger(__name__)


def _known_keys(section: str, data: Dict[str, Any], allowed) -> Dict[str, Any]:
    """Keep the keys a section understands, warn about the rest"""
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        logger.warning(f"Ignoring unknown keys in '{section}': {', '.join(unknown)}")
    return {k: v for k, v in data.items() if k in allowed}


@dataclass
class SimCase:
    """One pushing scenario: surface, desired roll, plant, contact and tuning"""
    name: str
    beta_deg: float
    phi_d_deg: float
    duration_s: float = 12.0
    dt_s: float = Config.DEFAULT_DT
    control_substeps: int = Config.CONTROL_SUBSTEPS
    standoff_m: float = 0.08
    seed: int = 0
    imu_noise_std: float = 0.0
    params: UamParams = field(default_factory=UamParams)
    contact: ContactParams = field(default_factory=ContactParams)
    gains: Gains = field(default_factory=Gains)
    start_pose: PlanarState = field(default_factory=PlanarState)

    @property
    def beta(self) -> float:
        return math.radians(self.beta_deg)

    @property
    def phi_d(self) -> float:
        return math.radians(self.phi_d_deg)

    @property
    def n_steps(self) -> int:
        return int(round(self.duration_s / self.dt_s))

    def pose(self) -> PoseConfig:
        return solve_joint_angle(self.beta, self.phi_d)

    def validate(self) -> 'SimCase':
        """
        Check the scenario invariants

        Raises:
            CaseValidationError: on the first violated rule
        """
        if not self.name:
            raise CaseValidationError("case name must not be empty")
        if not 0.0 < abs(self.beta_deg) <= 90.0:
            raise CaseValidationError(f"{self.name}: beta_deg must be non-zero and within [-90, 90]")
        if self.phi_d_deg == 0.0:
            raise CaseValidationError(f"{self.name}: phi_d_deg = 0 produces no pushing force")
        if abs(self.phi_d_deg) >= abs(self.beta_deg):
            raise CaseValidationError(f"{self.name}: |phi_d_deg| must be smaller than |beta_deg|")
        if self.duration_s <= 0 or self.dt_s <= 0:
            raise CaseValidationError(f"{self.name}: duration_s and dt_s must be positive")
        if self.dt_s > self.duration_s:
            raise CaseValidationError(f"{self.name}: dt_s exceeds duration_s")
        if self.control_substeps < 1:
            raise CaseValidationError(f"{self.name}: control_substeps must be at least 1")
        if self.standoff_m <= 0:
            raise CaseValidationError(f"{self.name}: standoff_m must be positive")
        if self.imu_noise_std < 0:
            raise CaseValidationError(f"{self.name}: imu_noise_std must be non-negative")

        self.params.validate()
        self.contact.validate()
        self.gains.validate()

        try:
            self.pose()
        except SimulationError as e:
            raise CaseValidationError(f"{self.name}: {e}") from e

        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "beta_deg": self.beta_deg,
            "phi_d_deg": self.phi_d_deg,
            "duration_s": self.duration_s,
            "dt_s": self.dt_s,
            "control_substeps": self.control_substeps,
            "standoff_m": self.standoff_m,
            "seed": self.seed,
            "imu_noise_std": self.imu_noise_std,
            "params": self.params.to_dict(),
            "contact": self.contact.to_dict(),
            "gains": self.gains.to_dict(),
            "start_pose": self.start_pose.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SimCase':
        """Build a case from its JSON form; missing sections take the defaults"""
        scalar_keys = [f.name for f in fields(cls) if f.name not in ("params", "contact", "gains", "start_pose")]
        sections = ("params", "contact", "gains", "start_pose")
        top = _known_keys("case", data, scalar_keys + list(sections))

        for required in ("name", "beta_deg", "phi_d_deg"):
            if required not in top:
                raise CaseValidationError(f"case is missing '{required}'")

        try:
            params = UamParams.from_dict(
                _known_keys("params", top.pop("params", {}), [f.name for f in fields(UamParams)])
            )
            contact = ContactParams.from_dict(
                _known_keys("contact", top.pop("contact", {}), [f.name for f in fields(ContactParams)])
            )
            gain_keys = [f.name for f in fields(Gains)] + ["roll_slew_deg_s", "max_tilt_deg"]
            gain_data = _known_keys("gains", top.pop("gains", {}), gain_keys)
            gain_data.setdefault("observer_gain", Config.OBSERVER_GAIN)
            gain_data.setdefault("contact_threshold", Config.CONTACT_THRESHOLD)
            gains = Gains.from_dict(gain_data)
            start_pose = PlanarState.from_dict(
                _known_keys("start_pose", top.pop("start_pose", {}), ["p", "v", "phi_deg", "omega"])
            )
            return cls(params=params, contact=contact, gains=gains, start_pose=start_pose, **top)
        except CaseValidationError:
            raise
        except (TypeError, ValueError) as e:
            raise CaseValidationError(f"malformed case '{data.get('name', '?')}': {e}") from e


class CaseStore:
    """Directory of JSON case files plus the reports written next to them"""

    def __init__(self, cases_path: str = None, output_path: str = None):
        self.cases_path = cases_path or Config.CASES_PATH
        self.output_path = output_path or Config.OUTPUT_PATH

    def list_cases(self) -> List[str]:
        """Case file paths, sorted by name"""
        if not os.path.isdir(self.cases_path):
            logger.warning(f"Case directory {self.cases_path} does not exist")
            return []
        names = sorted(n for n in os.listdir(self.cases_path) if n.endswith(".json"))
        return [os.path.join(self.cases_path, n) for n in names]

    @staticmethod
    def load(path: str) -> SimCase:
        """
        Read and validate a case file

        Raises:
            CaseValidationError: unreadable JSON or invalid scenario
        """
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as e:
            raise CaseValidationError(f"{path}: invalid JSON ({e})") from e

        if not isinstance(data, dict):
            raise CaseValidationError(f"{path}: top level must be an object")

        case = SimCase.from_dict(data).validate()
        logger.debug(f"Loaded case {case.name} from {path}")
        return case

    def load_all(self, names: Optional[List[str]] = None) -> List[SimCase]:
        cases = [self.load(p) for p in self.list_cases()]
        if names:
            wanted = set(names)
            cases = [c for c in cases if c.name in wanted]
        return cases

    @staticmethod
    def save(case: SimCase, path: str):
        write_json(case.to_dict(), path)
        logger.info(f"Saved case {case.name} to {path}")

    def case_dir(self, name: str) -> str:
        path = os.path.join(self.output_path, sanitize_filename(name))
        os.makedirs(path, exist_ok=True)
        return path

    def save_report(self, name: str, report: Dict[str, Any]) -> str:
        path = os.path.join(self.case_dir(name), "report.json")
        write_json(report, path)
        logger.info(f"Report for {name} written to {path}")
        return path


def write_json(data: Dict[str, Any], path: str):
    """Stable JSON: sorted keys and fixed indent so reruns are byte-identical"""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
