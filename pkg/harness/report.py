"""
Steady-state reports for single runs and the comparison table across cases
"""

import math
import logging
from dataclasses import dataclass, field, asdict
from itertools import combinations
from typing import Optional, List, Dict, Any

import numpy as np
import pandas as pd

from sim.dynamics import mass_geometry_at
from sim.force_model import equilibrium_forces
from harness.case_store import SimCase

logger = logging.getLogger(__name__)

STEADY_FRACTION = 0.2
SETTLED_REL_STD = 0.02

TABLE_COLUMNS = [
    "case", "beta_deg", "phi_d_deg", "alpha_d_deg", "f_E_d", "T_sum_d",
    "f_E_ss", "T_sum_ss", "f_E_err_pct", "settled", "status",
]


@dataclass
class SimReport:
    """Closed-form targets next to the measured steady state of one run"""
    case: str
    alpha_d_deg: float
    f_E_d: float
    T_sum_d: float
    f_E_ss: float = 0.0
    T_sum_ss: float = 0.0
    f_E_err_pct: float = 0.0
    T_sum_err_pct: float = 0.0
    settled: bool = False
    saturated_steps: int = 0
    engaged_at_s: Optional[float] = None
    mode_transitions: int = 0
    integral_peak: float = 0.0
    integral_clamp: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def closed_form_report(case: SimCase) -> SimReport:
    """Report header computed from the equilibrium model alone"""
    pose = case.pose()
    sol = equilibrium_forces(pose, mass_geometry_at(pose, case.params))
    return SimReport(
        case=case.name,
        alpha_d_deg=math.degrees(pose.alpha_signed),
        f_E_d=sol.f_E,
        T_sum_d=sol.T_sum,
    )


def steady_window(telemetry: pd.DataFrame, fraction: float = STEADY_FRACTION) -> pd.DataFrame:
    """Trailing rows covering `fraction` of the run, never empty"""
    if telemetry.empty:
        raise ValueError("telemetry is empty")
    n = max(1, int(math.ceil(fraction * len(telemetry))))
    return telemetry.iloc[-n:]


def _pct(measured: float, desired: float) -> float:
    return 100.0 * (measured - desired) / desired if desired else 0.0


def build_report(case: SimCase, telemetry: pd.DataFrame, saturated_steps: int = 0,
                 engaged_at_s: Optional[float] = None, mode_transitions: int = 0,
                 integral_peak: float = 0.0, integral_clamp: float = 0.0) -> SimReport:
    report = closed_form_report(case)
    window = steady_window(telemetry)

    f_mean = float(window["f_E_est"].mean())
    f_std = float(window["f_E_est"].std(ddof=0))
    report.f_E_ss = max(0.0, f_mean)
    report.T_sum_ss = float(window["T_sum_ach"].mean())
    report.f_E_err_pct = _pct(report.f_E_ss, report.f_E_d)
    report.T_sum_err_pct = _pct(report.T_sum_ss, report.T_sum_d)
    report.settled = f_mean > 0 and f_std < SETTLED_REL_STD * f_mean
    report.saturated_steps = saturated_steps
    report.engaged_at_s = engaged_at_s
    report.mode_transitions = mode_transitions
    report.integral_peak = integral_peak
    report.integral_clamp = integral_clamp

    if not report.settled:
        logger.warning(f"{case.name}: force did not settle (std {f_std:.4f} N around {f_mean:.4f} N)")
    if saturated_steps:
        logger.warning(f"{case.name}: rotors saturated on {saturated_steps} steps")
    return report


@dataclass(frozen=True)
class ComparisonCheck:
    """Expected ordering of a steady-state quantity between two cases"""
    kind: str  # "vertical" or "horizontal"
    larger: str
    smaller: str
    passed: bool
    quantity: str = "f_E"  # or "T_sum"

    def describe(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        q = self.quantity
        return f"{self.kind:<10} {q}({self.larger}) > {q}({self.smaller}): {verdict}"


def _expected_order(a: SimCase, b: SimCase) -> Optional[tuple]:
    """
    (kind, larger, smaller) when two cases are comparable

    Same roll, different surface: the shallower surface needs the larger
    force and the larger thrust. Same surface, different roll: the larger roll gives the larger
    force.
    """
    beta_a, beta_b = abs(a.beta_deg), abs(b.beta_deg)
    phi_a, phi_b = abs(a.phi_d_deg), abs(b.phi_d_deg)
    if math.isclose(phi_a, phi_b) and not math.isclose(beta_a, beta_b):
        return ("vertical", a, b) if beta_a < beta_b else ("vertical", b, a)
    if math.isclose(beta_a, beta_b) and not math.isclose(phi_a, phi_b):
        return ("horizontal", a, b) if phi_a > phi_b else ("horizontal", b, a)
    return None


def comparison_checks(cases: List[SimCase], reports: Dict[str, SimReport]) -> List[ComparisonCheck]:
    """
    Ordering checks over every comparable pair that has a report

    Every pair compares f_E_ss; vertical pairs also compare T_sum_ss.
    """
    checks = []
    for a, b in combinations(cases, 2):
        order = _expected_order(a, b)
        if order is None or a.name not in reports or b.name not in reports:
            continue
        kind, larger, smaller = order
        big, small = reports[larger.name], reports[smaller.name]
        pair = [ComparisonCheck(kind, larger.name, smaller.name, big.f_E_ss > small.f_E_ss)]
        if kind == "vertical":
            pair.append(ComparisonCheck(kind, larger.name, smaller.name,
                                        big.T_sum_ss > small.T_sum_ss, quantity="T_sum"))
        for check in pair:
            if not check.passed:
                logger.warning(f"Comparison failed: {check.describe()}")
        checks.extend(pair)
    return checks


@dataclass
class TableResult:
    rows: List[Dict[str, Any]] = field(default_factory=list)
    checks: List[ComparisonCheck] = field(default_factory=list)
    telemetry: Dict[str, pd.DataFrame] = field(default_factory=dict)  # completed runs only

    @property
    def all_passed(self) -> bool:
        return all(r["status"] == "ok" for r in self.rows) and all(c.passed for c in self.checks)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=TABLE_COLUMNS)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rows": self.rows,
            "checks": [asdict(c) for c in self.checks],
        }

    def format(self) -> str:
        frame = self.to_frame()
        lines = [frame.to_string(index=False, float_format=lambda x: f"{x:.4f}")]
        if self.checks:
            lines.append("")
            lines.extend(c.describe() for c in self.checks)
        return "\n".join(lines)


def table_row(case: SimCase, report: Optional[SimReport], error: Optional[str] = None) -> Dict[str, Any]:
    """One table row; failed runs keep the closed-form columns and carry the error"""
    header = report or closed_form_report(case)
    measured = report is not None and error is None
    return {
        "case": case.name,
        "beta_deg": case.beta_deg,
        "phi_d_deg": case.phi_d_deg,
        "alpha_d_deg": header.alpha_d_deg,
        "f_E_d": header.f_E_d,
        "T_sum_d": header.T_sum_d,
        "f_E_ss": header.f_E_ss if measured else np.nan,
        "T_sum_ss": header.T_sum_ss if measured else np.nan,
        "f_E_err_pct": header.f_E_err_pct if measured else np.nan,
        "settled": header.settled if measured else False,
        "status": "ok" if measured else f"failed: {error}",
    }
