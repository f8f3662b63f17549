"""
Closed-loop scenario runner: approach, contact, interaction, report
"""

import math
import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, List, Tuple

import pandas as pd

from sim.actuation import allocate
from sim.control import ControlOutput, HybridController
from sim.dynamics import contact_wrench, dynamics_rhs, ee_tip_position, mass_geometry_at, step_rk4
from sim.errors import DidNotEngage, Diverged, NonFinite, SimulationError, TiltSingular
from sim.estimation import SimulatedImu, WrenchObserver, project_on_pushing_axis
from sim.force_model import equilibrium_forces
from sim.geometry import axis_z, wrap_angle
from sim.models import Mode, PlanarState, SurfaceDef, Vec2, WrenchEstimate
from harness.case_store import SimCase
from harness.report import SimReport, TableResult, build_report, comparison_checks, table_row
from utils.logger import LogProcessingTime

logger = logging.getLogger(__name__)

APPROACH_SPEED = 0.2  # m/s
APPROACH_OVERSHOOT = 0.02  # m beyond the surface along the pushing axis

TELEMETRY_COLUMNS = [
    "t", "y", "z", "phi_deg", "vy", "vz", "omega",
    "T_sum_cmd", "T_sum_ach", "M_X", "T1", "T2", "T3", "T4",
    "f_E_est", "f_E_true", "mode", "u_f",
]

StepCallback = Callable[[int, float, PlanarState, WrenchEstimate, ControlOutput], None]


class ApproachPlan:
    """
    Straight-line approach toward an inclined surface

    The surface is placed standoff_m ahead of the starting tip along the
    surface's pushing axis Z_E(beta). The vehicle reference moves along that
    axis at APPROACH_SPEED to a point APPROACH_OVERSHOOT past the surface,
    so the tip has to touch it on the way.
    """

    def __init__(self, case: SimCase, alpha: float):
        self.beta = case.beta
        self.start = case.start_pose.p
        self.direction = axis_z(case.beta)

        tip = ee_tip_position(case.start_pose, alpha, case.params)
        self.anchor = (tip[0] + case.standoff_m * self.direction[0],
                       tip[1] + case.standoff_m * self.direction[1])

        self.distance = case.standoff_m + APPROACH_OVERSHOOT
        self.duration = self.distance / APPROACH_SPEED
        self.target = self._along(self.distance)

    def _along(self, s: float) -> Vec2:
        return (self.start[0] + s * self.direction[0], self.start[1] + s * self.direction[1])

    @property
    def surface(self) -> SurfaceDef:
        return SurfaceDef(self.beta, self.anchor)

    def reference(self, t: float) -> Tuple[Vec2, Vec2]:
        """(p_d, v_d) at time t"""
        if t >= self.duration:
            return self.target, (0.0, 0.0)
        v = (APPROACH_SPEED * self.direction[0], APPROACH_SPEED * self.direction[1])
        return self._along(APPROACH_SPEED * t), v


@dataclass
class CaseResult:
    report: SimReport
    telemetry: pd.DataFrame


def run_case(case: SimCase, on_step: Optional[StepCallback] = None) -> CaseResult:
    """
    Simulate one scenario end to end

    Per physics step: contact, IMU, observer, controller (every
    control_substeps steps), allocation, telemetry row, RK4 step. The
    telemetry has one row per step plus the final state.

    Raises:
        DidNotEngage: contact never detected
        Diverged: the state or the thrust projection blew up
    """
    pose = case.pose()
    params, gains, dt = case.params, case.gains, case.dt_s
    alpha = pose.alpha_signed
    mg = mass_geometry_at(pose, params)
    target = equilibrium_forces(pose, mg)

    plan = ApproachPlan(case, alpha)
    surface = plan.surface

    controller = HybridController(params, gains, mg, case.beta, pose.phi_signed, alpha,
                                  target.f_E, plan.reference)
    observer = WrenchObserver(params, alpha, gains.observer_gain)
    imu = SimulatedImu(params.g, accel_noise_std=case.imu_noise_std, seed=case.seed)

    def ext_fn(s: PlanarState):
        return contact_wrench(s, alpha, surface, params, case.contact)

    logger.info(f"Running {case.name}: beta={case.beta_deg:.1f} deg, phi_d={case.phi_d_deg:.1f} deg, "
                f"f_E_d={target.f_E:.4f} N, T_sum_d={target.T_sum:.4f} N")
    logger.debug(f"{case.name}: surface anchor {plan.anchor}, approach {plan.duration:.2f} s, "
                 f"l_E={mg.l_E:.4f} m, l_GE={mg.l_GE:.4f} m")

    state = case.start_pose
    u_prev = (0.0, 0.0)
    out: Optional[ControlOutput] = None
    rows = []
    saturated_steps = 0
    engaged_at = None
    integral_peak = 0.0
    n_steps = case.n_steps

    with LogProcessingTime(f"run_case:{case.name}", steps=n_steps + 1):
        for k in range(n_steps + 1):
            t = k * dt
            ext = ext_fn(state)
            accel = dynamics_rhs(state, u_prev, ext, params, alpha).dv
            est = observer.update(imu.measure(state, accel), u_prev, state.phi, dt)

            try:
                if k % case.control_substeps == 0:
                    out = controller.step(t, state, est, dt * case.control_substeps)
            except TiltSingular as e:
                raise Diverged(f"{case.name} at t={t:.3f} s: {e}") from e

            if engaged_at is None and controller.mode == Mode.INTERACTION:
                engaged_at = t

            integral_peak = max(integral_peak, abs(controller.pid.integral))
            alloc = allocate(out.T_sum, out.M, params)
            saturated_steps += alloc.saturated

            rows.append((
                t, state.p[0], state.p[1], math.degrees(wrap_angle(state.phi)), state.v[0], state.v[1], state.omega,
                out.T_sum, alloc.T_sum_ach, alloc.M_X_ach, *alloc.thrusts,
                est.f_E_est, project_on_pushing_axis(ext.f, state.phi + alpha),
                int(controller.mode == Mode.INTERACTION), out.u_f,
            ))
            if on_step is not None:
                on_step(k, t, state, est, out)

            if k == n_steps:
                break

            u_prev = (alloc.T_sum_ach, alloc.M_X_ach)
            try:
                state = step_rk4(state, u_prev, dt, params, alpha, ext_fn=ext_fn)
            except NonFinite as e:
                raise Diverged(f"{case.name} at t={t:.3f} s: {e}") from e

    if controller.detector.rising_edges == 0:
        raise DidNotEngage(f"{case.name}: no contact detected within {case.duration_s:.1f} s")

    telemetry = pd.DataFrame(rows, columns=TELEMETRY_COLUMNS)
    report = build_report(case, telemetry, saturated_steps=saturated_steps,
                          engaged_at_s=engaged_at, mode_transitions=controller.transitions,
                          integral_peak=integral_peak, integral_clamp=controller.pid.clamp)

    logger.info(f"{case.name}: f_E_ss={report.f_E_ss:.4f} N ({report.f_E_err_pct:+.2f}%), "
                f"T_sum_ss={report.T_sum_ss:.4f} N ({report.T_sum_err_pct:+.2f}%)")
    return CaseResult(report=report, telemetry=telemetry)


def _run_for_table(case: SimCase) -> Tuple[Optional[CaseResult], Optional[str]]:
    """Process-pool worker: the run, or the error that stopped it"""
    try:
        return run_case(case), None
    except SimulationError as e:
        logger.error(f"{case.name} failed: {e}")
        return None, f"{type(e).__name__}: {e}"


async def run_table(cases: List[SimCase], workers: int = 1) -> TableResult:
    """
    Run every case and compare the steady-state forces and thrusts

    With workers > 1 the cases run in a process pool; results are collected
    in input order either way.
    """
    if not cases:
        raise ValueError("run_table needs at least one case")

    if workers > 1:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = await asyncio.gather(
                *(loop.run_in_executor(pool, _run_for_table, case) for case in cases)
            )
    else:
        outcomes = [_run_for_table(case) for case in cases]

    result = TableResult()
    reports = {}
    for case, (run, error) in zip(cases, outcomes):
        report = run.report if run is not None else None
        result.rows.append(table_row(case, report, error))
        if run is not None:
            reports[case.name] = report
            result.telemetry[case.name] = run.telemetry

    result.checks = comparison_checks(cases, reports)
    logger.info(f"Table of {len(cases)} cases: {len(reports)} completed, "
                f"{sum(c.passed for c in result.checks)}/{len(result.checks)} comparisons passed")
    return result
