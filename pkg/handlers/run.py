"""
`sim run`: simulate one case and write its report, telemetry and chart
"""

import os
import asyncio
import logging
from argparse import Namespace

from config import Config
from harness.case_store import CaseStore, SimCase
from harness.plotting import plot_telemetry
from harness.runner import run_case
from middleware.guards import handle_errors, require_case
from utils.helpers import calculate_file_hash, format_progress

logger = logging.getLogger(__name__)

PROGRESS_STEPS = 10


def progress_logger(case: SimCase):
    """on_step callback logging a progress bar every tenth of the run"""
    every = max(1, case.n_steps // PROGRESS_STEPS)

    def on_step(k, t, state, est, out):
        if k and k % every == 0:
            logger.info(f"{case.name} {format_progress(k, case.n_steps)} t={t:.2f} s "
                        f"mode={out.mode.value} f_E_est={est.f_E_est:.3f} N")

    return on_step


@handle_errors
@require_case
async def run_command(args: Namespace, case: SimCase) -> int:
    """Handle `sim run <case.json>`"""
    store = CaseStore(output_path=args.out)
    result = await asyncio.to_thread(run_case, case, progress_logger(case))
    report = result.report

    out_dir = store.case_dir(case.name)
    store.save_report(case.name, report.to_dict())

    if args.csv:
        csv_path = os.path.join(out_dir, "telemetry.csv")
        result.telemetry.to_csv(csv_path, index=False, float_format=Config.CSV_FLOAT_FORMAT)
        logger.info(f"Telemetry written to {csv_path} (sha256 {calculate_file_hash(csv_path)[:16]})")

    if args.svg:
        plot_telemetry(result.telemetry, os.path.join(out_dir, "telemetry.svg"),
                       f_E_d=report.f_E_d, T_sum_d=report.T_sum_d, title=case.name)

    print(f"{case.name}: alpha_d={report.alpha_d_deg:.1f} deg")
    print(f"  f_E   desired {report.f_E_d:.4f} N  steady {report.f_E_ss:.4f} N  ({report.f_E_err_pct:+.2f}%)")
    print(f"  T_sum desired {report.T_sum_d:.4f} N  steady {report.T_sum_ss:.4f} N  ({report.T_sum_err_pct:+.2f}%)")
    print(f"  settled={report.settled}  saturated_steps={report.saturated_steps}")
    return 0
