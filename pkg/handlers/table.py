"""
`sim table`: run a directory of cases and compare their steady states
"""

import os
import logging
from argparse import Namespace

from config import Config
from harness.case_store import CaseStore, write_json
from harness.plotting import plot_comparison
from harness.runner import run_table
from middleware.guards import EXIT_FAILURE, EXIT_OK, handle_errors

logger = logging.getLogger(__name__)


@handle_errors
async def table_command(args: Namespace) -> int:
    """Handle `sim table <dir-of-cases>`"""
    store = CaseStore(cases_path=args.cases_dir, output_path=args.out)
    cases = store.load_all(args.only)
    if not cases:
        logger.error(f"No cases found in {store.cases_path}")
        return EXIT_FAILURE

    workers = args.workers or Config.TABLE_WORKERS
    logger.info(f"Running {len(cases)} cases with {workers} worker(s)")
    result = await run_table(cases, workers=workers)

    os.makedirs(store.output_path, exist_ok=True)
    result.to_frame().to_csv(os.path.join(store.output_path, "table.csv"), index=False,
                             float_format=Config.CSV_FLOAT_FORMAT)
    write_json(result.to_dict(), os.path.join(store.output_path, "table.json"))
    if result.telemetry:
        plot_comparison(result.telemetry, os.path.join(store.output_path, "comparison.svg"),
                        title=f"{len(result.telemetry)} cases")

    print(result.format())
    return EXIT_OK if result.all_passed else EXIT_FAILURE
