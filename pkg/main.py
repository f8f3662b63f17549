#!/usr/bin/env python3

"""
Aerial manipulator pushing simulator - command line entry point
"""

import sys
import asyncio
import logging
import argparse
from typing import List, Optional

from config import Config
from handlers import envelope, run, table, validate
from harness.plotting import DEFAULT_BETAS_DEG, ENVELOPE_POINTS
from utils.helpers import get_system_info
from utils.logger import setup_logger

logger = logging.getLogger(__name__)

class SimApp:
    def __init__(self):
        self.config = Config()
        self.parser = None

    def build_parser(self) -> argparse.ArgumentParser:
        """Build the argument parser with one subcommand per handler"""
        parser = argparse.ArgumentParser(
            prog="sim",
            description="Planar aerial manipulator pushing on inclined surfaces",
        )
        parser.add_argument("--log-level", default=None, help="override LOG_LEVEL")
        sub = parser.add_subparsers(dest="command", required=True)

        p_run = sub.add_parser("run", help="simulate one case")
        p_run.add_argument("case", help="case JSON file")
        p_run.add_argument("--out", default=Config.OUTPUT_PATH, help="output directory")
        p_run.add_argument("--csv", action="store_true", help="write the telemetry CSV")
        p_run.add_argument("--svg", action="store_true", help="write the telemetry chart")
        p_run.set_defaults(handler=run.run_command)

        p_table = sub.add_parser("table", help="run a directory of cases and compare them")
        p_table.add_argument("cases_dir", nargs="?", default=Config.CASES_PATH)
        p_table.add_argument("--out", default=Config.OUTPUT_PATH)
        p_table.add_argument("--workers", type=int, default=None, help="parallel processes")
        p_table.add_argument("--only", nargs="*", default=None, help="case names to run")
        p_table.set_defaults(handler=table.table_command)

        p_env = sub.add_parser("envelope", help="static force profiles over roll")
        p_env.add_argument("--betas", default=",".join(f"{b:g}" for b in DEFAULT_BETAS_DEG),
                           help="surface inclinations in degrees, comma separated")
        p_env.add_argument("--gt", type=float, required=True, help="total weight G_t in newtons")
        p_env.add_argument("--points", type=int, default=ENVELOPE_POINTS)
        p_env.add_argument("--out", default=Config.OUTPUT_PATH)
        p_env.set_defaults(handler=envelope.envelope_command)

        p_val = sub.add_parser("validate", help="check a case file")
        p_val.add_argument("case", help="case JSON file")
        p_val.set_defaults(handler=validate.validate_command)

        self.parser = parser
        return parser

    def run(self, argv: Optional[List[str]] = None) -> int:
        args = self.build_parser().parse_args(argv)
        setup_logger(level=args.log_level)

        try:
            self.config.validate()
        except ValueError as e:
            logger.error(f"Invalid configuration: {e}")
            return 2

        logger.debug(f"System: {get_system_info()}")
        return asyncio.run(args.handler(args))

def main(argv: Optional[List[str]] = None) -> int:
    return SimApp().run(argv)

if __name__ == "__main__":
    sys.exit(main())
