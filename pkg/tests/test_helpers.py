"""
Helper utilities, logging setup and command guards
"""

import asyncio
import logging
from argparse import Namespace

import pytest

from middleware.guards import (
    EXIT_DID_NOT_ENGAGE, EXIT_DIVERGED, EXIT_FAILURE, EXIT_INVALID_CASE, EXIT_OK,
    exit_code_for, handle_errors, require_case,
)
from sim.errors import CaseValidationError, DidNotEngage, Diverged, NonFinite
from utils.helpers import (
    calculate_file_hash, format_duration, format_progress,
    get_system_info, parse_degree_list, sanitize_filename,
)
from utils.logger import LogProcessingTime, resident_memory_mb, setup_logger


class TestHelpers:

    def test_parse_degree_list(self):
        assert parse_degree_list("10, 30,60 ,80,90") == [10.0, 30.0, 60.0, 80.0, 90.0]
        assert parse_degree_list("-30,") == [-30.0]

    @pytest.mark.parametrize("text", ["", " , ", "10,abc"])
    def test_parse_degree_list_rejects(self, text):
        with pytest.raises(ValueError):
            parse_degree_list(text)

    @pytest.mark.parametrize("seconds,text", [(1.234, "1.23s"), (75, "1m 15s"), (187, "3m 07s"), (3725, "1h 02m")])
    def test_format_duration(self, seconds, text):
        assert format_duration(seconds) == text

    def test_format_progress(self):
        assert format_progress(5, 10, width=10) == "[#####.....] 50.0%"
        assert format_progress(0, 0, width=4) == "####"

    def test_sanitize_filename(self):
        assert sanitize_filename("case 1/a:b") == "case_1_a_b"
        assert sanitize_filename("...") == "case"

    def test_file_hash(self, tmp_path):
        path = tmp_path / "x.txt"
        path.write_bytes(b"abc")
        assert calculate_file_hash(str(path)) == (
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad")

    def test_system_info(self):
        info = get_system_info()
        assert info["cpu_count"] >= 1


class TestLogger:

    def test_file_handlers(self, tmp_path):
        log_file = tmp_path / "logs" / "sim.log"
        logger = setup_logger("uam-test", level="debug", log_file=str(log_file))
        assert logger.level == logging.DEBUG
        assert len(logger.handlers) == 3
        logger.error("boom")
        for handler in logger.handlers:
            handler.flush()
        assert "boom" in (tmp_path / "logs" / "sim_errors.log").read_text()
        for handler in logger.handlers:
            handler.close()
        logger.handlers.clear()

    def test_processing_time(self):
        with LogProcessingTime("unit", steps=10) as timer:
            sum(range(1000))
        assert timer.duration >= 0.0
        assert resident_memory_mb() > 0

    def test_processing_time_reports_step_rate(self, caplog):
        with caplog.at_level(logging.INFO, logger="performance"):
            with LogProcessingTime("run_case:unit", steps=500):
                sum(range(1000))
        assert "run_case:unit took" in caplog.text
        assert "for 500 steps (" in caplog.text
        assert "steps/s)" in caplog.text


class TestGuards:

    @pytest.mark.parametrize("error,code", [
        (CaseValidationError("x"), EXIT_INVALID_CASE),
        (DidNotEngage("x"), EXIT_DID_NOT_ENGAGE),
        (Diverged("x"), EXIT_DIVERGED),
        (NonFinite("x"), EXIT_FAILURE),
    ])
    def test_exit_codes(self, error, code):
        assert exit_code_for(error) == code

    def test_handle_errors(self):
        @handle_errors
        async def ok(args):
            return None

        @handle_errors
        async def diverges(args):
            raise Diverged("blew up")

        @handle_errors
        async def io(args):
            raise FileNotFoundError("missing.json")

        assert asyncio.run(ok(Namespace())) == EXIT_OK
        assert asyncio.run(diverges(Namespace())) == EXIT_DIVERGED
        assert asyncio.run(io(Namespace())) == EXIT_FAILURE

    def test_require_case(self, tmp_path):
        @handle_errors
        @require_case
        async def show(args, case):
            return 0 if case.name == "case3" else 1

        path = tmp_path / "c.json"
        path.write_text('{"name": "case3", "beta_deg": -60, "phi_d_deg": -10}')
        assert asyncio.run(show(Namespace(case=str(path)))) == EXIT_OK
        assert asyncio.run(show(Namespace(case=None))) == EXIT_INVALID_CASE

        path.write_text('{"name": "case3", "beta_deg": -60, "phi_d_deg": -70}')
        assert asyncio.run(show(Namespace(case=str(path)))) == EXIT_INVALID_CASE
