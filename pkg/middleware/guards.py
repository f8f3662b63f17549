"""
Command guards: case loading/validation and error-to-exit-code mapping
"""

import logging
from argparse import Namespace
from functools import wraps

from harness.case_store import CaseStore
from sim.errors import CaseValidationError, DidNotEngage, Diverged, SimulationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID_CASE = 2
EXIT_DID_NOT_ENGAGE = 3
EXIT_DIVERGED = 4


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, CaseValidationError):
        return EXIT_INVALID_CASE
    if isinstance(error, DidNotEngage):
        return EXIT_DID_NOT_ENGAGE
    if isinstance(error, Diverged):
        return EXIT_DIVERGED
    return EXIT_FAILURE


def handle_errors(func):
    """Decorator turning simulator and I/O errors into logged exit codes"""
    @wraps(func)
    async def wrapper(args: Namespace, *a, **kwargs) -> int:
        try:
            result = await func(args, *a, **kwargs)
            return EXIT_OK if result is None else result
        except SimulationError as e:
            code = exit_code_for(e)
            logger.error(f"{type(e).__name__}: {e} (exit {code})")
            return code
        except ValueError as e:
            logger.error(f"Invalid input: {e}")
            return EXIT_INVALID_CASE
        except OSError as e:
            logger.error(f"I/O error in {func.__name__}: {e}")
            return EXIT_FAILURE

    return wrapper


def require_case(func):
    """Decorator loading and validating the case file named by args.case"""
    @wraps(func)
    async def wrapper(args: Namespace, *a, **kwargs):
        path = getattr(args, "case", None)
        if not path:
            raise CaseValidationError("no case file given")
        case = CaseStore.load(path)
        return await func(args, case, *a, **kwargs)

    return wrapper
