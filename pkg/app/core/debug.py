import functools
import inspect
import logging
import time
import traceback
import uuid

from .config import GARSIDE_LOG_FILE, GARSIDE_LOG_LEVEL

# Configure logging
_handlers = [logging.StreamHandler()]
if GARSIDE_LOG_FILE:
    _handlers.append(logging.FileHandler(GARSIDE_LOG_FILE))

logging.basicConfig(
    level=getattr(logging, GARSIDE_LOG_LEVEL),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=_handlers,
)
logger = logging.getLogger("garside")


def set_log_level(level: str) -> None:
    """Change the level of the root logger and the package logger at runtime."""
    numeric = getattr(logging, level.upper())
    logging.getLogger().setLevel(numeric)
    logger.setLevel(numeric)


def log_timing(func):
    """
    Decorator that logs start, elapsed time and failures of a heavy call.

    Works for plain functions and for coroutine functions (router handlers).
    Exceptions are logged with their traceback and re-raised unchanged.
    """
    def _start():
        call_id = str(uuid.uuid4())[:8]
        logger.debug(f"[{call_id}] Started: {func.__qualname__}")
        return call_id, time.perf_counter()

    def _failed(call_id, start_time, e):
        elapsed = time.perf_counter() - start_time
        logger.error(f"[{call_id}] Exception in {elapsed:.2f}s: {type(e).__name__}: {str(e)}")
        logger.debug(f"[{call_id}] Traceback: {traceback.format_exc()}")

    def _done(call_id, start_time):
        elapsed = time.perf_counter() - start_time
        logger.info(f"[{call_id}] {func.__qualname__} finished in {elapsed:.2f}s")

    if inspect.iscoroutinefunction(func):
        @functools.wraps(func)
        async def async_wrapper(*args, **kwargs):
            call_id, start_time = _start()
            try:
                result = await func(*args, **kwargs)
            except Exception as e:
                _failed(call_id, start_time, e)
                raise
            _done(call_id, start_time)
            return result

        return async_wrapper

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        call_id, start_time = _start()
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            _failed(call_id, start_time, e)
            raise
        _done(call_id, start_time)
        return result

    return wrapper
