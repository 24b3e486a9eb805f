import os
import sys
import time
import logging
from contextlib import contextmanager, nullcontext
from typing import Optional, Dict, Any

from langfuse import Langfuse

from .config import LANGFUSE_BASE_URL, LOG_LEVEL

logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.WARNING),
    stream=sys.stderr,
    format='%(asctime)s - %(levelname)s - %(message)s'
)

logger = logging.getLogger(__name__)


def _init_client():
    """Langfuse v3 client from the environment; None means every span is a no-op."""
    try:
        public_key = os.getenv("LANGFUSE_PUBLIC_KEY")
        secret_key = os.getenv("LANGFUSE_SECRET_KEY")

        if public_key and secret_key:
            try:
                client = Langfuse(public_key=public_key, secret_key=secret_key, host=LANGFUSE_BASE_URL)
                logger.info(f"Langfuse client initialized for {LANGFUSE_BASE_URL}")
                return client
            except Exception as e:
                logger.error(f"Failed to initialize Langfuse client: {e}")
        else:
            logger.debug("Langfuse API keys not found. Tracing will use no-op implementations.")
    except Exception as e:
        logger.warning(f"Failed to initialize Langfuse client: {e}. Tracing will use no-op implementations.")
    return None


_langfuse = _init_client()


class _NoOpSpan:
    def __init__(self, name: str = None, input: Optional[Dict[str, Any]] = None, metadata: Optional[Dict[str, Any]] = None):
        self.name = name
        self.input = input
        self.metadata = metadata

    def update(self, *args, **kwargs):
        return None

    def update_trace(self, *args, **kwargs):
        return None


def _open_span(name: str, input_data: Dict[str, Any], metadata: Dict[str, Any]):
    """Context manager yielding a Langfuse span nested under the current one, or a no-op span."""
    if _langfuse is None:
        return nullcontext(_NoOpSpan(name=name, input=input_data, metadata=metadata))
    try:
        return _langfuse.start_as_current_span(name=name, input=input_data, metadata=metadata)
    except Exception as e:
        logger.warning(f"Failed to start Langfuse span {name}: {e}")
        return nullcontext(_NoOpSpan(name=name, input=input_data, metadata=metadata))


def _build_metadata(
    session_id: Optional[str] = None,
    tower_id: Optional[str] = None,
    engine_name: Optional[str] = None,
    extra: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    metadata: Dict[str, Any] = {}
    if session_id is not None:
        metadata["session_id"] = session_id
    if tower_id is not None:
        metadata["tower_id"] = tower_id
    if engine_name is not None:
        metadata["engine_name"] = engine_name
    if extra:
        metadata.update(extra)
    return metadata


def _safe_update(span, **kwargs) -> None:
    try:
        span.update(**kwargs)
    except Exception as e:
        logger.debug(f"span update failed: {e}")


@contextmanager
def traced_operation(
    name: str,
    input_data: Optional[Dict[str, Any]] = None,
    session_id: Optional[str] = None,
    tower_id: Optional[str] = None,
    engine_name: Optional[str] = None,
    extra_metadata: Optional[Dict[str, Any]] = None,
):
    """
    Wraps a unit of work in a Langfuse span.

    Captures:
    - input payload
    - latency (ms)
    - custom metadata: session_id, tower_id, engine_name
    - any explicit output passed via span.update(...)

    The session id and tower id are also written to the enclosing trace so a
    CLI run can be filtered by session in the dashboard.
    """
    start_time = time.time()
    metadata = _build_metadata(session_id, tower_id, engine_name, extra_metadata)

    with _open_span(name, input_data or {}, metadata) as span:
        try:
            span.update_trace(session_id=session_id, metadata={"tower_id": tower_id} if tower_id else None)
        except Exception as e:
            logger.debug(f"trace update failed: {e}")
        try:
            yield span
        except Exception as e:
            duration_ms = int((time.time() - start_time) * 1000)
            _safe_update(span, output={"error": str(e)}, level="ERROR", metadata={**metadata, "latency_ms": duration_ms})
            logger.debug(f"{name} failed after {duration_ms} ms: {e}")
            raise
        duration_ms = int((time.time() - start_time) * 1000)
        _safe_update(span, metadata={**metadata, "latency_ms": duration_ms})
        logger.debug(f"{name} finished in {duration_ms} ms")


def flush_langfuse() -> None:
    """
    Explicitly flush all pending Langfuse data to ensure it's sent.
    Call this at the end of the CLI run.
    """
    if _langfuse is not None:
        try:
            _langfuse.flush()
            logger.debug("Langfuse data flushed successfully")
        except Exception as e:
            logger.warning(f"Failed to flush Langfuse data: {e}")


def log_result_summary(span, summary: Dict[str, Any]) -> None:
    """
    Attach a small summary of an engine result (dimensions, counts) to a span.
    Tracing must never break the main flow.
    """
    try:
        if summary:
            span.update(metadata={"summary": summary})
    except Exception:
        return
