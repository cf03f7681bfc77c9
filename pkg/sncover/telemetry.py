"""Logging and OpenTelemetry tracing setup."""

import logging
import os

from opentelemetry import trace

_tracing_ready = False
_logging_ready = False


def setup_tracing(console: bool | None = None) -> None:
    """Install an SDK tracer provider that prints spans to stdout.

    Without it spans go to the no-op provider. ``SNCOVER_TRACE_CONSOLE=1`` turns
    console export on.
    """
    global _tracing_ready
    if console is None:
        console = os.getenv("SNCOVER_TRACE_CONSOLE", "0") == "1"
    if _tracing_ready or not console:
        return
    from opentelemetry.sdk.resources import Resource
    from opentelemetry.sdk.trace import TracerProvider
    from opentelemetry.sdk.trace.export import ConsoleSpanExporter, SimpleSpanProcessor

    provider = TracerProvider(resource=Resource.create({"service.name": "sncover"}))
    provider.add_span_processor(SimpleSpanProcessor(ConsoleSpanExporter()))
    trace.set_tracer_provider(provider)
    _tracing_ready = True


def get_tracer():
    return trace.get_tracer("sncover")


def configure_logging(level: str = "WARNING") -> None:
    global _logging_ready
    if _logging_ready:
        logging.getLogger("sncover").setLevel(level.upper())
        return
    logging.basicConfig(
        level=logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger("sncover").setLevel(level.upper())
    _logging_ready = True
