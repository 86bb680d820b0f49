"""LLM execution harness: backends, caching, output parsing, dataset runs."""

from uoce.llm.backends import (
    AuthenticationError,
    Backend,
    CompletionError,
    HttpBackend,
    MockBackend,
    ModelConfig,
    TransportError,
    query_of,
)
from uoce.llm.cache import ResponseCache, cache_key
from uoce.llm.output_parser import format_opinions, parse_model_output
from uoce.llm.runner import RunError, complete, run_eval

__all__ = [
    "AuthenticationError",
    "Backend",
    "CompletionError",
    "HttpBackend",
    "MockBackend",
    "ModelConfig",
    "ResponseCache",
    "RunError",
    "TransportError",
    "cache_key",
    "complete",
    "format_opinions",
    "parse_model_output",
    "query_of",
    "run_eval",
]
