"""Prompt execution over a dataset: caching, bounded concurrency, parsing."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from uoce.dataset import DatasetFile, PredictionEntry, PredictionsFile
from uoce.llm.backends import (
    AuthenticationError,
    Backend,
    CompletionError,
    HttpBackend,
    ModelConfig,
)
from uoce.llm.cache import ResponseCache, cache_key
from uoce.llm.output_parser import parse_model_output
from uoce.model import Diagnostic, Severity
from uoce.prompts import PromptConfig, PromptText, build_prompt


class RunError(RuntimeError):
    """Every request in a run failed."""


def complete(
    prompt: PromptText,
    cfg: ModelConfig,
    backend: Backend | None = None,
    cache: ResponseCache | None = None,
) -> str:
    """One completion, served from the cache when possible."""
    key = cache_key(cfg.model, prompt.text, cfg.temperature, cfg.max_new_tokens)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    backend = backend if backend is not None else HttpBackend()
    reply = backend.complete(prompt, cfg)
    if cache is not None:
        cache.put(key, reply)
    return reply


def run_eval(
    dataset: DatasetFile,
    prompt_cfg: PromptConfig,
    model_cfg: ModelConfig,
    backend: Backend | None = None,
    cache: ResponseCache | None = None,
    strict: bool = False,
) -> PredictionsFile:
    """Build a prompt per sentence, complete, parse, and collect predictions.

    Output order follows the dataset regardless of completion order. A failed
    request becomes an empty entry with an ERROR diagnostic; the run only
    raises when every request failed (or on an authentication error, which
    would fail them all anyway).
    """
    backend = backend if backend is not None else HttpBackend()
    records = dataset.records

    def work(index: int) -> tuple[PredictionEntry, bool]:
        record = records[index]
        prompt = build_prompt(prompt_cfg, record.text)
        try:
            raw = complete(prompt, model_cfg, backend, cache)
        except AuthenticationError:
            raise
        except CompletionError as exc:
            entry = PredictionEntry(
                tuples=(),
                raw=None,
                diagnostics=(
                    Diagnostic(Severity.ERROR, f"completion failed: {exc}"),
                ),
            )
            return entry, True
        tuples, diagnostics = parse_model_output(raw, strict=strict)
        return PredictionEntry(tuple(tuples), raw, tuple(diagnostics)), False

    results: list[tuple[PredictionEntry, bool] | None] = [None] * len(records)
    with ThreadPoolExecutor(max_workers=model_cfg.max_concurrent) as pool:
        futures = {pool.submit(work, i): i for i in range(len(records))}
        try:
            for future, index in futures.items():
                results[index] = future.result()
        except AuthenticationError:
            pool.shutdown(wait=False, cancel_futures=True)
            raise

    entries = []
    failures = 0
    for record, result in zip(records, results):
        entry, failed = result  # type: ignore[misc]
        failures += failed
        entries.append((record.id, entry))
    if records and failures == len(records):
        raise RunError(f"all {failures} requests failed; see endpoint settings")
    return PredictionsFile(entries=tuple(entries))
