"""Run-configuration files (TOML or JSON) for the run and sweep commands."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

from uoce.dataset import DatasetFile
from uoce.kg import SerializationFormat
from uoce.llm import Backend, HttpBackend, MockBackend, ModelConfig
from uoce.prompts import (
    ORDERINGS,
    PromptConfig,
    PromptKind,
    default_definitions,
    default_examples,
)

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

ALL_FORMATS = tuple(sorted(SerializationFormat, key=lambda f: f.value))


class RunConfigError(ValueError):
    """An unusable run-configuration file."""


@dataclass(frozen=True)
class ModelSpec:
    """One model entry: generation settings plus how to reach it."""

    config: ModelConfig
    backend_kind: str = "http"  # http | mock
    replies_path: Path | None = None
    default_reply: str = "[]"

    @property
    def name(self) -> str:
        return self.config.model


@dataclass(frozen=True)
class RunSettings:
    """Parsed run configuration: the prompt recipe, sweep axis and models."""

    kind: PromptKind
    ordering: str
    onto_format: SerializationFormat | None
    orderings: tuple[str, ...]
    formats: tuple[SerializationFormat, ...]
    definitions_text: str
    examples: tuple[tuple[str, str], ...]
    models: tuple[ModelSpec, ...]

    def variants(self) -> tuple[str, ...]:
        """Sweep axis labels: block orderings for nl, format names for onto."""
        if self.kind is PromptKind.NL:
            return self.orderings
        return tuple(f.value for f in self.formats)

    def prompt_config(self, variant: str | None = None) -> PromptConfig:
        """The prompt config for one variant (None = the configured default)."""
        if self.kind is PromptKind.NL:
            ordering = variant or self.ordering
            return PromptConfig(
                kind=PromptKind.NL,
                ordering=ordering,
                examples=self.examples,
                definitions_text=self.definitions_text,
            )
        onto_format = SerializationFormat(variant) if variant else self.onto_format
        if onto_format is None:
            raise RunConfigError("onto prompts need 'onto_format' in [prompt]")
        return PromptConfig(
            kind=PromptKind.ONTO,
            ordering=self.ordering,
            onto_format=onto_format,
            examples=self.examples,
        )


def _load_document(path: Path) -> dict:
    text = path.read_text(encoding="utf-8")
    try:
        if path.suffix.lower() == ".json":
            document = json.loads(text)
        else:
            document = tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise RunConfigError(f"{path}: {exc}") from None
    if not isinstance(document, dict):
        raise RunConfigError(f"{path}: top level must be a table/object")
    return document


def _load_examples(path: Path) -> tuple[tuple[str, str], ...]:
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        return tuple((item["input"], item["output"]) for item in raw)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise RunConfigError(f"cannot read examples from {path}: {exc}") from None


def _model_spec(raw: dict, base_dir: Path, where: str) -> ModelSpec:
    if "name" not in raw:
        raise RunConfigError(f"{where}: every model needs a 'name'")
    known = {
        "name", "backend", "endpoint", "api_key_env", "temperature",
        "max_new_tokens", "timeout", "max_retries", "max_concurrent",
        "retry_backoff", "replies_path", "default_reply",
    }
    unknown = sorted(set(raw) - known)
    if unknown:
        raise RunConfigError(f"{where}: unknown keys {unknown}")
    backend_kind = raw.get("backend", "http")
    if backend_kind not in ("http", "mock"):
        raise RunConfigError(f"{where}: backend must be 'http' or 'mock'")
    config_kwargs = {
        key: raw[key]
        for key in (
            "endpoint", "api_key_env", "temperature", "max_new_tokens",
            "timeout", "max_retries", "max_concurrent", "retry_backoff",
        )
        if key in raw
    }
    try:
        config = ModelConfig(model=raw["name"], **config_kwargs)
    except (TypeError, ValueError) as exc:
        raise RunConfigError(f"{where}: {exc}") from None
    replies_path = (
        (base_dir / raw["replies_path"]).resolve() if "replies_path" in raw else None
    )
    return ModelSpec(
        config=config,
        backend_kind=backend_kind,
        replies_path=replies_path,
        default_reply=raw.get("default_reply", "[]"),
    )


def load_run_config(path: str | Path) -> RunSettings:
    """Parse a TOML (default) or JSON run configuration.

    Relative paths inside the file resolve against the file's directory.
    """
    path = Path(path)
    document = _load_document(path)
    base_dir = path.parent

    prompt_raw = document.get("prompt", {})
    if not isinstance(prompt_raw, dict):
        raise RunConfigError("[prompt] must be a table")
    try:
        kind = PromptKind(prompt_raw.get("kind", "nl"))
    except ValueError:
        raise RunConfigError(
            f"prompt.kind must be 'nl' or 'onto', got {prompt_raw.get('kind')!r}"
        ) from None
    ordering = prompt_raw.get("ordering", "DEF")
    if ordering not in ORDERINGS:
        raise RunConfigError(f"prompt.ordering must be one of {ORDERINGS}")

    onto_format = None
    if "onto_format" in prompt_raw:
        try:
            onto_format = SerializationFormat(prompt_raw["onto_format"])
        except ValueError:
            raise RunConfigError(
                f"prompt.onto_format must be one of "
                f"{[f.value for f in ALL_FORMATS]}"
            ) from None

    orderings_raw = prompt_raw.get("orderings", list(ORDERINGS))
    bad = [o for o in orderings_raw if o not in ORDERINGS]
    if bad:
        raise RunConfigError(f"prompt.orderings has invalid entries {bad}")
    formats_raw = prompt_raw.get("formats", [f.value for f in ALL_FORMATS])
    try:
        formats = tuple(SerializationFormat(f) for f in formats_raw)
    except ValueError:
        raise RunConfigError(f"prompt.formats has invalid entries in {formats_raw}") from None

    definitions_text = default_definitions()
    if "definitions_path" in prompt_raw:
        definitions_text = (base_dir / prompt_raw["definitions_path"]).read_text("utf-8")
    examples = default_examples()
    if "examples_path" in prompt_raw:
        examples = _load_examples(base_dir / prompt_raw["examples_path"])

    models_raw = document.get("models", [])
    if not isinstance(models_raw, list) or not models_raw:
        raise RunConfigError("at least one [[models]] entry is required")
    models = tuple(
        _model_spec(m, base_dir, f"models[{i}]") for i, m in enumerate(models_raw)
    )
    names = [m.name for m in models]
    if len(set(names)) != len(names):
        raise RunConfigError("model names must be unique")

    return RunSettings(
        kind=kind,
        ordering=ordering,
        onto_format=onto_format,
        orderings=tuple(orderings_raw),
        formats=formats,
        definitions_text=definitions_text,
        examples=examples,
        models=models,
    )


def make_backend(spec: ModelSpec, dataset: DatasetFile) -> Backend:
    """Instantiate the backend for a model entry.

    Mock replies files map sentence ids to raw reply text; the mock backend
    itself matches on query text, so the id mapping is resolved against the
    dataset here.
    """
    if spec.backend_kind == "http":
        return HttpBackend()
    replies: dict[str, str] = {}
    if spec.replies_path is not None:
        try:
            by_id = json.loads(spec.replies_path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise RunConfigError(
                f"cannot read mock replies from {spec.replies_path}: {exc}"
            ) from None
        by_record = dataset.by_id()
        unknown = sorted(set(by_id) - set(by_record))
        if unknown:
            raise RunConfigError(f"mock replies reference unknown ids {unknown}")
        replies = {by_record[sid].text: reply for sid, reply in by_id.items()}
    return MockBackend(replies=replies, default_reply=spec.default_reply)
