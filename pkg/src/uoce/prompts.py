"""Prompt construction from composable blocks.

A prompt is built from three reorderable blocks - Definitions (D), in-context
Examples (E) and Format guidelines (F) - followed by a fixed Query block that
always sits last. Natural-language prompts describe the ten opinion
components in prose; ontology prompts put a serialization of the concept
schema in the D slot instead, byte-for-byte equal to the standalone
serializer output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources

from uoce.kg import SerializationFormat, build_uoc_schema, serialize_graph

BLOCK_D = "D"
BLOCK_E = "E"
BLOCK_F = "F"
BLOCK_QUERY = "Query"

#: The six block orderings, in canonical (alphabetical) order.
ORDERINGS = ("DEF", "DFE", "EDF", "EFD", "FDE", "FED")

#: Blocks are joined by this separator, which belongs to no block span.
BLOCK_SEPARATOR = "\n\n"

#: Fixed cue that ends every prompt and starts generation.
GENERATION_CUE = "Output:"

_OUTPUT_SCHEMA = """\
Reply with a JSON array and nothing else: no prose, no code fences.
Each array element is one opinion, an object with exactly these ten keys:
"at", "ac", "te", "se", "sp", "si", "hs", "he", "q", "r".
Use the string "N/A" for every component that is absent from the text.
"sp" must be one of "positive", "negative" or "neutral"; "si" must be one of
"weak", "average" or "strong". If the text expresses no opinion, reply [].
A well-formed reply looks like:
[{"at": "N/A", "ac": "price", "te": "camera", "se": "worth every cent", "sp": "positive", "si": "strong", "hs": "N/A", "he": "author", "q": "N/A", "r": "N/A"}]"""


class PromptConfigError(ValueError):
    """An invalid prompt configuration."""


class PromptKind(str, Enum):
    NL = "nl"
    ONTO = "onto"


def canonical_output_schema() -> str:
    """The F block: output layout instructions with an embedded example that
    parses cleanly. Byte-stable across runs."""
    return _OUTPUT_SCHEMA


@lru_cache(maxsize=1)
def default_definitions() -> str:
    return (
        resources.files("uoce.resources").joinpath("definitions.txt").read_text("utf-8")
    )


@lru_cache(maxsize=1)
def default_examples() -> tuple[tuple[str, str], ...]:
    """Two bundled synthetic in-context examples (one with qualifier and
    reason, one without); none are drawn from any evaluation data."""
    raw = json.loads(
        resources.files("uoce.resources")
        .joinpath("default_examples.json")
        .read_text("utf-8")
    )
    return tuple((item["input"], item["output"]) for item in raw)


@dataclass(frozen=True)
class PromptConfig:
    """Settings for one prompt variant.

    ``definitions_text`` only applies to natural-language prompts; ontology
    prompts ignore it and require ``onto_format`` instead.
    """

    kind: PromptKind = PromptKind.NL
    ordering: str = "DEF"
    onto_format: SerializationFormat | None = None
    examples: tuple[tuple[str, str], ...] = field(default_factory=default_examples)
    definitions_text: str = field(default_factory=default_definitions)

    def __post_init__(self) -> None:
        if sorted(self.ordering) != ["D", "E", "F"]:
            raise PromptConfigError(
                f"ordering must be a permutation of D, E, F; got {self.ordering!r}"
            )
        if not self.examples:
            raise PromptConfigError("at least one in-context example is required")
        if self.kind is PromptKind.NL and not self.definitions_text.strip():
            raise PromptConfigError("natural-language prompts need definitions text")
        if self.kind is PromptKind.ONTO and self.onto_format is None:
            raise PromptConfigError("ontology prompts need an onto_format")


@dataclass(frozen=True)
class PromptText:
    """Assembled prompt with the source block of every character range.

    ``spans`` lists (block name, start, end) for the block payloads in
    document order; consecutive spans are separated by BLOCK_SEPARATOR and the
    Query block is always the final span.
    """

    text: str
    spans: tuple[tuple[str, int, int], ...]

    def block_text(self, name: str) -> str:
        for block, start, end in self.spans:
            if block == name:
                return self.text[start:end]
        raise KeyError(f"no block named {name!r}")

    def block_order(self) -> tuple[str, ...]:
        return tuple(name for name, _, _ in self.spans)


def _examples_block(examples: tuple[tuple[str, str], ...]) -> str:
    return BLOCK_SEPARATOR.join(
        f"Input: {text}\n{GENERATION_CUE} {expected}" for text, expected in examples
    )


def _query_block(query_text: str) -> str:
    return f"Input: {query_text}\n{GENERATION_CUE}"


@lru_cache(maxsize=None)
def _schema_serialization(fmt: SerializationFormat) -> str:
    return serialize_graph(build_uoc_schema(), fmt)


def _assemble(blocks: dict[str, str], ordering: str, query_text: str) -> PromptText:
    parts: list[tuple[str, str]] = [(name, blocks[name]) for name in ordering]
    parts.append((BLOCK_QUERY, _query_block(query_text)))
    spans: list[tuple[str, int, int]] = []
    pieces: list[str] = []
    cursor = 0
    for index, (name, payload) in enumerate(parts):
        if index:
            pieces.append(BLOCK_SEPARATOR)
            cursor += len(BLOCK_SEPARATOR)
        spans.append((name, cursor, cursor + len(payload)))
        pieces.append(payload)
        cursor += len(payload)
    return PromptText(text="".join(pieces), spans=tuple(spans))


def build_nl_prompt(cfg: PromptConfig, query_text: str) -> PromptText:
    """Definitions, examples and format guidelines in the configured order,
    with the query last."""
    if cfg.kind is not PromptKind.NL:
        raise PromptConfigError("build_nl_prompt needs a config with kind 'nl'")
    blocks = {
        BLOCK_D: cfg.definitions_text,
        BLOCK_E: _examples_block(cfg.examples),
        BLOCK_F: canonical_output_schema(),
    }
    return _assemble(blocks, cfg.ordering, query_text)


def build_onto_prompt(cfg: PromptConfig, query_text: str) -> PromptText:
    """Same structure as the natural-language prompt, but the D block is the
    schema serialized in ``cfg.onto_format``."""
    if cfg.kind is not PromptKind.ONTO:
        raise PromptConfigError("build_onto_prompt needs a config with kind 'onto'")
    assert cfg.onto_format is not None  # guaranteed by PromptConfig
    blocks = {
        BLOCK_D: _schema_serialization(cfg.onto_format),
        BLOCK_E: _examples_block(cfg.examples),
        BLOCK_F: canonical_output_schema(),
    }
    return _assemble(blocks, cfg.ordering, query_text)


def build_prompt(cfg: PromptConfig, query_text: str) -> PromptText:
    """Dispatch on the configured prompt kind."""
    if cfg.kind is PromptKind.NL:
        return build_nl_prompt(cfg, query_text)
    return build_onto_prompt(cfg, query_text)
