"""Tolerant parsing of raw model replies into opinion tuples."""

from __future__ import annotations

import json
from typing import Iterable

from uoce.model import (
    INTENSITY_VALUES,
    POLARITY_VALUES,
    REQUIRED_SLOTS,
    SLOT_ORDER,
    Diagnostic,
    OpinionTuple,
    Severity,
    Slot,
)

_SLOT_KEYS = {slot.value for slot in SLOT_ORDER}

#: Long-form key spellings models like to produce; accepted silently.
_KEY_ALIASES = {
    "aspect_term": "at",
    "aspect_category": "ac",
    "target_entity": "te",
    "sentiment_expression": "se",
    "sentiment_polarity": "sp",
    "sentiment_intensity": "si",
    "holder_span": "hs",
    "holder_entity": "he",
    "qualifier": "q",
    "reason": "r",
}


def format_opinions(opinions: Iterable[OpinionTuple]) -> str:
    """Render opinions as the canonical single-line JSON array."""
    return json.dumps([o.to_json() for o in opinions], ensure_ascii=False)


def _candidate_arrays(text: str) -> list[list]:
    """Every decodable JSON array in the text, in order of appearance."""
    decoder = json.JSONDecoder()
    found: list[list] = []
    index = text.find("[")
    while index != -1:
        try:
            value, end = decoder.raw_decode(text, index)
        except json.JSONDecodeError:
            index = text.find("[", index + 1)
            continue
        if isinstance(value, list):
            found.append(value)
            index = text.find("[", end)
        else:
            index = text.find("[", index + 1)
    return found


def _locate_array(raw: str) -> tuple[list | None, list[Diagnostic]]:
    stripped = raw.strip()
    try:
        whole = json.loads(stripped)
    except json.JSONDecodeError:
        whole = None
    if isinstance(whole, list):
        return whole, []
    if isinstance(whole, dict):
        return [whole], [
            Diagnostic(
                Severity.WARNING, "reply was a single JSON object, expected an array"
            )
        ]
    candidates = _candidate_arrays(raw)
    if not candidates:
        return None, []
    # prefer the first array that actually holds objects; bare arrays of
    # scalars are usually reference markers in surrounding prose
    for candidate in candidates:
        if candidate and all(isinstance(item, dict) for item in candidate):
            return candidate, []
    for candidate in candidates:
        if any(isinstance(item, dict) for item in candidate):
            return candidate, []
    return candidates[0], []


def parse_model_output(
    raw: str, strict: bool = False
) -> tuple[list[OpinionTuple], list[Diagnostic]]:
    """Extract opinion tuples from a raw reply.

    Surrounding prose and code fences are ignored; the first plausible JSON
    array is parsed. Tuples missing a required slot are always dropped with an
    ERROR; other findings (unknown keys, out-of-range polarity/intensity,
    coerced values) are recorded and, under ``strict``, also drop the tuple.
    Unparseable input yields no tuples and a single ERROR.
    """
    array, diagnostics = _locate_array(raw)
    if array is None:
        return [], [
            Diagnostic(Severity.ERROR, "no JSON array of opinions found in reply")
        ]

    opinions: list[OpinionTuple] = []
    for index, item in enumerate(array):
        if not isinstance(item, dict):
            diagnostics.append(
                Diagnostic(Severity.ERROR, f"reply[{index}] is not an object; skipped")
            )
            continue
        findings: list[Diagnostic] = []
        values: dict[str, str | None] = {}
        for key, value in item.items():
            slot_key = key if key in _SLOT_KEYS else _KEY_ALIASES.get(key)
            if slot_key is None:
                findings.append(
                    Diagnostic(
                        Severity.WARNING, f"reply[{index}]: unknown key {key!r} ignored"
                    )
                )
                continue
            if value is None or isinstance(value, str):
                values[slot_key] = value
            elif isinstance(value, (int, float)) and not isinstance(value, bool):
                values[slot_key] = str(value)
                findings.append(
                    Diagnostic(
                        Severity.WARNING,
                        f"reply[{index}]: value for '{slot_key}' coerced to string",
                        Slot(slot_key),
                    )
                )
            else:
                values[slot_key] = None
                findings.append(
                    Diagnostic(
                        Severity.ERROR,
                        f"reply[{index}]: value for '{slot_key}' is not a string; treated as absent",
                        Slot(slot_key),
                    )
                )
        opinion = OpinionTuple.from_json(values)
        slots = opinion.as_dict()
        missing = [s.value for s in SLOT_ORDER if s in REQUIRED_SLOTS and slots[s] is None]
        if missing:
            findings.append(
                Diagnostic(
                    Severity.ERROR,
                    f"reply[{index}]: missing required slots {', '.join(missing)}; tuple dropped",
                )
            )
            diagnostics.extend(findings)
            continue
        if slots[Slot.SP] not in POLARITY_VALUES:
            findings.append(
                Diagnostic(
                    Severity.ERROR,
                    f"reply[{index}]: polarity {slots[Slot.SP]!r} outside the enumeration",
                    Slot.SP,
                )
            )
        if slots[Slot.SI] not in INTENSITY_VALUES:
            findings.append(
                Diagnostic(
                    Severity.ERROR,
                    f"reply[{index}]: intensity {slots[Slot.SI]!r} outside the enumeration",
                    Slot.SI,
                )
            )
        diagnostics.extend(findings)
        if strict and findings:
            continue
        opinions.append(opinion)
    return opinions, diagnostics
