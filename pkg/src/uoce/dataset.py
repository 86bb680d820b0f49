"""Dataset and prediction file I/O.

A dataset is one JSON document: ``{"format_version": "1", "records": [...]}``
where each record is ``{id, domain, text, opinions: [{ten short slot keys}]}``
and "N/A" marks an absent slot. Predictions travel as JSON lines: a header
``{"format_version": "1"}`` followed by one
``{id, tuples, raw?, diagnostics}`` object per sentence, keeping the raw model
output so scoring can be re-run after parser changes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Mapping

from uoce.model import (
    DOMAINS,
    SLOT_ORDER,
    Diagnostic,
    OpinionTuple,
    SentenceRecord,
    Severity,
    Slot,
    validate_tuple,
)

FORMAT_VERSION = "1"

_DOMAIN_BY_FOLD = {d.casefold(): d for d in DOMAINS}
_SLOT_KEYS = tuple(slot.value for slot in SLOT_ORDER)


class DatasetError(ValueError):
    """A structural or validation failure, located by record id / JSON path."""


@dataclass(frozen=True)
class DatasetFile:
    """A validated, normalized evaluation dataset."""

    records: tuple[SentenceRecord, ...]
    name: str | None = None
    version: str | None = None
    license_note: str | None = None

    def ids(self) -> list[str]:
        return [record.id for record in self.records]

    def by_id(self) -> dict[str, SentenceRecord]:
        return {record.id: record for record in self.records}

    def gold_sets(self) -> dict[str, list[OpinionTuple]]:
        return {record.id: list(record.opinions) for record in self.records}


@dataclass(frozen=True)
class DatasetStats:
    """Corpus counts: sentences, opinions, per-slot totals and unique values."""

    sentence_count: int
    opinion_count: int
    slot_totals: Mapping[Slot, int]
    slot_uniques: Mapping[Slot, int]


@dataclass(frozen=True)
class PredictionEntry:
    """Predicted opinions for one sentence, with provenance."""

    tuples: tuple[OpinionTuple, ...] = ()
    raw: str | None = None
    diagnostics: tuple[Diagnostic, ...] = ()


@dataclass(frozen=True)
class PredictionsFile:
    """Per-sentence predictions in dataset order."""

    entries: tuple[tuple[str, PredictionEntry], ...] = ()

    def ids(self) -> list[str]:
        return [sid for sid, _ in self.entries]

    def by_id(self) -> dict[str, PredictionEntry]:
        return {sid: entry for sid, entry in self.entries}

    def prediction_sets(self) -> dict[str, list[OpinionTuple]]:
        return {sid: list(entry.tuples) for sid, entry in self.entries}


def _read_text(source: str | Path | IO) -> str:
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8")
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _parse_opinion(raw: object, where: str) -> OpinionTuple:
    if not isinstance(raw, dict):
        raise DatasetError(f"{where}: opinion must be an object")
    unknown = sorted(set(raw) - set(_SLOT_KEYS))
    if unknown:
        raise DatasetError(f"{where}: unknown slot keys {unknown}")
    for key, value in raw.items():
        if not isinstance(value, str):
            raise DatasetError(f"{where}.{key}: slot values must be strings")
    opinion = OpinionTuple.from_json(raw)
    return opinion


def _parse_record(raw: object, where: str) -> SentenceRecord:
    if not isinstance(raw, dict):
        raise DatasetError(f"{where}: record must be an object")
    for key in ("id", "domain", "text"):
        if key not in raw:
            raise DatasetError(f"{where}: missing key '{key}'")
        if not isinstance(raw[key], str):
            raise DatasetError(f"{where}.{key}: must be a string")
    domain = _DOMAIN_BY_FOLD.get(raw["domain"].strip().casefold())
    if domain is None:
        raise DatasetError(
            f"{where}.domain: {raw['domain']!r} is not one of {', '.join(DOMAINS)}"
        )
    opinions_raw = raw.get("opinions", [])
    if not isinstance(opinions_raw, list):
        raise DatasetError(f"{where}.opinions: must be an array")
    opinions = tuple(
        _parse_opinion(o, f"{where}.opinions[{k}]") for k, o in enumerate(opinions_raw)
    )
    return SentenceRecord(id=raw["id"], domain=domain, text=raw["text"], opinions=opinions)


def loads_dataset(text: str) -> DatasetFile:
    """Parse and fully validate a dataset document.

    Raises DatasetError on structural problems, duplicate ids, or any gold
    tuple with ERROR-level diagnostics. Span warnings do not block loading.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(document, dict) or "records" not in document:
        raise DatasetError("dataset must be an object with a 'records' array")
    version = document.get("format_version")
    if version != FORMAT_VERSION:
        raise DatasetError(f"unsupported format_version {version!r}, expected '1'")
    records_raw = document["records"]
    if not isinstance(records_raw, list):
        raise DatasetError("'records' must be an array")

    records = []
    seen: set[str] = set()
    for index, raw in enumerate(records_raw):
        record = _parse_record(raw, f"records[{index}]")
        if record.id in seen:
            raise DatasetError(f"records[{index}]: duplicate id '{record.id}'")
        seen.add(record.id)
        for k, opinion in enumerate(record.opinions):
            errors = [
                d
                for d in validate_tuple(opinion, record.text)
                if d.severity is Severity.ERROR
            ]
            if errors:
                raise DatasetError(
                    f"records[{index}].opinions[{k}] (id '{record.id}'): "
                    + "; ".join(d.message for d in errors)
                )
        records.append(record)
    return DatasetFile(
        records=tuple(records),
        name=document.get("name"),
        version=document.get("version"),
        license_note=document.get("license_note"),
    )


def load_dataset(source: str | Path | IO) -> DatasetFile:
    return loads_dataset(_read_text(source))


def dumps_dataset(dataset: DatasetFile) -> str:
    document: dict[str, object] = {"format_version": FORMAT_VERSION}
    for key in ("name", "version", "license_note"):
        value = getattr(dataset, key)
        if value is not None:
            document[key] = value
    document["records"] = [
        {
            "id": record.id,
            "domain": record.domain,
            "text": record.text,
            "opinions": [opinion.to_json() for opinion in record.opinions],
        }
        for record in dataset.records
    ]
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def save_dataset(dataset: DatasetFile, sink: str | Path) -> None:
    Path(sink).write_text(dumps_dataset(dataset), encoding="utf-8")


def scan_dataset(text: str) -> tuple[DatasetFile | None, list[str]]:
    """Lenient validation pass for reporting: returns (dataset if loadable,
    human-readable diagnostic lines including warnings)."""
    findings: list[str] = []
    try:
        dataset = loads_dataset(text)
    except DatasetError as exc:
        return None, [f"ERROR: {exc}"]
    for record in dataset.records:
        for k, opinion in enumerate(record.opinions):
            for diag in validate_tuple(opinion, record.text):
                findings.append(f"{diag.severity.value} [{record.id}#{k}]: {diag.message}")
    return dataset, findings


def dataset_stats(dataset: DatasetFile) -> DatasetStats:
    """Sentence/opinion counts plus per-slot present totals and distinct
    normalized values."""
    totals = {slot: 0 for slot in SLOT_ORDER}
    values: dict[Slot, set[str]] = {slot: set() for slot in SLOT_ORDER}
    opinion_count = 0
    for record in dataset.records:
        for opinion in record.opinions:
            opinion_count += 1
            for slot, value in opinion.present_items():
                totals[slot] += 1
                values[slot].add(value)
    return DatasetStats(
        sentence_count=len(dataset.records),
        opinion_count=opinion_count,
        slot_totals=totals,
        slot_uniques={slot: len(found) for slot, found in values.items()},
    )


def _diagnostic_to_json(diag: Diagnostic) -> dict[str, str]:
    out = {"severity": diag.severity.value, "message": diag.message}
    if diag.slot is not None:
        out["slot"] = diag.slot.value
    return out


def _diagnostic_from_json(raw: object, where: str) -> Diagnostic:
    if not isinstance(raw, dict) or "severity" not in raw or "message" not in raw:
        raise DatasetError(f"{where}: diagnostic needs 'severity' and 'message'")
    try:
        severity = Severity(raw["severity"])
    except ValueError:
        raise DatasetError(f"{where}: bad severity {raw['severity']!r}") from None
    slot = None
    if "slot" in raw:
        try:
            slot = Slot(raw["slot"])
        except ValueError:
            raise DatasetError(f"{where}: bad slot {raw['slot']!r}") from None
    return Diagnostic(severity=severity, message=str(raw["message"]), slot=slot)


def dumps_predictions(predictions: PredictionsFile) -> str:
    lines = [json.dumps({"format_version": FORMAT_VERSION})]
    for sid, entry in predictions.entries:
        payload: dict[str, object] = {
            "id": sid,
            "tuples": [t.to_json() for t in entry.tuples],
        }
        if entry.raw is not None:
            payload["raw"] = entry.raw
        payload["diagnostics"] = [_diagnostic_to_json(d) for d in entry.diagnostics]
        lines.append(json.dumps(payload, ensure_ascii=False))
    return "\n".join(lines) + "\n"


def write_predictions(predictions: PredictionsFile, sink: str | Path) -> None:
    Path(sink).write_text(dumps_predictions(predictions), encoding="utf-8")


def loads_predictions(text: str, dataset: DatasetFile | None = None) -> PredictionsFile:
    """Parse prediction lines; with a dataset given, ids must belong to it."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise DatasetError("empty predictions file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise DatasetError(f"invalid JSON header: {exc.msg}") from None
    if not isinstance(header, dict) or header.get("format_version") != FORMAT_VERSION:
        raise DatasetError("first line must be the header {\"format_version\": \"1\"}")

    known = set(dataset.ids()) if dataset is not None else None
    entries: list[tuple[str, PredictionEntry]] = []
    seen: set[str] = set()
    for number, line in enumerate(lines[1:], start=2):
        where = f"line {number}"
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DatasetError(f"{where}: invalid JSON: {exc.msg}") from None
        if not isinstance(raw, dict) or "id" not in raw:
            raise DatasetError(f"{where}: prediction record needs an 'id'")
        sid = raw["id"]
        if sid in seen:
            raise DatasetError(f"{where}: duplicate id '{sid}'")
        seen.add(sid)
        if known is not None and sid not in known:
            raise DatasetError(f"{where}: id '{sid}' not present in the dataset")
        tuples_raw = raw.get("tuples", [])
        if not isinstance(tuples_raw, list):
            raise DatasetError(f"{where}.tuples: must be an array")
        tuples = tuple(
            _parse_opinion(t, f"{where}.tuples[{k}]") for k, t in enumerate(tuples_raw)
        )
        raw_reply = raw.get("raw")
        if raw_reply is not None and not isinstance(raw_reply, str):
            raise DatasetError(f"{where}.raw: must be a string when present")
        diagnostics = tuple(
            _diagnostic_from_json(d, f"{where}.diagnostics[{k}]")
            for k, d in enumerate(raw.get("diagnostics", []))
        )
        entries.append(
            (sid, PredictionEntry(tuples=tuples, raw=raw_reply, diagnostics=diagnostics))
        )
    return PredictionsFile(entries=tuple(entries))


def read_predictions(
    source: str | Path | IO, dataset: DatasetFile | None = None
) -> PredictionsFile:
    return loads_predictions(_read_text(source), dataset)
