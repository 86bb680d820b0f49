"""Ten-slot opinion data model: normalization, task projections, validation."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum
from typing import Mapping


class Slot(str, Enum):
    """Opinion components, keyed by their short wire names."""

    AT = "at"  # aspect term
    AC = "ac"  # aspect category
    TE = "te"  # target entity
    SE = "se"  # sentiment expression
    SP = "sp"  # sentiment polarity
    SI = "si"  # sentiment intensity
    HS = "hs"  # holder span
    HE = "he"  # holder entity
    Q = "q"  # qualifier
    R = "r"  # reason


SLOT_ORDER: tuple[Slot, ...] = (
    Slot.AT,
    Slot.AC,
    Slot.TE,
    Slot.SE,
    Slot.SP,
    Slot.SI,
    Slot.HS,
    Slot.HE,
    Slot.Q,
    Slot.R,
)

#: Slots that must carry a value in well-formed gold data.
REQUIRED_SLOTS = frozenset({Slot.AC, Slot.TE, Slot.SP, Slot.SI, Slot.HE})

#: Slots whose values are verbatim spans of the source text (all optional).
SPAN_SLOTS = frozenset({Slot.AT, Slot.SE, Slot.HS, Slot.Q, Slot.R})

POLARITY_VALUES = ("positive", "negative", "neutral")
INTENSITY_VALUES = ("weak", "average", "strong")  # ordered weakest to strongest
INTENSITY_RANK = {value: rank for rank, value in enumerate(INTENSITY_VALUES, start=1)}

DOMAINS = ("Books", "Clothing", "Hotel", "Restaurant", "Laptop")

#: Canonical spelling of an absent slot in files and model output.
ABSENT_MARKER = "N/A"

_ABSENT_SPELLINGS = frozenset({"", "n/a", "na", "none"})

_SLOT_FIELDS: dict[Slot, str] = {
    Slot.AT: "aspect_term",
    Slot.AC: "aspect_category",
    Slot.TE: "target_entity",
    Slot.SE: "sentiment_expression",
    Slot.SP: "sentiment_polarity",
    Slot.SI: "sentiment_intensity",
    Slot.HS: "holder_span",
    Slot.HE: "holder_entity",
    Slot.Q: "qualifier",
    Slot.R: "reason",
}


class Severity(str, Enum):
    ERROR = "ERROR"
    WARNING = "WARNING"


@dataclass(frozen=True)
class Diagnostic:
    """A single validation or parsing finding."""

    severity: Severity
    message: str
    slot: Slot | None = None

    def __str__(self) -> str:
        where = f" [{self.slot.value}]" if self.slot is not None else ""
        return f"{self.severity.value}{where}: {self.message}"


def normalize_text(raw: str) -> str:
    """NFC-normalize, casefold and collapse whitespace runs to single spaces.

    The second NFC pass keeps the result a fixpoint: casefolding and
    whitespace collapsing can denormalize otherwise.
    """
    text = unicodedata.normalize("NFC", raw)
    text = unicodedata.normalize("NFC", text.casefold())
    return unicodedata.normalize("NFC", " ".join(text.split()))


def normalize_value(raw: str | None) -> str | None:
    """Normalize a slot value; null spellings ("", "n/a", "na", "none") become None."""
    if raw is None:
        return None
    text = normalize_text(raw)
    return None if text in _ABSENT_SPELLINGS else text


@dataclass(frozen=True)
class OpinionTuple:
    """One opinion with ten semantically typed slots.

    Absent optional slots are ``None``. Values are expected to be normalized
    (see :func:`normalize_value`); :meth:`from_json` normalizes on the way in.
    """

    aspect_term: str | None = None
    aspect_category: str | None = None
    target_entity: str | None = None
    sentiment_expression: str | None = None
    sentiment_polarity: str | None = None
    sentiment_intensity: str | None = None
    holder_span: str | None = None
    holder_entity: str | None = None
    qualifier: str | None = None
    reason: str | None = None

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> "OpinionTuple":
        """Build a normalized tuple from a mapping with the short slot keys.

        Missing keys count as absent. Values must be strings or None.
        """
        kwargs: dict[str, str | None] = {}
        for slot in SLOT_ORDER:
            raw = data.get(slot.value)
            if raw is not None and not isinstance(raw, str):
                raise TypeError(
                    f"slot '{slot.value}' must be a string or null, got {type(raw).__name__}"
                )
            kwargs[_SLOT_FIELDS[slot]] = normalize_value(raw)
        return cls(**kwargs)

    def to_json(self) -> dict[str, str]:
        """Render as a mapping with the ten short keys, absent slots as "N/A"."""
        return {
            slot.value: (value if value is not None else ABSENT_MARKER)
            for slot, value in self.as_dict().items()
        }

    def as_dict(self) -> dict[Slot, str | None]:
        return {slot: getattr(self, _SLOT_FIELDS[slot]) for slot in SLOT_ORDER}

    def present_items(self) -> tuple[tuple[Slot, str], ...]:
        """The (slot, value) pairs for slots that carry a value."""
        return tuple(
            (slot, value) for slot, value in self.as_dict().items() if value is not None
        )


@dataclass(frozen=True)
class SentenceRecord:
    """An input sentence with its identifier, domain label and opinions."""

    id: str
    domain: str
    text: str
    opinions: tuple[OpinionTuple, ...] = ()


class TaskKind(str, Enum):
    """Extraction task determining which slots are in play."""

    UOCE = "uoce"
    ACOS = "acos"
    ASTE = "aste"

    @property
    def slots(self) -> tuple[Slot, ...]:
        return _TASK_SLOTS[self]


_TASK_SLOTS: dict[TaskKind, tuple[Slot, ...]] = {
    TaskKind.UOCE: SLOT_ORDER,
    TaskKind.ACOS: (Slot.TE, Slot.AC, Slot.AT, Slot.SP, Slot.SE),
    TaskKind.ASTE: (Slot.AT, Slot.SP, Slot.SE),
}

SlotDict = Mapping[Slot, "str | None"]


def project_tuple(
    opinion: "OpinionTuple | SlotDict", task: TaskKind
) -> dict[Slot, str | None]:
    """Restrict an opinion to the task's slot set, values unchanged.

    Accepts either a full tuple or an already-projected mapping whose keys
    cover the task's slots. Projecting with UOCE is the identity.
    """
    if isinstance(opinion, OpinionTuple):
        full: Mapping[Slot, str | None] = opinion.as_dict()
    else:
        full = opinion
    try:
        return {slot: full[slot] for slot in task.slots}
    except KeyError as exc:
        raise ValueError(
            f"cannot project to {task.value}: slot {exc.args[0].value!r} not in input"
        ) from None


def validate_tuple(opinion: OpinionTuple, source_text: str) -> list[Diagnostic]:
    """Check one opinion against the structural rules and its source sentence.

    Returns ERROR diagnostics for absent required slots and polarity/intensity
    values outside their enumerations, and WARNING diagnostics for present
    span slots that are not substrings of the normalized source text.
    """
    diags: list[Diagnostic] = []
    values = opinion.as_dict()
    for slot in SLOT_ORDER:
        if slot in REQUIRED_SLOTS and values[slot] is None:
            diags.append(
                Diagnostic(Severity.ERROR, f"required slot '{slot.value}' is absent", slot)
            )
    polarity = values[Slot.SP]
    if polarity is not None and polarity not in POLARITY_VALUES:
        diags.append(
            Diagnostic(
                Severity.ERROR,
                f"sentiment polarity {polarity!r} is not one of {'/'.join(POLARITY_VALUES)}",
                Slot.SP,
            )
        )
    intensity = values[Slot.SI]
    if intensity is not None and intensity not in INTENSITY_VALUES:
        diags.append(
            Diagnostic(
                Severity.ERROR,
                f"sentiment intensity {intensity!r} is not one of {'/'.join(INTENSITY_VALUES)}",
                Slot.SI,
            )
        )
    haystack = normalize_text(source_text)
    for slot in SLOT_ORDER:
        if slot not in SPAN_SLOTS:
            continue
        value = values[slot]
        if value is not None and normalize_text(value) not in haystack:
            diags.append(
                Diagnostic(
                    Severity.WARNING,
                    f"span {value!r} for slot '{slot.value}' not found in source text",
                    slot,
                )
            )
    return diags
