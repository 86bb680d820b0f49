"""Knowledge-graph instantiation of opinion tuples and schema validation."""

from __future__ import annotations

import re
from typing import Iterable, Sequence
from urllib.parse import quote

from uoce.kg.graph import OWL, RDF_TYPE, Literal, Node, OntologyGraph, Triple
from uoce.kg.schema import (
    DATA_PROPERTIES,
    DEFAULT_SCHEMA,
    DUAL_FORM_PROPERTIES,
    OBJECT_PROPERTIES,
    UocSchema,
    build_uoc_schema,
)
from uoce.model import (
    Diagnostic,
    OpinionTuple,
    SentenceRecord,
    Severity,
    Slot,
    validate_tuple,
)

DEFAULT_INSTANCE_BASE = "https://example.org/opinions/"

_IRI_VALUE_RE = re.compile(r"^[a-z][a-z0-9+.-]*:\S+$")


class InvalidOpinionError(ValueError):
    """Raised when a tuple with validation errors is instantiated."""

    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = tuple(diagnostics)
        super().__init__("; ".join(str(d) for d in diagnostics))


def is_iri_value(value: str) -> bool:
    """True when a (normalized) slot value reads as an absolute IRI."""
    return bool(_IRI_VALUE_RE.match(value))


def _normalize_base(base_iri: str) -> str:
    return base_iri if base_iri.endswith(("/", "#", ":")) else base_iri + "/"


def mint_iri(base_iri: str, sentence_id: str, role: str, ordinal: int) -> str:
    """Deterministic individual IRI: base + sentence id + role + ordinal."""
    return f"{_normalize_base(base_iri)}{quote(sentence_id, safe='')}/{role}-{ordinal}"


def _entity_node(value: str) -> Node:
    return value if is_iri_value(value) else Literal(value)


def instantiate_opinion(
    opinion: OpinionTuple,
    sentence: SentenceRecord,
    base_iri: str = DEFAULT_INSTANCE_BASE,
    ordinal: int | None = None,
    schema: UocSchema = DEFAULT_SCHEMA,
) -> OntologyGraph:
    """Emit the individuals and links for one opinion of a sentence.

    The opinion, sentiment, target, aspect and holder individuals always
    exist; qualifier and reason individuals only when those slots carry a
    value. Categorical values that read as IRIs are linked directly, plain
    text becomes a literal. ``ordinal`` defaults to the opinion's position in
    ``sentence.opinions``.
    """
    errors = [
        d
        for d in validate_tuple(opinion, sentence.text)
        if d.severity is Severity.ERROR
    ]
    if errors:
        raise InvalidOpinionError(errors)
    if ordinal is None:
        ordinal = (
            sentence.opinions.index(opinion) if opinion in sentence.opinions else 0
        )

    owl_individual = OWL + "NamedIndividual"
    values = opinion.as_dict()

    def minted(role: str) -> str:
        return mint_iri(base_iri, sentence.id, role, ordinal)

    opinion_iri = minted("opinion")
    sentiment_iri = minted("sentiment")
    target_iri = minted("target")
    aspect_iri = minted("aspect")
    holder_iri = minted("holder")

    triples: list[Triple] = []

    def individual(iri: str, class_name: str) -> None:
        triples.append((iri, RDF_TYPE, owl_individual))
        triples.append((iri, RDF_TYPE, schema.iri(class_name)))

    individual(opinion_iri, "Opinion")
    individual(sentiment_iri, "Sentiment")
    individual(target_iri, "Target")
    individual(aspect_iri, "Aspect")
    individual(holder_iri, "Holder")

    triples.append((opinion_iri, schema.iri("conveysSentiment"), sentiment_iri))
    triples.append((opinion_iri, schema.iri("isExpressedOnTarget"), target_iri))
    triples.append((opinion_iri, schema.iri("isHeldBy"), holder_iri))

    triples.append(
        (sentiment_iri, schema.iri("hasPolarity"), schema.iri(values[Slot.SP]))
    )
    triples.append(
        (sentiment_iri, schema.iri("hasIntensity"), schema.iri(values[Slot.SI]))
    )
    if values[Slot.SE] is not None:
        triples.append(
            (sentiment_iri, schema.iri("sentimentExpression"), Literal(values[Slot.SE]))
        )

    triples.append(
        (target_iri, schema.iri("hasTargetEntity"), _entity_node(values[Slot.TE]))
    )
    triples.append((target_iri, schema.iri("embodiesAspect"), aspect_iri))
    triples.append(
        (aspect_iri, schema.iri("hasAspectCategory"), _entity_node(values[Slot.AC]))
    )
    if values[Slot.AT] is not None:
        triples.append((aspect_iri, schema.iri("aspectTerm"), Literal(values[Slot.AT])))

    triples.append(
        (holder_iri, schema.iri("hasHolderEntity"), Literal(values[Slot.HE]))
    )
    if values[Slot.HS] is not None:
        triples.append((holder_iri, schema.iri("holderSpan"), Literal(values[Slot.HS])))

    if values[Slot.Q] is not None:
        qualifier_iri = minted("qualifier")
        individual(qualifier_iri, "Qualifier")
        triples.append((opinion_iri, schema.iri("hasQualifier"), qualifier_iri))
        triples.append(
            (qualifier_iri, schema.iri("qualifierText"), Literal(values[Slot.Q]))
        )
    if values[Slot.R] is not None:
        reason_iri = minted("reason")
        individual(reason_iri, "Reason")
        triples.append((opinion_iri, schema.iri("hasReason"), reason_iri))
        triples.append((reason_iri, schema.iri("reasonText"), Literal(values[Slot.R])))

    return OntologyGraph.of(triples, {"uoc": schema.base_iri})


def build_corpus_graph(
    records: Iterable[tuple[SentenceRecord, Sequence[OpinionTuple]]],
    base_iri: str = DEFAULT_INSTANCE_BASE,
    schema: UocSchema = DEFAULT_SCHEMA,
) -> tuple[OntologyGraph, list[tuple[str, int, list[Diagnostic]]]]:
    """Schema plus instances for every (sentence, opinions) pair.

    Returns the merged graph and a list of skipped opinions as
    (sentence id, ordinal, error diagnostics) entries.
    """
    graph = build_uoc_schema(schema)
    skipped: list[tuple[str, int, list[Diagnostic]]] = []
    for record, opinions in records:
        for ordinal, opinion in enumerate(opinions):
            errors = [
                d
                for d in validate_tuple(opinion, record.text)
                if d.severity is Severity.ERROR
            ]
            if errors:
                skipped.append((record.id, ordinal, errors))
                continue
            graph = graph.merge(
                instantiate_opinion(opinion, record, base_iri, ordinal, schema)
            )
    return graph, skipped


def validate_graph(
    graph: OntologyGraph, schema: UocSchema = DEFAULT_SCHEMA
) -> list[Diagnostic]:
    """Check instance triples against the schema's domains, ranges and
    cardinalities.

    Flags: subjects whose type does not include a property's domain class,
    object-property objects typed outside the range class, literals on
    non-dual-form object properties, IRIs on attribute properties,
    polarity/intensity objects that are not the six enumeration individuals,
    and opinions without exactly one sentiment and one target link.
    """
    diags: list[Diagnostic] = []
    object_props = {schema.iri(name): name for name in OBJECT_PROPERTIES}
    data_props = {schema.iri(name): name for name in DATA_PROPERTIES}
    polarity_iris = set(schema.polarity_individuals().values())
    intensity_iris = set(schema.intensity_individuals().values())
    schema_subjects = {s for s, _, _ in build_uoc_schema(schema).triples}

    def types(subject: str) -> set[str]:
        return set(graph.types_of(subject))

    def report(message: str) -> None:
        diags.append(Diagnostic(Severity.ERROR, message))

    for s, p, o in graph.sorted_triples():
        if p in object_props:
            name = object_props[p]
            domain, range_ = OBJECT_PROPERTIES[name]
            if s not in schema_subjects and schema.iri(domain) not in types(s):
                report(f"subject of {name} is not typed {domain}: <{s}>")
            if name == "hasPolarity":
                if o not in polarity_iris:
                    report(f"hasPolarity object must be a polarity individual, got {o!r}")
                continue
            if name == "hasIntensity":
                if o not in intensity_iris:
                    report(
                        f"hasIntensity object must be an intensity individual, got {o!r}"
                    )
                continue
            if isinstance(o, Literal):
                if name not in DUAL_FORM_PROPERTIES:
                    report(f"object of {name} must be an IRI, got literal {o.value!r}")
            else:
                object_types = types(o)
                if object_types and schema.iri(range_) not in object_types:
                    report(f"object of {name} is not typed {range_}: <{o}>")
                elif not object_types and name not in DUAL_FORM_PROPERTIES:
                    report(f"object of {name} is untyped: <{o}>")
        elif p in data_props:
            name = data_props[p]
            domain = DATA_PROPERTIES[name]
            if s not in schema_subjects and schema.iri(domain) not in types(s):
                report(f"subject of {name} is not typed {domain}: <{s}>")
            if not isinstance(o, Literal):
                report(f"value of {name} must be a literal, got IRI <{o}>")

    for opinion in graph.subjects_of_type(schema.iri("Opinion")):
        for prop in ("conveysSentiment", "isExpressedOnTarget"):
            count = len(graph.objects(opinion, schema.iri(prop)))
            if count != 1:
                report(f"opinion <{opinion}> has {count} {prop} links, expected 1")
    return diags
