"""The unified opinion concept schema: classes, properties, enumeration individuals."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from uoce.kg.graph import (
    OWL,
    RDF_TYPE,
    RDFS_COMMENT,
    RDFS_DOMAIN,
    RDFS_LABEL,
    RDFS_RANGE,
    XSD_INTEGER,
    XSD_STRING,
    Literal,
    OntologyGraph,
    Triple,
)
from uoce.model import INTENSITY_RANK, INTENSITY_VALUES, POLARITY_VALUES

DEFAULT_SCHEMA_BASE = "https://example.org/uoc#"

CONCEPT_CLASSES = (
    "Opinion",
    "Sentiment",
    "Target",
    "Aspect",
    "Holder",
    "Qualifier",
    "Reason",
    "SentimentPolarity",
    "SentimentIntensity",
    "TargetEntity",
    "AspectCategory",
    "HolderEntity",
)

#: name -> (domain class, range class)
OBJECT_PROPERTIES: Mapping[str, tuple[str, str]] = MappingProxyType(
    {
        "conveysSentiment": ("Opinion", "Sentiment"),
        "isExpressedOnTarget": ("Opinion", "Target"),
        "isHeldBy": ("Opinion", "Holder"),
        "hasQualifier": ("Opinion", "Qualifier"),
        "hasReason": ("Opinion", "Reason"),
        "hasIntensity": ("Sentiment", "SentimentIntensity"),
        "hasPolarity": ("Sentiment", "SentimentPolarity"),
        "hasTargetEntity": ("Target", "TargetEntity"),
        "embodiesAspect": ("Target", "Aspect"),
        "hasAspectCategory": ("Aspect", "AspectCategory"),
        "hasHolderEntity": ("Holder", "HolderEntity"),
    }
)

#: name -> domain class (all ranges are xsd:string)
DATA_PROPERTIES: Mapping[str, str] = MappingProxyType(
    {
        "sentimentExpression": "Sentiment",
        "aspectTerm": "Aspect",
        "holderSpan": "Holder",
        "qualifierText": "Qualifier",
        "reasonText": "Reason",
    }
)

#: Properties whose object may be either an individual IRI or a literal label.
DUAL_FORM_PROPERTIES = frozenset(
    {"hasTargetEntity", "hasAspectCategory", "hasHolderEntity"}
)

RANK_ANNOTATION = "ordinalRank"

_CLASS_COMMENTS = {
    "Opinion": "A single unit of subjective evaluation found in a text.",
    "Sentiment": "The feeling an opinion conveys, with polarity, intensity and an optional expression span.",
    "Target": "What the opinion is expressed on, combining an entity and an aspect.",
    "Aspect": "The part or attribute of the target entity under evaluation.",
    "Holder": "Whoever expresses the opinion.",
    "Qualifier": "Words limiting the opinion to a situation, group or condition.",
    "Reason": "Words giving the explicit justification for the opinion.",
    "SentimentPolarity": "The orientation of a sentiment: positive, negative or neutral.",
    "SentimentIntensity": "The strength of a sentiment on the ordered scale weak < average < strong.",
    "TargetEntity": "The entity under evaluation, as a label or an IRI.",
    "AspectCategory": "The attribute or property label of the target, as a label or an IRI.",
    "HolderEntity": "The person or organisation holding the opinion.",
}


def _spaced(name: str) -> str:
    out = [name[0]]
    for ch in name[1:]:
        if ch.isupper():
            out.append(" ")
        out.append(ch)
    return "".join(out)


@dataclass(frozen=True)
class UocSchema:
    """Vocabulary handle; resolves concept names against a base IRI."""

    base_iri: str = DEFAULT_SCHEMA_BASE

    def iri(self, name: str) -> str:
        return self.base_iri + name

    @property
    def ontology_iri(self) -> str:
        return self.base_iri.rstrip("#/")

    def class_iris(self) -> tuple[str, ...]:
        return tuple(self.iri(name) for name in CONCEPT_CLASSES)

    def polarity_individuals(self) -> dict[str, str]:
        return {value: self.iri(value) for value in POLARITY_VALUES}

    def intensity_individuals(self) -> dict[str, str]:
        return {value: self.iri(value) for value in INTENSITY_VALUES}


DEFAULT_SCHEMA = UocSchema()


def build_uoc_schema(schema: UocSchema = DEFAULT_SCHEMA) -> OntologyGraph:
    """The schema graph: 12 concept classes, 11 object properties with domain
    and range, 5 string-valued attributes, and the 6 polarity/intensity
    individuals (intensities annotated with their rank in the ordering)."""
    owl_class = OWL + "Class"
    owl_obj_prop = OWL + "ObjectProperty"
    owl_data_prop = OWL + "DatatypeProperty"
    owl_ann_prop = OWL + "AnnotationProperty"
    owl_individual = OWL + "NamedIndividual"

    triples: list[Triple] = [(schema.ontology_iri, RDF_TYPE, OWL + "Ontology")]
    for name in CONCEPT_CLASSES:
        iri = schema.iri(name)
        triples.append((iri, RDF_TYPE, owl_class))
        triples.append((iri, RDFS_LABEL, Literal(_spaced(name))))
        triples.append((iri, RDFS_COMMENT, Literal(_CLASS_COMMENTS[name])))
    for name, (domain, range_) in OBJECT_PROPERTIES.items():
        iri = schema.iri(name)
        triples.append((iri, RDF_TYPE, owl_obj_prop))
        triples.append((iri, RDFS_DOMAIN, schema.iri(domain)))
        triples.append((iri, RDFS_RANGE, schema.iri(range_)))
    for name, domain in DATA_PROPERTIES.items():
        iri = schema.iri(name)
        triples.append((iri, RDF_TYPE, owl_data_prop))
        triples.append((iri, RDFS_DOMAIN, schema.iri(domain)))
        triples.append((iri, RDFS_RANGE, XSD_STRING))
    triples.append((schema.iri(RANK_ANNOTATION), RDF_TYPE, owl_ann_prop))
    for value, iri in schema.polarity_individuals().items():
        triples.append((iri, RDF_TYPE, owl_individual))
        triples.append((iri, RDF_TYPE, schema.iri("SentimentPolarity")))
        triples.append((iri, RDFS_LABEL, Literal(value)))
    for value, iri in schema.intensity_individuals().items():
        triples.append((iri, RDF_TYPE, owl_individual))
        triples.append((iri, RDF_TYPE, schema.iri("SentimentIntensity")))
        triples.append((iri, RDFS_LABEL, Literal(value)))
        triples.append(
            (
                iri,
                schema.iri(RANK_ANNOTATION),
                Literal(str(INTENSITY_RANK[value]), XSD_INTEGER),
            )
        )
    return OntologyGraph.of(triples, {"uoc": schema.base_iri})
