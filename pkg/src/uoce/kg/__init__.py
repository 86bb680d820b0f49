"""Knowledge-graph layer: schema, instantiation, validation, serialization."""

from uoce.kg.formats import (
    FORMAT_DOC_LINKS,
    PARSE_FORMATS,
    GraphSyntaxError,
    SerializationFormat,
    parse_graph,
    serialize_graph,
)
from uoce.kg.graph import Literal, OntologyGraph
from uoce.kg.instances import (
    DEFAULT_INSTANCE_BASE,
    InvalidOpinionError,
    build_corpus_graph,
    instantiate_opinion,
    is_iri_value,
    mint_iri,
    validate_graph,
)
from uoce.kg.schema import (
    CONCEPT_CLASSES,
    DATA_PROPERTIES,
    DEFAULT_SCHEMA,
    DEFAULT_SCHEMA_BASE,
    OBJECT_PROPERTIES,
    UocSchema,
    build_uoc_schema,
)

__all__ = [
    "CONCEPT_CLASSES",
    "DATA_PROPERTIES",
    "DEFAULT_INSTANCE_BASE",
    "DEFAULT_SCHEMA",
    "DEFAULT_SCHEMA_BASE",
    "FORMAT_DOC_LINKS",
    "GraphSyntaxError",
    "InvalidOpinionError",
    "Literal",
    "OBJECT_PROPERTIES",
    "OntologyGraph",
    "PARSE_FORMATS",
    "SerializationFormat",
    "UocSchema",
    "build_corpus_graph",
    "build_uoc_schema",
    "instantiate_opinion",
    "is_iri_value",
    "mint_iri",
    "parse_graph",
    "serialize_graph",
    "validate_graph",
]
