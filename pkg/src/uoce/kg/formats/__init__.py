"""Serialization formats for ontology graphs: seven emitters, three parsers."""

from __future__ import annotations

from enum import Enum
from typing import Callable

from uoce.kg.formats.common import GraphSyntaxError
from uoce.kg.formats.jsonld import parse_jsonld, serialize_jsonld
from uoce.kg.formats.manchester import serialize_manchester
from uoce.kg.formats.obo import serialize_obo
from uoce.kg.formats.owl_functional import serialize_owl_functional
from uoce.kg.formats.owlxml import serialize_owlxml
from uoce.kg.formats.rdfxml import parse_rdfxml, serialize_rdfxml
from uoce.kg.formats.turtle import parse_turtle, serialize_turtle
from uoce.kg.graph import OntologyGraph


class SerializationFormat(str, Enum):
    JSONLD = "jsonld"
    MAN = "man"
    OBO = "obo"
    OWF = "owf"
    OWX = "owx"
    RDFX = "rdfx"
    TTL = "ttl"


_SERIALIZERS: dict[SerializationFormat, Callable[[OntologyGraph], str]] = {
    SerializationFormat.JSONLD: serialize_jsonld,
    SerializationFormat.MAN: serialize_manchester,
    SerializationFormat.OBO: serialize_obo,
    SerializationFormat.OWF: serialize_owl_functional,
    SerializationFormat.OWX: serialize_owlxml,
    SerializationFormat.RDFX: serialize_rdfxml,
    SerializationFormat.TTL: serialize_turtle,
}

_PARSERS: dict[SerializationFormat, Callable[[str], OntologyGraph]] = {
    SerializationFormat.JSONLD: parse_jsonld,
    SerializationFormat.RDFX: parse_rdfxml,
    SerializationFormat.TTL: parse_turtle,
}

#: Formats with round-trip (parse) support; the rest are emit-only.
PARSE_FORMATS = frozenset(_PARSERS)

#: Reference documentation per format.
FORMAT_DOC_LINKS: dict[SerializationFormat, str] = {
    SerializationFormat.JSONLD: "https://json-ld.org/",
    SerializationFormat.MAN: "https://www.w3.org/TR/owl2-manchester-syntax/",
    SerializationFormat.OBO: "https://owlcollab.github.io/oboformat/doc/GO.format.obo-1_4.html",
    SerializationFormat.OWF: "https://www.w3.org/TR/owl2-syntax/",
    SerializationFormat.OWX: "https://www.w3.org/TR/owl-xmlsyntax/",
    SerializationFormat.RDFX: "https://www.w3.org/TR/rdf-syntax-grammar/",
    SerializationFormat.TTL: "https://www.w3.org/TR/turtle/",
}


def serialize_graph(graph: OntologyGraph, format: SerializationFormat | str) -> str:
    """Deterministic text in the requested format; equal graphs give equal bytes."""
    return _SERIALIZERS[SerializationFormat(format)](graph)


def parse_graph(text: str, format: SerializationFormat | str) -> OntologyGraph:
    """Parse ttl, jsonld or rdfx back into a graph; other formats are emit-only."""
    fmt = SerializationFormat(format)
    parser = _PARSERS.get(fmt)
    if parser is None:
        raise ValueError(f"format '{fmt.value}' is emit-only; parsing is not supported")
    return parser(text)


__all__ = [
    "FORMAT_DOC_LINKS",
    "GraphSyntaxError",
    "PARSE_FORMATS",
    "SerializationFormat",
    "parse_graph",
    "serialize_graph",
]
