"""Shared helpers for the graph serializers and parsers."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from uoce.kg.graph import (
    OWL,
    RDF_TYPE,
    RDFS_DOMAIN,
    RDFS_RANGE,
    Literal,
    Node,
    OntologyGraph,
    node_sort_key,
)

OWL_CLASS = OWL + "Class"
OWL_OBJECT_PROPERTY = OWL + "ObjectProperty"
OWL_DATATYPE_PROPERTY = OWL + "DatatypeProperty"
OWL_ANNOTATION_PROPERTY = OWL + "AnnotationProperty"
OWL_NAMED_INDIVIDUAL = OWL + "NamedIndividual"
OWL_ONTOLOGY = OWL + "Ontology"

_LOCAL_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_-]*$")


class GraphSyntaxError(ValueError):
    """A parse failure with a best-effort source position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" at line {line}" if line is not None else ""
        where += f", column {column}" if column is not None else ""
        super().__init__(f"{message}{where}")


def compact_iri(iri: str, namespaces: Mapping[str, str]) -> str | None:
    """Compact to ``prefix:local`` when a bound namespace covers the IRI and
    the local part is a safe name; longest namespace wins."""
    best: tuple[int, str] | None = None
    for prefix, base in namespaces.items():
        if iri.startswith(base) and len(base) > (best[0] if best else -1):
            local = iri[len(base):]
            if _LOCAL_NAME_RE.match(local):
                best = (len(base), f"{prefix}:{local}")
    return best[1] if best else None


def expand_iri(token: str, namespaces: Mapping[str, str]) -> str | None:
    """Expand ``prefix:local`` against the prefix table; None if unknown."""
    prefix, sep, local = token.partition(":")
    if not sep:
        return None
    base = namespaces.get(prefix)
    return base + local if base is not None else None


def split_iri(iri: str) -> tuple[str, str]:
    """Split into (namespace, local name) at the last '#', '/' or ':'."""
    for ch in ("#", "/", ":"):
        idx = iri.rfind(ch)
        if idx >= 0 and _LOCAL_NAME_RE.match(iri[idx + 1 :]):
            return iri[: idx + 1], iri[idx + 1 :]
    return "", iri


def _check_xml_chars(text: str) -> None:
    for ch in text:
        if ord(ch) < 0x20 and ch not in "\t\n\r":
            raise ValueError(
                f"character U+{ord(ch):04X} cannot be represented in XML output"
            )


def xml_escape(text: str) -> str:
    _check_xml_chars(text)
    escaped = text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    # a raw CR would be line-end-normalized away by any conforming parser
    return escaped.replace("\r", "&#xD;")


def xml_escape_attr(text: str) -> str:
    # tabs and newlines in attribute values fall to attribute-value
    # normalization unless written as character references
    return (
        xml_escape(text)
        .replace('"', "&quot;")
        .replace("\t", "&#x9;")
        .replace("\n", "&#xA;")
    )


@dataclass
class GraphView:
    """Axiom-shaped view of a graph, derived from its type declarations.

    Used by the OWL-flavoured emitters (functional, Manchester, OWL/XML) and
    OBO to classify triples deterministically.
    """

    ontology_iri: str | None = None
    classes: list[str] = field(default_factory=list)
    object_properties: list[str] = field(default_factory=list)
    data_properties: list[str] = field(default_factory=list)
    annotation_properties: list[str] = field(default_factory=list)
    individuals: list[str] = field(default_factory=list)
    class_assertions: list[tuple[str, str]] = field(default_factory=list)
    object_assertions: list[tuple[str, str, str]] = field(default_factory=list)
    data_assertions: list[tuple[str, str, Literal]] = field(default_factory=list)
    domains: list[tuple[str, str]] = field(default_factory=list)
    ranges: list[tuple[str, Node]] = field(default_factory=list)
    annotations: list[tuple[str, str, Node]] = field(default_factory=list)


def graph_view(graph: OntologyGraph) -> GraphView:
    view = GraphView()
    declared_classes: set[str] = set()
    object_props: set[str] = set()
    data_props: set[str] = set()
    annotation_props: set[str] = set()
    individuals: set[str] = set()

    for s, p, o in graph.triples:
        if p == RDF_TYPE:
            if o == OWL_ONTOLOGY:
                view.ontology_iri = s
            elif o == OWL_CLASS:
                declared_classes.add(s)
            elif o == OWL_OBJECT_PROPERTY:
                object_props.add(s)
            elif o == OWL_DATATYPE_PROPERTY:
                data_props.add(s)
            elif o == OWL_ANNOTATION_PROPERTY:
                annotation_props.add(s)
            elif o == OWL_NAMED_INDIVIDUAL:
                individuals.add(s)

    view.classes = sorted(declared_classes)
    view.object_properties = sorted(object_props)
    view.data_properties = sorted(data_props)
    view.annotation_properties = sorted(annotation_props)
    view.individuals = sorted(individuals)

    for s, p, o in graph.sorted_triples():
        if p == RDF_TYPE:
            if isinstance(o, str) and not o.startswith(OWL):
                view.class_assertions.append((s, o))
        elif p == RDFS_DOMAIN and isinstance(o, str) and (
            s in object_props or s in data_props
        ):
            view.domains.append((s, o))
        elif p == RDFS_RANGE and (s in object_props or s in data_props):
            view.ranges.append((s, o))
        elif s in object_props or s in data_props:
            # domain/range triples of undeclared subjects fall through here
            view.annotations.append((s, p, o))
        elif p in object_props and isinstance(o, str):
            view.object_assertions.append((s, p, o))
        elif p in data_props and isinstance(o, Literal):
            view.data_assertions.append((s, p, o))
        else:
            # annotation properties, labels/comments, and dual-form literals
            view.annotations.append((s, p, o))
    return view


def sorted_objects(nodes: list[Node]) -> list[Node]:
    return sorted(nodes, key=node_sort_key)
