"""RDF/XML emission and parsing (rdf:Description form; typed nodes parse too)."""

from __future__ import annotations

import io
import xml.etree.ElementTree as ET
from itertools import groupby

from uoce.kg.formats.common import GraphSyntaxError, split_iri, xml_escape, xml_escape_attr
from uoce.kg.graph import RDF, Literal, Node, OntologyGraph, Triple, node_sort_key


def _qname_table(graph: OntologyGraph) -> dict[str, str]:
    """namespace IRI -> prefix, auto-binding namespaces of unprefixed predicates.

    RDF/XML writes predicates as element names, so every predicate IRI must
    split into a namespace plus an XML-name-safe local part; IRIs like
    ``...org/0`` cannot be represented and are rejected.
    """
    table = {iri: prefix for prefix, iri in graph.namespaces}
    counter = 0
    for _, predicate, _ in graph.sorted_triples():
        ns, local = split_iri(predicate)
        if not ns or not local:
            raise ValueError(
                f"predicate {predicate!r} has no XML-serializable local name"
            )
        if ns not in table:
            counter += 1
            table[ns] = f"ns{counter}"
    return table


def serialize_rdfxml(graph: OntologyGraph) -> str:
    table = _qname_table(graph)
    lines = ['<?xml version="1.0" encoding="utf-8"?>']
    decls = "".join(
        f'\n    xmlns:{prefix}="{xml_escape_attr(iri)}"'
        for iri, prefix in sorted(table.items(), key=lambda kv: kv[1])
    )
    lines.append(f"<rdf:RDF{decls}>")
    for subject, triples in groupby(graph.sorted_triples(), key=lambda t: t[0]):
        lines.append(f'  <rdf:Description rdf:about="{xml_escape_attr(subject)}">')
        for _, predicate, obj in sorted(triples, key=lambda t: (t[1],) + node_sort_key(t[2])):
            ns, local = split_iri(predicate)
            tag = f"{table[ns]}:{local}"
            if isinstance(obj, Literal):
                if obj.datatype is not None:
                    lines.append(
                        f'    <{tag} rdf:datatype="{xml_escape_attr(obj.datatype)}">'
                        f"{xml_escape(obj.value)}</{tag}>"
                    )
                else:
                    lines.append(f"    <{tag}>{xml_escape(obj.value)}</{tag}>")
            else:
                lines.append(f'    <{tag} rdf:resource="{xml_escape_attr(obj)}"/>')
        lines.append("  </rdf:Description>")
    lines.append("</rdf:RDF>")
    return "\n".join(lines) + "\n"


_RDF_RDF = f"{{{RDF}}}RDF"
_RDF_DESCRIPTION = f"{{{RDF}}}Description"
_RDF_ABOUT = f"{{{RDF}}}about"
_RDF_RESOURCE = f"{{{RDF}}}resource"
_RDF_DATATYPE = f"{{{RDF}}}datatype"
_RDF_TYPE = f"{RDF}type"


def parse_rdfxml(text: str) -> OntologyGraph:
    namespaces: dict[str, str] = {}
    try:
        events = ET.iterparse(io.StringIO(text), events=("start", "start-ns"))
        root = None
        for event, payload in events:
            if event == "start-ns":
                prefix, iri = payload
                if prefix:
                    namespaces[prefix] = iri
            elif root is None:
                root = payload
    except ET.ParseError as exc:
        line, column = exc.position
        raise GraphSyntaxError(f"invalid XML: {exc.msg.split(':')[0]}", line, column) from None

    if root is None or root.tag != _RDF_RDF:
        raise GraphSyntaxError("document root must be rdf:RDF")

    def iri_of(tag: str) -> str:
        if not tag.startswith("{"):
            raise GraphSyntaxError(f"unqualified element {tag!r}")
        ns, _, local = tag[1:].partition("}")
        return ns + local

    triples: list[Triple] = []
    for element in root:
        about = element.get(_RDF_ABOUT)
        if about is None:
            raise GraphSyntaxError("node element without rdf:about (blank nodes unsupported)")
        if element.tag != _RDF_DESCRIPTION:
            triples.append((about, _RDF_TYPE, iri_of(element.tag)))
        for child in element:
            predicate = iri_of(child.tag)
            resource = child.get(_RDF_RESOURCE)
            obj: Node
            if resource is not None:
                obj = resource
            elif len(child) > 0:
                raise GraphSyntaxError(
                    f"nested node elements under {predicate!r} are not supported"
                )
            else:
                datatype = child.get(_RDF_DATATYPE)
                obj = Literal(child.text or "", datatype)
            triples.append((about, predicate, obj))
    return OntologyGraph.of(triples, namespaces)
