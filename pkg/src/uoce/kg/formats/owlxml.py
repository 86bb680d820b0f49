"""OWL/XML syntax emitter (emit-only)."""

from __future__ import annotations

from uoce.kg.formats.common import graph_view, xml_escape, xml_escape_attr
from uoce.kg.graph import XSD, Literal, Node, OntologyGraph

_OWL_XMLNS = "http://www.w3.org/2002/07/owl#"
_DEFAULT_ONTOLOGY_IRI = "urn:uoce:graph"


def _entity(kind: str, iri: str) -> str:
    return f'<{kind} IRI="{xml_escape_attr(iri)}"/>'


def _literal(lit: Literal) -> str:
    if lit.datatype is not None:
        return (
            f'<Literal datatypeIRI="{xml_escape_attr(lit.datatype)}">'
            f"{xml_escape(lit.value)}</Literal>"
        )
    return f"<Literal>{xml_escape(lit.value)}</Literal>"


def _annotation_value(obj: Node) -> str:
    if isinstance(obj, Literal):
        return _literal(obj)
    return f"<IRI>{xml_escape(obj)}</IRI>"


def serialize_owlxml(graph: OntologyGraph) -> str:
    view = graph_view(graph)
    data_props = set(view.data_properties)
    lines = ['<?xml version="1.0" encoding="utf-8"?>']
    ontology_iri = view.ontology_iri or _DEFAULT_ONTOLOGY_IRI
    lines.append(
        f'<Ontology xmlns="{_OWL_XMLNS}" ontologyIRI="{xml_escape_attr(ontology_iri)}">'
    )
    for prefix, iri in sorted(graph.prefix_map.items()):
        lines.append(f'  <Prefix name="{prefix}" IRI="{xml_escape_attr(iri)}"/>')

    for kind, iris in (
        ("Class", view.classes),
        ("ObjectProperty", view.object_properties),
        ("DataProperty", view.data_properties),
        ("AnnotationProperty", view.annotation_properties),
        ("NamedIndividual", view.individuals),
    ):
        for iri in iris:
            lines.append(f"  <Declaration>{_entity(kind, iri)}</Declaration>")

    for prop, cls in view.domains:
        if prop in data_props:
            lines.append(
                f"  <DataPropertyDomain>{_entity('DataProperty', prop)}"
                f"{_entity('Class', cls)}</DataPropertyDomain>"
            )
        else:
            lines.append(
                f"  <ObjectPropertyDomain>{_entity('ObjectProperty', prop)}"
                f"{_entity('Class', cls)}</ObjectPropertyDomain>"
            )
    for prop, rng in view.ranges:
        if prop in data_props:
            target = rng if isinstance(rng, str) else XSD + "string"
            lines.append(
                f"  <DataPropertyRange>{_entity('DataProperty', prop)}"
                f"{_entity('Datatype', target)}</DataPropertyRange>"
            )
        elif isinstance(rng, str):
            lines.append(
                f"  <ObjectPropertyRange>{_entity('ObjectProperty', prop)}"
                f"{_entity('Class', rng)}</ObjectPropertyRange>"
            )

    for individual, cls in view.class_assertions:
        lines.append(
            f"  <ClassAssertion>{_entity('Class', cls)}"
            f"{_entity('NamedIndividual', individual)}</ClassAssertion>"
        )
    for s, p, o in view.object_assertions:
        lines.append(
            f"  <ObjectPropertyAssertion>{_entity('ObjectProperty', p)}"
            f"{_entity('NamedIndividual', s)}{_entity('NamedIndividual', o)}"
            "</ObjectPropertyAssertion>"
        )
    for s, p, o in view.data_assertions:
        lines.append(
            f"  <DataPropertyAssertion>{_entity('DataProperty', p)}"
            f"{_entity('NamedIndividual', s)}{_literal(o)}</DataPropertyAssertion>"
        )
    for s, p, o in view.annotations:
        lines.append(
            f"  <AnnotationAssertion>{_entity('AnnotationProperty', p)}"
            f"<IRI>{xml_escape(s)}</IRI>{_annotation_value(o)}</AnnotationAssertion>"
        )
    lines.append("</Ontology>")
    return "\n".join(lines) + "\n"
