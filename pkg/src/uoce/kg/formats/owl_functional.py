"""OWL 2 functional-style syntax emitter (emit-only)."""

from __future__ import annotations

from uoce.kg.formats.common import GraphView, compact_iri, graph_view
from uoce.kg.graph import XSD, Literal, Node, OntologyGraph

_DEFAULT_ONTOLOGY_IRI = "urn:uoce:graph"


def _ref(iri: str, ns: dict[str, str]) -> str:
    return compact_iri(iri, ns) or f"<{iri}>"


def _literal(lit: Literal, ns: dict[str, str]) -> str:
    body = lit.value.replace("\\", "\\\\").replace('"', '\\"')
    if lit.datatype is not None:
        return f'"{body}"^^{_ref(lit.datatype, ns)}'
    return f'"{body}"'


def _node(obj: Node, ns: dict[str, str]) -> str:
    return _literal(obj, ns) if isinstance(obj, Literal) else _ref(obj, ns)


def serialize_owl_functional(graph: OntologyGraph) -> str:
    ns = graph.prefix_map
    view: GraphView = graph_view(graph)
    lines = [f"Prefix({prefix}:=<{iri}>)" for prefix, iri in sorted(ns.items())]
    lines.append(f"Ontology(<{view.ontology_iri or _DEFAULT_ONTOLOGY_IRI}>")

    for iri in view.classes:
        lines.append(f"Declaration(Class({_ref(iri, ns)}))")
    for iri in view.object_properties:
        lines.append(f"Declaration(ObjectProperty({_ref(iri, ns)}))")
    for iri in view.data_properties:
        lines.append(f"Declaration(DataProperty({_ref(iri, ns)}))")
    for iri in view.annotation_properties:
        lines.append(f"Declaration(AnnotationProperty({_ref(iri, ns)}))")
    for iri in view.individuals:
        lines.append(f"Declaration(NamedIndividual({_ref(iri, ns)}))")

    data_props = set(view.data_properties)
    for prop, cls in view.domains:
        kind = "DataPropertyDomain" if prop in data_props else "ObjectPropertyDomain"
        lines.append(f"{kind}({_ref(prop, ns)} {_ref(cls, ns)})")
    for prop, rng in view.ranges:
        if prop in data_props:
            target = rng if isinstance(rng, str) else XSD + "string"
            lines.append(f"DataPropertyRange({_ref(prop, ns)} {_ref(target, ns)})")
        elif isinstance(rng, str):
            lines.append(f"ObjectPropertyRange({_ref(prop, ns)} {_ref(rng, ns)})")

    for individual, cls in view.class_assertions:
        lines.append(f"ClassAssertion({_ref(cls, ns)} {_ref(individual, ns)})")
    for s, p, o in view.object_assertions:
        lines.append(
            f"ObjectPropertyAssertion({_ref(p, ns)} {_ref(s, ns)} {_ref(o, ns)})"
        )
    for s, p, o in view.data_assertions:
        lines.append(
            f"DataPropertyAssertion({_ref(p, ns)} {_ref(s, ns)} {_literal(o, ns)})"
        )
    for s, p, o in view.annotations:
        lines.append(f"AnnotationAssertion({_ref(p, ns)} {_ref(s, ns)} {_node(o, ns)})")
    lines.append(")")
    return "\n".join(lines) + "\n"
