"""Manchester OWL syntax emitter (emit-only)."""

from __future__ import annotations

from uoce.kg.formats.common import compact_iri, graph_view
from uoce.kg.graph import Literal, Node, OntologyGraph

_DEFAULT_ONTOLOGY_IRI = "urn:uoce:graph"


def _ref(iri: str, ns: dict[str, str]) -> str:
    return compact_iri(iri, ns) or f"<{iri}>"


def _node(obj: Node, ns: dict[str, str]) -> str:
    if isinstance(obj, Literal):
        body = obj.value.replace("\\", "\\\\").replace('"', '\\"')
        if obj.datatype is not None:
            return f'"{body}"^^{_ref(obj.datatype, ns)}'
        return f'"{body}"'
    return _ref(obj, ns)


def serialize_manchester(graph: OntologyGraph) -> str:
    ns = graph.prefix_map
    view = graph_view(graph)
    data_props = set(view.data_properties)

    domains: dict[str, list[str]] = {}
    for prop, cls in view.domains:
        domains.setdefault(prop, []).append(cls)
    ranges: dict[str, list[Node]] = {}
    for prop, rng in view.ranges:
        ranges.setdefault(prop, []).append(rng)
    annotations: dict[str, list[tuple[str, Node]]] = {}
    for s, p, o in view.annotations:
        annotations.setdefault(s, []).append((p, o))
    types: dict[str, list[str]] = {}
    for individual, cls in view.class_assertions:
        types.setdefault(individual, []).append(cls)
    facts: dict[str, list[tuple[str, Node]]] = {}
    for s, p, o in view.object_assertions:
        facts.setdefault(s, []).append((p, o))
    for s, p, o in view.data_assertions:
        facts.setdefault(s, []).append((p, o))

    lines = [f"Prefix: {prefix}: <{iri}>" for prefix, iri in sorted(ns.items())]
    lines.append("")
    lines.append(f"Ontology: <{view.ontology_iri or _DEFAULT_ONTOLOGY_IRI}>")
    lines.append("")

    def annotation_block(iri: str) -> list[str]:
        found = annotations.get(iri, [])
        if not found:
            return []
        rendered = [f"{_ref(p, ns)} {_node(o, ns)}" for p, o in found]
        return ["    Annotations: " + ",\n        ".join(rendered)]

    for iri in view.classes:
        lines.append(f"Class: {_ref(iri, ns)}")
        lines.extend(annotation_block(iri))
        lines.append("")
    for keyword, props in (
        ("ObjectProperty", view.object_properties),
        ("DataProperty", view.data_properties),
        ("AnnotationProperty", view.annotation_properties),
    ):
        for iri in props:
            lines.append(f"{keyword}: {_ref(iri, ns)}")
            lines.extend(annotation_block(iri))
            for cls in domains.get(iri, []):
                lines.append(f"    Domain: {_ref(cls, ns)}")
            for rng in ranges.get(iri, []):
                target = rng if isinstance(rng, str) else str(rng.value)
                lines.append(f"    Range: {_ref(target, ns)}")
            lines.append("")

    individuals = sorted(
        set(view.individuals) | set(types) | set(facts) | set(annotations)
    )
    schema_iris = (
        set(view.classes)
        | set(view.object_properties)
        | set(view.data_properties)
        | set(view.annotation_properties)
    )
    for iri in individuals:
        if iri in schema_iris or iri == view.ontology_iri:
            continue
        lines.append(f"Individual: {_ref(iri, ns)}")
        lines.extend(annotation_block(iri))
        type_list = types.get(iri, [])
        if type_list:
            lines.append(
                "    Types: " + ", ".join(_ref(t, ns) for t in type_list)
            )
        fact_list = facts.get(iri, [])
        if fact_list:
            rendered = [f"{_ref(p, ns)} {_node(o, ns)}" for p, o in fact_list]
            lines.append("    Facts: " + ",\n        ".join(rendered))
        lines.append("")
    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"
