"""OBO 1.4 emitter (emit-only, lossy).

Concept classes map to [Term] stanzas, object properties to [Typedef] stanzas
with domain/range lines, and individuals to [Instance] stanzas whose links
become relationship lines. Literal attribute values have no OBO counterpart
and are omitted; a header comment records the omission.
"""

from __future__ import annotations

from uoce.kg.formats.common import graph_view, split_iri
from uoce.kg.graph import OntologyGraph

_PREFIX_FOR_OBO = "UOC"


def _obo_id(iri: str, uoc_base: str | None) -> str:
    if uoc_base and iri.startswith(uoc_base):
        return f"{_PREFIX_FOR_OBO}:{iri[len(uoc_base):]}"
    return iri


def serialize_obo(graph: OntologyGraph) -> str:
    view = graph_view(graph)
    uoc_base = graph.prefix_map.get("uoc")

    def ident(iri: str) -> str:
        return _obo_id(iri, uoc_base)

    def name_of(iri: str) -> str:
        return split_iri(iri)[1] or iri

    domains = {prop: cls for prop, cls in view.domains}
    ranges = {prop: rng for prop, rng in view.ranges if isinstance(rng, str)}
    types: dict[str, list[str]] = {}
    for individual, cls in view.class_assertions:
        types.setdefault(individual, []).append(cls)
    links: dict[str, list[tuple[str, str]]] = {}
    for s, p, o in view.object_assertions:
        links.setdefault(s, []).append((p, o))

    lines = [
        "format-version: 1.4",
        f"ontology: {view.ontology_iri or 'uoce-graph'}",
        "! literal attribute values are omitted from OBO output",
        "",
    ]
    for iri in view.classes:
        lines += [
            "[Term]",
            f"id: {ident(iri)}",
            f"name: {name_of(iri)}",
            "",
        ]
    for iri in view.object_properties:
        stanza = ["[Typedef]", f"id: {ident(iri)}", f"name: {name_of(iri)}"]
        if iri in domains:
            stanza.append(f"domain: {ident(domains[iri])}")
        if iri in ranges:
            stanza.append(f"range: {ident(ranges[iri])}")
        lines += stanza + [""]
    for iri in view.individuals:
        stanza = ["[Instance]", f"id: {ident(iri)}", f"name: {name_of(iri)}"]
        for cls in types.get(iri, []):
            stanza.append(f"instance_of: {ident(cls)}")
        for prop, target in sorted(links.get(iri, [])):
            stanza.append(f"relationship: {ident(prop)} {ident(target)}")
        lines += stanza + [""]
    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"
