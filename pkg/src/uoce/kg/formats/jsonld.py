"""JSON-LD emission and parsing: a context of prefixes plus a flat @graph."""

from __future__ import annotations

import json
from itertools import groupby
from typing import Any

from uoce.kg.formats.common import GraphSyntaxError, compact_iri, expand_iri
from uoce.kg.graph import (
    RDF_TYPE,
    XSD_STRING,
    Literal,
    Node,
    OntologyGraph,
    Triple,
    node_sort_key,
)


def _ref(iri: str, namespaces: dict[str, str]) -> str:
    return compact_iri(iri, namespaces) or iri


def _value_object(obj: Node, namespaces: dict[str, str]) -> Any:
    if isinstance(obj, Literal):
        if obj.datatype is None or obj.datatype == XSD_STRING:
            return {"@value": obj.value}
        return {"@value": obj.value, "@type": _ref(obj.datatype, namespaces)}
    return {"@id": _ref(obj, namespaces)}


def serialize_jsonld(graph: OntologyGraph) -> str:
    ns = graph.prefix_map
    nodes = []
    for subject, triples in groupby(graph.sorted_triples(), key=lambda t: t[0]):
        node: dict[str, Any] = {"@id": _ref(subject, ns)}
        rows = sorted(triples, key=lambda t: (t[1],) + node_sort_key(t[2]))
        types = [o for _, p, o in rows if p == RDF_TYPE and isinstance(o, str)]
        if types:
            node["@type"] = [_ref(t, ns) for t in types]
        for predicate, group in groupby(rows, key=lambda t: t[1]):
            if predicate == RDF_TYPE:
                continue
            node[_ref(predicate, ns)] = [_value_object(o, ns) for _, _, o in group]
        nodes.append(node)
    document = {
        "@context": {prefix: iri for prefix, iri in sorted(ns.items())},
        "@graph": nodes,
    }
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def _expand(token: str, context: dict[str, str], what: str) -> str:
    if token.startswith("@"):
        raise GraphSyntaxError(f"unexpected keyword {token!r} as {what}")
    expanded = expand_iri(token, context)
    if expanded is not None:
        return expanded
    if ":" in token:
        return token  # already an absolute IRI
    raise GraphSyntaxError(f"cannot expand {what} {token!r}: no such term or prefix")


def _parse_value(value: Any, context: dict[str, str]) -> Node:
    if isinstance(value, str):
        return Literal(value)
    if isinstance(value, bool):
        raise GraphSyntaxError("boolean literals are not supported")
    if isinstance(value, int):
        return Literal(str(value), "http://www.w3.org/2001/XMLSchema#integer")
    if isinstance(value, dict):
        if "@id" in value:
            return _expand(str(value["@id"]), context, "node reference")
        if "@value" in value:
            raw = value["@value"]
            lexical = str(raw) if not isinstance(raw, str) else raw
            datatype = value.get("@type")
            if datatype is not None:
                return Literal(lexical, _expand(str(datatype), context, "datatype"))
            return Literal(lexical)
        raise GraphSyntaxError(f"value object needs @id or @value: {value!r}")
    raise GraphSyntaxError(f"unsupported value {value!r}")


def parse_jsonld(text: str) -> OntologyGraph:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphSyntaxError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None

    context: dict[str, str] = {}
    if isinstance(document, dict):
        raw_context = document.get("@context", {})
        if not isinstance(raw_context, dict):
            raise GraphSyntaxError("@context must be an object of prefix bindings")
        for key, value in raw_context.items():
            if not isinstance(value, str):
                raise GraphSyntaxError(f"unsupported @context entry for {key!r}")
            context[key] = value
        nodes = document.get("@graph", [])
    elif isinstance(document, list):
        nodes = document
    else:
        raise GraphSyntaxError("top level must be an object or an array of nodes")
    if not isinstance(nodes, list):
        raise GraphSyntaxError("@graph must be an array")

    triples: list[Triple] = []
    for index, node in enumerate(nodes):
        if not isinstance(node, dict):
            raise GraphSyntaxError(f"@graph[{index}] is not a node object")
        if "@id" not in node:
            raise GraphSyntaxError(f"@graph[{index}] has no @id (blank nodes unsupported)")
        subject = _expand(str(node["@id"]), context, "@id")
        for key, value in node.items():
            if key == "@id":
                continue
            if key == "@type":
                type_values = value if isinstance(value, list) else [value]
                for t in type_values:
                    triples.append(
                        (subject, RDF_TYPE, _expand(str(t), context, "@type"))
                    )
                continue
            if key.startswith("@"):
                raise GraphSyntaxError(f"unsupported keyword {key!r} in @graph[{index}]")
            predicate = _expand(key, context, "predicate")
            values = value if isinstance(value, list) else [value]
            for v in values:
                triples.append((subject, predicate, _parse_value(v, context)))
    return OntologyGraph.of(triples, context)
