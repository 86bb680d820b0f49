"""Minimal triple-store model for the opinion ontology and its instances.

Subjects and predicates are IRIs (plain strings); objects are IRIs or typed
literals. Graphs are immutable value objects with set semantics over triples,
which keeps serialization deterministic and round-trip comparison trivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
XSD = "http://www.w3.org/2001/XMLSchema#"

RDF_TYPE = RDF + "type"
RDFS_LABEL = RDFS + "label"
RDFS_COMMENT = RDFS + "comment"
RDFS_DOMAIN = RDFS + "domain"
RDFS_RANGE = RDFS + "range"
XSD_STRING = XSD + "string"
XSD_INTEGER = XSD + "integer"

STANDARD_NAMESPACES: dict[str, str] = {
    "owl": OWL,
    "rdf": RDF,
    "rdfs": RDFS,
    "xsd": XSD,
}


@dataclass(frozen=True, order=True)
class Literal:
    """A literal object value; ``datatype`` None means a plain xsd:string."""

    value: str
    datatype: str | None = None


Node = Union[str, Literal]
Triple = tuple[str, str, Node]


def node_sort_key(node: Node) -> tuple:
    if isinstance(node, Literal):
        return (1, node.value, node.datatype or "")
    return (0, node, "")


def triple_sort_key(triple: Triple) -> tuple:
    s, p, o = triple
    return (s, p) + node_sort_key(o)


@dataclass(frozen=True)
class OntologyGraph:
    """An immutable set of triples plus a prefix table for serialization."""

    triples: frozenset[Triple]
    namespaces: tuple[tuple[str, str], ...] = ()

    @classmethod
    def of(
        cls, triples: Iterable[Triple], namespaces: Mapping[str, str] | None = None
    ) -> "OntologyGraph":
        ns = dict(STANDARD_NAMESPACES)
        ns.update(namespaces or {})
        normalized = []
        for subject, predicate, obj in triples:
            if not isinstance(subject, str) or not isinstance(predicate, str):
                raise TypeError("subjects and predicates must be IRIs")
            if isinstance(obj, Literal):
                # xsd:string is the default literal type; canonicalize so
                # round-trips through type-eliding formats compare equal.
                if obj.datatype == XSD_STRING:
                    obj = Literal(obj.value)
            elif not isinstance(obj, str):
                raise TypeError("objects must be IRIs or Literals")
            normalized.append((subject, predicate, obj))
        return cls(frozenset(normalized), tuple(sorted(ns.items())))

    @property
    def prefix_map(self) -> dict[str, str]:
        return dict(self.namespaces)

    def sorted_triples(self) -> list[Triple]:
        return sorted(self.triples, key=triple_sort_key)

    def subjects(self) -> list[str]:
        return sorted({s for s, _, _ in self.triples})

    def objects(self, subject: str, predicate: str) -> list[Node]:
        found = [o for s, p, o in self.triples if s == subject and p == predicate]
        return sorted(found, key=node_sort_key)

    def types_of(self, subject: str) -> list[str]:
        return [o for o in self.objects(subject, RDF_TYPE) if isinstance(o, str)]

    def subjects_of_type(self, class_iri: str) -> list[str]:
        return sorted(
            {s for s, p, o in self.triples if p == RDF_TYPE and o == class_iri}
        )

    def merge(self, other: "OntologyGraph") -> "OntologyGraph":
        """Union of triples; prefix tables must not conflict."""
        merged = dict(self.namespaces)
        for prefix, iri in other.namespaces:
            if merged.get(prefix, iri) != iri:
                raise ValueError(
                    f"conflicting binding for prefix '{prefix}': {merged[prefix]} vs {iri}"
                )
            merged[prefix] = iri
        return OntologyGraph(self.triples | other.triples, tuple(sorted(merged.items())))

    def __len__(self) -> int:
        return len(self.triples)
