"""Turtle emission and parsing for the restricted graph model (no blank nodes)."""

from __future__ import annotations

from itertools import groupby

from uoce.kg.formats.common import GraphSyntaxError, compact_iri
from uoce.kg.graph import RDF_TYPE, XSD_INTEGER, Literal, Node, OntologyGraph, Triple, node_sort_key

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _escape_string(value: str) -> str:
    out = []
    for ch in value:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def _iri_ref(iri: str, namespaces: dict[str, str]) -> str:
    return compact_iri(iri, namespaces) or f"<{iri}>"


def _object_ref(obj: Node, namespaces: dict[str, str]) -> str:
    if isinstance(obj, Literal):
        if obj.datatype == XSD_INTEGER and obj.value.lstrip("+-").isdigit():
            return obj.value
        rendered = f'"{_escape_string(obj.value)}"'
        if obj.datatype is not None:
            return f"{rendered}^^{_iri_ref(obj.datatype, namespaces)}"
        return rendered
    return _iri_ref(obj, namespaces)


def serialize_turtle(graph: OntologyGraph) -> str:
    ns = graph.prefix_map
    lines = [f"@prefix {prefix}: <{iri}> ." for prefix, iri in sorted(ns.items())]
    lines.append("")

    def pred_key(triple: Triple) -> tuple:
        _, p, _ = triple
        return (p != RDF_TYPE, p)

    for subject, triples in groupby(graph.sorted_triples(), key=lambda t: t[0]):
        rows = sorted(triples, key=lambda t: pred_key(t) + node_sort_key(t[2]))
        parts: list[str] = []
        for (_, predicate), group in groupby(rows, key=lambda t: (pred_key(t)[0], t[1])):
            objects = ", ".join(_object_ref(o, ns) for _, _, o in group)
            verb = "a" if predicate == RDF_TYPE else _iri_ref(predicate, ns)
            parts.append(f"{verb} {objects}")
        body = " ;\n    ".join(parts)
        lines.append(f"{_iri_ref(subject, ns)} {body} .")
        lines.append("")
    if lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"


class _Tokenizer:
    """Hand-rolled Turtle tokenizer tracking line and column."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str) -> GraphSyntaxError:
        return GraphSyntaxError(message, self.line, self.col)

    def _advance(self, count: int = 1) -> None:
        for _ in range(count):
            if self.pos < len(self.text) and self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def _skip_whitespace(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in " \t\r\n":
                self._advance()
            elif ch == "#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self._advance()
            else:
                return

    def peek(self) -> str:
        self._skip_whitespace()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def next_token(self) -> tuple[str, object]:
        """Returns (kind, value); kinds: iri, pname, string, integer, punct, eof."""
        self._skip_whitespace()
        if self.pos >= len(self.text):
            return ("eof", "")
        start_line, start_col = self.line, self.col
        ch = self.text[self.pos]
        if ch == "<":
            return ("iri", self._read_iri())
        if ch == '"':
            return ("string", self._read_string())
        if ch in ".;,":
            self._advance()
            return ("punct", ch)
        if self.text.startswith("^^", self.pos):
            self._advance(2)
            return ("punct", "^^")
        if ch == "@" or self.text[self.pos : self.pos + 7].upper() == "PREFIX ":
            word = self._read_bareword()
            return ("directive", word.lower().lstrip("@"))
        if ch.isdigit() or (ch in "+-" and self.text[self.pos + 1 : self.pos + 2].isdigit()):
            return ("integer", self._read_integer())
        word = self._read_bareword()
        if word == "a":
            return ("keyword", "a")
        if ":" in word:
            return ("pname", word)
        raise GraphSyntaxError(f"unexpected token {word!r}", start_line, start_col)

    def _read_iri(self) -> str:
        self._advance()  # consume '<'
        out = []
        while True:
            if self.pos >= len(self.text) or self.text[self.pos] == "\n":
                raise self.error("unterminated IRI reference")
            ch = self.text[self.pos]
            self._advance()
            if ch == ">":
                return "".join(out)
            out.append(ch)

    def _read_string(self) -> str:
        self._advance()  # consume opening quote
        out = []
        while True:
            if self.pos >= len(self.text):
                raise self.error("unterminated string literal")
            ch = self.text[self.pos]
            self._advance()
            if ch == '"':
                return "".join(out)
            if ch == "\n":
                raise self.error("newline inside string literal")
            if ch == "\\":
                out.append(self._read_escape())
            else:
                out.append(ch)

    def _read_escape(self) -> str:
        if self.pos >= len(self.text):
            raise self.error("dangling escape at end of input")
        ch = self.text[self.pos]
        self._advance()
        simple = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
        if ch in simple:
            return simple[ch]
        if ch in "uU":
            width = 4 if ch == "u" else 8
            digits = self.text[self.pos : self.pos + width]
            if len(digits) < width or any(d not in "0123456789abcdefABCDEF" for d in digits):
                raise self.error(f"bad \\{ch} escape")
            self._advance(width)
            return chr(int(digits, 16))
        raise self.error(f"unknown escape '\\{ch}'")

    def _read_integer(self) -> str:
        out = []
        if self.text[self.pos] in "+-":
            out.append(self.text[self.pos])
            self._advance()
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            out.append(self.text[self.pos])
            self._advance()
        return "".join(out)

    def _read_bareword(self) -> str:
        out = []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in " \t\r\n<>\"#;,^" or (ch == "." and self._ends_local(out)):
                break
            out.append(ch)
            self._advance()
        # a trailing dot belongs to the statement, not the name
        while out and out[-1] == ".":
            out.pop()
            self.pos -= 1
            self.col -= 1
        return "".join(out)

    def _ends_local(self, out: list[str]) -> bool:
        """A dot followed by whitespace/EOF terminates the statement."""
        nxt = self.text[self.pos + 1 : self.pos + 2]
        return nxt in ("", " ", "\t", "\r", "\n")


class _Parser:
    def __init__(self, text: str):
        self.tok = _Tokenizer(text)
        self.namespaces: dict[str, str] = {}
        self.triples: list[Triple] = []
        self.current: tuple[str, object] = ("", "")
        self._next()

    def _next(self) -> None:
        self.current = self.tok.next_token()

    def _expect_punct(self, symbol: str) -> None:
        if self.current != ("punct", symbol):
            raise self.tok.error(f"expected {symbol!r}, found {self.current[1]!r}")
        self._next()

    def parse(self) -> OntologyGraph:
        while self.current[0] != "eof":
            if self.current[0] == "directive":
                self._prefix_decl()
            else:
                self._triples_block()
        return OntologyGraph.of(self.triples, self.namespaces)

    def _prefix_decl(self) -> None:
        directive = self.current[1]
        if directive != "prefix":
            raise self.tok.error(f"unsupported directive '@{directive}'")
        self._next()
        if self.current[0] != "pname" or not str(self.current[1]).endswith(":"):
            raise self.tok.error("expected 'prefix:' after @prefix")
        prefix = str(self.current[1])[:-1]
        self._next()
        if self.current[0] != "iri":
            raise self.tok.error("expected IRI in @prefix declaration")
        self.namespaces[prefix] = str(self.current[1])
        self._next()
        if self.current == ("punct", "."):
            self._next()

    def _resolve(self, kind: str, value: object) -> str:
        if kind == "iri":
            return str(value)
        if kind == "pname":
            prefix, _, local = str(value).partition(":")
            if prefix not in self.namespaces:
                raise self.tok.error(f"unknown prefix '{prefix}:'")
            return self.namespaces[prefix] + local
        raise self.tok.error(f"expected an IRI, found {value!r}")

    def _triples_block(self) -> None:
        subject = self._resolve(*self.current)
        self._next()
        while True:
            predicate = self._verb()
            self._object_list(subject, predicate)
            if self.current == ("punct", ";"):
                self._next()
                if self.current == ("punct", "."):
                    break
                continue
            break
        self._expect_punct(".")

    def _verb(self) -> str:
        if self.current == ("keyword", "a"):
            self._next()
            return RDF_TYPE
        predicate = self._resolve(*self.current)
        self._next()
        return predicate

    def _object_list(self, subject: str, predicate: str) -> None:
        while True:
            self.triples.append((subject, predicate, self._object()))
            if self.current == ("punct", ","):
                self._next()
                continue
            return

    def _object(self) -> Node:
        kind, value = self.current
        if kind == "string":
            self._next()
            if self.current == ("punct", "^^"):
                self._next()
                datatype = self._resolve(*self.current)
                self._next()
                return Literal(str(value), datatype)
            return Literal(str(value))
        if kind == "integer":
            self._next()
            return Literal(str(value), XSD_INTEGER)
        if kind in ("iri", "pname"):
            iri = self._resolve(kind, value)
            self._next()
            return iri
        raise self.tok.error(f"expected an object, found {value!r}")


def parse_turtle(text: str) -> OntologyGraph:
    return _Parser(text).parse()
