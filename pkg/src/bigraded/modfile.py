"""Module file format: a line-oriented plain-text syntax plus an equivalent
JSON form.

Text sample (whitespace insignificant; the canonical fixture):

    ring { p: 32003, m: 2, n: 2 }
    module {
      twists: [[0, 0]],
      relations: [["x1^2", "x1*x2"]],
    }

`relations[r][c]` is the polynomial in row r (ambient component r) of
relation column c.  A JSON document with the same keys is accepted when the
file starts with '{'.
"""

from __future__ import annotations

import json
import re

from .groebner import PresentedModule
from .ring import (
    FreeModule,
    Matrix,
    NotBihomogeneousError,
    PolynomialParseError,
    Ring,
    Vector,
    parse_polynomial,
)


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        location = "" if line is None else " at line %d, column %d" % (line, column)
        super().__init__(message + location)
        self.line = line
        self.column = column


class DegreeInconsistentError(ValueError):
    def __init__(self, column_index, message):
        super().__init__("relation column %d: %s" % (column_index, message))
        self.column_index = column_index


_TOKEN = re.compile(r'"(?:[^"\\]|\\.)*"|[A-Za-z_][A-Za-z_0-9]*|-?\d+|[{}\[\]:,]')


def _tokenize(text):
    tokens = []
    line = 1
    col = 1
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            line += 1
            col = 1
            pos += 1
            continue
        if ch in " \t\r":
            pos += 1
            col += 1
            continue
        if ch == "#":
            while pos < len(text) and text[pos] != "\n":
                pos += 1
            continue
        mobj = _TOKEN.match(text, pos)
        if not mobj:
            raise ParseError("unexpected character %r" % ch, line, col)
        tok = mobj.group(0)
        tokens.append((tok, line, col))
        col += len(tok)
        pos = mobj.end()
    return tokens


def _parse_text_document(text):
    tokens = _tokenize(text)
    idx = 0

    def error(message):
        if idx < len(tokens):
            _, line, col = tokens[idx]
        else:
            line = col = None
        raise ParseError(message, line, col)

    def peek():
        return tokens[idx][0] if idx < len(tokens) else None

    def take(expected=None):
        nonlocal idx
        if idx >= len(tokens):
            error("unexpected end of file")
        tok = tokens[idx][0]
        if expected is not None and tok != expected:
            error("expected %r, found %r" % (expected, tok))
        idx += 1
        return tok

    def parse_value():
        tok = peek()
        if tok is None:
            error("unexpected end of file")
        if tok == "[":
            take()
            items = []
            while peek() != "]":
                items.append(parse_value())
                if peek() == ",":
                    take()
                elif peek() != "]":
                    error("expected ',' or ']'")
            take("]")
            return items
        if tok.startswith('"'):
            take()
            return json.loads(tok)
        if re.fullmatch(r"-?\d+", tok):
            take()
            return int(tok)
        error("expected a value, found %r" % tok)

    document = {}
    while idx < len(tokens):
        name = take()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            error("expected a section name")
        take("{")
        section = {}
        while peek() != "}":
            key = take()
            take(":")
            section[key] = parse_value()
            if peek() == ",":
                take()
            elif peek() != "}":
                error("expected ',' or '}'")
        take("}")
        document[name] = section
    return document


def parse_module_file(text: str, field_override: int = None) -> PresentedModule:
    """Parse and validate a module file (text or JSON); every relation entry
    must be bihomogeneous with consistent column degrees."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            document = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError("invalid JSON: %s" % exc)
    else:
        document = _parse_text_document(text)
    if "ring" not in document or "module" not in document:
        raise ParseError("file must contain 'ring' and 'module' sections")
    ring_spec = document["ring"]
    for key in ("p", "m", "n"):
        if key not in ring_spec:
            raise ParseError("ring section is missing %r" % key)
    p = int(field_override if field_override is not None else ring_spec["p"])
    try:
        ring = Ring(p, int(ring_spec["m"]), int(ring_spec["n"]))
    except ValueError as exc:
        raise ParseError(str(exc))
    module_spec = document["module"]
    twists = module_spec.get("twists")
    if not isinstance(twists, list) or not all(
        isinstance(t, list) and len(t) == 2 for t in twists
    ):
        raise ParseError("module.twists must be a list of [a, b] pairs")
    ambient = FreeModule(ring, tuple((int(a), int(b)) for a, b in twists))
    rows = module_spec.get("relations", [])
    if rows and len(rows) != ambient.rank:
        raise ParseError(
            "relations matrix has %d rows, ambient rank is %d"
            % (len(rows), ambient.rank)
        )
    ncols = max((len(r) for r in rows), default=0)
    columns = []
    for c in range(ncols):
        entries = {}
        for r, row in enumerate(rows):
            text_entry = row[c] if c < len(row) else "0"
            try:
                poly = parse_polynomial(ring, str(text_entry))
            except PolynomialParseError as exc:
                raise ParseError("relation (%d,%d): %s" % (r, c, exc))
            for e, coeff in poly.terms:
                entries[(r, e)] = coeff
        vector = Vector(ambient, entries)
        if vector.is_zero:
            continue
        try:
            vector.bidegree()
        except NotBihomogeneousError as exc:
            raise DegreeInconsistentError(c, str(exc))
        columns.append(vector)
    return PresentedModule(ambient, Matrix.from_columns(ambient, columns))


def module_to_document(M: PresentedModule) -> dict:
    ring = M.ring
    rows = []
    for r in range(M.ambient.rank):
        rows.append(
            [str(col.entry(r)) for col in M.relations.columns]
        )
    return {
        "ring": {"p": ring.p, "m": ring.m, "n": ring.n},
        "module": {
            "twists": [list(t) for t in M.ambient.twists],
            "relations": rows,
        },
    }


def module_to_text(M: PresentedModule) -> str:
    doc = module_to_document(M)
    ring = doc["ring"]
    lines = ["ring { p: %d, m: %d, n: %d }" % (ring["p"], ring["m"], ring["n"])]
    lines.append("module {")
    lines.append(
        "  twists: [%s]," % ", ".join("[%d, %d]" % (a, b) for a, b in doc["module"]["twists"])
    )
    rows = doc["module"]["relations"]
    if any(rows):
        rendered = []
        for row in rows:
            rendered.append("[" + ", ".join(json.dumps(e) for e in row) + "]")
        lines.append("  relations: [%s]," % ", ".join(rendered))
    else:
        lines.append("  relations: [],")
    lines.append("}")
    return "\n".join(lines) + "\n"


def module_to_json(M: PresentedModule) -> str:
    return json.dumps(module_to_document(M), indent=2, sort_keys=True) + "\n"
