"""JSON document format for spaces and codes.

Layout::

    {"version": 1,
     "spaces": {name: {"kind": "edge"|"labeled",
                       "vertices": [ids],
                       "edges": [{"id","from","to","label"}]}},
     "codes": {name: {"domain", "codomain", "memory", "anticipation",
                      "map": {word: symbol}}}}

Words are symbol ids joined by "."; all ids are strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .codes import BlockCode
from .points import format_word, parse_word
from .presentation import Edge, LabeledPresentation, ShiftSpace, EDGE, LABELED


class DocumentError(ValueError):
    """Malformed document."""


@dataclass(frozen=True)
class Document:
    spaces: dict  # name -> ShiftSpace
    codes: dict  # name -> BlockCode


def space_to_json(x: ShiftSpace) -> dict:
    names = {v: f"v{i}" for i, v in enumerate(x.presentation.vertices)}
    return {
        "kind": x.kind,
        "vertices": [names[v] for v in x.presentation.vertices],
        "edges": [
            {
                "id": str(e.eid) if x.kind != EDGE else _edge_name(e, i),
                "from": names[e.src],
                "to": names[e.dst],
                "label": _edge_name(e, i) if x.kind == EDGE else str(e.label),
            }
            for i, e in enumerate(x.presentation.edges)
        ],
    }


def _edge_name(e: Edge, i: int) -> str:
    return str(e.eid)


def space_from_json(obj: dict, name: str) -> ShiftSpace:
    try:
        kind = obj["kind"]
        vertices = list(obj["vertices"])
        edges = [
            (e["id"], e["from"], e["to"], e.get("label", e["id"]))
            for e in obj["edges"]
        ]
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"space {name!r}: {exc}") from exc
    if kind not in (EDGE, LABELED):
        raise DocumentError(f"space {name!r}: bad kind {kind!r}")
    try:
        pres = LabeledPresentation.build(vertices, edges)
    except ValueError as exc:
        raise DocumentError(f"space {name!r}: {exc}") from exc
    if kind == EDGE:
        return ShiftSpace.edge_shift(pres)
    return ShiftSpace.labeled(pres)


def code_to_json(c: BlockCode, domain_name: str, codomain_name: str) -> dict:
    return {
        "domain": domain_name,
        "codomain": codomain_name,
        "memory": c.memory,
        "anticipation": c.anticipation,
        "map": {format_word(w): str(s) for w, s in c.table},
    }


def document_to_json(doc: Document) -> dict:
    spaces = {name: space_to_json(x) for name, x in doc.spaces.items()}
    names = {}
    for n, x in doc.spaces.items():
        names.setdefault(x, n)
    codes = {}
    for cname, c in doc.codes.items():
        codes[cname] = code_to_json(
            c, names.get(c.domain, "?"), names.get(c.codomain, "?")
        )
    return {"version": 1, "spaces": spaces, "codes": codes}


def document_from_json(obj: dict) -> Document:
    if not isinstance(obj, dict) or obj.get("version") != 1:
        raise DocumentError("missing or unsupported version")
    spaces = {}
    for name, sobj in obj.get("spaces", {}).items():
        spaces[name] = space_from_json(sobj, name)
    codes = {}
    for name, cobj in obj.get("codes", {}).items():
        try:
            dom = spaces[cobj["domain"]]
            cod = spaces[cobj["codomain"]]
            memory = int(cobj["memory"])
            anticipation = int(cobj["anticipation"])
            mapping = {
                parse_word(k): v for k, v in cobj["map"].items()
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"code {name!r}: {exc}") from exc
        codes[name] = BlockCode.make(dom, cod, memory, anticipation, mapping)
    return Document(spaces, codes)


def load_document(path) -> Document:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(str(exc)) from exc
    return document_from_json(obj)


def save_document(doc: Document, path):
    with open(path, "w") as fh:
        json.dump(document_to_json(doc), fh, indent=2, sort_keys=True)
        fh.write("\n")


def cross_section_to_json(table) -> dict:
    return {
        "p": table.p,
        "n": table.n,
        "d": table.d,
        "order": table.order_rule,
        "tables": {
            format_word(w): [format_word(g) for g in rows]
            for w, rows in table.tables
        },
    }
