"""Poset text documents, canonical JSON, and DOT export.

The ``poset v1`` text format::

    poset v1
    # anything after a hash is a comment
    elements a b c
    rel a<b
    rel b<c

One ``elements`` line declares the labels in index order; each ``rel x<y``
line relates two distinct declared labels.  Labels are whitespace-free
tokens without ``<`` or ``#``.

JSON output is canonical: compact separators, object keys sorted, subsets
as lexicographically sorted label arrays, nucleus tables as [downset,
image] pairs in canonical downset order, topologies as label-to-sieve-array
objects.  Serializing equal values yields byte-identical text.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import (
    DuplicateLabelError,
    PosetSyntaxError,
    UnknownLabelError,
)
from .nucleus import Nucleus, validate_nucleus
from .poset import DownSet, Poset, Subset, build_poset
from .topology import GrothendieckTopology, validate_topology
from .triangle import TriangleReport

__all__ = [
    "PosetDocument",
    "document_from_poset",
    "export_hasse_dot",
    "load_poset",
    "nucleus_from_jsonable",
    "parse_poset",
    "poset_from_document",
    "render_poset",
    "serialize",
    "subset_from_jsonable",
    "to_jsonable",
    "topology_from_jsonable",
]

_LABEL = re.compile(r"^[^\s<#]+$")


def _check_label(label: str) -> None:
    if not _LABEL.match(label):
        raise ValueError(f"label {label!r} is not a bare token")


@dataclass(frozen=True)
class PosetDocument:
    """Parsed form of a ``poset v1`` file; rendering it back round-trips."""

    labels: tuple[str, ...] = ()
    relations: tuple[tuple[str, str], ...] = ()
    version: str = field(default="1")

    def __post_init__(self):
        if self.version != "1":
            raise ValueError(f"unsupported format version {self.version!r}")
        seen = set()
        for lab in self.labels:
            _check_label(lab)
            if lab in seen:
                raise DuplicateLabelError(lab)
            seen.add(lab)
        for x, y in self.relations:
            if x not in seen:
                raise UnknownLabelError(x)
            if y not in seen:
                raise UnknownLabelError(y)
            if x == y:
                raise ValueError(f"relation {x!r}<{y!r} relates a label to itself")


def parse_poset(text: str) -> PosetDocument:
    """Parse ``poset v1`` text into a document, reporting 1-based line numbers."""
    labels: tuple[str, ...] | None = None
    relations: list[tuple[str, str]] = []
    header_seen = False
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if line.split() != ["poset", "v1"]:
                raise PosetSyntaxError(lineno, "expected header 'poset v1'")
            header_seen = True
            continue
        directive, _, rest = line.partition(" ")
        if directive == "elements":
            if labels is not None:
                raise PosetSyntaxError(lineno, "second 'elements' line")
            toks = rest.split()
            seen: set[str] = set()
            for tok in toks:
                if not _LABEL.match(tok):
                    raise PosetSyntaxError(lineno, f"bad label {tok!r}")
                if tok in seen:
                    raise DuplicateLabelError(tok, lineno)
                seen.add(tok)
            labels = tuple(toks)
        elif directive == "rel":
            if labels is None:
                raise PosetSyntaxError(lineno, "'rel' before 'elements'")
            lhs, sep, rhs = rest.partition("<")
            x, y = lhs.strip(), rhs.strip()
            if not sep or not x or not y or "<" in y:
                raise PosetSyntaxError(lineno, f"expected 'rel x<y', got {rest!r}")
            if x == y:
                raise PosetSyntaxError(lineno, f"'rel {x}<{y}' relates a label to itself")
            for lab in (x, y):
                if lab not in labels:
                    raise UnknownLabelError(lab, lineno)
            relations.append((x, y))
        else:
            raise PosetSyntaxError(lineno, f"unknown directive {directive!r}")
    if not header_seen:
        raise PosetSyntaxError(lineno + 1, "missing header 'poset v1'")
    if labels is None:
        raise PosetSyntaxError(lineno + 1, "missing 'elements' line")
    return PosetDocument(labels=labels, relations=tuple(relations))


def render_poset(doc: PosetDocument) -> str:
    lines = ["poset v1", "elements " + " ".join(doc.labels) if doc.labels else "elements"]
    lines.extend(f"rel {x}<{y}" for x, y in doc.relations)
    return "\n".join(lines) + "\n"


def poset_from_document(doc: PosetDocument) -> Poset:
    return build_poset(doc.labels, doc.relations)


def document_from_poset(poset: Poset) -> PosetDocument:
    """A document whose relations are the covering pairs of the poset."""
    return PosetDocument(
        labels=poset.labels,
        relations=tuple(
            (poset.labels[p], poset.labels[q]) for p, q in poset.covers()
        ),
    )


def load_poset(text: str) -> Poset:
    """Parse and build in one step."""
    return poset_from_document(parse_poset(text))


# -- canonical JSON ---------------------------------------------------------


def to_jsonable(value):
    if isinstance(value, (Subset, Nucleus, GrothendieckTopology, TriangleReport)):
        return value.to_jsonable()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def serialize(value) -> str:
    """Canonical JSON text: sorted keys, no whitespace, deterministic."""
    return json.dumps(to_jsonable(value), sort_keys=True, separators=(",", ":"))


def subset_from_jsonable(poset: Poset, data) -> Subset:
    if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
        raise ValueError("subset must be a JSON array of label strings")
    if len(set(data)) != len(data):
        raise ValueError("subset lists a label twice")
    return Subset.from_members(poset, data)


def nucleus_from_jsonable(poset: Poset, data) -> Nucleus:
    """Parse and validate a nucleus table given as [downset, image] pairs."""
    if not isinstance(data, list):
        raise ValueError("nucleus must be a JSON array of [downset, image] pairs")
    table: list[tuple[DownSet, Subset]] = []
    for entry in data:
        if not isinstance(entry, list) or len(entry) != 2:
            raise ValueError("nucleus entries must be [downset, image] pairs")
        dom = subset_from_jsonable(poset, entry[0])
        if not dom.is_downset():
            raise ValueError(f"table key {dom} is not a downset")
        table.append((DownSet._wrap(poset, dom.mask), subset_from_jsonable(poset, entry[1])))
    return validate_nucleus(poset, table)


def topology_from_jsonable(poset: Poset, data) -> GrothendieckTopology:
    """Parse and validate covering families given as a label-keyed object."""
    if not isinstance(data, dict):
        raise ValueError("topology must be a JSON object keyed by element labels")
    families: dict[str, list[Subset]] = {}
    for label, sieves in data.items():
        if not isinstance(sieves, list):
            raise ValueError(f"families for {label!r} must be an array of sieves")
        families[label] = [subset_from_jsonable(poset, s) for s in sieves]
    return validate_topology(poset, families)


# -- DOT export -------------------------------------------------------------


def _dot_quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_hasse_dot(poset: Poset) -> str:
    """DOT digraph of the covering relation, edges pointing upward."""
    lines = ["digraph hasse {", "  rankdir=BT;"]
    lines.extend(f"  {_dot_quote(lab)};" for lab in poset.labels)
    lines.extend(
        f"  {_dot_quote(poset.labels[p])} -> {_dot_quote(poset.labels[q])};"
        for p, q in poset.covers()
    )
    lines.append("}")
    return "\n".join(lines) + "\n"
