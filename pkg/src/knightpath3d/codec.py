"""Tour serialisation: JSON documents, layer tables and OBJ polylines.

Layer tables stack z-layers labelled A, B, C, ...; inside a layer rows run
over y (top row y = 0) and columns over x.  Visited cells show their 0-based
visit index and empty cells a dot::

    box 2x2x3 closed
    A
    0 .
    . 2

    B
    . .
    . .

    C
    . 1
    3 .
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from .lattice import Box, Cell
from .tour import Tour, verify

SCHEMA = "knightpath3d.tour/1"


class DocumentError(ValueError):
    pass


class LayerParseError(ValueError):
    """Malformed layer table; ``kind`` and ``entry`` name the offending item."""

    def __init__(self, kind: str, entry: Any, detail: str = ""):
        self.kind = kind
        self.entry = entry
        msg = f"{kind}({entry})"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class UnverifiedTourError(ValueError):
    pass


def require_verified(tour: Tour) -> None:
    report = verify(tour)
    if not report.ok:
        shown = ", ".join(str(v) for v in report.violations[:5])
        raise UnverifiedTourError(f"tour fails verification: {shown}")


# -- documents ----------------------------------------------------------------


@dataclass
class TourDocument:
    tour: Tour
    metadata: dict[str, Any] = field(default_factory=dict)
    schema: str = SCHEMA


def encode_document(tour: Tour | TourDocument, metadata: Optional[dict[str, Any]] = None) -> str:
    """Canonical JSON text: fixed key order, one cell per line, sorted metadata."""
    if isinstance(tour, TourDocument):
        metadata = tour.metadata if metadata is None else metadata
        tour = tour.tour
    meta = json.dumps(metadata or {}, sort_keys=True)
    lines = [
        "{",
        f'  "schema": {json.dumps(SCHEMA)},',
        f'  "box": [{tour.box.nx}, {tour.box.ny}, {tour.box.nz}],',
        f'  "closed": {json.dumps(tour.closed)},',
    ]
    if tour.cells:
        lines.append('  "cells": [')
        rows = [f"    [{c.x}, {c.y}, {c.z}]" for c in tour.cells]
        lines.append(",\n".join(rows))
        lines.append("  ],")
    else:
        lines.append('  "cells": [],')
    lines.append(f'  "metadata": {meta}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _int_triple(value: Any, what: str) -> tuple[int, int, int]:
    if (
        not isinstance(value, list)
        or len(value) != 3
        or any(isinstance(v, bool) or not isinstance(v, int) for v in value)
    ):
        raise DocumentError(f"{what} must be a list of three integers, got {value!r}")
    return tuple(value)  # type: ignore[return-value]


def decode_document(text: str) -> TourDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not a JSON document: {exc}") from None
    if not isinstance(raw, dict):
        raise DocumentError("tour document must be a JSON object")
    schema = raw.get("schema")
    if schema != SCHEMA:
        raise DocumentError(f"unknown schema version {schema!r} (expected {SCHEMA!r})")
    try:
        box = Box(*_int_triple(raw.get("box"), "box"))
    except DocumentError:
        raise
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    closed = raw.get("closed")
    if not isinstance(closed, bool):
        raise DocumentError("'closed' must be true or false")
    cells_raw = raw.get("cells")
    if not isinstance(cells_raw, list):
        raise DocumentError("'cells' must be a list")
    cells = [_int_triple(c, f"cell {i}") for i, c in enumerate(cells_raw)]
    metadata = raw.get("metadata", {})
    if not isinstance(metadata, dict):
        raise DocumentError("'metadata' must be an object")
    return TourDocument(Tour(box, cells, closed), metadata, schema)


# -- layer tables -------------------------------------------------------------


def layer_label(z: int) -> str:
    """A, B, ..., Z, AA, AB, ... (spreadsheet style)."""
    label = ""
    z += 1
    while z:
        z, rem = divmod(z - 1, 26)
        label = chr(ord("A") + rem) + label
    return label


def render_layers(tour: Tour) -> str:
    require_verified(tour)
    box = tour.box
    order = {c: i for i, c in enumerate(tour.cells)}
    width = len(str(max(len(tour.cells) - 1, 0)))
    kind = "closed" if tour.closed else "open"
    out = [f"box {box} {kind}"]
    for z in range(box.nz):
        if z:
            out.append("")
        out.append(layer_label(z))
        for y in range(box.ny):
            entries = []
            for x in range(box.nx):
                idx = order.get(Cell(x, y, z))
                entries.append(("." if idx is None else str(idx)).rjust(width))
            out.append(" ".join(entries))
    return "\n".join(out) + "\n"


def parse_layers(text: str) -> Tour:
    """Rebuild a tour from :func:`render_layers` output.

    Parsing is purely syntactic: the result is not verified.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise LayerParseError("BadHeader", "", "empty input")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "box" or head[2] not in ("open", "closed"):
        raise LayerParseError("BadHeader", lines[0], "expected 'box MxNxK open|closed'")
    try:
        box = Box.parse(head[1])
    except ValueError as exc:
        raise LayerParseError("BadHeader", head[1], str(exc)) from None
    closed = head[2] == "closed"

    body = lines[1:]
    block = box.ny + 1
    if len(body) != box.nz * block:
        raise LayerParseError(
            "DimsMismatch", f"{len(body)} lines",
            f"box {box} needs {box.nz} layers of {box.ny} rows plus a label",
        )
    placed: dict[int, Cell] = {}
    for z in range(box.nz):
        label = body[z * block]
        if label != layer_label(z):
            raise LayerParseError("BadLabel", label, f"expected layer {layer_label(z)}")
        for y in range(box.ny):
            entries = body[z * block + 1 + y].split()
            if len(entries) != box.nx:
                raise LayerParseError(
                    "DimsMismatch", f"layer {label} row {y}",
                    f"{len(entries)} entries, expected {box.nx}",
                )
            for x, tok in enumerate(entries):
                if tok == ".":
                    continue
                if not tok.isdigit():
                    raise LayerParseError("BadEntry", tok, f"layer {label} row {y} column {x}")
                idx = int(tok)
                if idx in placed:
                    raise LayerParseError("RepeatedIndex", idx)
                placed[idx] = Cell(x, y, z)
    for k in range(len(placed)):
        if k not in placed:
            raise LayerParseError("MissingIndex", k, "visit numbers must run 0, 1, 2, ...")
    return Tour(box, [placed[k] for k in range(len(placed))], closed)


# -- polyline -----------------------------------------------------------------


def export_polyline(tour: Tour) -> str:
    """Wavefront OBJ: one vertex per visited cell, one line element per jump."""
    require_verified(tour)
    kind = "closed" if tour.closed else "open"
    out = [f"# knight tour {tour.box} {kind}, {tour.length} jumps", "o knight_tour"]
    out.extend(f"v {c.x} {c.y} {c.z}" for c in tour.cells)
    n = len(tour.cells)
    out.extend(f"l {i + 1} {i + 2}" for i in range(n - 1))
    if tour.closed and n >= 3:
        out.append(f"l {n} 1")
    return "\n".join(out) + "\n"


def read_tour(text: str) -> TourDocument:
    """Accept either a JSON document or a layer table."""
    if text.lstrip().startswith("{"):
        return decode_document(text)
    return TourDocument(parse_layers(text))
