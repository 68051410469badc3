"""JSON complex files and DOT/JSON/CSV/SVG emitters."""
from __future__ import annotations

import json
from typing import Any, Optional

from .complex import Cell, Filter, LefschetzComplex, check_filter, perturb_ties, validate_complex
from .depth import DepthPoset


class FormatError(ValueError):
    pass


def _field(obj: dict, key: str, where: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"{where}: missing field '{key}'")
    return obj[key]


def _parse_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None


def parse_complex(
    text: str,
    filter_text: Optional[str] = None,
    perturb: bool = False,
    source: str = "<complex>",
) -> tuple[LefschetzComplex, Optional[Filter]]:
    """Parse a complex file; the filter comes from cell values or ``filter_text``.

    Every structural and filter invariant is enforced; the first violation is
    raised as FormatError. Returns ``None`` for the filter when no values exist.
    """
    doc = _parse_json(text, source)
    cells_doc = _field(doc, "cells", source)
    if not isinstance(cells_doc, list):
        raise FormatError(f"{source}: 'cells' must be a list")
    cells, values = [], []
    for k, c in enumerate(cells_doc):
        where = f"{source}: cells[{k}]"
        cid = _field(c, "id", where)
        dim = _field(c, "dim", where)
        if not isinstance(cid, int) or isinstance(cid, bool) or cid != k:
            raise FormatError(f"{where}.id: expected {k}, got {cid!r}")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise FormatError(f"{where}.dim: expected a non-negative integer, got {dim!r}")
        label = c.get("label")
        if label is not None and not isinstance(label, str):
            raise FormatError(f"{where}.label: expected a string")
        value = c.get("value")
        if value is not None and (not isinstance(value, (int, float)) or isinstance(value, bool)):
            raise FormatError(f"{where}.value: expected a number, got {value!r}")
        cells.append(Cell(k, dim, label))
        values.append(value)

    incidence = []
    for k, pair in enumerate(doc.get("incidence", [])):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
        ):
            raise FormatError(f"{source}: incidence[{k}]: expected [facet_id, cofacet_id]")
        if not all(0 <= v < len(cells) for v in pair):
            raise FormatError(f"{source}: incidence[{k}]: unknown cell id in {pair}")
        incidence.append(tuple(pair))
    complex = LefschetzComplex(tuple(cells), frozenset(incidence))
    problems = validate_complex(complex)
    if problems:
        raise FormatError(f"{source}: {problems[0]}")

    if filter_text is not None:
        values = _filter_values(complex, _parse_json(filter_text, "<filter>"))
    if values and all(v is None for v in values):
        return complex, None
    missing = [complex.name(i) for i, v in enumerate(values) if v is None]
    if missing:
        raise FormatError(f"{source}: no value for cell {missing[0]}")
    filter = perturb_ties(complex, values) if perturb else Filter(tuple(values))
    problems = check_filter(complex, filter)
    if problems:
        hint = " (use --perturb to break ties)" if problems[0].startswith("tie") else ""
        raise FormatError(f"{source}: {problems[0]}{hint}")
    return complex, filter


def _filter_values(complex: LefschetzComplex, doc: Any) -> list:
    """Filter files hold ``{"values": [...]}`` by id or ``{"values": {label: v}}``."""
    vals = _field(doc, "values", "<filter>")
    if isinstance(vals, list):
        if len(vals) != len(complex):
            raise FormatError(f"<filter>: {len(vals)} values for {len(complex)} cells")
        return list(vals)
    if isinstance(vals, dict):
        out: list = [None] * len(complex)
        for key, v in vals.items():
            try:
                i = complex.by_label(key)
            except KeyError:
                if not key.isdigit() or int(key) >= len(complex):
                    raise FormatError(f"<filter>: values.{key}: unknown cell") from None
                i = int(key)
            out[i] = v
        return out
    raise FormatError("<filter>: 'values' must be a list or an object")


def load_complex(path: str, filter_path: Optional[str] = None, perturb: bool = False):
    with open(path) as fh:
        text = fh.read()
    filter_text = None
    if filter_path is not None:
        with open(filter_path) as fh:
            filter_text = fh.read()
    return parse_complex(text, filter_text, perturb, source=path)


def dump_complex(complex: LefschetzComplex, filter: Optional[Filter] = None) -> str:
    cells = []
    for c in complex.cells:
        entry: dict[str, Any] = {"id": c.id, "dim": c.dim}
        if c.label is not None:
            entry["label"] = c.label
        if filter is not None:
            entry["value"] = filter[c.id]
        cells.append(entry)
    cell_lines = ",\n".join("  " + json.dumps(c) for c in cells)
    inc_lines = ",\n".join("  " + json.dumps(list(p)) for p in sorted(complex.incidence))
    return f'{{"cells": [\n{cell_lines}\n],\n"incidence": [\n{inc_lines}\n]}}\n'


def pair_label(complex: LefschetzComplex, cells: tuple[int, int]) -> str:
    return f"({complex.name(cells[0])},{complex.name(cells[1])})"


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(poset: DepthPoset, complex: LefschetzComplex) -> str:
    """Hasse diagram as a DOT digraph, nodes in increasing birth value."""
    lines = ["digraph depth_poset {", "  rankdir=BT;"]
    for i, p in enumerate(poset.elements):
        lines.append(f"  n{i} [label={_dot_quote(f'{pair_label(complex, p.cells)} p={p.dim}')}];")
    for i, j in sorted(poset.hasse):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_closure_json(poset: DepthPoset, complex: LefschetzComplex, filter: Filter) -> str:
    doc = {
        "elements": [
            {
                "id": i,
                "birth": complex.name(p.birth),
                "death": complex.name(p.death),
                "dim": p.dim,
                "birth_value": filter[p.birth],
                "death_value": filter[p.death],
                "persistence": p.persistence,
            }
            for i, p in enumerate(poset.elements)
        ],
        "closure": [list(e) for e in sorted(poset.closure)],
        "hasse": [list(e) for e in sorted(poset.hasse)],
    }
    return json.dumps(doc, indent=1) + "\n"


POINT_HEADER = "birth_value,death_value,dim,pair_id"
ARC_HEADER = "pair_id_from,pair_id_to"


def emit_annotated_diagram(poset: DepthPoset, filter: Filter) -> str:
    """Persistence diagram points followed by one arc row per Hasse edge."""
    lines = [POINT_HEADER]
    for i, p in enumerate(poset.elements):
        lines.append(f"{filter[p.birth]!r},{filter[p.death]!r},{p.dim},{i}")
    lines.append(ARC_HEADER)
    for i, j in sorted(poset.hasse):
        lines.append(f"{i},{j}")
    return "\n".join(lines) + "\n"


def parse_annotated_diagram(text: str) -> tuple[list[tuple[float, float, int, int]], list[tuple[int, int]]]:
    points, arcs = [], []
    section = None
    for line in text.splitlines():
        if line == POINT_HEADER:
            section = points
        elif line == ARC_HEADER:
            section = arcs
        elif line:
            fields = line.split(",")
            if section is points:
                points.append((float(fields[0]), float(fields[1]), int(fields[2]), int(fields[3])))
            else:
                arcs.append((int(fields[0]), int(fields[1])))
    return points, arcs


_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def emit_svg(poset: DepthPoset, filter: Filter, size: int = 400) -> str:
    """Static persistence diagram with depth-poset arcs."""
    pad = 30
    vals = [filter[c] for p in poset.elements for c in p.cells]
    lo, hi = (min(vals), max(vals)) if vals else (0.0, 1.0)
    span = (hi - lo) or 1.0

    def sx(v: float) -> float:
        return pad + (v - lo) / span * (size - 2 * pad)

    def sy(v: float) -> float:
        return size - pad - (v - lo) / span * (size - 2 * pad)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<line x1="{sx(lo):.2f}" y1="{sy(lo):.2f}" x2="{sx(hi):.2f}" y2="{sy(hi):.2f}" stroke="#999"/>',
    ]
    for i, j in sorted(poset.hasse):
        a, b = poset.elements[i], poset.elements[j]
        out.append(
            f'<line x1="{sx(filter[a.birth]):.2f}" y1="{sy(filter[a.death]):.2f}" '
            f'x2="{sx(filter[b.birth]):.2f}" y2="{sy(filter[b.death]):.2f}" stroke="#555"/>'
        )
    for i, p in enumerate(poset.elements):
        color = _PALETTE[p.dim % len(_PALETTE)]
        out.append(
            f'<circle cx="{sx(filter[p.birth]):.2f}" cy="{sy(filter[p.death]):.2f}" r="4" fill="{color}">'
            f"<title>{i}</title></circle>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
