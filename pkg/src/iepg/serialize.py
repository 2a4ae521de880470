"""Text formats for spectra, graphs, matrices and reports.

Floats are always written with 17 significant digits, so a matrix read
back from its own JSON re-emits identical bytes.
"""

from __future__ import annotations

import json
import math
import os
import re
from typing import Any

import numpy as np

from .core import IEPGError, Spectrum, StructuralError, SymMatrix
from .graphs import GraphSpec


class ParseError(IEPGError, ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


_NUMBER = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_ITEM = re.compile(rf"^({_NUMBER})(?:\^(\d+))?$")


def _items(text: str):
    """Yield ``(item, line, column)`` for each comma-separated item."""
    offset = 0
    for raw in text.split(","):
        lead = len(raw) - len(raw.lstrip())
        at = offset + lead
        line = text.count("\n", 0, at) + 1
        column = at - (text.rfind("\n", 0, at) + 1) + 1
        yield raw.strip(), line, column
        offset += len(raw) + 1


def parse_spectrum(text: str) -> Spectrum:
    """Comma-separated values; ``v^m`` repeats ``v`` ``m`` times."""
    values: list[float] = []
    for item, line, col in _items(text):
        match = _ITEM.match(item)
        if not match:
            raise ParseError(f"bad spectrum entry {item!r}", line, col)
        count = int(match.group(2)) if match.group(2) else 1
        if count < 1:
            raise ParseError(f"multiplicity must be >= 1 in {item!r}", line, col)
        values.extend([float(match.group(1))] * count)
    return Spectrum(values)


def parse_floats(text: str, what: str = "list") -> list[float]:
    out = []
    for item, line, col in _items(text):
        if not re.fullmatch(_NUMBER, item):
            raise ParseError(f"bad {what} entry {item!r}", line, col)
        out.append(float(item))
    return out


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def parse_graph_json(text: str) -> GraphSpec:
    doc = _load_json(text)
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise ParseError('graph JSON must be an object with "n" and "edges"')
    n, edges = doc["n"], doc["edges"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError('"n" must be an integer')
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        for e in edges
    ):
        raise ParseError('"edges" must be a list of [i, j] integer pairs')
    try:
        return GraphSpec(n, edges)
    except StructuralError as exc:
        raise ParseError(str(exc)) from None


def parse_matrix_json(text: str) -> SymMatrix:
    doc = _load_json(text)
    if isinstance(doc, dict) and "matrix" in doc and "rows" not in doc:
        doc = doc["matrix"]  # accept full command output as input
    if not isinstance(doc, dict) or "rows" not in doc:
        raise ParseError('matrix JSON must be an object with "n" and "rows"')
    rows = doc["rows"]
    n = doc.get("n", len(rows) if isinstance(rows, list) else None)
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError('"rows" must be a list of lists')
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f'"rows" must be {n} rows of {n} numbers')
    for r in rows:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise ParseError(f"non-numeric matrix entry {x!r}")
    try:
        return SymMatrix(np.array(rows, dtype=float))
    except StructuralError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------


def fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise StructuralError(f"cannot serialize non-finite value {x!r}")
    return format(x + 0.0, ".17g")  # + 0.0 folds -0.0 into 0.0


def _scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    if isinstance(v, str):
        return json.dumps(v)
    raise TypeError(f"cannot serialize {type(v).__name__}")


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON; lists of scalars stay on one line."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(_scalar(v) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in seq) + "\n" + end + "]"
    return _scalar(obj)


def matrix_to_obj(m: SymMatrix) -> dict:
    return {"n": m.n, "rows": [[float(x) for x in row] for row in m.entries]}


def graph_to_obj(g: GraphSpec) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


def emit_matrix_json(m: SymMatrix) -> str:
    return dumps(matrix_to_obj(m)) + "\n"


def emit_graph_json(g: GraphSpec) -> str:
    return dumps(graph_to_obj(g)) + "\n"


def output_precision(default: int = 6) -> int:
    """Digits for the plain-text rendering; ``IEPG_PRECISION`` overrides."""
    raw = os.environ.get("IEPG_PRECISION")
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return min(max(value, 1), 17)


def render_matrix_text(m: SymMatrix, digits: int | None = None) -> str:
    digits = output_precision() if digits is None else digits
    cells = [[format(float(x) + 0.0, f".{digits}g") for x in row] for row in m.entries]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells) + "\n"
