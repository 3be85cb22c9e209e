"""JSON graph documents and CSV output.

A document looks like::

    {"format": "conres/1", "n": 3, "d": 2,
     "edges": [{"u": 1, "v": 2, "w": 1.0, "sigma": [[1.0, 0.0], [0.0, 1.0]]}, ...],
     "metadata": {"name": "...", "description": "..."}}

Floats are written with Python's shortest round-trip representation, so
parsing a written document and writing it again reproduces the same bytes.
"""
from __future__ import annotations

import csv
import io as _io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from . import errors
from .graph import ConnectionGraph, build_graph, make_signature
from .tolerances import ORTH_TOL

FORMAT = "conres/1"


@dataclass(frozen=True)
class GraphDocument:
    """A parsed document: the connection graph plus optional metadata."""

    graph: ConnectionGraph
    metadata: dict[str, Any] = field(default_factory=dict)


def to_dict(cg: ConnectionGraph, metadata: dict[str, Any] | None = None) -> dict[str, Any]:
    edges = [{"u": u, "v": v, "w": float(w), "sigma": [[float(x) for x in row] for row in s]}
             for (u, v, w), s in zip(cg.graph.edges, cg.sigmas)]
    doc: dict[str, Any] = {"format": FORMAT, "n": cg.n, "d": cg.d, "edges": edges}
    if metadata:
        doc["metadata"] = dict(metadata)
    return doc


def dumps(cg: ConnectionGraph, metadata: dict[str, Any] | None = None) -> str:
    """Serialize to the canonical JSON text (two-space indent, trailing newline)."""
    return json.dumps(to_dict(cg, metadata), indent=2) + "\n"


def _require(obj: dict, key: str, kind):
    if key not in obj:
        raise errors.DocumentParseError(f"missing field {key!r}")
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise errors.DocumentParseError(f"field {key!r} must be an integer")
    if kind is float and (isinstance(val, bool) or not isinstance(val, (int, float))):
        raise errors.DocumentParseError(f"field {key!r} must be a number")
    if kind is list and not isinstance(val, list):
        raise errors.DocumentParseError(f"field {key!r} must be a list")
    return val


def from_dict(doc: Any, orth_tol: float = ORTH_TOL) -> GraphDocument:
    """Validate a decoded document.

    Raises:
        DocumentParseError: structural problems (missing fields, wrong types).
        ValidationError: a well-formed document describing an invalid graph.
    """
    if not isinstance(doc, dict):
        raise errors.DocumentParseError("document must be a JSON object")
    fmt = doc.get("format", FORMAT)
    if fmt != FORMAT:
        raise errors.DocumentParseError(f"unsupported format {fmt!r}, expected {FORMAT!r}")
    n = _require(doc, "n", int)
    d = _require(doc, "d", int)
    raw = _require(doc, "edges", list)
    edges, sig = [], []
    for k, e in enumerate(raw):
        if not isinstance(e, dict):
            raise errors.DocumentParseError(f"edge #{k} must be an object")
        u, v = _require(e, "u", int), _require(e, "v", int)
        w = _require(e, "w", float)
        s = _require(e, "sigma", list)
        try:
            m = np.array(s, dtype=float)
        except (TypeError, ValueError) as exc:
            raise errors.DocumentParseError(f"edge #{k}: sigma is not numeric") from exc
        if m.shape != (d, d):
            if m.size == d * d and m.ndim == 1:
                m = m.reshape(d, d)
            else:
                raise errors.DimensionMismatch(f"edge #{k}: sigma has shape {m.shape}, expected {(d, d)}")
        edges.append((u, v, w))
        sig.append(((u, v), m))
    g = build_graph(n, edges)
    meta = doc.get("metadata", {})
    if not isinstance(meta, dict):
        raise errors.DocumentParseError("metadata must be an object")
    return GraphDocument(ConnectionGraph(g, make_signature(d, sig, orth_tol=orth_tol)), meta)


def loads(text: str, orth_tol: float = ORTH_TOL) -> GraphDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise errors.DocumentParseError(f"invalid JSON: {exc}") from exc
    return from_dict(doc, orth_tol=orth_tol)


def load(path: str | Path, orth_tol: float = ORTH_TOL) -> GraphDocument:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise errors.DocumentParseError(f"cannot read {path}: {exc}") from exc
    return loads(text, orth_tol=orth_tol)


def save(path: str | Path, cg: ConnectionGraph, metadata: dict[str, Any] | None = None) -> None:
    Path(path).write_text(dumps(cg, metadata))


def fmt_float(x: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    return "%.17g" % x


def write_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render rows as CSV with LF line endings; floats use :func:`fmt_float`."""
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_float(x) if isinstance(x, (float, np.floating)) else x for x in row])
    return buf.getvalue()


def matrix_csv(m: np.ndarray, row_labels: Sequence[str], col_labels: Sequence[str]) -> str:
    """A labelled matrix as CSV, first column holding the row labels."""
    m = np.atleast_2d(np.asarray(m, dtype=float))
    return write_csv(["row", *col_labels], ([lab, *map(float, r)] for lab, r in zip(row_labels, m)))
