"""Deterministic text formats for frames, tables, and grids.

All floats are written with 17 significant digits, enough to round-trip
IEEE doubles exactly, and the JSON writer emits keys in insertion order
with no whitespace, so identical data always produces identical bytes.

Formats:
  frame JSON     {"d", "N", "vectors"} with vectors[i][j] = [re, im]
                 (column i, coordinate j); batch files are one frame
                 per line (.jsonl), records add diagnostic keys
  H-rep JSON     {"d", "N", "order", "A", "b", "labels"}
  torus JSON     {"order", "angles"}
  table CSV      N rows of d comma-separated values, row k on line k
  grid CSV       "# key=value ..." metadata line, then data rows
"""

from __future__ import annotations

import json

import numpy as np

from .eigensteps import EigenstepTable
from .frames import Frame
from .polytope import BoundingBox, PolytopeHRep
from .torus import TorusElement

__all__ = [
    "fmt",
    "dumps",
    "frame_to_obj",
    "frame_from_obj",
    "record_to_obj",
    "hrep_to_obj",
    "torus_to_obj",
    "table_to_csv",
    "table_from_csv",
    "grid_to_csv",
    "grid_from_csv",
    "histogram_to_csv",
    "histogram_from_csv",
]


def fmt(x: float) -> str:
    """One float as text, 17 significant digits."""
    x = float(x)
    if not np.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return format(x, ".17g")


def dumps(obj) -> str:
    """Compact JSON with deterministic float formatting and key order."""
    parts = []
    _write(obj, parts)
    return "".join(parts)


def _write(obj, parts):
    if isinstance(obj, dict):
        parts.append("{")
        for i, (key, val) in enumerate(obj.items()):
            if i:
                parts.append(",")
            parts.append(json.dumps(str(key)))
            parts.append(":")
            _write(val, parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        parts.append("[")
        for i, val in enumerate(obj):
            if i:
                parts.append(",")
            _write(val, parts)
        parts.append("]")
    elif isinstance(obj, (bool, np.bool_)):
        parts.append("true" if obj else "false")
    elif obj is None:
        parts.append("null")
    elif isinstance(obj, (int, np.integer)):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        parts.append(fmt(obj))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def frame_to_obj(frame: Frame) -> dict:
    vectors = [
        [[float(z.real), float(z.imag)] for z in frame.vectors[:, i]]
        for i in range(frame.N)
    ]
    return {"d": frame.d, "N": frame.N, "vectors": vectors}


def frame_from_obj(obj: dict) -> Frame:
    """Frame from a parsed frame or record object."""
    try:
        d, n = int(obj["d"]), int(obj["N"])
        raw = obj["vectors"]
        cols = np.empty((d, n), dtype=np.complex128)
        for i in range(n):
            for j in range(d):
                re, im = raw[i][j]
                cols[j, i] = complex(re, im)
    except (KeyError, TypeError, ValueError, IndexError) as err:
        raise ValueError(f"malformed frame object: {err}") from err
    return Frame(cols)


def record_to_obj(record) -> dict:
    """Sample record as a JSON object: frame keys plus diagnostics."""
    obj = frame_to_obj(record.frame)
    obj["eigensteps"] = [float(v) for v in record.eigensteps.values]
    obj["angles"] = [float(a) for a in record.angles.angles]
    obj["coherence"] = record.coherence
    obj["tight_residual"] = record.tight_residual
    obj["unit_norm_dev"] = record.unit_norm_dev
    if record.full_spark is not None:
        obj["full_spark"] = bool(record.full_spark)
    return obj


def hrep_to_obj(h: PolytopeHRep, box: BoundingBox | None = None) -> dict:
    obj = {
        "d": h.d,
        "N": h.N,
        "order": [[k, j] for k, j in h.index_set.pairs],
        "A": [[float(v) for v in row] for row in h.A],
        "b": [float(v) for v in h.b],
        "labels": list(h.labels),
    }
    if box is not None:
        obj["box"] = {"lo": [float(v) for v in box.lo], "hi": [float(v) for v in box.hi]}
    return obj


def torus_to_obj(theta: TorusElement) -> dict:
    return {
        "order": [[k, j] for k, j in theta.index_set.pairs],
        "angles": [float(a) for a in theta.angles],
    }


def table_to_csv(table: EigenstepTable) -> str:
    lines = [",".join(fmt(v) for v in row) for row in table.mu]
    return "\n".join(lines) + "\n"


def table_from_csv(text: str) -> EigenstepTable:
    rows = [
        [float(tok) for tok in line.split(",")]
        for line in text.strip().splitlines()
        if line.strip()
    ]
    mu = np.asarray(rows, dtype=np.float64)
    return EigenstepTable(d=mu.shape[1], N=mu.shape[0], mu=mu)


def _meta_line(meta: dict) -> str:
    toks = []
    for key, val in meta.items():
        if isinstance(val, float):
            val = fmt(val)
        toks.append(f"{key}={val}")
    return "# " + " ".join(toks)


def _parse_meta(line: str) -> dict:
    meta = {}
    for tok in line.lstrip("#").split():
        if "=" in tok:
            key, val = tok.split("=", 1)
            meta[key] = val
    return meta


def grid_to_csv(matrix: np.ndarray, meta: dict) -> str:
    """Dense matrix CSV with a leading '# key=value ...' metadata line."""
    lines = [_meta_line(meta)]
    for row in np.atleast_2d(matrix):
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def grid_from_csv(text: str):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError("grid CSV must start with a '# key=value' metadata line")
    meta = _parse_meta(lines[0])
    matrix = np.array(
        [[float(tok) for tok in ln.split(",")] for ln in lines[1:]], dtype=np.float64
    )
    return matrix, meta


def histogram_to_csv(edges, counts, meta: dict) -> str:
    """Histogram CSV: metadata line, column header, one row per bin."""
    lines = [_meta_line(meta), "bin_lo,bin_hi,count"]
    for i in range(len(counts)):
        lines.append(f"{fmt(edges[i])},{fmt(edges[i + 1])},{int(counts[i])}")
    return "\n".join(lines) + "\n"


def histogram_from_csv(text: str):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2 or not lines[0].startswith("#"):
        raise ValueError("histogram CSV must start with metadata and a header")
    meta = _parse_meta(lines[0])
    lo, hi, counts = [], [], []
    for ln in lines[2:]:
        a, b, c = ln.split(",")
        lo.append(float(a))
        hi.append(float(b))
        counts.append(int(c))
    edges = np.array(lo + [hi[-1]]) if lo else np.array([])
    return edges, np.array(counts, dtype=np.int64), meta
