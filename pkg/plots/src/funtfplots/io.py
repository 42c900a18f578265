"""Readers for the funtf CLI file formats.

Everything here parses documented text formats; no frame mathematics is
redone on this side. A numeric disagreement in a figure therefore
points at the producing pipeline, not at the plotting.
"""

import json
import pathlib
from dataclasses import dataclass

import numpy as np

FIGURE_TYPES = ("histogram_grid", "polytope2d", "heatmap")

HREP_KEYS = ("d", "N", "order", "A", "b", "labels")


class FormatError(ValueError):
    """An input file does not match its documented format."""


def _parse_meta(line: str, path) -> dict:
    if not line.startswith("#"):
        raise FormatError(f"{path}: expected a '# key=value ...' metadata line")
    meta = {}
    for tok in line.lstrip("#").split():
        if "=" in tok:
            key, val = tok.split("=", 1)
            meta[key] = val
    return meta


def _lines(path) -> list:
    path = pathlib.Path(path)
    try:
        text = path.read_text()
    except OSError as err:
        raise FormatError(f"{path}: {err}") from err
    return [ln for ln in text.splitlines() if ln.strip()]


def read_histogram(path):
    """Histogram CSV -> (bin edges, counts, metadata dict).

    Layout: metadata line, a ``bin_lo,bin_hi,count`` header, one row per
    bin. Metadata values stay strings; callers convert what they use.
    """
    lines = _lines(path)
    if not lines:
        raise FormatError(f"{path}: empty histogram CSV")
    meta = _parse_meta(lines[0], path)
    if len(lines) < 2 or lines[1].replace(" ", "") != "bin_lo,bin_hi,count":
        raise FormatError(f"{path}: missing bin_lo,bin_hi,count header")
    lo, hi, counts = [], [], []
    for ln in lines[2:]:
        try:
            a, b, c = ln.split(",")
            lo.append(float(a))
            hi.append(float(b))
            counts.append(int(c))
        except ValueError as err:
            raise FormatError(f"{path}: bad histogram row {ln!r}") from err
    if not counts:
        raise FormatError(f"{path}: histogram CSV has no bins")
    edges = np.array(lo + [hi[-1]], dtype=np.float64)
    return edges, np.array(counts, dtype=np.int64), meta


def read_grid(path):
    """Dense matrix CSV with metadata line -> (matrix, metadata dict)."""
    lines = _lines(path)
    if not lines:
        raise FormatError(f"{path}: empty grid CSV")
    meta = _parse_meta(lines[0], path)
    if len(lines) < 2:
        raise FormatError(f"{path}: grid CSV has no rows")
    rows = []
    width = None
    for ln in lines[1:]:
        try:
            row = [float(tok) for tok in ln.split(",")]
        except ValueError as err:
            raise FormatError(f"{path}: bad grid row {ln!r}") from err
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise FormatError(f"{path}: ragged grid row {ln!r}")
        rows.append(row)
    return np.array(rows, dtype=np.float64), meta


def read_hrep(path):
    """Polytope H-rep JSON -> dict with A, b as float arrays.

    Requires the keys the CLI always writes (d, N, order, A, b, labels);
    the bounding box is optional.
    """
    path = pathlib.Path(path)
    try:
        obj = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise FormatError(f"{path}: {err}") from err
    if not isinstance(obj, dict):
        raise FormatError(f"{path}: H-rep JSON must be an object")
    for key in HREP_KEYS:
        if key not in obj:
            raise FormatError(f"{path}: H-rep JSON missing key {key!r}")
    A = np.array(obj["A"], dtype=np.float64)
    b = np.array(obj["b"], dtype=np.float64)
    if A.ndim != 2 or b.ndim != 1 or A.shape[0] != b.shape[0]:
        raise FormatError(f"{path}: A is {A.shape} but b has {b.shape[0]} entries")
    if len(obj["labels"]) != A.shape[0]:
        raise FormatError(f"{path}: {len(obj['labels'])} labels for {A.shape[0]} rows")
    obj = dict(obj)
    obj["A"] = A
    obj["b"] = b
    return obj


@dataclass(frozen=True)
class PlotJob:
    """One figure to render: input files, figure type, output path."""

    inputs: tuple
    figure: str
    output: pathlib.Path
    labels: tuple = ()

    def __post_init__(self):
        if self.figure not in FIGURE_TYPES:
            raise ValueError(f"unknown figure type {self.figure!r}")
        if not self.inputs:
            raise ValueError("a plot job needs at least one input file")
        object.__setattr__(self, "inputs", tuple(pathlib.Path(p) for p in self.inputs))
        object.__setattr__(self, "output", pathlib.Path(self.output))
        for p in self.inputs:
            if not p.is_file():
                raise FileNotFoundError(f"plot input does not exist: {p}")
