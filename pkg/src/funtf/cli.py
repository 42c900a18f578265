"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 computation error,
3 validation failure.  The seed comes from --seed, then the FUNTF_SEED
environment variable, then 0.  Every run echoes its effective flags to
stderr as a '# ' line so outputs can be reproduced.

Commands are thin bindings over the library; no math lives here.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import serialize
from .errors import FuntfError
from .eigensteps import (
    IndependentEigensteps,
    complete_table,
    eigensteps_of,
    index_set,
    validate_table,
)
from .frames import coherence, coherence_bound, is_full_spark, is_tight, is_unit_norm
from .polytope import bounding_box, contains, hrep
from .sampler import SamplerConfig, Tolerances, coherence_histogram, fiber_heatmap, sample_batch

USAGE_EXIT = 1
COMPUTE_EXIT = 2
VALIDATION_EXIT = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="funtf", description="Uniform sampling of unit-norm tight frames")
    sub = p.add_subparsers(dest="command", required=True)

    def dims(sp):
        sp.add_argument("-d", type=int, required=True, help="ambient dimension")
        sp.add_argument("-N", type=int, required=True, help="number of frame vectors")

    sp = sub.add_parser("sample", description="Draw uniform FUNTF samples to a .jsonl file")
    dims(sp)
    sp.add_argument("-n", "--count", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--sampler", choices=("rejection", "hnr"), default="rejection")
    sp.add_argument("--hnr-steps", type=int, default=200)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--out", default=None)
    sp.add_argument("--stats", action="store_true",
                    help="append a summary line to stderr")

    sp = sub.add_parser("polytope", description="Emit the eigenstep polytope H-representation")
    dims(sp)
    sp.add_argument("--box", action="store_true", help="include the bounding box")
    sp.add_argument("--out", default=None)

    sp = sub.add_parser("eigensteps", description="Complete a table from values, or extract one from a frame")
    sp.add_argument("-d", type=int, default=None)
    sp.add_argument("-N", type=int, default=None)
    sp.add_argument("--mu", default=None, help="comma-separated independent values")
    sp.add_argument("--in", dest="infile", default=None, help=".jsonl file of frames")
    sp.add_argument("--index", type=int, default=0, help="frame index within --in")
    sp.add_argument("--out", default=None)

    sp = sub.add_parser("validate", description="Check frames in a .jsonl file")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--full-spark", action="store_true")

    sp = sub.add_parser("coherence", description="Coherence histogram of frames in a .jsonl file")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--bins", type=int, default=50)
    sp.add_argument("--out", default=None)

    sp = sub.add_parser("heatmap", description="Coherence over the torus fiber of one table")
    dims(sp)
    sp.add_argument("--mu", required=True, help="comma-separated independent values")
    sp.add_argument("--grid", type=int, default=64)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--out", default=None)
    return p


def _resolve_seed(value):
    if value is not None:
        return value
    env = os.environ.get("FUNTF_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise _UsageError(f"FUNTF_SEED must be an integer, got {env!r}")


def _check_dims(d, N):
    if d is None or N is None:
        raise _UsageError("-d and -N are required")
    if d < 1:
        raise _UsageError(f"d must be positive, got {d}")
    if N <= d + 1:
        raise _UsageError(f"need N > d+1 for the eigenstep parametrization, got d={d}, N={N}")


def _parse_mu(text, dim):
    try:
        vals = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise _UsageError(f"--mu expects comma-separated numbers, got {text!r}")
    if len(vals) != dim:
        raise _UsageError(f"--mu expects {dim} values for this (d, N), got {len(vals)}")
    return vals


def _write_out(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _echo(args, pairs):
    toks = " ".join(f"{k}={v}" for k, v in pairs)
    print(f"# funtf {args.command} {toks}", file=sys.stderr)


def _read_jsonl(path):
    """Yield (line_number, parsed object); raise _UsageError on bad JSON."""
    try:
        fh = open(path)
    except OSError as err:
        raise _UsageError(f"cannot open {path}: {err}")
    with fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as err:
                raise _UsageError(f"{path}:{lineno}: not valid JSON ({err.msg})")


def _cmd_sample(args) -> int:
    _check_dims(args.d, args.N)
    if args.count < 0:
        raise _UsageError("count must be nonnegative")
    if args.workers < 1:
        raise _UsageError("workers must be at least 1")
    seed = _resolve_seed(args.seed)
    cfg = SamplerConfig(
        d=args.d,
        N=args.N,
        seed=seed,
        polytope_sampler="hit_and_run" if args.sampler == "hnr" else "rejection",
        hnr_steps=args.hnr_steps,
        tolerances=Tolerances(tol=args.tol),
    )
    _echo(args, [("d", args.d), ("N", args.N), ("n", args.count), ("seed", seed),
                 ("sampler", args.sampler), ("hnr_steps", args.hnr_steps),
                 ("workers", args.workers), ("tol", args.tol)])
    records = sample_batch(cfg, args.count, workers=args.workers)
    lines = [serialize.dumps(serialize.record_to_obj(r)) for r in records]
    text = "".join(line + "\n" for line in lines)
    _write_out(args.out, text)
    if args.stats and records:
        trials = sum(r.rejection_trials for r in records)
        rate = len(records) / trials if trials else float("nan")
        print(
            f"# stats accept_rate={rate:.4f}"
            f" mean_coherence={np.mean([r.coherence for r in records]):.6f}"
            f" max_tight_residual={max(r.tight_residual for r in records):.3e}"
            f" max_unit_norm_dev={max(r.unit_norm_dev for r in records):.3e}"
            f" flagged={sum(r.flagged for r in records)}",
            file=sys.stderr,
        )
    if len(records) < args.count:
        print(
            f"# status incomplete: {len(records)}/{args.count} samples succeeded",
            file=sys.stderr,
        )
        return COMPUTE_EXIT
    return 0


def _cmd_polytope(args) -> int:
    _check_dims(args.d, args.N)
    h = hrep(args.d, args.N)
    box = bounding_box(h) if args.box else None
    _echo(args, [("d", args.d), ("N", args.N), ("box", args.box)])
    _write_out(args.out, serialize.dumps(serialize.hrep_to_obj(h, box)) + "\n")
    return 0


def _cmd_eigensteps(args) -> int:
    if (args.mu is None) == (args.infile is None):
        raise _UsageError("exactly one of --mu and --in is required")
    if args.mu is not None:
        _check_dims(args.d, args.N)
        iset = index_set(args.d, args.N)
        vals = _parse_mu(args.mu, len(iset))
        try:
            x = IndependentEigensteps(iset, np.array(vals))
        except ValueError as err:
            raise _UsageError(str(err))
        table = complete_table(x)
        _echo(args, [("d", args.d), ("N", args.N), ("mu", args.mu)])
    else:
        for lineno, obj in _read_jsonl(args.infile):
            if lineno - 1 == args.index:
                try:
                    frame = serialize.frame_from_obj(obj)
                except ValueError as err:
                    raise _UsageError(f"{args.infile}:{lineno}: {err}")
                break
        else:
            raise _UsageError(f"{args.infile}: no frame at index {args.index}")
        table = eigensteps_of(frame)
        _echo(args, [("in", args.infile), ("index", args.index)])
    _write_out(args.out, serialize.table_to_csv(table))
    return 0


def _cmd_validate(args) -> int:
    failures = 0
    frames = 0
    _echo(args, [("in", args.infile), ("tol", args.tol), ("full_spark", args.full_spark)])
    for lineno, obj in _read_jsonl(args.infile):
        try:
            frame = serialize.frame_from_obj(obj)
        except ValueError as err:
            raise _UsageError(f"{args.infile}:{lineno}: {err}")
        frames += 1
        problems = []
        unit = is_unit_norm(frame, args.tol)
        if not unit.ok:
            problems.append(f"unit-norm dev={unit.max_deviation:.3e}")
        tight = is_tight(frame, args.tol)
        if not tight.ok:
            problems.append(f"tightness residual={tight.residual:.3e}")
        violations = validate_table(eigensteps_of(frame), args.tol)
        if violations:
            problems.append(f"eigensteps [{violations[0]}]")
        if args.full_spark:
            spark = is_full_spark(frame)
            if not spark.ok:
                problems.append(f"full-spark min|det|={spark.min_abs_det:.3e}")
        if problems:
            failures += 1
            print(f"line {lineno}: FAIL " + "; ".join(problems))
        else:
            print(f"line {lineno}: PASS")
    if frames == 0:
        raise _UsageError(f"{args.infile}: no frames found")
    return VALIDATION_EXIT if failures else 0


def _cmd_coherence(args) -> int:
    if args.bins < 1:
        raise _UsageError("bins must be positive")
    values = []
    dims = None
    for lineno, obj in _read_jsonl(args.infile):
        try:
            frame = serialize.frame_from_obj(obj)
        except ValueError as err:
            raise _UsageError(f"{args.infile}:{lineno}: {err}")
        if dims is None:
            dims = (frame.d, frame.N)
        elif dims != (frame.d, frame.N):
            raise _UsageError(
                f"{args.infile}:{lineno}: mixed frame sizes "
                f"{dims} and {(frame.d, frame.N)}"
            )
        values.append(coherence(frame))
    if not values:
        raise _UsageError(f"{args.infile}: no frames found")
    d, n = dims
    bound = coherence_bound(d, n)
    counts, edges = np.histogram(
        np.clip(values, 0.0, bound), bins=args.bins, range=(0.0, bound)
    )
    _echo(args, [("in", args.infile), ("bins", args.bins)])
    meta = {
        "kind": "coherence_histogram", "d": d, "N": n,
        "count": len(values), "bins": args.bins, "lo": 0.0, "hi": bound,
    }
    _write_out(args.out, serialize.histogram_to_csv(edges, counts, meta))
    return 0


def _cmd_heatmap(args) -> int:
    _check_dims(args.d, args.N)
    iset = index_set(args.d, args.N)
    if len(iset) != 2:
        raise _UsageError(
            f"heatmap needs a 2-torus fiber ((d-1)(N-d-1) = 2), got dimension {len(iset)}"
        )
    if args.grid < 1:
        raise _UsageError("grid must be positive")
    vals = _parse_mu(args.mu, 2)
    h = hrep(args.d, args.N)
    if not contains(h, np.array(vals)):
        raise _UsageError(f"point {vals} is outside the eigenstep polytope")
    x = IndependentEigensteps(iset, np.array(vals))
    heat = fiber_heatmap(x, args.grid, Tolerances(tol=args.tol))
    _echo(args, [("d", args.d), ("N", args.N), ("mu", args.mu), ("grid", args.grid)])
    meta = {
        "kind": "fiber_heatmap", "d": args.d, "N": args.N, "mu": args.mu,
        "grid": args.grid, "bound": coherence_bound(args.d, args.N),
    }
    _write_out(args.out, serialize.grid_to_csv(heat, meta))
    return 0


_COMMANDS = {
    "sample": _cmd_sample,
    "polytope": _cmd_polytope,
    "eigensteps": _cmd_eigensteps,
    "validate": _cmd_validate,
    "coherence": _cmd_coherence,
    "heatmap": _cmd_heatmap,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as err:
        print(f"funtf: error: {err}", file=sys.stderr)
        return USAGE_EXIT
    except FuntfError as err:
        print(f"funtf: computation failed: {err}", file=sys.stderr)
        return COMPUTE_EXIT


if __name__ == "__main__":
    sys.exit(main())
