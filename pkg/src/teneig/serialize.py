"""Text formats: the tensor file format, JSON reports and trace CSV.

The tensor format is line oriented.  An optional comment header may pin a
symmetry flag, the first data line is "m n", and every following line is
one nonzero entry as m one-based indices plus a value.  Unspecified
entries are zero; duplicate index tuples are an error.  Floats are written
with shortest round-trip text, so writing what was read reproduces a
canonical file byte for byte.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .errors import InputError
from .tensor import GENERAL, MAX_ENTRIES, SYMMETRY_FLAGS, DenseTensor

_SYMMETRY_HEADER = "# symmetry:"


def _format_float(v: float) -> str:
    return repr(float(v))


def read_tensor(path) -> DenseTensor:
    """Parse a tensor file; validates indices, duplicates and nonnegativity."""
    symmetry = GENERAL
    shape_line = None
    entries_lines = []
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                if line.lower().startswith(_SYMMETRY_HEADER):
                    flag = line[len(_SYMMETRY_HEADER):].strip().lower()
                    if flag not in SYMMETRY_FLAGS:
                        raise InputError(f"line {lineno}: unknown symmetry {flag!r}")
                    symmetry = flag
                continue
            if shape_line is None:
                shape_line = (lineno, line)
            else:
                entries_lines.append((lineno, line))
    if shape_line is None:
        raise InputError("tensor file has no shape line")
    lineno, line = shape_line
    parts = line.split()
    if len(parts) != 2:
        raise InputError(f"line {lineno}: shape line must be 'm n'")
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise InputError(f"line {lineno}: bad shape line: {exc}") from None
    if m < 2 or n < 1:
        raise InputError(f"line {lineno}: need order >= 2 and dimension >= 1")
    if n ** m > MAX_ENTRIES:
        raise InputError(f"refusing to allocate {n}^{m} > {MAX_ENTRIES} entries")
    arr = np.zeros((n,) * m)
    seen = set()
    for lineno, line in entries_lines:
        parts = line.split()
        if len(parts) != m + 1:
            raise InputError(
                f"line {lineno}: expected {m} indices and a value, got {len(parts)} fields")
        try:
            idx = tuple(int(p) for p in parts[:m])
            val = float(parts[m])
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
        if not all(1 <= i <= n for i in idx):
            raise InputError(f"line {lineno}: index out of range 1..{n}")
        if idx in seen:
            raise InputError(f"line {lineno}: duplicate entry for index {idx}")
        seen.add(idx)
        if not np.isfinite(val):
            raise InputError(f"line {lineno}: value must be finite")
        if val < 0:
            raise InputError(f"line {lineno}: entries must be nonnegative")
        arr[tuple(i - 1 for i in idx)] = val
    tensor = DenseTensor(arr, symmetry)
    if not tensor.check_symmetry():
        raise InputError(f"entries do not honor the declared {symmetry} flag")
    return tensor


def write_tensor(a: DenseTensor, path) -> None:
    """Write the canonical form: sorted nonzeros, shortest float text."""
    with open(path, "w", encoding="utf-8") as fh:
        if a.symmetry != GENERAL:
            fh.write(f"{_SYMMETRY_HEADER} {a.symmetry}\n")
        fh.write(f"{a.order} {a.dim}\n")
        nz = np.nonzero(a.entries)  # already in lexicographic index order
        for idx in zip(*nz):
            idx = tuple(int(i) for i in idx)
            fields = [str(i + 1) for i in idx] + [_format_float(a.entries[idx])]
            fh.write(" ".join(fields) + "\n")


def pair_payload(pair, provenance=None) -> dict:
    d = {
        "lambda": float(pair.lam),
        "x": [float(v) for v in pair.x],
        "residual": float(pair.residual),
        "detSign": int(pair.det_sign),
        "kind": pair.kind,
    }
    if provenance is not None:
        d["provenance"] = {
            "startIndex": provenance.start_index,
            "direction": provenance.direction,
        }
    return d


def run_payload(pair, trace, provenance=None) -> dict:
    """Report for a single tracked curve."""
    return {
        "pairs": [pair_payload(pair, provenance)],
        "summary": {
            "count": 1,
            "odd": True,
            "skippedBranches": 0,
            "steps": max(len(trace.points) - 1, 0),
            "evaluations": trace.evaluations,
            "turningPoints": len(trace.turning_points),
        },
    }


def eigenset_payload(eset) -> dict:
    """Report for a multi-pair run."""
    return {
        "pairs": [pair_payload(p, prov) for p, prov in zip(eset.pairs, eset.provenance)],
        "summary": {
            "count": len(eset.pairs),
            "odd": eset.is_odd(),
            "skippedBranches": len(eset.skipped_branches),
            "detSignSum": eset.det_sign_sum(),
        },
    }


def baseline_payload(report) -> dict:
    return {
        "pairs": [pair_payload(report.pair)],
        "summary": {
            "count": 1 if report.converged else 0,
            "odd": report.converged,
            "skippedBranches": 0,
            "converged": report.converged,
            "evaluations": report.evaluations,
            "iterations": report.iterations,
        },
    }


def dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def write_json(payload: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_json(payload))


def trace_csv_text(trace, n: int) -> str:
    """CSV with one row per accepted point.

    Columns: step, t, lambda, the n eigenvector components, the tangent's
    t-component, the residual norm, and a 0/1 turning-point flag.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = (["step", "t", "lambda"] + [f"x_{i+1}" for i in range(n)]
              + ["tangent_t", "residual", "turning_point"])
    writer.writerow(header)
    flagged = {idx for idx, _ in trace.turning_points}
    for i, pt in enumerate(trace.points):
        if i < len(trace.tangents) and trace.tangents[i] is not None:
            tangent = trace.tangents[i]
            tangent_t = float(tangent[-1]) if tangent.size == n + 2 else 1.0
        else:
            tangent_t = 1.0
        row = ([str(i), _format_float(pt.t), _format_float(pt.lam)]
               + [_format_float(v) for v in pt.x]
               + [_format_float(tangent_t), _format_float(pt.residual_norm),
                  "1" if i in flagged else "0"])
        writer.writerow(row)
    return buf.getvalue()


def write_trace_csv(trace, n: int, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(trace_csv_text(trace, n))
