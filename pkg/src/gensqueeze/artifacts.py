"""CSV/JSON writers for states, sweeps, Wigner grids and reports.

Floats are always written with 17 significant digits so that every value
round-trips exactly; JSON output is produced by a small deterministic
emitter instead of :mod:`json` for the same reason.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from pathlib import Path

import numpy as np

__all__ = [
    "fmt_float",
    "dumps",
    "write_json",
    "write_csv",
    "sha256",
    "state_record",
    "state_rows",
    "grid_record",
    "grid_rows",
]


def fmt_float(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def _json_float(x):
    x = float(x)
    # JSON has no NaN/Infinity literals
    if not math.isfinite(x):
        return "null"
    return "%.17g" % x


def _emit(obj, out, indent, level):
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_json_float(obj))
    elif isinstance(obj, complex):
        _emit([obj.real, obj.imag], out, indent, level)
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, np.ndarray):
        _emit(obj.tolist(), out, indent, level)
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        pad = "\n" + " " * (indent * (level + 1)) if indent is not None else ""
        out.append("{")
        for i, (key, val) in enumerate(obj.items()):
            if i:
                out.append(",")
            out.append(pad + json.dumps(str(key)) + ": ")
            _emit(val, out, indent, level + 1)
        out.append(("\n" + " " * (indent * level) if indent is not None else "") + "}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, val in enumerate(obj):
            if i:
                out.append(", ")
            _emit(val, out, None, level + 1)
        out.append("]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Deterministic JSON text; dicts are indented, lists stay on one line."""
    out = []
    _emit(obj, out, indent, 0)
    return "".join(out) + "\n"


def write_json(path, obj) -> Path:
    path = Path(path)
    path.write_text(dumps(obj), encoding="utf-8")
    return path


def write_csv(path, header, rows) -> Path:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_float(v) if isinstance(v, (float, np.floating)) else v for v in row])
    path = Path(path)
    path.write_text(buf.getvalue(), encoding="utf-8")
    return path


def sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def state_record(state) -> dict:
    """``{"model", "alpha", "xi", "N", "coeffs", "tail_mass"}`` for a StateVector."""
    p = state.params
    return {
        "model": state.model.to_config(),
        "alpha": [p.alpha.real, p.alpha.imag],
        "xi": [p.xi.real, p.xi.imag],
        "N": state.n_used,
        "coeffs": [[c.real, c.imag] for c in state.coeffs],
        "tail_mass": state.tail_mass,
    }


def state_rows(state):
    header = ("n", "re", "im", "abs2")
    rows = [(n, float(c.real), float(c.imag), float(abs(c) ** 2)) for n, c in enumerate(state.coeffs)]
    return header, rows


def grid_record(grid, include_timing: bool = False) -> dict:
    """JSON layout of a Wigner grid; ``values`` is row-major over ``im_axis``.

    Timing is left out (``eval_ms: null``) unless requested so that repeated
    runs produce byte-identical files.
    """
    return {
        "re_axis": grid.re_z,
        "im_axis": grid.im_z,
        "values": np.asarray(grid.values).ravel(),
        "kernel": grid.kernel,
        "eval_ms": grid.eval_ms if include_timing else None,
        "min_value": grid.min_value,
        "integral": grid.integral,
        "tail_mass": grid.tail_mass,
    }


def grid_rows(grid):
    header = ("re_z", "im_z", "W")
    rows = [
        (float(grid.re_z[j]), float(grid.im_z[i]), float(grid.values[i, j]))
        for i in range(len(grid.im_z))
        for j in range(len(grid.re_z))
    ]
    return header, rows
