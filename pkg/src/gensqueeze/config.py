"""Run configuration: schema, validation and the canned figure presets.

A configuration is a JSON object::

    {
      "spectrum": {"kind": "rosen_morse", "b": 1.0, "d": 1.0},
      "state": {"alpha": {"start": 0, "stop": 8, "num": 81},
                "xi": [0.2, -0.2],
                "truncation": 512, "tail_tolerance": 1e-12},
      "grid": {"radius": null, "points": 201, "kernel": "fast"},
      "identities": {"n_max": 10},
      "bench": {"N": 60, "points": 201, "radius": 6.0, "repeats": 1},
      "output": {"path": "out", "format": "csv"},
      "seed": 0,
      "threads": 1
    }

``alpha`` and ``xi`` accept a number, a complex string such as ``"1+0.5j"``,
an object ``{"re": .., "im": ..}``, a list of any of those, or a range
``{"start", "stop", "num"}``.  ``state.fock`` (an integer) replaces the
squeezed state by a Fock state, which is useful for Wigner fixtures.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigInvalid
from .spectrum import SpectrumModel

__all__ = ["TASKS", "PRESETS", "RunConfig", "load_config", "build_config", "fig_presets", "parse_values"]

TASKS = ("state", "quadrature", "mandel", "wigner", "identities", "bench")
PRESETS = ("fig1a", "fig1b", "fig1c", "fig2", "fig3_small")

DEFAULTS = {
    "spectrum": {"kind": "rosen_morse", "b": 1.0, "d": 1.0},
    "state": {"alpha": 1.0, "xi": 0.0, "truncation": 512, "tail_tolerance": 1e-12, "fock": None},
    "grid": {"radius": None, "points": 201, "kernel": "fast"},
    "identities": {"n_max": 10},
    "bench": {"N": 60, "points": 201, "radius": 6.0, "repeats": 1},
    "output": {"path": "out", "format": "csv"},
    "seed": 0,
    "threads": 1,
    "notes": [],
}


def _merge(base, extra):
    out = copy.deepcopy(base)
    for key, val in extra.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], val)
        else:
            out[key] = copy.deepcopy(val)
    return out


def _complex(value, where):
    if isinstance(value, dict) and set(value) <= {"re", "im"}:
        return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    if isinstance(value, bool):
        raise ConfigInvalid(where, "expected a number")
    try:
        if isinstance(value, str):
            return complex(value.replace(" ", ""))
        return complex(value)
    except (TypeError, ValueError):
        raise ConfigInvalid(where, f"cannot read {value!r} as a number") from None


def parse_values(value, where: str) -> list:
    """Expand a scalar, list or ``{"start","stop","num"}`` range into complex values."""
    if isinstance(value, dict) and "num" in value:
        try:
            start, stop, num = float(value["start"]), float(value["stop"]), int(value["num"])
        except (KeyError, TypeError, ValueError):
            raise ConfigInvalid(where, "range needs numeric start, stop, num") from None
        if num < 1:
            raise ConfigInvalid(where, "range must be non-empty")
        return [complex(v) for v in np.linspace(start, stop, num)]
    if isinstance(value, (list, tuple)):
        if not value:
            raise ConfigInvalid(where, "sweep values must be non-empty")
        return [_complex(v, f"{where}[{i}]") for i, v in enumerate(value)]
    return [_complex(value, where)]


@dataclass
class RunConfig:
    """Validated run configuration; ``raw`` is the complete JSON echo."""

    task: str
    spectrum: SpectrumModel
    alphas: list
    xis: list
    truncation: int
    tail_tolerance: float
    fock: int = None
    grid_radius: float = None
    grid_points: int = 201
    kernel: str = "fast"
    identities_n_max: int = 10
    bench: dict = field(default_factory=dict)
    out: Path = Path("out")
    fmt: str = "csv"
    seed: int = 0
    threads: int = 1
    preset: str = None
    notes: list = field(default_factory=list)
    raw: dict = field(default_factory=dict, repr=False)


def load_config(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigInvalid("--config", str(exc)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigInvalid("--config", f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigInvalid("--config", "top level must be an object")
    if "config" in data and "artifacts" in data:
        # a run manifest: replay its config echo
        data = data["config"]
    return data


def _int(value, where, lo=None):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
        raise ConfigInvalid(where, f"expected an integer, got {value!r}")
    if lo is not None and value < lo:
        raise ConfigInvalid(where, f"must be >= {lo}")
    return int(value)


def _float(value, where, positive=False):
    try:
        out = float(value)
    except (TypeError, ValueError):
        raise ConfigInvalid(where, f"expected a number, got {value!r}") from None
    if positive and not out > 0:
        raise ConfigInvalid(where, "must be positive")
    return out


def build_config(task: str, raw: dict = None, preset: str = None) -> RunConfig:
    """Validate ``raw`` (merged over defaults) into a :class:`RunConfig`."""
    if task not in TASKS:
        raise ConfigInvalid("task", f"unknown task {task!r}; choose from {', '.join(TASKS)}")
    raw = _merge(DEFAULTS, raw or {})
    raw["task"] = task
    if preset is not None:
        raw["preset"] = preset
    unknown = set(raw) - set(DEFAULTS) - {"task", "preset"}
    if unknown:
        raise ConfigInvalid(sorted(unknown)[0], "unknown configuration key")

    spectrum = SpectrumModel.from_config(raw["spectrum"])
    st = raw["state"]
    alphas = parse_values(st.get("alpha"), "state.alpha")
    xis = parse_values(st.get("xi"), "state.xi")
    for i, xi in enumerate(xis):
        if abs(xi) >= 1:
            raise ConfigInvalid(f"state.xi[{i}]", f"|xi| must be < 1, got {abs(xi)}")
    truncation = _int(st.get("truncation"), "state.truncation", lo=2)
    tail = _float(st.get("tail_tolerance"), "state.tail_tolerance", positive=True)
    if tail >= 1:
        raise ConfigInvalid("state.tail_tolerance", "must lie in (0, 1)")
    fock = st.get("fock")
    if fock is not None:
        fock = _int(fock, "state.fock", lo=0)
    if task == "state" and (len(alphas) != 1 or len(xis) != 1):
        raise ConfigInvalid("state", "task 'state' takes a single alpha and xi")

    grid = raw["grid"]
    radius = grid.get("radius")
    if radius is not None:
        radius = _float(radius, "grid.radius", positive=True)
    points = _int(grid.get("points"), "grid.points", lo=2)
    kernel = grid.get("kernel", "fast")
    if kernel not in ("fast", "naive"):
        raise ConfigInvalid("grid.kernel", "must be 'fast' or 'naive'")

    bench = dict(raw["bench"])
    bench["N"] = _int(bench.get("N"), "bench.N", lo=0)
    bench["points"] = _int(bench.get("points"), "bench.points", lo=2)
    bench["radius"] = _float(bench.get("radius"), "bench.radius", positive=True)
    bench["repeats"] = _int(bench.get("repeats"), "bench.repeats", lo=1)

    out = raw["output"]
    fmt = out.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigInvalid("output.format", "must be 'csv' or 'json'")
    if not out.get("path"):
        raise ConfigInvalid("output.path", "must be a non-empty path")

    return RunConfig(
        task=task,
        spectrum=spectrum,
        alphas=alphas,
        xis=xis,
        truncation=truncation,
        tail_tolerance=tail,
        fock=fock,
        grid_radius=radius,
        grid_points=points,
        kernel=kernel,
        identities_n_max=_int(raw["identities"].get("n_max"), "identities.n_max", lo=2),
        bench=bench,
        out=Path(out["path"]),
        fmt=fmt,
        seed=_int(raw["seed"], "seed"),
        threads=_int(raw["threads"], "threads", lo=1),
        preset=preset,
        notes=list(raw.get("notes") or []),
        raw=raw,
    )


_RM = {"kind": "rosen_morse", "b": 1.0, "d": 1.0}
_FIG1_ALPHA = {"start": 0.0, "stop": 8.0, "num": 81}

_PRESETS = {
    "fig1a": ("quadrature", {"spectrum": _RM, "state": {"alpha": _FIG1_ALPHA, "xi": [0.0]}}),
    "fig1b": ("quadrature", {"spectrum": _RM, "state": {"alpha": _FIG1_ALPHA, "xi": [0.2, -0.2]}}),
    "fig1c": ("quadrature", {"spectrum": _RM, "state": {"alpha": _FIG1_ALPHA, "xi": [0.5, -0.5]}}),
    # extends to large alpha, where the xi = 0.6 curve drops below xi = 0.4
    "fig2": (
        "mandel",
        {
            "spectrum": _RM,
            "state": {"alpha": {"start": 0.1, "stop": 40.0, "num": 400}, "xi": [0.0, 0.2, 0.4, 0.6]},
        },
    ),
    "fig3_small": (
        "wigner",
        {
            "spectrum": _RM,
            "state": {"alpha": 3.0, "xi": [0.0, 0.6, 0.8, 0.95]},
            "grid": {"radius": 8.0, "points": 101, "kernel": "fast"},
            "notes": [
                "alpha = 3 stands in for alpha = 100, "
                "which needs a Fock cut-off far beyond desk scale"
            ],
        },
    ),
}


def fig_presets(name: str, overrides: dict = None) -> RunConfig:
    """Canned configuration for one reference figure at desk scale."""
    if name not in _PRESETS:
        raise ConfigInvalid("preset", f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    task, raw = _PRESETS[name]
    raw = _merge(raw, overrides or {})
    return build_config(task, raw, preset=name)
