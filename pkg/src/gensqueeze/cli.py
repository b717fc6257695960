"""Command-line front end.

    gensqueeze quadrature --config run.json --out results/ --format csv
    gensqueeze preset fig1b --out fig1b/
    gensqueeze bench --threads 1 --set bench.N=60

Every run writes its artifacts plus ``manifest.json`` into the output
directory.  Exit codes: 0 success, 2 configuration error, 3 numerical
failure, 4 invariant breach.
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import time
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from . import artifacts as art
from .config import PRESETS, TASKS, RunConfig, build_config, fig_presets, load_config
from .errors import (
    ConfigInvalid,
    GenSqueezeError,
    InvariantBreach,
    NonConvergent,
    TaskFailed,
    TruncationTooTight,
    UndefinedMandel,
)
from .metrics import SWEEP_COLUMNS, sweep
from .states import StateParams, appendix_identity_check, scaled_coefficients
from .wigner import (
    DensityMatrix,
    benchmark,
    default_grid,
    negativity_summary,
    wigner_fast,
    wigner_naive_grid,
)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_INVARIANT = 0, 2, 3, 4

UNCERTAINTY_SLACK = 1e-9
IDENTITY_TOL = 1e-10
IMAG_RESIDUE_TOL = 1e-10


class _Result:
    def __init__(self):
        self.artifacts = []
        self.diagnostics = {}
        self.timings = {}
        self.failures = []
        self.breaches = []


def _write(cfg, result, stem, record=None, table=None):
    """Write one artifact as JSON (``record``) or CSV (``table``) per cfg.fmt."""
    if cfg.fmt == "json" or table is None:
        path = art.write_json(cfg.out / f"{stem}.json", record)
    else:
        path = art.write_csv(cfg.out / f"{stem}.csv", *table)
    result.artifacts.append(path)
    return path


def _state(cfg, alpha, xi):
    return scaled_coefficients(
        cfg.spectrum,
        StateParams(alpha, xi, truncation=cfg.truncation, tail_tolerance=cfg.tail_tolerance),
    )


def _task_state(cfg, result):
    state = _state(cfg, cfg.alphas[0], cfg.xis[0])
    result.diagnostics["truncation"] = [
        {"alpha": state.params.alpha, "xi": state.params.xi, "N_used": state.n_used, "tail_mass": state.tail_mass}
    ]
    _write(cfg, result, "state", art.state_record(state), art.state_rows(state))


def _task_sweep(cfg, result):
    rows = sweep(
        cfg.spectrum,
        cfg.alphas,
        cfg.xis,
        truncation=cfg.truncation,
        tail_tolerance=cfg.tail_tolerance,
        threads=cfg.threads,
    )
    records = [r.as_record() for r in rows]
    table = (SWEEP_COLUMNS, [[rec[c] for c in SWEEP_COLUMNS] for rec in records])
    _write(cfg, result, cfg.task, [{c: rec[c] for c in SWEEP_COLUMNS} for rec in records], table)
    result.diagnostics["truncation"] = [
        {"alpha": r.alpha, "xi": r.xi, "N_used": r.N_used, "tail_mass": r.tail_mass} for r in rows
    ]
    for i, r in enumerate(rows):
        if r.status != "ok":
            result.failures.append(f"row {i} (alpha={r.alpha}, xi={r.xi}): {r.error}")
        elif r.product_gap < -UNCERTAINTY_SLACK:
            result.breaches.append(
                f"row {i} (alpha={r.alpha}, xi={r.xi}): uncertainty product below bound by {-r.product_gap:.3e}"
            )


def _task_wigner(cfg, result):
    if cfg.fock is not None:
        cases = [({"fock": cfg.fock}, DensityMatrix.fock(cfg.fock))]
    else:
        cases = []
        for xi in cfg.xis:
            for alpha in cfg.alphas:
                state = _state(cfg, alpha, xi)
                cases.append(
                    (
                        {"alpha": alpha, "xi": xi, "N_used": state.n_used, "tail_mass": state.tail_mass},
                        DensityMatrix.from_state(state),
                    )
                )
    summaries = []
    for i, (label, rho) in enumerate(cases):
        re_z, im_z = default_grid(rho.mean_n, cfg.grid_points, cfg.grid_radius)
        if cfg.kernel == "naive":
            grid = wigner_naive_grid(rho, re_z, im_z, threads=cfg.threads)
            if grid.imag_residue > IMAG_RESIDUE_TOL:
                result.breaches.append(f"grid {i}: imaginary residue {grid.imag_residue:.3e}")
        else:
            grid = wigner_fast(rho, re_z, im_z, threads=cfg.threads)
        neg = negativity_summary(grid)
        stem = "wigner" if len(cases) == 1 else f"wigner_{i:02d}"
        path = _write(cfg, result, stem, art.grid_record(grid), art.grid_rows(grid))
        result.timings[path.name] = {"eval_ms": grid.eval_ms}
        summaries.append(
            dict(
                label,
                artifact=path.name,
                kernel=grid.kernel,
                radius=float(re_z[-1]),
                min_value=neg.min_value,
                negative_volume=neg.negative_volume,
                integral=grid.integral,
            )
        )
    result.diagnostics["grids"] = summaries


def _task_identities(cfg, result):
    report = appendix_identity_check(cfg.spectrum, cfg.identities_n_max)
    rows = [(name, dev, report.checked[name]) for name, dev in report.max_deviation.items()]
    _write(cfg, result, "identities", report.as_dict(), (("identity", "max_deviation", "checked"), rows))
    for name, dev in report.failures(IDENTITY_TOL).items():
        result.breaches.append(f"{name}: max relative deviation {dev:.3e} >= {IDENTITY_TOL}")


def random_density(dim: int, rng) -> np.ndarray:
    """Random Hermitian positive semidefinite matrix with unit trace."""
    M = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    R = M @ M.conj().T
    R = 0.5 * (R + R.conj().T)
    return R / np.trace(R).real


def _task_bench(cfg, result):
    b = cfg.bench
    rho = random_density(b["N"] + 1, np.random.default_rng(cfg.seed))
    axis = np.linspace(-b["radius"], b["radius"], b["points"])
    report = benchmark(rho, axis, axis, threads=cfg.threads, repeats=b["repeats"])
    path = art.write_json(cfg.out / "bench.json", report)
    result.artifacts.append(path)
    result.timings["bench"] = {"naive_ms": report["naive_ms"], "fast_ms": report["fast_ms"]}


_HANDLERS = {
    "state": _task_state,
    "quadrature": _task_sweep,
    "mandel": _task_sweep,
    "wigner": _task_wigner,
    "identities": _task_identities,
    "bench": _task_bench,
}


def run(cfg: RunConfig, stderr=None) -> int:
    """Dispatch ``cfg.task``, write artifacts and manifest, return the exit code."""
    stderr = stderr or sys.stderr
    try:
        cfg.out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"config error: output.path: {exc}", file=stderr)
        return EXIT_CONFIG

    result = _Result()
    code, error = EXIT_OK, None
    t0 = time.perf_counter()
    try:
        _HANDLERS[cfg.task](cfg, result)
    except (NonConvergent, TruncationTooTight, UndefinedMandel) as exc:
        code, error = EXIT_NUMERIC, TaskFailed(f"{type(exc).__name__}: {exc}")
    except InvariantBreach as exc:
        code, error = EXIT_INVARIANT, exc
    except GenSqueezeError as exc:
        code, error = EXIT_NUMERIC, TaskFailed(f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - t0

    if code == EXIT_OK and result.failures:
        code = EXIT_NUMERIC
    if code == EXIT_OK and result.breaches:
        code = EXIT_INVARIANT
    for msg in result.failures:
        print(f"numerical failure: {msg}", file=stderr)
    for msg in result.breaches:
        print(f"invariant breach: {msg}", file=stderr)
    if error is not None:
        print(f"task failed: {error}", file=stderr)

    manifest = {
        "tool": "gensqueeze",
        "version": __version__,
        "task": cfg.task,
        "preset": cfg.preset,
        "config": cfg.raw,
        "environment": {
            "python": platform.python_version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "platform": platform.platform(),
        },
        "artifacts": [{"path": p.name, "sha256": art.sha256(p)} for p in result.artifacts],
        "diagnostics": result.diagnostics,
        "timings": dict(result.timings, total_ms=1e3 * elapsed),
        "deviations": cfg.notes,
        "failures": result.failures,
        "breaches": result.breaches,
        "error": None if error is None else str(error),
        "exit_code": code,
    }
    art.write_json(cfg.out / "manifest.json", manifest)
    return code


def _parse_set(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ConfigInvalid("--set", f"expected key=value, got {item!r}")
        key, value = item.split("=", 1)
        try:
            value = json.loads(value)
        except json.JSONDecodeError:
            pass
        node = out
        parts = key.split(".")
        for p in parts[:-1]:
            node = node.setdefault(p, {})
        node[parts[-1]] = value
    return out


def _merge(base, extra):
    for key, val in extra.items():
        if isinstance(val, dict) and isinstance(base.get(key), dict):
            _merge(base[key], val)
        else:
            base[key] = val
    return base


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON run configuration (or a manifest to replay)")
    common.add_argument("--out", metavar="PATH", help="output directory")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--threads", type=int, metavar="K")
    common.add_argument("--seed", type=int, metavar="S")
    common.add_argument(
        "--set", action="append", metavar="KEY=VALUE", help="override one config key, e.g. state.xi=0.4"
    )

    parser = argparse.ArgumentParser(prog="gensqueeze", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for task in TASKS:
        sub.add_parser(task, parents=[common], help=f"run the {task} task")
    p = sub.add_parser("preset", parents=[common], help="run a canned figure configuration")
    p.add_argument("name", choices=PRESETS)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = load_config(args.config) if args.config else {}
        flags = {}
        if args.out is not None:
            flags.setdefault("output", {})["path"] = args.out
        if args.format is not None:
            flags.setdefault("output", {})["format"] = args.format
        if args.threads is not None:
            flags["threads"] = args.threads
        if args.seed is not None:
            flags["seed"] = args.seed
        overrides = _merge(flags, _parse_set(args.set))
        if args.command == "preset":
            cfg = fig_presets(args.name, _merge(raw, overrides))
        else:
            raw.pop("preset", None)
            raw.pop("task", None)
            cfg = build_config(args.command, _merge(raw, overrides))
    except ConfigInvalid as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    raise SystemExit(main())
