"""Command-line entry point: ``qnnfourier {spectrum,train,accessibility,diffsearch}``.

Every command writes plot-ready CSV/JSON data plus a run manifest. Data files
are byte-identical across re-runs with the same inputs; only the manifest
carries a timestamp.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .arch import ArchitectureSpec, Family, evaluate_batch
from .diffset import run_search
from .spectrum import (
    accessibility_sample,
    frequency_upper_bound,
    model_spectrum,
    phase_pair_occupancy,
    predicted_profile,
)
from .train import TrainConfig, top_hat_dataset, train

logger = logging.getLogger("qnnfourier")

WORKERS_ENV = "QNNFOURIER_WORKERS"
FIT_GRID_POINTS = 100


class ConfigError(ValueError):
    pass


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _write_json(path: Path, data) -> None:
    _write_text(path, json.dumps(data, indent=2, sort_keys=True) + "\n")


def _write_manifest(path: Path, command: str, config: Optional[Path], outputs: list[Path], seed=None) -> None:
    missing = [str(p) for p in outputs if not p.exists()]
    if missing:
        raise RuntimeError(f"refusing to write manifest; missing outputs: {missing}")
    _write_json(
        path,
        {
            "command": command,
            "config": None if config is None else str(config),
            "outputs": [str(p) for p in outputs],
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "seed": seed,
            "version": __version__,
        },
    )


def _load_json(path: Path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: malformed JSON ({exc})") from None


def load_spec(path: Path) -> ArchitectureSpec:
    try:
        return ArchitectureSpec.from_dict(_load_json(path))
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _frequency_bound(spec: ArchitectureSpec) -> float:
    if spec.family.is_parallel:
        return frequency_upper_bound(2**spec.n, 1)
    return frequency_upper_bound(2, spec.n)


# -- spectrum ----------------------------------------------------------------


def cmd_spectrum(args) -> None:
    spec = load_spec(args.spec)
    profile = predicted_profile(spec)
    out = Path(args.output)
    summary = out.with_suffix(".json")
    _write_text(out, profile.to_csv())
    _write_json(
        summary,
        {
            "spec": spec.to_dict(),
            "frequencies": profile.frequencies,
            "k_max": profile.k_max,
            "upper_bound": _frequency_bound(spec),
        },
    )
    _write_manifest(out.with_suffix(".manifest.json"), "spectrum", args.spec, [out, summary])
    print(f"{spec.family.value} n={spec.n}: frequencies {profile.frequencies}")


# -- train -------------------------------------------------------------------


@dataclass(frozen=True)
class TrainExperiment:
    families: list
    n: int
    var_depth: Optional[int]
    epochs: int
    learning_rate: float
    seeds: list
    num_points: int


def parse_train_config(data) -> TrainExperiment:
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    allowed = {"families", "n", "var_depth", "epochs", "learning_rate", "seeds", "dataset"}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown field(s): {', '.join(sorted(unknown))}")

    def need(key, kind, check, message):
        if key not in data:
            raise ConfigError(f"missing field '{key}'")
        value = data[key]
        if not isinstance(value, kind) or isinstance(value, bool) or not check(value):
            raise ConfigError(f"field '{key}': {message}, got {value!r}")
        return value

    families = need("families", list, lambda v: len(v) > 0, "expected a nonempty list of family names")
    for name in families:
        if name not in {f.value for f in Family}:
            raise ConfigError(f"field 'families': unknown family {name!r}")
    n = need("n", int, lambda v: v >= 1, "expected a positive integer")
    var_depth = data.get("var_depth")
    if var_depth is not None and (not isinstance(var_depth, int) or isinstance(var_depth, bool) or var_depth < 1):
        raise ConfigError(f"field 'var_depth': expected a positive integer or null, got {var_depth!r}")
    epochs = need("epochs", int, lambda v: v >= 0, "expected a non-negative integer")
    lr = need("learning_rate", (int, float), lambda v: v > 0, "expected a positive number")
    seeds = need("seeds", list, lambda v: len(v) > 0, "expected a nonempty list of integers")
    if not all(isinstance(s, int) and not isinstance(s, bool) for s in seeds):
        raise ConfigError(f"field 'seeds': expected integers, got {seeds!r}")
    dataset = data.get("dataset", {"num_points": 100})
    if not isinstance(dataset, dict) or set(dataset) - {"num_points"}:
        raise ConfigError("field 'dataset': expected {\"num_points\": int}")
    num_points = dataset.get("num_points", 100)
    if not isinstance(num_points, int) or isinstance(num_points, bool) or num_points < 2:
        raise ConfigError(f"field 'dataset.num_points': expected an integer >= 2, got {num_points!r}")
    return TrainExperiment(families, n, var_depth, epochs, float(lr), seeds, num_points)


def run_dir_name(family: str, seed: int) -> str:
    return f"{family}_seed{seed}"


def _train_one(job) -> dict:
    family, seed, exp, out_dir = job
    spec = ArchitectureSpec(family, exp.n, exp.var_depth)
    config = TrainConfig(epochs=exp.epochs, learning_rate=exp.learning_rate, seed=seed)
    data = top_hat_dataset(exp.num_points)
    result = train(spec, config, data)
    run = Path(out_dir) / run_dir_name(family, seed)
    _write_text(run / "loss.csv", result.loss_csv())
    _write_text(run / "spectrum.csv", model_spectrum(spec, result.final_params).to_csv())
    grid = top_hat_dataset(FIT_GRID_POINTS)
    preds = evaluate_batch(spec, result.final_params, grid.xs)
    rows = ["x,target,prediction"] + [
        f"{x!r},{y!r},{p!r}" for x, y, p in zip(grid.xs.tolist(), grid.ys.tolist(), preds.tolist())
    ]
    _write_text(run / "fit.csv", "\n".join(rows) + "\n")
    _write_text(run / "result.json", result.to_json() + "\n")
    return {"family": family, "seed": seed, "dir": str(run), "final_loss": result.final_loss}


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1


def cmd_train(args) -> None:
    exp = parse_train_config(_load_json(args.config))
    out_dir = Path(args.output_dir)
    jobs = [(fam, seed, exp, str(out_dir)) for fam in exp.families for seed in exp.seeds]
    workers = min(worker_count(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(_train_one, jobs))
    else:
        runs = [_train_one(job) for job in jobs]
    outputs = []
    for run in runs:
        outputs += [Path(run["dir"]) / name for name in ("loss.csv", "spectrum.csv", "fit.csv", "result.json")]
        loss = "n/a" if run["final_loss"] is None else f"{run['final_loss']:.6f}"
        print(f"{run['family']:<22} seed={run['seed']:<4} final MSE {loss}")
    _write_manifest(out_dir / "manifest.json", "train", args.config, outputs, seed=exp.seeds)


# -- accessibility -----------------------------------------------------------


def cmd_accessibility(args) -> None:
    if args.realizations < 1:
        raise ConfigError("--realizations must be >= 1")
    spec = load_spec(args.spec)
    table = accessibility_sample(spec, args.realizations, args.seed)
    occupancy = phase_pair_occupancy(table, bins=args.bins)
    out = Path(args.output)
    summary = out.with_suffix(".json")
    _write_text(out, table.to_csv())
    _write_json(
        summary,
        {
            "spec": spec.to_dict(),
            "realizations": args.realizations,
            "seed": args.seed,
            "bins": args.bins,
            "occupancy": {f"{i},{j}": v for (i, j), v in occupancy.items()},
            "mean_occupancy": float(np.mean(list(occupancy.values()))) if occupancy else None,
        },
    )
    _write_manifest(out.with_suffix(".manifest.json"), "accessibility", args.spec, [out, summary], seed=args.seed)
    for (i, j), v in occupancy.items():
        print(f"arg c_{i} vs arg c_{j}: occupancy {v:.4f}")


# -- diffsearch --------------------------------------------------------------


def cmd_diffsearch(args) -> None:
    try:
        report = run_search(args.m, args.max_element)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    out = Path(args.output)
    _write_text(out, report.to_json() + "\n")
    _write_manifest(out.with_suffix(".manifest.json"), "diffsearch", None, [out])
    print(
        f"m={report.m} max_element={report.max_element}: {len(report.solutions)} perfect list(s) "
        f"{report.solutions} ({report.nodes_explored} nodes)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qnnfourier", description="Fourier-spectrum experiments for angle-encoded quantum models."
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="predicted wavenumbers and degeneracies for an architecture")
    p.add_argument("spec", type=Path, help="JSON file {family, n, var_depth}")
    p.add_argument("output", type=Path, help="CSV path; a .json summary is written beside it")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("train", help="train architectures on the top-hat target")
    p.add_argument("config", type=Path)
    p.add_argument("output_dir", type=Path)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("accessibility", help="Fourier phases over random parameter draws")
    p.add_argument("spec", type=Path)
    p.add_argument("output", type=Path)
    p.add_argument("--realizations", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bins", type=int, default=20)
    p.set_defaults(func=cmd_accessibility)

    p = sub.add_parser("diffsearch", help="exhaustive search for perfect difference lists")
    p.add_argument("m", type=int)
    p.add_argument("max_element", type=int)
    p.add_argument("output", type=Path)
    p.set_defaults(func=cmd_diffsearch)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
