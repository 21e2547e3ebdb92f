"""Command-line front end.

    quatqm verify-time        --input doc.json [--output report.json]
    quatqm verify-stationary  --input doc.json [--output report.json]
    quatqm free-particle      --input doc.json --output field.csv
    quatqm scatter-sweep      --input doc.json [--output sweep.csv]

Exit status is 0 when every asserted tolerance holds, 1 when one fails and 2
for usage, parse or constraint errors.  ``QQM_LOG`` sets the log level.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .documents import (DocumentError, get_list, lambda_family_from_dict, load_document,
                        stationary_family_from_dict, step_problem_from_dict)
from .field import (GridTooSmallError, PoisonedSampleError, divergence, grid_for, probability_current,
                    residual_tdse, residual_tise, sample, write_current_csv, write_field_csv)
from .scattering import ScatteringError, sweep, write_sweep_csv
from .stationary import (ConstraintViolation, StationaryFamily, analytic_current, energy_of,
                         family_diagnostics, family_kappa, matching_lambda)
from .time_evolution import LambdaFamily, eval_lambda, verify_separation

log = logging.getLogger("quatqm")

COMMANDS = ("verify-time", "verify-stationary", "free-particle", "scatter-sweep")
DEFAULT_RATIOS = (0.0, 0.25, 0.5, 0.75)


@dataclass
class Tolerances:
    unitarity: float = 1e-12
    separation: float = 1e-8
    diagnostics: float = 1e-6
    tise: float = 1e-7
    tdse: float = 1e-6
    current: float = 1e-6
    divergence: float = 1e-6
    continuity: float = 1e-10
    ratio: float = 1e-12

    @classmethod
    def uniform(cls, tol: Optional[float]) -> "Tolerances":
        if tol is None:
            return cls()
        return cls(**{k: tol for k in cls.__dataclass_fields__})


@dataclass
class RunConfig:
    command: str
    input_path: Path
    output_path: Optional[Path] = None
    tol: Tolerances = dc_field(default_factory=Tolerances)
    grid_n: int = 16
    grid_h: Optional[float] = None
    seed: int = 0


class UsageError(Exception):
    pass


# -- suites -------------------------------------------------------------------

def check_lambda_family(fam: LambdaFamily, rng: np.random.Generator, tol: Tolerances,
                        n_times: int = 100) -> dict:
    t_max = 10 * 2 * np.pi * fam.hbar / abs(fam.energy_E) if fam.energy_E else 10.0
    t = rng.uniform(-t_max, t_max, n_times)
    unit = float(np.max(np.abs(eval_lambda(fam, t).norm() - 1.0)))
    sep = verify_separation(fam, t)
    return {"kind": fam.kind.value, "unitarity": unit, "separation": sep,
            "passed": unit < tol.unitarity and sep < tol.separation}


def check_stationary_family(fam: StationaryFamily, rng: np.random.Generator, tol: Tolerances,
                            grid_n: int = 16, grid_h: Optional[float] = None,
                            n_points: int = 5, n_times: int = 3) -> dict:
    """Diagnostics at random points, plus TISE and TDSE residuals on a grid."""
    scale = fam.grid_scale()
    h = 2e-2 / scale if grid_h is None else grid_h
    pts = rng.uniform(-0.5, 0.5, (n_points, 3)) / scale
    diag, skipped = 0.0, []
    for p in pts:
        d = family_diagnostics(fam, p)
        if d.indeterminate:
            skipped.append(d.indeterminate)
        diag = max(diag, d.max_abs())
    grid = grid_for([fam.k_vec, fam.alpha_vec, fam.gamma_vec, fam.omega_vec], grid_n, h)
    tise = residual_tise(sample(fam, grid), 0.0, family_kappa(fam), fam.hbar, fam.mass)
    lam = matching_lambda(fam)
    period = 2 * np.pi * fam.hbar / abs(lam.energy_E) if lam.energy_E else 1.0
    tdse = residual_tdse(lam, fam, grid, 0.0, rng.uniform(0, period, n_times), mass=fam.mass)
    if skipped:
        log.warning("diagnostics indeterminate at %d point(s): %s", len(skipped), skipped)
    return {"family_tag": fam.family_tag.value, "energy": energy_of(fam),
            "grid_shape": list(grid.shape), "grid_h": h,
            "diagnostics": diag, "tise": tise, "tdse": tdse,
            "passed": diag < tol.diagnostics and tise < tol.tise and tdse < tol.tdse}


def free_particle_fields(fam: StationaryFamily, grid_n: int, grid_h: Optional[float]):
    h = 2e-2 / fam.grid_scale() if grid_h is None else grid_h
    grid = grid_for([fam.k_vec, fam.alpha_vec, fam.gamma_vec, fam.omega_vec], grid_n, h)
    phi = sample(fam, grid)
    return phi, probability_current(phi, fam.hbar, fam.mass)


# -- commands -----------------------------------------------------------------

def _write_report(cfg: RunConfig, results: list, extra: Optional[dict] = None) -> bool:
    passed = all(r["passed"] for r in results)
    report = {"metadata": {"command": cfg.command, "seed": cfg.seed, "version": __version__,
                           "tolerances": vars(cfg.tol)},
              "results": results, "passed": passed}
    if extra:
        report.update(extra)
    text = json.dumps(report, indent=2, sort_keys=True)
    if cfg.output_path:
        cfg.output_path.write_text(text + "\n")
    for i, r in enumerate(results):
        print(f"[{i}] {'PASS' if r['passed'] else 'FAIL'} " +
              " ".join(f"{k}={v:.3e}" for k, v in r.items() if isinstance(v, float)))
    return passed


def _cmd_verify_time(cfg: RunConfig, doc: dict) -> int:
    items = get_list(doc, "lambda_families")
    fams = [lambda_family_from_dict(d, f"/lambda_families/{i}") for i, d in enumerate(items)]
    if not fams:
        log.warning("nothing verified")
        _write_report(cfg, [])
        return 0
    rng = np.random.default_rng(cfg.seed)
    return 0 if _write_report(cfg, [check_lambda_family(f, rng, cfg.tol) for f in fams]) else 1


def _cmd_verify_stationary(cfg: RunConfig, doc: dict) -> int:
    items = get_list(doc, "stationary_families")
    fams = [stationary_family_from_dict(d, f"/stationary_families/{i}") for i, d in enumerate(items)]
    if not fams:
        log.warning("nothing verified")
        _write_report(cfg, [])
        return 0
    rng = np.random.default_rng(cfg.seed)
    results = [check_stationary_family(f, rng, cfg.tol, cfg.grid_n, cfg.grid_h) for f in fams]
    return 0 if _write_report(cfg, results) else 1


def _cmd_free_particle(cfg: RunConfig, doc: dict) -> int:
    if cfg.output_path is None:
        raise UsageError("free-particle needs --output for the field CSV")
    if "free_particle" not in doc:
        raise DocumentError("/free_particle", "missing field")
    fam = stationary_family_from_dict(doc["free_particle"], "/free_particle")
    phi, cur = free_particle_fields(fam, cfg.grid_n, cfg.grid_h)
    out = cfg.output_path
    cur_path = out.with_name(out.stem + "_current" + (out.suffix or ".csv"))
    write_field_csv(phi, out)
    write_current_csv(cur, cur_path)
    jmax = float(np.max(np.abs(cur.vectors))) or 1.0
    div = float(np.max(np.abs(divergence(cur)))) / (jmax * fam.grid_scale())
    ok = div < cfg.tol.divergence
    msg = f"divergence={div:.3e}"
    try:
        an = analytic_current(fam, cur.grid.points())
        err = float(np.max(np.abs(cur.vectors - an))) / jmax
        ok = ok and err < cfg.tol.current
        msg += f" closed_form={err:.3e}"
    except ValueError as exc:
        log.warning("closed-form current skipped: %s", exc)
    print(f"{'PASS' if ok else 'FAIL'} {msg}; wrote {out} and {cur_path}")
    return 0 if ok else 1


def _cmd_scatter_sweep(cfg: RunConfig, doc: dict) -> int:
    if "step" not in doc:
        raise DocumentError("/step", "missing field")
    prob = step_problem_from_dict(doc["step"], "/step")
    ratios = doc.get("ratios", list(DEFAULT_RATIOS))
    if not isinstance(ratios, list) or not all(isinstance(r, (int, float)) and not isinstance(r, bool)
                                                for r in ratios):
        raise DocumentError("/ratios", "expected a list of numbers")
    rows = sweep(prob, ratios)
    if cfg.output_path:
        write_sweep_csv(rows, cfg.output_path)
    else:
        write_sweep_csv(rows, sys.stdout)
    ok = True
    for row in rows:
        good = (row["continuity"] < cfg.tol.continuity
                and abs(row["|p|^2/|k|^2"] - (1 - row["V0/E_q"])) < cfg.tol.ratio)
        ok = ok and good
        log.info("V0/E_q=%g continuity=%.3e flux_defect=%.3e", row["V0/E_q"], row["continuity"], row["flux_defect"])
    return 0 if ok else 1


_DISPATCH = {"verify-time": _cmd_verify_time, "verify-stationary": _cmd_verify_stationary,
             "free-particle": _cmd_free_particle, "scatter-sweep": _cmd_scatter_sweep}


def run(cfg: RunConfig) -> int:
    doc = load_document(cfg.input_path)
    return _DISPATCH[cfg.command](cfg, doc)


# -- argument parsing ---------------------------------------------------------

def _positive(kind):
    def conv(s):
        v = kind(s)
        if v <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {s}")
        return v
    return conv


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quatqm", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--input", required=True, type=Path, help="JSON parameter document")
        s.add_argument("--output", type=Path, help="report (JSON) or table (CSV) path")
        s.add_argument("--tol", type=_positive(float), help="override every asserted tolerance")
        s.add_argument("--grid-n", type=_positive(int), default=16, help="points per active axis")
        s.add_argument("--grid-h", type=_positive(float), help="grid spacing (default 0.02 / family scale)")
        s.add_argument("--seed", type=int, default=0, help="seed for random sample points and times")
    return p


def main(argv: Optional[list] = None) -> int:
    level = os.environ.get("QQM_LOG", "WARNING").upper()
    logging.basicConfig(level=level if isinstance(logging.getLevelName(level), int) else "WARNING",
                        format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(args.command, args.input, args.output, Tolerances.uniform(args.tol),
                    args.grid_n, args.grid_h, args.seed)
    try:
        return run(cfg)
    except (DocumentError, ConstraintViolation, ScatteringError, UsageError, GridTooSmallError,
            PoisonedSampleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
