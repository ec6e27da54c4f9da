"""Batch experiment runner with figure presets and deterministic outputs.

A JSON config (or a named preset) declares a list of experiments; each
experiment expands into independent (R,) series that a worker pool executes.
Within a series the flux grid is swept in order and each point's phase branch
is continued from the previous point, so unwrapped phases are consistent
along the grid; the first point is anchored by radial-ladder continuation
(background flux) or by the zero-flux limit (flux-free lattice).  Exchange
experiments also run the companion single-pin loop at every grid point, since
the statistics phase is the difference of the two; ab_N sets the companion's
particle number (1 for pinned particles, where an unpinned spectator would
add its own geometric phase; equal to N for filled-band holes, where the
single pin binds a single hole).

Outputs: results.csv (one row per (R, delta_phi) point, 12 significant
digits, sorted by experiment, R, delta_phi; byte-identical across runs and
worker counts) and summary.json (fits, charges, densities, timings, config
hash).  Wall-clock times live in the summary so the CSV stays deterministic.
"""

from __future__ import annotations

import argparse
import csv
import difflib
import hashlib
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .analysis import charge_expectation, exchange_phase, fit_charge
from .geomphase import AlignmentLost, PathKind, PathPlan, sweep
from .interferometry import (
    WilsonSample,
    nonabelian_probability,
    run_single_impurity_sequence,
    run_two_impurity_sequence,
)
from .lattice import DefectFlux, LatticeSpec, PinSpec, build_hamiltonian
from .manybody import (
    DEGENERACY_TOLERANCE,
    GroundStateDegenerate,
    density,
    ground_slater,
    lowest_band_projector,
)

__all__ = ["main", "run_config", "load_config", "PRESETS", "ConfigError"]

CSV_COLUMNS = ["experiment_id", "kind", "R", "delta_phi", "phi_unwrapped",
               "phi_mod", "min_mag", "reliable", "q_star", "phi_exc", "charge_q"]

KINDS = {"single_loop_ab", "exchange", "charge_operator", "interferometry_check"}


class ConfigError(ValueError):
    """Config file cannot be turned into a valid experiment batch."""


def _grid(start: float, stop: float, step: float) -> list[float]:
    n = int(round((stop - start) / step))
    return [round(start + i * step, 10) for i in range(n + 1)]


def _preset_fig2() -> dict:
    # flux-free charge benchmark: one particle, two pin depths
    lat = {"Lx": 15, "Ly": 15, "alpha": 0.0}
    exps = []
    for v in (-1.5, -5.0):
        exps.append({
            "id": f"ab_V{v:g}", "kind": "single_loop_ab",
            "lattice": dict(lat), "pin": {"strength": v, "width": 1.0},
            "N": 1, "R": [1, 2, 3, 4, 5, 6],
            "delta_phi": _grid(0.0, 0.32, 0.04), "n_steps": 40,
        })
    return {"experiments": exps}


def _preset_fig3() -> dict:
    lat = {"Lx": 15, "Ly": 15, "alpha": 0.2}
    pin = {"strength": -1.0, "width": 1.0}
    return {"experiments": [
        # one pinned particle: absolute phase is anchored by the radial ladder
        {"id": "ab", "kind": "single_loop_ab", "lattice": dict(lat),
         "pin": dict(pin), "N": 1, "R": [2, 2.5, 3, 3.5, 4, 4.5, 5],
         "delta_phi": _grid(0.0, 0.08, 0.02), "n_steps": 80},
        # two fermions; the companion loop is the single-particle measurement
        # (ab_N=1): an unpinned spectator on this background picks up its own
        # geometric phase as the pin circles, which would corrupt phi_exc
        {"id": "exchange", "kind": "exchange", "lattice": dict(lat),
         "pin": dict(pin), "N": 2, "ab_N": 1, "R": [3, 3.5, 4, 4.5, 5.5],
         "delta_phi": [0.0, 0.04], "n_steps": 40, "ab_n_steps": 80},
    ]}


def _preset_fig4() -> dict:
    lat = {"Lx": 15, "Ly": 15, "alpha": 0.2}
    pin = {"strength": 1.5, "width": 1.0}
    x0 = y0 = 7.0
    return {"experiments": [
        {"id": "charge_one_pin", "kind": "charge_operator", "lattice": dict(lat),
         "pin": dict(pin), "N": 35, "delta_phi": [0.0],
         "pin_positions": [[x0 + 3.5, y0]]},
        {"id": "charge_two_pins", "kind": "charge_operator", "lattice": dict(lat),
         "pin": dict(pin), "N": 35, "delta_phi": [0.0],
         "pin_positions": [[x0 - 3.5, y0], [x0 + 3.5, y0]]},
    ]}


def _preset_fig5(band_projected: bool = False, suffix: str = "") -> dict:
    lat = {"Lx": 15, "Ly": 15, "alpha": 0.2}
    return {"experiments": [
        {"id": "exchange" + suffix, "kind": "exchange", "lattice": dict(lat),
         "pin": {"strength": 1.5, "width": 1.0}, "N": 35,
         "R": [3, 3.5, 4], "delta_phi": _grid(0.0, 0.08, 0.02),
         "n_steps": 40, "ab_n_steps": 80, "ab_unwrap": True,
         "band_projected": band_projected},
    ]}


def _preset_fig6() -> dict:
    lat = {"Lx": 21, "Ly": 21, "alpha": 0.2}
    return {"experiments": [
        {"id": "exchange", "kind": "exchange", "lattice": dict(lat),
         "pin": {"strength": 0.8, "width": 1.0}, "N": 70,
         "R": [3, 4, 5, 6], "delta_phi": _grid(0.0, 0.08, 0.02),
         "n_steps": 40, "ab_n_steps": 80, "ab_unwrap": True},
    ]}


def _preset_figs1() -> dict:
    lat = {"Lx": 15, "Ly": 15, "alpha": 0.2}
    return {"experiments": [
        {"id": "ab_projected", "kind": "single_loop_ab", "lattice": dict(lat),
         "pin": {"strength": 1.5, "width": 1.0}, "N": 35,
         "R": [3, 3.5, 4], "delta_phi": _grid(0.0, 0.08, 0.02),
         "n_steps": 80, "band_projected": True},
    ]}


PRESETS: dict[str, tuple] = {
    "fig2": (_preset_fig2,
             "charge benchmark: one particle, flux-free lattice, pin depths -1.5 and -5"),
    "fig3": (_preset_fig3,
             "two fermions at alpha=0.2: single-pin loop plus two-pin exchange"),
    "fig4": (_preset_fig4,
             "N=35 insulator: windowed charge and densities for one and two pins"),
    "fig5": (lambda: _preset_fig5(),
             "N=35 insulator: hole transport loops and exchange, fitted charges"),
    "fig6": (_preset_fig6,
             "N=70 on 21x21: hole transport loops and exchange, fitted charges"),
    "figS1": (_preset_figs1,
              "N=35 single-pin loops restricted to the lowest band"),
    "figS2": (lambda: _preset_fig5(band_projected=True, suffix="_projected"),
              "N=35 exchange restricted to the lowest band"),
}


def load_config(path: str) -> dict:
    """Read and expand a config file; raises ConfigError on any defect."""
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    try:
        cfg = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config {path} is not valid JSON: {e}") from e
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    if "preset" in cfg:
        name = cfg["preset"]
        if name not in PRESETS:
            hint = difflib.get_close_matches(str(name), PRESETS, n=1)
            suggestion = f"; did you mean {hint[0]!r}?" if hint else ""
            raise ConfigError(f"unknown preset {name!r}{suggestion}")
        expanded = PRESETS[name][0]()
        expanded["preset"] = name
        if "out" in cfg:
            expanded["out"] = cfg["out"]
        cfg = expanded
    return _validated(cfg)


def _require(cond: bool, msg: str):
    if not cond:
        raise ConfigError(msg)


def _finite(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _validated(cfg: dict) -> dict:
    exps = cfg.get("experiments")
    _require(isinstance(exps, list) and exps, "config needs a non-empty 'experiments' list")
    ids = set()
    for e in exps:
        _require(isinstance(e, dict), "each experiment must be an object")
        kind = e.get("kind", "")
        if kind.startswith("band_projected_"):
            kind = kind[len("band_projected_"):]
            e["kind"] = kind
            e["band_projected"] = True
        _require(kind in KINDS, f"unknown kind {e.get('kind')!r}; choose from {sorted(KINDS)}")
        _require(isinstance(e.get("id"), str) and e["id"], "experiment needs a string 'id'")
        _require(e["id"] not in ids, f"duplicate experiment id {e['id']!r}")
        ids.add(e["id"])
        if kind == "interferometry_check":
            continue
        lat = e.get("lattice", {})
        # the flux defect always occupies the central 2x2 plaquette block
        for f in ("Lx", "Ly"):
            _require(isinstance(lat.get(f), int) and lat[f] >= 3, f"lattice.{f} must be an int >= 3")
        _require(_finite(lat.get("alpha", 0.0)), "lattice.alpha must be finite")
        lat.setdefault("alpha", 0.0)
        pin = e.get("pin", {})
        _require(_finite(pin.get("strength")), "pin.strength must be finite")
        _require(_finite(pin.get("width", 1.0)) and pin.get("width", 1.0) > 0,
                 "pin.width must be positive")
        pin.setdefault("width", 1.0)
        _require(isinstance(e.get("N"), int) and e["N"] >= 1, "N must be a positive int")
        dphis = e.get("delta_phi", [0.0])
        _require(isinstance(dphis, list) and all(_finite(d) for d in dphis) and dphis,
                 "delta_phi must be a non-empty list of finite numbers")
        e["delta_phi"] = [float(d) for d in dphis]
        if kind == "charge_operator":
            pp = e.get("pin_positions")
            _require(isinstance(pp, list) and pp and all(
                isinstance(p, list) and len(p) == 2 and all(_finite(c) for c in p)
                for p in pp), "charge_operator needs pin_positions: [[x, y], ...]")
            e.setdefault("xi", 2.0)
            _require(_finite(e["xi"]) and e["xi"] > 0, "xi must be positive")
        else:
            rs = e.get("R")
            _require(isinstance(rs, list) and rs and all(_finite(r) and r > 0 for r in rs),
                     "R must be a non-empty list of positive numbers")
            e["R"] = [float(r) for r in rs]
            _require(isinstance(e.get("n_steps"), int) and e["n_steps"] >= 8,
                     "n_steps must be an int >= 8")
            if kind == "exchange":
                e.setdefault("ab_n_steps", e["n_steps"])
                _require(isinstance(e["ab_n_steps"], int) and e["ab_n_steps"] >= 8,
                         "ab_n_steps must be an int >= 8")
                e.setdefault("ab_unwrap", False)
                _require(isinstance(e["ab_unwrap"], bool), "ab_unwrap must be a bool")
                e.setdefault("ab_N", e["N"])
                _require(isinstance(e["ab_N"], int) and e["ab_N"] >= 1,
                         "ab_N must be a positive int")
            else:
                e.setdefault("unwrap", True)
                _require(isinstance(e["unwrap"], bool), "unwrap must be a bool")
        e.setdefault("band_projected", False)
        _require(isinstance(e["band_projected"], bool), "band_projected must be a bool")
    return cfg


def _make_spec(task: dict, dphi: float) -> LatticeSpec:
    lat = task["lattice"]
    defect = DefectFlux.central_block(lat["Lx"], lat["Ly"], dphi)
    return LatticeSpec(lat["Lx"], lat["Ly"], lat["alpha"], defect)


def _series_sweep(task: dict, path_kind: PathKind, n_steps: int,
                  anchor: bool, N: int | None = None) -> list[dict]:
    """One phase record per delta_phi value, branch-continued along the grid.

    anchor=True fixes the absolute branch of the first point (zero-flux limit
    on a flux-free lattice, radial ladder otherwise); anchor=False leaves the
    series on the principal branch of its first point, which is enough for
    fitted slopes and phase differences.  Radial continuation assumes the
    loop phase varies smoothly down to zero radius; it holds for a single
    pinned particle or a filled-band hole, but not with unpinned spectator
    particles, so callers choose.  N overrides the task's particle number
    (the exchange companion loop may run with fewer particles).
    """
    pin = PinSpec((0.0, 0.0), task["pin"]["strength"], task["pin"]["width"])
    n_particles = task["N"] if N is None else N
    out = []
    ref = None
    for dphi in task["delta_phi"]:
        spec = _make_spec(task, dphi)
        projector = (lowest_band_projector(build_hamiltonian(spec))
                     if task["band_projected"] else None)
        path = PathPlan(path_kind, spec.center, task["R"], n_steps)
        if ref is not None:
            rec = sweep(spec, pin, path, n_particles, projector, reference_phase=ref)
        elif not anchor:
            rec = sweep(spec, pin, path, n_particles, projector, unwrap=False)
        elif spec.alpha == 0 and abs(dphi) <= 0.35:
            # flux-free lattice: the loop phase vanishes with delta_phi
            rec = sweep(spec, pin, path, n_particles, projector, reference_phase=0.0)
        else:
            rec = sweep(spec, pin, path, n_particles, projector)
        ref = rec.phi_unwrapped
        out.append({"delta_phi": dphi, "phi_unwrapped": rec.phi_unwrapped,
                    "phi_mod": rec.phi_mod, "min_mag": rec.min_mag,
                    "reliable": int(rec.reliable)})
    return out


def _fit_or_none(records: list[dict]):
    dphis = {r["delta_phi"] for r in records}
    if len(dphis) < 2:
        return None
    fit = fit_charge([(r["delta_phi"], r["phi_unwrapped"]) for r in records])
    return {"q_star": fit.q_star, "intercept": fit.intercept,
            "residual_rms": fit.residual_rms}


def _row(task, exp_id, rec, q_star=None, phi_exc=None, charge_q=None, R=None):
    return {"experiment_id": exp_id, "kind": task["kind"],
            "R": task.get("R") if R is None else R,
            "delta_phi": rec.get("delta_phi") if rec else None,
            "phi_unwrapped": rec.get("phi_unwrapped") if rec else None,
            "phi_mod": rec.get("phi_mod") if rec else None,
            "min_mag": rec.get("min_mag") if rec else None,
            "reliable": rec.get("reliable") if rec else None,
            "q_star": q_star, "phi_exc": phi_exc, "charge_q": charge_q}


def _run_series(task: dict) -> dict:
    """Worker entry point: one experiment series (fixed R or whole charge run)."""
    t0 = time.perf_counter()
    kind = task["kind"]
    rows, fits, extras = [], {}, {}
    try:
        if kind == "single_loop_ab":
            recs = _series_sweep(task, PathKind.SINGLE_LOOP, task["n_steps"],
                                 anchor=task["unwrap"])
            fit = _fit_or_none(recs)
            fits[task["exp_id"]] = fit
            for r in recs:
                rows.append(_row(task, task["exp_id"], r,
                                 q_star=fit["q_star"] if fit else None))
        elif kind == "exchange":
            # the statistics phase needs only branch-free differences
            geo = _series_sweep(task, PathKind.EXCHANGE_HALF_LOOP,
                                task["n_steps"], anchor=False)
            ab = _series_sweep(task, PathKind.SINGLE_LOOP, task["ab_n_steps"],
                               anchor=task["ab_unwrap"], N=task["ab_N"])
            fit_geo = _fit_or_none(geo)
            fit_ab = _fit_or_none(ab)
            fits[task["exp_id"]] = fit_geo
            fits[task["exp_id"] + "_ab"] = fit_ab
            for g, a in zip(geo, ab):
                exc = exchange_phase(g["phi_unwrapped"], a["phi_unwrapped"])
                rows.append(_row(task, task["exp_id"], g, phi_exc=exc,
                                 q_star=fit_geo["q_star"] if fit_geo else None))
                rows.append(_row(task, task["exp_id"] + "_ab", a,
                                 q_star=fit_ab["q_star"] if fit_ab else None))
        elif kind == "charge_operator":
            extras["charges"] = {}
            for dphi in task["delta_phi"]:
                spec = _make_spec(task, dphi)
                n_free = density(ground_slater(build_hamiltonian(spec), task["N"]))
                pins = tuple(PinSpec((x, y), task["pin"]["strength"],
                                     task["pin"]["width"])
                             for x, y in task["pin_positions"])
                state = ground_slater(build_hamiltonian(spec, pins), task["N"])
                x0, y0 = spec.center
                for x, y in task["pin_positions"]:
                    q = charge_expectation(state, n_free, (x, y), task["xi"],
                                           alpha=spec.alpha or None)
                    dist = math.hypot(x - x0, y - y0)
                    rows.append(_row(task, task["exp_id"],
                                     {"delta_phi": dphi}, charge_q=q, R=dist))
                    extras["charges"].setdefault(f"{dphi:g}", {})[f"({x:g},{y:g})"] = q
                extras.setdefault("density_reference", {})[f"{dphi:g}"] = \
                    n_free.grid().tolist()
                extras.setdefault("density_pinned", {})[f"{dphi:g}"] = \
                    density(state).grid().tolist()
        elif kind == "interferometry_check":
            phis = np.linspace(-np.pi, np.pi, 101)
            d1 = max(abs(run_single_impurity_sequence(p, 0.0) - math.cos(p / 2) ** 2)
                     for p in phis)
            d2 = max(abs(run_two_impurity_sequence(
                1, np.exp(1j * p), np.exp(1j * p / 2), np.exp(1j * p / 2))
                - 0.25 * math.cos(p / 2) ** 2) for p in phis)
            d3 = max(abs(nonabelian_probability(WilsonSample(1.0, p))
                         - run_two_impurity_sequence(
                             1, np.exp(1j * p), np.exp(1j * p / 2), np.exp(1j * p / 2)))
                     for p in phis)
            extras["max_abs_deviation"] = {
                "single_impurity_vs_closed_form": d1,
                "two_impurity_vs_closed_form": d2,
                "nonabelian_vs_two_impurity": d3,
            }
    except (GroundStateDegenerate, AlignmentLost) as e:
        raise type(e)(
            f"experiment {task['exp_id']!r} R={task.get('R')}: {e}") from e
    return {"exp_id": task["exp_id"], "rows": rows, "fits": fits,
            "extras": extras, "elapsed": time.perf_counter() - t0}


def _tasks_for(cfg: dict) -> list[dict]:
    tasks = []
    for e in cfg["experiments"]:
        base = {k: v for k, v in e.items() if k != "R"}
        base["exp_id"] = e["id"]
        if e["kind"] in ("single_loop_ab", "exchange"):
            for r in e["R"]:
                tasks.append(dict(base, R=r))
        else:
            tasks.append(base)
    return tasks


def _format_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".12g")


def run_config(cfg: dict, out_dir: str, jobs: int) -> dict:
    """Execute all experiments; write results.csv and summary.json in out_dir."""
    t0 = time.perf_counter()
    tasks = _tasks_for(cfg)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_series, tasks))
    else:
        results = [_run_series(t) for t in tasks]

    order = {}
    for e in cfg["experiments"]:
        order[e["id"]] = len(order)
        if e["kind"] == "exchange":
            order[e["id"] + "_ab"] = len(order)
    rows = [r for res in results for r in res["rows"]]
    rows.sort(key=lambda r: (order[r["experiment_id"]],
                             r["R"] if r["R"] is not None else -1.0,
                             r["delta_phi"] if r["delta_phi"] is not None else -1.0))

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "results.csv", "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in rows:
            w.writerow([_format_cell(r[c]) for c in CSV_COLUMNS])

    summary: dict = {
        "config_sha256": hashlib.sha256(
            json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode()).hexdigest(),
        "preset": cfg.get("preset"),
        "degeneracy_tolerance": DEGENERACY_TOLERANCE,
        "experiments": {},
        "total_seconds": 0.0,
    }
    for e in cfg["experiments"]:
        summary["experiments"][e["id"]] = {
            "kind": e["kind"],
            "N": e.get("N"),
            "n_steps": e.get("n_steps"),
            "band_projected": e.get("band_projected", False),
            # config echo so downstream consumers (plots) need no physics
            "lattice": e.get("lattice"),
            "pin": e.get("pin"),
            "delta_phi": e.get("delta_phi"),
            "fits": {},
            "elapsed_seconds": 0.0,
        }
    for res in results:
        info = summary["experiments"][res["exp_id"]]
        info["elapsed_seconds"] += res["elapsed"]
        for fid, fit in res["fits"].items():
            if fit is not None:
                key = f"R={res['rows'][0]['R']:g}" if res["rows"] else "R"
                info["fits"].setdefault(fid, {})[key] = fit
        for k, v in res["extras"].items():
            if k == "charges":
                info.setdefault("charges", {}).update(v)
            else:
                info[k] = v
    summary["total_seconds"] = time.perf_counter() - t0
    with open(out / "summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return summary


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hofphase",
        description="Run pinned-particle transport experiments from a JSON config.")
    sub = parser.add_subparsers(dest="command")
    p_run = sub.add_parser("run", help="execute a config or preset")
    p_run.add_argument("config", help="path to a JSON config file")
    p_run.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                       help="worker processes for independent series")
    p_run.add_argument("--out", default=None, help="output directory")
    sub.add_parser("list-presets", help="show built-in experiment presets")

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.command == "list-presets":
        width = max(len(n) for n in PRESETS)
        for name, (_, desc) in PRESETS.items():
            print(f"{name:<{width}}  {desc}")
        return 0
    if args.command != "run":
        parser.print_usage(sys.stderr)
        return 2
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return 2
    try:
        cfg = load_config(args.config)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    out_dir = args.out or cfg.get("out") or "."
    try:
        summary = run_config(cfg, out_dir, args.jobs)
    except (GroundStateDegenerate, AlignmentLost) as e:
        print(f"error: adiabatic tracking failed: {e}", file=sys.stderr)
        return 1
    print(f"wrote {Path(out_dir) / 'results.csv'} and summary.json "
          f"in {summary['total_seconds']:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
