"""Preset parameter sweeps comparing DAIL with the SMS baseline."""
from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import stats

from .latin import rectangle_family
from .sim import (
    SCHEMES,
    Disk,
    EnergyModel,
    NetworkConfig,
    assign_schedules,
    build_network,
    run,
    theorem_violations,
    write_run_csv,
)

SUMMARY_HEADER = ("scheme", "sweep_var", "value", "mcp", "pc", "ci95")
OUTPUT_ENV = "DAIL_OUTPUT_DIR"


@dataclass(frozen=True)
class ExperimentPreset:
    id: str
    sweep_var: str  # "n_wbans" or "frame_length"
    values: tuple[int, ...]
    metric: str  # summary metric the ci95 column refers to
    base: NetworkConfig

    def config(self, value: int, seed: int) -> NetworkConfig:
        return self.base.with_(**{self.sweep_var: value, "seed": seed})


# 12 sensors per WBAN, 12 slots per superframe, 16 channels, -10 dBm
_TABLE = dict(
    sensors_per_wban=12,
    channels=16,
    slots_per_sensor=1,
    omega=0.5,
    geometry=Disk(area_side=10.0, radius=3.0, body_radius=0.5),
    assignment_mode="iid-random",
    superframes=1000,
    energy=EnergyModel(tx_power_dbm=-10.0),
)

PRESETS = {
    "exp1": ExperimentPreset(
        "exp1", "n_wbans", tuple(range(2, 35, 2)), "mcp",
        NetworkConfig(n_wbans=2, frame_length=12, **_TABLE),
    ),
    "exp2": ExperimentPreset(
        "exp2", "frame_length", tuple(range(10, 29, 2)), "mcp",
        NetworkConfig(n_wbans=30, frame_length=12, **_TABLE),
    ),
    "exp3": ExperimentPreset(
        "exp3", "n_wbans", tuple(range(2, 35, 2)), "pc",
        NetworkConfig(n_wbans=2, frame_length=12, **_TABLE),
    ),
}

DEFAULT_SEEDS = tuple(range(10))

_FLOAT_KEYS = {"omega"}
_INT_KEYS = {"sensors_per_wban", "channels", "slots_per_sensor", "superframes", "n_wbans", "frame_length"}
_GEO_KEYS = {"area_side", "radius", "body_radius"}
_ENERGY_KEYS = {"tx_power_dbm": float, "tx_time_s": float, "superframe_s": float, "retry_limit": int}


def parse_overrides(text: str) -> dict[str, str]:
    """``key=value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {n}: expected key=value, got {raw!r}")
        k, v = (s.strip() for s in line.split("=", 1))
        out[k] = v
    return out


def apply_overrides(preset: ExperimentPreset, overrides: dict[str, str]) -> ExperimentPreset:
    base = preset.base
    geo = base.geometry
    energy = base.energy
    values = preset.values
    kw = {}
    for k, v in overrides.items():
        if k in _FLOAT_KEYS:
            kw[k] = float(v)
        elif k in _INT_KEYS:
            kw[k] = int(v)
        elif k in ("assignment_mode", "traffic"):
            kw[k] = v
        elif k in _GEO_KEYS:
            if not isinstance(geo, Disk):
                raise ValueError(f"{k} only applies to disk geometry")
            geo = Disk(**{**geo.__dict__, k: float(v)})
        elif k in _ENERGY_KEYS:
            energy = EnergyModel(**{**energy.__dict__, k: _ENERGY_KEYS[k](v)})
        elif k == "sweep":
            values = tuple(int(x) for x in v.split(",") if x.strip())
        else:
            raise ValueError(f"unknown override key {k!r}")
    base = base.with_(geometry=geo, energy=energy, **kw)
    return ExperimentPreset(preset.id, preset.sweep_var, values, preset.metric, base)


@dataclass
class PointResult:
    scheme: str
    value: int
    seed: int
    mcp: float
    pc: float
    violations: list[str] = field(default_factory=list)
    report: object = None


def run_point(preset: ExperimentPreset, value: int, seed: int, keep_reports: bool = False) -> list[PointResult]:
    """Both schemes on one network draw."""
    cfg = preset.config(value, seed)
    net = build_network(cfg)
    family, _ = rectangle_family(cfg.channels, cfg.FL)
    out = []
    for scheme in SCHEMES:
        sched = assign_schedules(scheme, net, cfg, family)
        rep = run(net, sched, cfg)
        viol = theorem_violations(net, sched, rep, cfg)
        out.append(PointResult(scheme, value, seed, rep.mcp, rep.pc, viol, rep if keep_reports else None))
    return out


def _run_point_args(args):
    return run_point(*args)


def _ci95(xs: Sequence[float]) -> float:
    xs = np.asarray(xs, dtype=float)
    if xs.size < 2:
        return 0.0
    return float(stats.t.ppf(0.975, xs.size - 1) * xs.std(ddof=1) / np.sqrt(xs.size))


def summarize(preset: ExperimentPreset, results: Sequence[PointResult]) -> list[tuple]:
    rows = []
    for scheme in SCHEMES:
        for v in preset.values:
            pts = [r for r in results if r.scheme == scheme and r.value == v]
            mcp = [r.mcp for r in pts]
            pc = [r.pc for r in pts]
            ci = _ci95(pc if preset.metric == "pc" else mcp)
            rows.append((scheme, preset.sweep_var, v, float(np.mean(mcp)), float(np.mean(pc)), ci))
    return rows


def format_summary(rows: Sequence[tuple]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_HEADER)
    for scheme, var, v, mcp, pc, ci in rows:
        w.writerow((scheme, var, v, f"{mcp:.10g}", f"{pc:.10g}", f"{ci:.10g}"))
    return buf.getvalue()


@dataclass
class ExperimentResult:
    preset: ExperimentPreset
    points: list[PointResult]
    rows: list[tuple]

    @property
    def violations(self) -> list[str]:
        return [f"{p.scheme} {self.preset.sweep_var}={p.value} seed={p.seed}: {v}"
                for p in self.points for v in p.violations]

    def series(self, scheme: str, metric: str = "mcp") -> np.ndarray:
        col = {"mcp": 3, "pc": 4, "ci95": 5}[metric]
        return np.array([r[col] for r in self.rows if r[0] == scheme])


def default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_ENV, "."))


def run_experiment(
    preset: ExperimentPreset | str,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    out: str | os.PathLike | None = None,
    workers: int = 1,
    per_run_dir: str | os.PathLike | None = None,
) -> ExperimentResult:
    """Sweep a preset over ``seeds`` and write the summary CSV to ``out`` (if given).

    With ``per_run_dir`` every (scheme, value, seed) run also gets its own
    per-superframe CSV, which is large.
    """
    if isinstance(preset, str):
        if preset not in PRESETS:
            raise ValueError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        preset = PRESETS[preset]
    if not seeds:
        raise ValueError("need at least one seed")
    keep = per_run_dir is not None
    jobs = [(preset, v, s, keep) for v in preset.values for s in seeds]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            nested = list(pool.map(_run_point_args, jobs))
    else:
        nested = [_run_point_args(j) for j in jobs]
    points = [p for group in nested for p in group]
    points.sort(key=lambda p: (SCHEMES.index(p.scheme), p.value, p.seed))
    rows = summarize(preset, points)
    if out is not None:
        Path(out).write_text(format_summary(rows))
    if keep:
        d = Path(per_run_dir)
        d.mkdir(parents=True, exist_ok=True)
        for p in points:
            write_run_csv([p.report], d / f"{preset.id}_{p.scheme}_{p.value}_{p.seed}.csv")
            p.report = None
    return ExperimentResult(preset, points, rows)
