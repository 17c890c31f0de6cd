"""Run configuration, analysis dispatch, and deterministic table I/O.

A run is described by a flat key=value config (file and/or overrides), is
dispatched to the analysis selected by ``selector``, and lands in a
ResultTable: named numeric columns plus a metadata block echoing the full
resolved configuration, the code version, and the guard status.  Emission is
deterministic to the byte: floats are written with 17 significant digits
(binary round-trip safe), metadata is sorted, and nothing time- or
path-dependent is embedded.

All quantities are in units of J (couplings and frequencies in J, times in
1/J); the metadata states this.  Output-routing fields (``out``, ``format``)
are deliberately not part of the metadata echo, so the same analysis written
twice is byte-identical wherever it lands.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os

import numpy as np

import darwin_chain
from darwin_chain import fock
from darwin_chain.infoflow import amplitude_profile, pip_curve, pip_surface
from darwin_chain.lattice import (
    ModelParams,
    decoherence_exponent,
    decoherence_rate,
    dispersion_relation,
    recurrence_guard,
    snapshot_time,
    uniform_times,
)
from darwin_chain.nonmarkov import phase_boundary_scan, scan_window

SELECTORS = (
    "rate",
    "decoherence",
    "pip",
    "pip-surface",
    "profile",
    "scan",
    "oracle-check",
)

_BALANCED = complex(1.0 / math.sqrt(2.0))


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration (usage error)."""


class WindowGuardError(RuntimeError):
    """Requested window exceeds the sanctioned limit without the unsafe flag."""


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Flat, fully-typed description of one analysis run."""

    selector: str = "rate"
    n_sites: int = 201
    omega: float = 0.5
    coupling_j: float = 1.0
    coupling_g: float = 0.5
    omega0: float = 0.0
    c0: complex = _BALANCED
    c1: complex = _BALANCED
    t_max: float | None = None  # rate/decoherence/pip-surface window; None = guard
    dt: float = 0.01
    time: float | None = None  # pip/profile snapshot; None = default snapshot
    t_step: float = 1.0  # pip-surface time spacing
    omega_min: float | None = None  # None: selector-specific default
    omega_max: float | None = None
    omega_step: float = 0.05
    f_min: int = 0
    f_max: int | None = None  # None = n_sites
    f_step: int = 1
    oracle_times: tuple[float, ...] = (0.5, 1.0, 2.0)
    fragment_sizes: tuple[int, ...] = (1, 2)
    cutoff: int = 0  # 0 = automatic
    unsafe_window: bool = False
    out: str | None = None
    format: str = "csv"


@dataclasses.dataclass(frozen=True, eq=False)
class ResultTable:
    """Named numeric columns with units and a reproducibility metadata block."""

    columns: tuple[str, ...]
    units: tuple[str, ...]
    rows: np.ndarray  # shape (n_rows, n_columns), float64
    meta: dict[str, str]

    def __post_init__(self) -> None:
        if len(self.columns) != len(self.units):
            raise ValueError("one unit per column required")
        if self.rows.ndim != 2 or (
            self.rows.size and self.rows.shape[1] != len(self.columns)
        ):
            raise ValueError("rows must be 2-d with one entry per column")

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]


# --- config parsing -------------------------------------------------------

def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def _parse_opt_float(text: str) -> float | None:
    low = text.strip().lower()
    if low in ("", "none"):
        return None
    return float(text)


def _parse_opt_int(text: str) -> int | None:
    low = text.strip().lower()
    if low in ("", "none"):
        return None
    return int(text)


def _parse_opt_str(text: str) -> str | None:
    return text if text.strip() else None


def _parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(piece) for piece in text.split(",") if piece.strip())


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(piece) for piece in text.split(",") if piece.strip())


_FIELD_PARSERS = {
    "selector": str.strip,
    "n_sites": int,
    "omega": float,
    "coupling_j": float,
    "coupling_g": float,
    "omega0": float,
    "c0": complex,
    "c1": complex,
    "t_max": _parse_opt_float,
    "dt": float,
    "time": _parse_opt_float,
    "t_step": float,
    "omega_min": _parse_opt_float,
    "omega_max": _parse_opt_float,
    "omega_step": float,
    "f_min": int,
    "f_max": _parse_opt_int,
    "f_step": int,
    "oracle_times": _parse_float_list,
    "fragment_sizes": _parse_int_list,
    "cutoff": int,
    "unsafe_window": _parse_bool,
    "out": _parse_opt_str,
    "format": str.strip,
}


def parse_config_text(text: str) -> dict[str, str]:
    """key=value lines; '#' starts a comment; later keys win."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def build_config(
    file_values: dict[str, str] | None = None,
    overrides: dict[str, str] | None = None,
) -> RunConfig:
    """Defaults, then config-file values, then overrides; unknown keys fail."""
    merged: dict[str, str] = {}
    merged.update(file_values or {})
    merged.update(overrides or {})
    kwargs = {}
    for key, text in merged.items():
        parser = _FIELD_PARSERS.get(key)
        if parser is None:
            raise ConfigError(f"unknown config key: {key!r}")
        try:
            kwargs[key] = parser(text)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {text!r} ({exc})") from exc
    return RunConfig(**kwargs)


def _format_float(x: float) -> str:
    return "%.17g" % x


def _config_echo(config: RunConfig) -> dict[str, str]:
    """Compute-relevant fields as exact strings (I/O routing excluded)."""
    echo = {}
    for field in dataclasses.fields(RunConfig):
        if field.name in ("out", "format"):
            continue
        value = getattr(config, field.name)
        if value is None:
            text = "none"
        elif isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, float):
            text = _format_float(value)
        elif isinstance(value, complex):
            text = repr(value)
        elif isinstance(value, tuple):
            text = ",".join(
                _format_float(v) if isinstance(v, float) else str(v) for v in value
            )
        else:
            text = str(value)
        echo[f"config.{field.name}"] = text
    return echo


def config_from_meta(meta: dict[str, str]) -> RunConfig:
    """Rebuild the run configuration from a table's metadata echo."""
    values = {
        key[len("config."):]: text
        for key, text in meta.items()
        if key.startswith("config.")
    }
    return build_config(values)


# --- dispatch -------------------------------------------------------------

def _model_params(config: RunConfig) -> ModelParams:
    return ModelParams(
        n_sites=config.n_sites,
        omega=config.omega,
        coupling_g=config.coupling_g,
        coupling_j=config.coupling_j,
        omega0=config.omega0,
        c0=config.c0,
        c1=config.c1,
    )


def _check_window(config: RunConfig, requested: float, limit: float, what: str) -> bool:
    """True when the sanctioned limit is exceeded (allowed only when unsafe)."""
    exceeded = requested > limit * (1.0 + 1e-12)
    if exceeded and not config.unsafe_window:
        raise WindowGuardError(
            f"{what} {requested:g} exceeds the sanctioned window {limit:g}; "
            "pass --unsafe-window (or set unsafe_window=true) to proceed"
        )
    return exceeded


def _omega_grid(config: RunConfig, default_min: float, default_max: float) -> np.ndarray:
    lo = config.omega_min if config.omega_min is not None else default_min
    hi = config.omega_max if config.omega_max is not None else default_max
    step = config.omega_step
    if hi < lo:
        raise ConfigError(f"omega_max {hi:g} below omega_min {lo:g}")
    if hi == lo:
        return np.array([lo])
    if step <= 0.0:
        raise ConfigError("omega_step must be positive")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def _size_grid(config: RunConfig) -> np.ndarray:
    f_max = config.f_max if config.f_max is not None else config.n_sites
    if not 0 <= config.f_min <= f_max <= config.n_sites:
        raise ConfigError(
            f"fragment range [{config.f_min}, {f_max}] outside [0, {config.n_sites}]"
        )
    if config.f_step < 1:
        raise ConfigError("f_step must be at least 1")
    return np.arange(config.f_min, f_max + 1, config.f_step)


def _base_meta(config: RunConfig, params: ModelParams, guard_exceeded: bool) -> dict[str, str]:
    meta = _config_echo(config)
    meta["version"] = darwin_chain.__version__
    meta["units"] = "all quantities in units of J (couplings in J, times in 1/J)"
    meta["recurrence_guard"] = _format_float(recurrence_guard(params))
    meta["guard_exceeded"] = "true" if guard_exceeded else "false"
    return meta


def _run_rate(config: RunConfig, params: ModelParams) -> ResultTable:
    t_max = config.t_max if config.t_max is not None else recurrence_guard(params)
    exceeded = _check_window(config, t_max, recurrence_guard(params), "t_max")
    omegas = _omega_grid(config, params.omega, params.omega)
    times = uniform_times(t_max, config.dt)
    rows = []
    for omega in omegas:
        point = dataclasses.replace(params, omega=float(omega))
        gamma = decoherence_rate(point, dispersion_relation(point), times)
        block = np.column_stack([np.full(times.size, omega), times, gamma])
        rows.append(block)
    return ResultTable(
        columns=("omega", "time", "gamma"),
        units=("J", "1/J", "J"),
        rows=np.vstack(rows),
        meta=_base_meta(config, params, exceeded),
    )


def _run_decoherence(config: RunConfig, params: ModelParams) -> ResultTable:
    t_max = config.t_max if config.t_max is not None else recurrence_guard(params)
    exceeded = _check_window(config, t_max, recurrence_guard(params), "t_max")
    omegas = _omega_grid(config, params.omega, params.omega)
    times = uniform_times(t_max, config.dt)
    rows = []
    for omega in omegas:
        point = dataclasses.replace(params, omega=float(omega))
        exponent = decoherence_exponent(point, dispersion_relation(point), times)
        block = np.column_stack(
            [np.full(times.size, omega), times, exponent, np.exp(-exponent)]
        )
        rows.append(block)
    return ResultTable(
        columns=("omega", "time", "exponent", "coherence"),
        units=("J", "1/J", "dimensionless", "dimensionless"),
        rows=np.vstack(rows),
        meta=_base_meta(config, params, exceeded),
    )


def _run_pip(config: RunConfig, params: ModelParams) -> ResultTable:
    t = config.time if config.time is not None else snapshot_time(params)
    exceeded = _check_window(config, t, recurrence_guard(params), "time")
    curve = pip_curve(params, t, _size_grid(config))
    meta = _base_meta(config, params, exceeded)
    meta["snapshot_time"] = _format_float(curve.time)
    return ResultTable(
        columns=("size_f", "mi"),
        units=("count", "bits"),
        rows=np.column_stack([curve.sizes.astype(float), curve.mi]),
        meta=meta,
    )


def _run_pip_surface(config: RunConfig, params: ModelParams) -> ResultTable:
    t_max = config.t_max if config.t_max is not None else recurrence_guard(params)
    exceeded = _check_window(config, t_max, recurrence_guard(params), "t_max")
    if config.t_step <= 0.0:
        raise ConfigError("t_step must be positive")
    times = uniform_times(t_max, config.t_step)
    surface = pip_surface(params, times, _size_grid(config))
    t_col = np.repeat(surface.times, surface.sizes.size)
    f_col = np.tile(surface.sizes.astype(float), surface.times.size)
    return ResultTable(
        columns=("time", "size_f", "mi"),
        units=("1/J", "count", "bits"),
        rows=np.column_stack([t_col, f_col, surface.mi.ravel()]),
        meta=_base_meta(config, params, exceeded),
    )


def _run_profile(config: RunConfig, params: ModelParams) -> ResultTable:
    t = config.time if config.time is not None else snapshot_time(params)
    exceeded = _check_window(config, t, recurrence_guard(params), "time")
    prof = amplitude_profile(params, t)
    meta = _base_meta(config, params, exceeded)
    meta["snapshot_time"] = _format_float(t)
    return ResultTable(
        columns=("site", "alpha_abs"),
        units=("index", "dimensionless"),
        rows=np.column_stack([params.site_labels.astype(float), prof]),
        meta=meta,
    )


def _run_scan(config: RunConfig, params: ModelParams) -> ResultTable:
    t_max = config.t_max if config.t_max is not None else scan_window(params)
    exceeded = _check_window(config, t_max, scan_window(params), "t_max")
    omegas = _omega_grid(config, 1.5, 2.5)
    if omegas.size < 2:
        raise ConfigError("scan needs at least two omega samples")
    scan = phase_boundary_scan(params, omegas, t_max, config.dt)
    meta = _base_meta(config, params, exceeded)
    meta["boundary"] = (
        "none" if scan.boundary is None else _format_float(scan.boundary)
    )
    meta["boundary_resolution"] = _format_float(scan.resolution)
    meta["scan_window"] = _format_float(scan.window[1])
    return ResultTable(
        columns=("omega", "markovian"),
        units=("J", "boolean"),
        rows=np.column_stack([scan.omegas, scan.markovian.astype(float)]),
        meta=meta,
    )


_ORACLE_COLUMNS = (
    "time",
    "size_f",
    "cutoff",
    "gamma_exact",
    "gamma_oracle",
    "coherence_exact",
    "coherence_oracle",
    "overlap_exact",
    "overlap_oracle",
    "overlap_imag",
    "s_f_exact",
    "s_f_oracle",
    "s_system_exact",
    "s_system_oracle",
    "s_fragment_exact",
    "s_fragment_oracle",
    "s_joint_exact",
    "s_joint_oracle",
    "mi_exact",
    "mi_oracle",
    "error",
)

_ORACLE_UNITS = (
    "1/J",
    "count",
    "count",
    "dimensionless",
    "dimensionless",
    "dimensionless",
    "dimensionless",
    "dimensionless",
    "dimensionless",
    "dimensionless",
    "dimensionless",
    "dimensionless",
    "bits",
    "bits",
    "bits",
    "bits",
    "bits",
    "bits",
    "bits",
    "bits",
    "mixed",
)


def _run_oracle_check(config: RunConfig, params: ModelParams) -> ResultTable:
    if params.n_sites > 5:
        raise ConfigError(
            f"oracle-check is brute force; n_sites must be at most 5, "
            f"got {params.n_sites}"
        )
    records = fock.crosscheck(
        params,
        times=config.oracle_times,
        fragment_sizes=config.fragment_sizes,
        cutoff=config.cutoff,
    )
    rows = np.array(
        [[float(rec[col]) for col in _ORACLE_COLUMNS] for rec in records]
    )
    meta = _base_meta(config, params, guard_exceeded=False)
    meta["max_abs_error"] = _format_float(max(rec["error"] for rec in records))
    return ResultTable(
        columns=_ORACLE_COLUMNS, units=_ORACLE_UNITS, rows=rows, meta=meta
    )


_RUNNERS = {
    "rate": _run_rate,
    "decoherence": _run_decoherence,
    "pip": _run_pip,
    "pip-surface": _run_pip_surface,
    "profile": _run_profile,
    "scan": _run_scan,
    "oracle-check": _run_oracle_check,
}


def run(config: RunConfig) -> ResultTable:
    """Dispatch the configured analysis; deterministic for identical config."""
    if config.selector not in SELECTORS:
        raise ConfigError(
            f"unknown selector {config.selector!r}; choose from {', '.join(SELECTORS)}"
        )
    if config.format not in ("csv", "json"):
        raise ConfigError(f"unknown format {config.format!r}; choose csv or json")
    params = _model_params(config)
    return _RUNNERS[config.selector](config, params)


# --- emission -------------------------------------------------------------

def emit_text(table: ResultTable, fmt: str) -> str:
    """Render a table as CSV or JSON text (deterministic)."""
    if fmt == "csv":
        lines = [f"# {key}={value}" for key, value in sorted(table.meta.items())]
        lines += [
            f"# unit.{name}={unit}"
            for name, unit in sorted(zip(table.columns, table.units))
        ]
        lines.append(",".join(table.columns))
        for row in table.rows:
            lines.append(",".join(_format_float(x) for x in row))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {
            "meta": dict(sorted(table.meta.items())),
            "columns": list(table.columns),
            "units": list(table.units),
            "rows": [[float(x) for x in row] for row in table.rows],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    raise ConfigError(f"unknown format {fmt!r}; choose csv or json")


def emit(table: ResultTable, fmt: str, path: str) -> None:
    """Write the rendered table, surfacing I/O failures with path context."""
    text = emit_text(table, fmt)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as exc:
        raise RuntimeError(f"cannot write {path}: {exc}") from exc


def load_table(path: str) -> ResultTable:
    """Parse a file produced by emit (either format) back into a ResultTable."""
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        return ResultTable(
            columns=tuple(doc["columns"]),
            units=tuple(doc["units"]),
            rows=np.array(doc["rows"], dtype=float).reshape(
                len(doc["rows"]), len(doc["columns"])
            ),
            meta=dict(doc["meta"]),
        )
    meta: dict[str, str] = {}
    units: dict[str, str] = {}
    columns: tuple[str, ...] | None = None
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            if key.startswith("unit."):
                units[key[len("unit."):]] = value
            else:
                meta[key] = value
        elif columns is None:
            columns = tuple(line.split(","))
        else:
            rows.append([float(x) for x in line.split(",")])
    if columns is None:
        raise RuntimeError(f"no column header found in {path}")
    data = np.array(rows, dtype=float).reshape(len(rows), len(columns))
    return ResultTable(
        columns=columns,
        units=tuple(units.get(name, "") for name in columns),
        rows=data,
        meta=meta,
    )


# --- sweeps ---------------------------------------------------------------

SWEEP_AXES = {"omega": "omega", "g": "coupling_g", "t": "time"}


def sweep(config: RunConfig, axis: str, values, out_dir: str, fmt: str):
    """One table file per axis value plus an index; failures are recorded.

    Returns the index document (also written to ``index.json``); callers can
    inspect per-point status.  Points are evaluated independently.
    """
    field = SWEEP_AXES.get(axis)
    if field is None:
        raise ConfigError(
            f"sweep axis must be one of {', '.join(sorted(SWEEP_AXES))}, got {axis!r}"
        )
    vals = [float(v) for v in values]
    if not vals:
        raise ConfigError("sweep needs at least one value")
    os.makedirs(out_dir, exist_ok=True)
    ext = "csv" if fmt == "csv" else "json"
    points = []
    for i, value in enumerate(vals):
        point_cfg = dataclasses.replace(config, **{field: value})
        name = f"{axis}_{i:03d}.{ext}"
        entry = {"axis": axis, "value": value, "file": name, "status": "ok"}
        try:
            table = run(point_cfg)
            emit(table, fmt, os.path.join(out_dir, name))
        except Exception as exc:  # noqa: BLE001 - per-point isolation is the point
            entry["status"] = "error"
            entry["message"] = str(exc)
        points.append(entry)
    index = {
        "axis": axis,
        "field": field,
        "meta": _config_echo(config),
        "points": points,
        "version": darwin_chain.__version__,
    }
    index_path = os.path.join(out_dir, "index.json")
    with open(index_path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(index, handle, sort_keys=True, separators=(",", ":"))
        handle.write("\n")
    return index
