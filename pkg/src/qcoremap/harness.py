"""Experiment runner: scaling sweeps over benchmarks, architectures and mappers.

A run is described by a JSON config (see :func:`config_from_dict`) and
produces one CSV row per (circuit size, architecture, algorithm, seed).
"""

from __future__ import annotations

import csv
import io
import json
import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from . import bounds
from .benchgen import BENCHMARKS, generate
from .circuit import DEFAULT_SIGMA, slice_circuit
from .mappers import ALGORITHMS, Architecture, run_mapper

MODES = ("virtual", "weak", "strong", "bounds-sweep")

CSV_COLUMNS = (
    "mode",
    "benchmark",
    "q",
    "n_cores",
    "capacity",
    "algorithm",
    "seed",
    "comms",
    "lower_bound",
    "upper_bound",
    "wall_time_s",
    "repairs",
)


class ConfigError(ValueError):
    """Invalid experiment config; ``path`` points at the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str
    benchmark: str
    architectures: tuple[tuple[int, int], ...]
    algorithms: tuple[str, ...] = ("naive", "fgp-roee", "hqa")
    seeds: tuple[int, ...] = (0,)
    params: Mapping[str, Any] = field(default_factory=dict)
    # circuit sizes; empty means "fill the architecture"
    sizes: tuple[int, ...] = ()
    sigma: int | None = DEFAULT_SIGMA
    output: str | None = None
    # off: wall_time_s is left blank so reruns are byte-identical
    timing: bool = True

    def __post_init__(self) -> None:
        validate(self)

    def circuit_sizes(self, arch: Architecture) -> tuple[int, ...]:
        if self.mode == "strong" or not self.sizes:
            return (arch.slots,)
        return self.sizes


def validate(cfg: ExperimentConfig) -> None:
    if cfg.mode not in MODES:
        raise ConfigError("$.mode", f"must be one of {', '.join(MODES)}")
    if cfg.benchmark not in BENCHMARKS:
        raise ConfigError("$.benchmark.name", f"must be one of {', '.join(BENCHMARKS)}")
    if cfg.mode == "bounds-sweep" and cfg.benchmark != "qgf":
        raise ConfigError("$.benchmark.name", "bounds-sweep needs the qgf benchmark")
    if not cfg.architectures:
        raise ConfigError("$.architectures", "must not be empty")
    for i, (n, cap) in enumerate(cfg.architectures):
        if n < 1 or cap < 1:
            raise ConfigError(f"$.architectures[{i}]", "n_cores and capacity must be >= 1")
    if cfg.mode != "bounds-sweep":
        if not cfg.algorithms:
            raise ConfigError("$.algorithms", "must not be empty")
        if not cfg.seeds:
            raise ConfigError("$.seeds", "must not be empty")
    for i, name in enumerate(cfg.algorithms):
        if name not in ALGORITHMS:
            raise ConfigError(f"$.algorithms[{i}]", f"unknown algorithm {name!r}")
    if cfg.sigma is not None and cfg.sigma < 0:
        raise ConfigError("$.sigma", "must be >= 0 or null")
    for i, q in enumerate(cfg.sizes):
        if q < 2:
            raise ConfigError(f"$.sizes[{i}]", "circuit size must be >= 2")
    for i, (n, cap) in enumerate(cfg.architectures):
        for q in cfg.circuit_sizes(Architecture(n, cap)):
            if q > n * cap:
                raise ConfigError(
                    f"$.architectures[{i}]", f"{n} x {cap} cannot hold a {q}-qubit circuit"
                )


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(path, "expected an integer")
    return value


def _int_list(value: Any, path: str) -> tuple[int, ...]:
    if isinstance(value, int) and not isinstance(value, bool):
        return (value,)
    if not isinstance(value, list):
        raise ConfigError(path, "expected an integer or a list of integers")
    return tuple(_int(v, f"{path}[{i}]") for i, v in enumerate(value))


def _architectures(value: Any, path: str) -> tuple[tuple[int, int], ...]:
    """Either a list of ``[n_cores, capacity]`` pairs or ``{"cores": [...], "capacity": c}``."""
    if isinstance(value, dict):
        unknown = set(value) - {"cores", "capacity"}
        if unknown:
            raise ConfigError(f"{path}.{sorted(unknown)[0]}", "unknown field")
        if "cores" not in value or "capacity" not in value:
            raise ConfigError(path, "needs both 'cores' and 'capacity'")
        cap = _int(value["capacity"], f"{path}.capacity")
        return tuple((n, cap) for n in _int_list(value["cores"], f"{path}.cores"))
    if not isinstance(value, list):
        raise ConfigError(path, "expected a list of [n_cores, capacity] pairs")
    out = []
    for i, item in enumerate(value):
        p = f"{path}[{i}]"
        if isinstance(item, dict):
            try:
                out.append((_int(item["n_cores"], f"{p}.n_cores"), _int(item["capacity"], f"{p}.capacity")))
            except KeyError as exc:
                raise ConfigError(p, f"missing {exc.args[0]!r}") from None
        elif isinstance(item, list) and len(item) == 2:
            out.append((_int(item[0], f"{p}[0]"), _int(item[1], f"{p}[1]")))
        else:
            raise ConfigError(p, "expected [n_cores, capacity]")
    return tuple(out)


_FIELDS = {"mode", "benchmark", "architectures", "algorithms", "seeds", "sizes", "sigma", "output", "timing"}


def config_from_dict(data: Any) -> ExperimentConfig:
    """Validate a decoded JSON config.

    ``benchmark`` is a name or ``{"name": ..., "params": {...}}``; params go
    to the generator (``g``, ``f``, ``depth_factor``...).
    """
    if not isinstance(data, dict):
        raise ConfigError("$", "config must be an object")
    unknown = set(data) - _FIELDS
    if unknown:
        raise ConfigError(f"$.{sorted(unknown)[0]}", "unknown field")
    for key in ("mode", "benchmark", "architectures"):
        if key not in data:
            raise ConfigError(f"$.{key}", "required")
    mode = data["mode"]
    if not isinstance(mode, str):
        raise ConfigError("$.mode", "expected a string")

    bench = data["benchmark"]
    params: dict[str, Any] = {}
    if isinstance(bench, dict):
        if not isinstance(bench.get("name"), str):
            raise ConfigError("$.benchmark.name", "expected a string")
        raw = bench.get("params", {})
        if not isinstance(raw, dict):
            raise ConfigError("$.benchmark.params", "expected an object")
        for k, v in raw.items():
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError(f"$.benchmark.params.{k}", "expected a number")
        params = dict(raw)
        name = bench["name"]
    elif isinstance(bench, str):
        name = bench
    else:
        raise ConfigError("$.benchmark", "expected a name or an object")

    kwargs: dict[str, Any] = {}
    if "algorithms" in data:
        algs = data["algorithms"]
        if not isinstance(algs, list) or not all(isinstance(a, str) for a in algs):
            raise ConfigError("$.algorithms", "expected a list of names")
        kwargs["algorithms"] = tuple(algs)
    if "seeds" in data:
        kwargs["seeds"] = _int_list(data["seeds"], "$.seeds")
    if "sizes" in data:
        kwargs["sizes"] = _int_list(data["sizes"], "$.sizes")
    if "sigma" in data:
        sigma = data["sigma"]
        kwargs["sigma"] = None if sigma is None else _int(sigma, "$.sigma")
    if "output" in data:
        if data["output"] is not None and not isinstance(data["output"], str):
            raise ConfigError("$.output", "expected a path string")
        kwargs["output"] = data["output"]
    if "timing" in data:
        if not isinstance(data["timing"], bool):
            raise ConfigError("$.timing", "expected true or false")
        kwargs["timing"] = data["timing"]
    return ExperimentConfig(
        mode, name, _architectures(data["architectures"], "$.architectures"), params=params, **kwargs
    )


def load_config(path: str | Path) -> ExperimentConfig:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("$", f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return config_from_dict(data)


def default_config(mode: str, benchmark: str = "qgf") -> ExperimentConfig:
    """Desk-scale versions of the three scaling studies and the bounds sweep."""
    algs = ("naive", "fgp-roee", "hqa")
    if mode == "virtual":
        return ExperimentConfig(mode, benchmark, ((6, 6),), algs, (0, 1, 2), sizes=(12, 18, 24, 30, 36))
    if mode == "weak":
        archs = tuple((n, 60 // n) for n in range(2, 11) if 60 % n == 0)
        return ExperimentConfig(mode, benchmark, archs, algs, (0, 1, 2), sizes=(60,))
    if mode == "strong":
        return ExperimentConfig(mode, benchmark, tuple((n, 10) for n in range(2, 13)), algs, (0, 1, 2))
    if mode == "bounds-sweep":
        archs = tuple((n, 120 // n) for n in range(2, 19) if 120 % n == 0)
        return ExperimentConfig(mode, "qgf", archs, (), (), {"g": 2000, "f": 0.5}, sizes=(120,))
    raise ConfigError("$.mode", f"must be one of {', '.join(MODES)}")


@dataclass(frozen=True)
class ResultRow:
    mode: str
    benchmark: str
    q: int
    n_cores: int
    capacity: int
    algorithm: str
    seed: int | None
    comms: int | None
    lower_bound: float | None
    upper_bound: float | None
    wall_time_s: float | None
    repairs: int | None

    def record(self) -> list[str]:
        def fmt(v: Any, spec: str = "") -> str:
            if v is None:
                return ""
            return format(v, spec) if spec else str(v)

        return [
            self.mode,
            self.benchmark,
            str(self.q),
            str(self.n_cores),
            str(self.capacity),
            self.algorithm,
            fmt(self.seed),
            fmt(self.comms),
            fmt(self.lower_bound, ".6f"),
            fmt(self.upper_bound, ".6f"),
            fmt(self.wall_time_s, ".6f"),
            fmt(self.repairs),
        ]


def _bounds(cfg: ExperimentConfig, q: int, n_cores: int) -> tuple[float | None, float | None]:
    if cfg.benchmark != "qgf" or q % n_cores or q < 2:
        return None, None
    g = int(cfg.params.get("g", 20 * q))
    f = float(cfg.params.get("f", 0.5))
    return bounds.comm_lower_bound(q, g, f, n_cores), bounds.comm_upper_bound(q, g, f, n_cores)


def run_experiment(cfg: ExperimentConfig) -> list[ResultRow]:
    """Run every cell of ``cfg`` and return rows in a fixed order.

    Order is architectures, then circuit sizes, then algorithms, then seeds,
    each as listed in the config.  The circuit for a (size, seed) cell is
    shared by all algorithms.
    """
    rows: list[ResultRow] = []
    for n_cores, cap in cfg.architectures:
        arch = Architecture(n_cores, cap)
        for q in cfg.circuit_sizes(arch):
            lower, upper = _bounds(cfg, q, n_cores)
            if cfg.mode == "bounds-sweep":
                rows.append(ResultRow(cfg.mode, cfg.benchmark, q, n_cores, cap, "bounds",
                                      None, None, lower, upper, None, None))
                continue
            sliced = {
                seed: slice_circuit(generate(cfg.benchmark, q, seed, **cfg.params))
                for seed in cfg.seeds
            }
            for alg in cfg.algorithms:
                for seed in cfg.seeds:
                    res = run_mapper(alg, sliced[seed], arch, seed, cfg.sigma)
                    rows.append(ResultRow(
                        cfg.mode, cfg.benchmark, q, n_cores, cap, alg, seed,
                        res.nonlocal_comms, lower, upper,
                        res.wall_time if cfg.timing else None, res.repairs,
                    ))
    return rows


def rows_to_csv(rows: Iterable[ResultRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.record())
    return buf.getvalue()


def write_csv(rows: Iterable[ResultRow], path: str | Path) -> None:
    Path(path).write_text(rows_to_csv(rows), encoding="utf-8", newline="")


def read_csv(text: str) -> list[dict[str, str]]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError("not a results CSV: header mismatch")
    return list(reader)


# post-processing ---------------------------------------------------------

Point = tuple[str, int, int, int]  # benchmark, q, n_cores, capacity


def _get(row: ResultRow | Mapping[str, str], key: str) -> Any:
    return getattr(row, key) if isinstance(row, ResultRow) else row[key]


def median_comms(rows: Iterable[ResultRow | Mapping[str, str]]) -> dict[tuple[Point, str], float]:
    """Median comms over seeds for each (point, algorithm)."""
    groups: dict[tuple[Point, str], list[int]] = {}
    for row in rows:
        comms = _get(row, "comms")
        if comms in (None, ""):
            continue
        point = (
            str(_get(row, "benchmark")),
            int(_get(row, "q")),
            int(_get(row, "n_cores")),
            int(_get(row, "capacity")),
        )
        groups.setdefault((point, str(_get(row, "algorithm"))), []).append(int(comms))
    return {key: float(statistics.median(vals)) for key, vals in groups.items()}


def comms_ratios(
    rows: Iterable[ResultRow | Mapping[str, str]], numerator: str, denominator: str
) -> dict[Point, float]:
    """``median(numerator) / median(denominator)`` per point where both ran.

    Points where the denominator's median is zero are skipped.
    """
    med = median_comms(rows)
    out = {}
    for (point, alg), value in sorted(med.items()):
        if alg != numerator:
            continue
        den = med.get((point, denominator))
        if den:
            out[point] = value / den
    return out


def aggregate_ratio(
    rows: Iterable[ResultRow | Mapping[str, str]], numerator: str, denominator: str
) -> float:
    """Mean over benchmarks of each benchmark's median per-point ratio."""
    per_point = comms_ratios(rows, numerator, denominator)
    if not per_point:
        raise ValueError(f"no points with both {numerator} and {denominator}")
    by_bench: dict[str, list[float]] = {}
    for (bench, *_), r in per_point.items():
        by_bench.setdefault(bench, []).append(r)
    return statistics.mean(statistics.median(v) for v in by_bench.values())


def total_wall_time(rows: Iterable[ResultRow | Mapping[str, str]], algorithm: str,
                    n_cores: int | None = None) -> float:
    total = 0.0
    for row in rows:
        if str(_get(row, "algorithm")) != algorithm:
            continue
        if n_cores is not None and int(_get(row, "n_cores")) != n_cores:
            continue
        t = _get(row, "wall_time_s")
        if t not in (None, ""):
            total += float(t)
    return total


def run_to_file(cfg: ExperimentConfig, output: str | Path | None = None) -> Sequence[ResultRow]:
    rows = run_experiment(cfg)
    target = output or cfg.output
    if target is not None:
        write_csv(rows, target)
    return rows
