"""Command-line entry point: ``qcoremap {gen,slice,bounds,map,exp}``.

Exit codes: 0 on success, 1 on usage errors, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path
from typing import Sequence

from . import bounds
from .benchgen import BENCHMARKS, generate
from .circuit import DEFAULT_SIGMA, Circuit, slice_circuit
from .harness import ConfigError, load_config, rows_to_csv, run_experiment
from .ingest import JsonSchemaError, QasmParseError, parse_json, parse_qasm, write_assignments_csv, write_json, write_qasm
from .mappers import ALGORITHMS, Architecture, MappingError, run_mapper


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def parse_cores(text: str) -> list[int]:
    """``"2..18"`` (inclusive), ``"2,4,8"`` or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid core list {text!r}") from None
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError(f"invalid core list {text!r}")
    return out


def _param(text: str) -> tuple[str, float]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter {key!r} needs a number") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


def _load_circuit(path: str) -> Circuit:
    data = Path(path).read_bytes()
    if path.lower().endswith(".json"):
        return parse_json(data)
    return parse_qasm(data)


def _circuit_from_args(args: argparse.Namespace) -> Circuit:
    if args.input:
        return _load_circuit(args.input)
    if args.bench:
        if args.q is None:
            raise UsageError("--bench needs --q")
        return generate(args.bench, args.q, args.seed, **dict(args.param))
    raise UsageError("give a circuit file or --bench")


def cmd_gen(args: argparse.Namespace) -> int:
    circuit = generate(args.benchmark, args.q, args.seed, **dict(args.param))
    fmt = args.format or ("json" if args.out and args.out.endswith(".json") else "qasm")
    _emit(write_json(circuit) + "\n" if fmt == "json" else write_qasm(circuit), args.out)
    return 0


def cmd_slice(args: argparse.Namespace) -> int:
    tsc = slice_circuit(_circuit_from_args(args))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["slice", "gates", "two_qubit_gates", "pairs"])
    for s in tsc:
        pairs = " ".join(f"{a}-{b}" for a, b in s.pairs)
        writer.writerow([s.index, len(s.gates), len(s.pairs), pairs])
    _emit(buf.getvalue(), args.out)
    n2 = sum(len(s.pairs) for s in tsc)
    print(f"qubits={tsc.num_qubits} gates={len(tsc.gates)} slices={len(tsc)} two_qubit={n2}",
          file=sys.stderr if not args.out else sys.stdout)
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    if args.strong:
        reports = bounds.sweep_strong(args.capacity, args.f, args.cores, args.gates_per_qubit)
    else:
        if args.q is None or args.g is None:
            raise UsageError("bounds needs --q and --g (or --strong --capacity)")
        reports = bounds.sweep_cores(args.q, args.g, args.f, args.cores)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["q", "g", "f", "n_cores", "lower_bound", "upper_bound"])
    for r in reports:
        writer.writerow([r.q, format(r.g, "g"), format(r.f, "g"), r.n_cores,
                         f"{r.lower:.6f}", f"{r.upper:.6f}"])
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_map(args: argparse.Namespace) -> int:
    tsc = slice_circuit(_circuit_from_args(args))
    arch = Architecture(args.cores, args.capacity)
    result = run_mapper(args.algo, tsc, arch, args.seed, args.sigma)
    print(f"algorithm={result.algorithm} comms={result.nonlocal_comms} "
          f"slices={len(result.sequence)} repairs={result.repairs} wall_time_s={result.wall_time:.6f}")
    if args.out:
        Path(args.out).write_text(write_assignments_csv(result.sequence), encoding="utf-8", newline="")
    return 0


def cmd_exp(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    rows = run_experiment(cfg)
    _emit(rows_to_csv(rows), args.out or cfg.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--sigma", type=int, default=DEFAULT_SIGMA, help="look-ahead horizon")
    common.add_argument("--out", help="output file (default: stdout)")

    parser = _Parser(prog="qcoremap", description="Map quantum circuits onto multi-core architectures.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("gen", parents=[common], help="emit a benchmark circuit")
    p.add_argument("benchmark", choices=BENCHMARKS)
    p.add_argument("--q", type=int, required=True, help="number of qubits")
    p.add_argument("--format", choices=("qasm", "json"))
    p.add_argument("--param", type=_param, action="append", default=[], metavar="KEY=VALUE")
    p.set_defaults(func=cmd_gen)

    def circuit_source(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", nargs="?", help="QASM or .json circuit file")
        p.add_argument("--bench", choices=BENCHMARKS, help="generate a benchmark instead")
        p.add_argument("--q", type=int)
        p.add_argument("--param", type=_param, action="append", default=[], metavar="KEY=VALUE")

    p = sub.add_parser("slice", parents=[common], help="summarise the timeslices of a circuit")
    circuit_source(p)
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("bounds", parents=[common], help="communication bounds over core counts (CSV)")
    p.add_argument("--q", type=int)
    p.add_argument("--g", type=float)
    p.add_argument("--f", type=float, default=0.5)
    p.add_argument("--cores", type=parse_cores, default=parse_cores("2..18"))
    p.add_argument("--strong", action="store_true", help="fixed capacity, q = cores x capacity")
    p.add_argument("--capacity", type=int, default=10)
    p.add_argument("--gates-per-qubit", type=float, default=20)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("map", parents=[common], help="map one circuit and write its assignments")
    circuit_source(p)
    p.add_argument("--algo", choices=ALGORITHMS, default="hqa")
    p.add_argument("--cores", type=int, required=True)
    p.add_argument("--capacity", type=int, required=True)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("exp", parents=[common], help="run an experiment config (JSON)")
    p.add_argument("config")
    p.set_defaults(func=cmd_exp)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (QasmParseError, JsonSchemaError, ConfigError, MappingError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
