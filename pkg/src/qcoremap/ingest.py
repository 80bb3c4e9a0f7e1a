"""Circuit ingestion and serialization.

Supports a small OpenQASM 2 subset (qelib1 gates, flattened ``qreg``
declarations, ``barrier``; ``measure``/``creg`` are dropped) and a JSON
gate-list format.  Assignment sequences are written as ``slice,qubit,core``
CSV.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Literal

from .circuit import PARAM_GATES, Circuit, CircuitError, Gate, gate_arity

if TYPE_CHECKING:
    from .mappers.base import AssignmentSequence

QASM_GATES = frozenset(
    {"h", "x", "y", "z", "s", "sdg", "t", "tdg", "rx", "ry", "rz", "u1",
     "cx", "cz", "swap", "cp", "cu1", "ccx"}
)


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str
    severity: Literal["error", "warning"] = "error"

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


class QasmParseError(ValueError):
    def __init__(self, diagnostics: list[ParseDiagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))


class JsonSchemaError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def toffoli_decomposition(a: int, b: int, c: int) -> list[Gate]:
    """Standard 6-CX Toffoli network with controls ``a``, ``b`` and target ``c``."""
    return [
        Gate("h", (c,)),
        Gate("cx", (b, c)),
        Gate("tdg", (c,)),
        Gate("cx", (a, c)),
        Gate("t", (c,)),
        Gate("cx", (b, c)),
        Gate("tdg", (c,)),
        Gate("cx", (a, c)),
        Gate("t", (b,)),
        Gate("t", (c,)),
        Gate("h", (c,)),
        Gate("cx", (a, b)),
        Gate("t", (a,)),
        Gate("tdg", (b,)),
        Gate("cx", (a, b)),
    ]


# --------------------------------------------------------------------------
# OpenQASM 2

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_NUM = r"(?:\d+\.?\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?)"
_HEADER_RE = re.compile(r"OPENQASM\s+2(?:\.0)?")
_INCLUDE_RE = re.compile(r'include\s+"([^"]*)"')
_REG_RE = re.compile(rf"(qreg|creg)\s+({_IDENT})\s*\[\s*(\d+)\s*\]")
_GATE_RE = re.compile(rf"({_IDENT})\s*(?:\(([^()]*)\))?\s*(.*)", re.S)
_ARG_RE = re.compile(rf"({_IDENT})\s*(?:\[\s*(\d+)\s*\])?")
_FLOAT_RE = re.compile(rf"[-+]?{_NUM}")
_PI_RE = re.compile(rf"([-+])?\s*(?:({_NUM})\s*\*\s*)?pi\s*(?:/\s*({_NUM}))?")


def parse_angle(text: str) -> float:
    """Literal float or a multiple of pi such as ``-pi/4`` or ``2*pi``."""
    text = text.strip()
    if _FLOAT_RE.fullmatch(text):
        return float(text)
    m = _PI_RE.fullmatch(text)
    if not m:
        raise ValueError(f"unsupported angle expression {text!r}")
    sign, mult, div = m.groups()
    value = math.pi * (float(mult) if mult else 1.0)
    if div:
        if float(div) == 0:
            raise ValueError("division by zero in angle")
        value /= float(div)
    return -value if sign == "-" else value


class _Source:
    """Maps absolute offsets of the comment-stripped text to line/column."""

    def __init__(self, text: str):
        self.text = text
        self.line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def locate(self, offset: int) -> tuple[int, int]:
        lo, hi = 0, len(self.line_starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.line_starts[mid] <= offset:
                lo = mid
            else:
                hi = mid - 1
        return lo + 1, offset - self.line_starts[lo] + 1


def _strip_comments(text: str) -> str:
    # keep offsets stable: blank the comment body instead of removing it
    return re.sub(r"//[^\n]*", lambda m: " " * len(m.group()), text)


def _statements(text: str) -> tuple[list[tuple[int, str]], tuple[int, str] | None]:
    """Split on ``;``.  Returns (offset, text) of each statement and any trailing fragment."""
    out = []
    start = 0
    for m in re.finditer(";", text):
        chunk = text[start:m.start()]
        stripped = chunk.lstrip()
        if stripped.strip():
            out.append((start + len(chunk) - len(stripped), stripped.rstrip()))
        start = m.end()
    tail = text[start:]
    tail_stripped = tail.lstrip()
    rest = None
    if tail_stripped.strip():
        rest = (start + len(tail) - len(tail_stripped), tail_stripped.rstrip())
    return out, rest


class _QasmParser:
    def __init__(self, source: str):
        self.src = _Source(source)
        self.diagnostics: list[ParseDiagnostic] = []
        self.qregs: dict[str, tuple[int, int]] = {}  # name -> (offset, size)
        self.cregs: set[str] = set()
        self.num_qubits = 0
        self.gates: list[Gate] = []
        self.barriers: list[int] = []

    def error(self, offset: int, message: str) -> None:
        line, col = self.src.locate(offset)
        self.diagnostics.append(ParseDiagnostic(line, col, message, "error"))

    def warn(self, offset: int, message: str) -> None:
        line, col = self.src.locate(offset)
        self.diagnostics.append(ParseDiagnostic(line, col, message, "warning"))

    @property
    def failed(self) -> bool:
        return any(d.severity == "error" for d in self.diagnostics)

    def run(self) -> None:
        stmts, tail = _statements(self.src.text)
        if tail is not None:
            self.error(tail[0], "statement is missing a terminating ';'")
        if not stmts:
            self.error(0, "malformed header: expected 'OPENQASM 2.0;'")
            return
        offset, head = stmts[0]
        if not _HEADER_RE.fullmatch(head):
            self.error(offset, "malformed header: expected 'OPENQASM 2.0;'")
            return
        for offset, stmt in stmts[1:]:
            self.statement(offset, stmt)

    def statement(self, offset: int, stmt: str) -> None:
        if stmt.startswith("OPENQASM"):
            self.error(offset, "duplicate OPENQASM header")
            return
        m = _INCLUDE_RE.fullmatch(stmt)
        if m:
            if m.group(1) != "qelib1.inc":
                self.error(offset, f"unsupported include {m.group(1)!r}")
            return
        m = _REG_RE.fullmatch(stmt)
        if m:
            self.register(offset, m.group(1), m.group(2), int(m.group(3)))
            return
        if re.match(r"(qreg|creg)\b", stmt):
            self.error(offset, "malformed register declaration")
            return
        if re.match(r"measure\b", stmt):
            self.warn(offset, "measure ignored")
            return
        if re.match(r"(gate|opaque|if|reset)\b", stmt):
            self.error(offset, f"unsupported statement {stmt.split()[0]!r}")
            return
        if re.match(r"barrier\b", stmt):
            args = stmt[len("barrier"):]
            self.operands(offset + len("barrier"), args)
            if not self.failed:
                self.barriers.append(len(self.gates))
            return
        self.gate(offset, stmt)

    def register(self, offset: int, kind: str, name: str, size: int) -> None:
        if name in self.qregs or name in self.cregs:
            self.error(offset, f"register {name!r} already declared")
            return
        if kind == "creg":
            self.cregs.add(name)
            return
        if size < 1:
            self.error(offset, f"register {name!r} must have at least one qubit")
            return
        self.qregs[name] = (self.num_qubits, size)
        self.num_qubits += size

    def operands(self, offset: int, text: str) -> list[list[int]] | None:
        """Resolve a comma-separated operand list; bare registers broadcast."""
        resolved: list[list[int]] = []
        pos = 0
        if not text.strip():
            self.error(offset, "missing operands")
            return None
        for part in text.split(","):
            lead = len(part) - len(part.lstrip())
            where = offset + pos + lead
            pos += len(part) + 1
            m = _ARG_RE.fullmatch(part.strip())
            if not m:
                self.error(where, f"malformed operand {part.strip()!r}")
                return None
            name, idx = m.group(1), m.group(2)
            if name in self.cregs:
                self.error(where, f"{name!r} is a classical register")
                return None
            if name not in self.qregs:
                self.error(where, f"undeclared register {name!r}")
                return None
            base, size = self.qregs[name]
            if idx is None:
                resolved.append([base + i for i in range(size)])
            else:
                if int(idx) >= size:
                    self.error(where, f"index out of range: {name}[{idx}] with size {size}")
                    return None
                resolved.append([base + int(idx)])
        return resolved

    def gate(self, offset: int, stmt: str) -> None:
        m = _GATE_RE.fullmatch(stmt)
        if not m:
            self.error(offset, f"malformed statement {stmt!r}")
            return
        name, params, args = m.group(1), m.group(2), m.group(3)
        if name not in QASM_GATES:
            self.error(offset, f"unknown gate {name!r}")
            return
        wants_param = name in PARAM_GATES
        angle = None
        if params is not None:
            if not wants_param:
                self.error(offset, f"gate {name!r} takes no parameters")
                return
            try:
                angle = parse_angle(params)
            except ValueError as exc:
                self.error(offset, str(exc))
                return
        elif wants_param:
            self.error(offset, f"gate {name!r} requires one parameter")
            return
        arity = 3 if name == "ccx" else gate_arity(name)
        resolved = self.operands(offset + m.start(3), args)
        if resolved is None:
            return
        if len(resolved) != arity:
            self.error(offset, f"arity mismatch: {name} takes {arity} operand(s), got {len(resolved)}")
            return
        widths = {len(r) for r in resolved if len(r) > 1}
        if len(widths) > 1:
            self.error(offset, "broadcast registers differ in size")
            return
        width = widths.pop() if widths else 1
        for k in range(width):
            qubits = [r[k] if len(r) > 1 else r[0] for r in resolved]
            if len(set(qubits)) != len(qubits):
                self.error(offset, f"duplicate qubit in {name} operands")
                return
            if name == "ccx":
                self.gates.extend(toffoli_decomposition(*qubits))
            else:
                self.gates.append(Gate(name, tuple(qubits), angle))


def parse_qasm_with_diagnostics(source: str | bytes) -> tuple[Circuit, list[ParseDiagnostic]]:
    """Parse QASM, returning the circuit and any warnings.

    Raises :class:`QasmParseError` carrying every error diagnostic when the
    program is rejected.
    """
    if isinstance(source, (bytes, bytearray)):
        try:
            source = bytes(source).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise QasmParseError([ParseDiagnostic(1, 1, f"invalid UTF-8: {exc.reason}")]) from None
    source = source.replace("\r\n", "\n").replace("\r", "\n")
    parser = _QasmParser(_strip_comments(source))
    parser.run()
    if parser.failed:
        raise QasmParseError([d for d in parser.diagnostics if d.severity == "error"])
    circuit = Circuit(parser.num_qubits, tuple(parser.gates), tuple(parser.barriers))
    return circuit, parser.diagnostics


def parse_qasm(source: str | bytes) -> Circuit:
    return parse_qasm_with_diagnostics(source)[0]


def _format_angle(value: float) -> str:
    return repr(float(value))


def write_qasm(circuit: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    if circuit.num_qubits:
        lines.append(f"qreg q[{circuit.num_qubits}];")
    barriers = set(circuit.barriers)
    for pos, gate in enumerate(circuit.gates):
        if pos in barriers:
            lines.append("barrier q;")
        args = ",".join(f"q[{q}]" for q in gate.qubits)
        if gate.param is None:
            lines.append(f"{gate.kind} {args};")
        else:
            lines.append(f"{gate.kind}({_format_angle(gate.param)}) {args};")
    if len(circuit.gates) in barriers:
        lines.append("barrier q;")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# JSON


def _expect_int(value: Any, path: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise JsonSchemaError(path, f"expected integer, got {type(value).__name__}")
    if value < minimum:
        raise JsonSchemaError(path, f"must be >= {minimum}")
    return value


def circuit_from_dict(data: Any) -> Circuit:
    if not isinstance(data, dict):
        raise JsonSchemaError("$", "expected an object")
    unknown = set(data) - {"num_qubits", "gates", "barriers"}
    if unknown:
        raise JsonSchemaError("$", f"unexpected keys {sorted(unknown)}")
    raw_gates = data.get("gates", [])
    if not isinstance(raw_gates, list):
        raise JsonSchemaError("$.gates", "expected an array")
    gates = []
    for i, raw in enumerate(raw_gates):
        path = f"$.gates[{i}]"
        if not isinstance(raw, dict):
            raise JsonSchemaError(path, "expected an object")
        kind = raw.get("kind")
        if not isinstance(kind, str):
            raise JsonSchemaError(f"{path}.kind", "expected a gate name")
        qubits = raw.get("qubits")
        if not isinstance(qubits, list):
            raise JsonSchemaError(f"{path}.qubits", "expected an array")
        qs = tuple(_expect_int(q, f"{path}.qubits[{k}]") for k, q in enumerate(qubits))
        param = raw.get("param")
        if param is not None and (isinstance(param, bool) or not isinstance(param, (int, float))):
            raise JsonSchemaError(f"{path}.param", "expected a number")
        try:
            gates.append(Gate(kind.lower(), qs, param))
        except CircuitError as exc:
            raise JsonSchemaError(path, str(exc)) from None
    if "num_qubits" in data:
        n = _expect_int(data["num_qubits"], "$.num_qubits")
    else:
        n = 1 + max((max(g.qubits) for g in gates), default=-1)
    barriers = data.get("barriers", [])
    if not isinstance(barriers, list):
        raise JsonSchemaError("$.barriers", "expected an array")
    bs = tuple(_expect_int(b, f"$.barriers[{k}]") for k, b in enumerate(barriers))
    try:
        return Circuit(n, tuple(gates), bs)
    except CircuitError as exc:
        raise JsonSchemaError("$", str(exc)) from None


def parse_json(source: str | bytes) -> Circuit:
    try:
        data = json.loads(source)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise JsonSchemaError("$", f"invalid JSON: {exc}") from None
    return circuit_from_dict(data)


def circuit_to_dict(circuit: Circuit) -> dict[str, Any]:
    gates = []
    for g in circuit.gates:
        entry: dict[str, Any] = {"kind": g.kind, "qubits": list(g.qubits)}
        if g.param is not None:
            entry["param"] = g.param
        gates.append(entry)
    out: dict[str, Any] = {"num_qubits": circuit.num_qubits, "gates": gates}
    if circuit.barriers:
        out["barriers"] = list(circuit.barriers)
    return out


def write_json(circuit: Circuit) -> str:
    return json.dumps(circuit_to_dict(circuit), separators=(",", ":")) + "\n"


# --------------------------------------------------------------------------
# Assignment CSV


def write_assignments_csv(seq: AssignmentSequence) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["slice", "qubit", "core"])
    for t, assignment in enumerate(seq):
        for qubit, core in enumerate(assignment):
            writer.writerow([t, qubit, core])
    return buf.getvalue()


def read_assignments_csv(text: str) -> AssignmentSequence:
    from .mappers.base import Assignment, AssignmentSequence

    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != ["slice", "qubit", "core"]:
        raise ValueError("expected header 'slice,qubit,core'")
    rows: dict[int, dict[int, int]] = {}
    for row in reader:
        rows.setdefault(int(row["slice"]), {})[int(row["qubit"])] = int(row["core"])
    per_slice = []
    for t in range(len(rows)):
        if t not in rows:
            raise ValueError(f"missing slice {t}")
        cores = rows[t]
        if sorted(cores) != list(range(len(cores))):
            raise ValueError(f"slice {t} does not list qubits 0..n-1")
        per_slice.append(Assignment(tuple(cores[q] for q in range(len(cores)))))
    return AssignmentSequence(tuple(per_slice))
