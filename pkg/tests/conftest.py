from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qcoremap.circuit import Circuit, Gate

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ONE_Q = ("h", "x", "t", "rz")
TWO_Q = ("cx", "cz", "cp", "swap")


@st.composite
def circuits(draw, min_qubits: int = 2, max_qubits: int = 8, max_gates: int = 40):
    n = draw(st.integers(min_qubits, max_qubits))
    gates = []
    for _ in range(draw(st.integers(0, max_gates))):
        if n >= 2 and draw(st.booleans()):
            a, b = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
            kind = draw(st.sampled_from(TWO_Q))
            gates.append(Gate(kind, (a, b), 0.5 if kind == "cp" else None))
        else:
            kind = draw(st.sampled_from(ONE_Q))
            gates.append(Gate(kind, (draw(st.integers(0, n - 1)),), 0.25 if kind == "rz" else None))
    barriers = draw(st.lists(st.integers(0, len(gates)), max_size=2))
    return Circuit(n, tuple(gates), tuple(barriers))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
