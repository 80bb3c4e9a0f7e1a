"""Regenerate the golden QASM corpus under tests/golden (run from the repo root)."""

from __future__ import annotations

from pathlib import Path

from qcoremap.benchgen import cuccaro_adder, draper_adder, qft, quantum_volume, random_by_depth, random_qgf
from qcoremap.ingest import write_qasm

OUT = Path(__file__).parent / "golden"

HANDWRITTEN = {
    "minimal": "OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[1];\n",
    "toffoli": 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[3];\nccx q[0],q[1],q[2];\n',
    "comments": (
        "// header comment\nOPENQASM 2.0; // version\ninclude \"qelib1.inc\";\n"
        "qreg q[3]; // data\n// h q[2];\nh q[0];\ncx q[0],q[2]; // entangle\n"
    ),
    "two_registers": (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg a[2];\nqreg b[2];\ncreg c[4];\n'
        "cx a[0],b[1];\nswap a[1],b[0];\ncz b[0],b[1];\n"
    ),
    "angles": (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\nrz(pi/2) q[0];\nrx(-pi/4) q[1];\n'
        "ry(2*pi) q[0];\nu1(3*pi/4) q[1];\ncp(0.125) q[0],q[1];\ncu1(-1.5e-1) q[1],q[0];\n"
    ),
    "measure_and_barrier": (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[4];\ncreg c[4];\nh q;\ncx q[0],q[1];\n'
        "barrier q;\ncx q[2],q[3];\nmeasure q -> c;\n"
    ),
    "crlf": "OPENQASM 2.0;\r\nqreg q[3];\r\nh q[1];\r\ncx q[1],q[2];\r\nsdg q[0];\r\ntdg q[2];\r\n",
    "single_line": "OPENQASM 2.0; qreg q[3]; x q[0]; y q[1]; z q[2]; s q[0]; t q[1]; cx q[2],q[0];",
    "broadcast": 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[5];\nh q;\nt q;\nbarrier q;\ncx q[4],q[0];\n',
    "empty_body": 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\n',
}


def main() -> None:
    OUT.mkdir(exist_ok=True)
    files: dict[str, str] = dict(HANDWRITTEN)
    for q in range(2, 10):
        files[f"qft_{q}"] = write_qasm(qft(q))
    for n in range(1, 5):
        files[f"cuccaro_{n}"] = write_qasm(cuccaro_adder(n))
    for n in range(1, 5):
        files[f"draper_{n}"] = write_qasm(draper_adder(n))
    for seed in range(8):
        files[f"qgf_{seed}"] = write_qasm(random_qgf(4 + seed, 10 + 5 * seed, 0.5, seed))
    for seed in range(8):
        files[f"random_{seed}"] = write_qasm(random_by_depth(3 + seed, 4, 0.6, seed))
    for q in range(2, 10):
        files[f"qv_{q}"] = write_qasm(quantum_volume(q, seed=q))
    assert len(files) == 50, len(files)
    for name, text in sorted(files.items()):
        (OUT / f"{name}.qasm").write_bytes(text.encode("utf-8"))


if __name__ == "__main__":
    main()
