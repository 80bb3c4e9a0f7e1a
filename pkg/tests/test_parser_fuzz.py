from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcoremap.ingest import QasmParseError, parse_qasm, parse_qasm_with_diagnostics, write_qasm

from fuzzing import fuzz_inputs, golden_files


@pytest.mark.parametrize("path", golden_files(), ids=lambda p: p.stem)
def test_golden_round_trip(path):
    c = parse_qasm(path.read_bytes())
    assert parse_qasm(write_qasm(c)) == c


def test_golden_corpus_size():
    assert len(golden_files()) == 50


def _parse_or_diagnose(data):
    try:
        parse_qasm_with_diagnostics(data)
    except QasmParseError as exc:
        assert exc.diagnostics
        text = data.decode("utf-8", errors="replace") if isinstance(data, bytes) else data
        n_lines = text.replace("\r\n", "\n").replace("\r", "\n").count("\n") + 1
        for d in exc.diagnostics:
            assert d.severity == "error"
            assert 1 <= d.line <= n_lines
            assert d.column >= 1


@given(st.binary(max_size=300))
def test_arbitrary_bytes_never_crash(data):
    _parse_or_diagnose(data)


@given(st.text(alphabet=st.sampled_from(list("OPENQASM2.0;qreg[]cxh,() pi/*-\n\"")), max_size=200))
def test_qasm_like_text_never_crashes(text):
    _parse_or_diagnose("OPENQASM 2.0;\n" + text)


def test_mutated_corpus_sample():
    for data in fuzz_inputs(600, seed=123):
        _parse_or_diagnose(data)
