from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcoremap.bounds import (
    bounds_report,
    comm_lower_bound,
    comm_upper_bound,
    expected_unfeasible_qubits_per_slice,
    sweep_cores,
    sweep_strong,
)


def upper_oracle(q, g, f, n):
    # exact rational evaluation
    return Fraction(2 * (n - 1)) * Fraction(g) * Fraction(f) * q / (n * (q - 1))


def test_upper_bound_example():
    assert comm_upper_bound(120, 2000, 0.5, 2) == pytest.approx(240000 / 238, abs=1e-9)
    assert comm_upper_bound(120, 2000, 0.5, 2) == pytest.approx(1008.40, abs=0.005)


def test_lower_bound_example():
    assert comm_lower_bound(120, 2000, 0.5, 10) == pytest.approx(2_160_000 / (2 * 1190), abs=1e-9)
    assert comm_lower_bound(120, 2000, 0.5, 10) == pytest.approx(907.56, abs=0.005)


def test_lemma_example():
    assert expected_unfeasible_qubits_per_slice(120, 2000, 0.5, 10, 100) == pytest.approx(18.151, abs=5e-4)


def test_zero_cases():
    assert comm_upper_bound(120, 2000, 0.5, 1) == 0
    assert comm_lower_bound(120, 2000, 0.5, 1) == 0
    assert comm_upper_bound(120, 2000, 0.0, 4) == 0
    assert expected_unfeasible_qubits_per_slice(120, 2000, 0.5, 1, 7) == 0


def test_per_slice_times_t_is_upper():
    q, g, f, n, T = 60, 1000, 0.7, 5, 37
    assert T * expected_unfeasible_qubits_per_slice(q, g, f, n, T) == pytest.approx(comm_upper_bound(q, g, f, n))


@pytest.mark.parametrize(
    "args",
    [(121, 2000, 0.5, 2), (1, 10, 0.5, 1), (10, 10, 1.5, 2), (10, -1, 0.5, 2), (10, 10, 0.5, 0)],
)
def test_invalid_inputs(args):
    with pytest.raises(ValueError):
        comm_upper_bound(*args)


def test_per_slice_needs_t():
    with pytest.raises(ValueError):
        expected_unfeasible_qubits_per_slice(10, 10, 0.5, 2, 0)


params = st.integers(1, 30).flatmap(
    lambda n: st.tuples(
        st.integers(1, 20).map(lambda m: m * n).filter(lambda q: q >= 2),
        st.integers(0, 5000),
        st.fractions(0, 1, max_denominator=100),
        st.just(n),
    )
)


@given(params)
def test_formula_matches_rational_oracle(p):
    q, g, f, n = p
    up = comm_upper_bound(q, g, float(f), n)
    assert up == pytest.approx(float(upper_oracle(q, g, f, n)), rel=1e-12, abs=1e-12)
    assert comm_lower_bound(q, g, float(f), n) == up / 2
    assert up >= 0


@given(params, st.integers(0, 5000))
def test_linear_in_g_and_f(p, g2):
    q, g, f, n = p
    f = float(f)
    assert comm_upper_bound(q, g + g2, f, n) == pytest.approx(
        comm_upper_bound(q, g, f, n) + comm_upper_bound(q, g2, f, n), rel=1e-9, abs=1e-9
    )
    assert comm_upper_bound(q, g, f / 2, n) == pytest.approx(comm_upper_bound(q, g, f, n) / 2, abs=1e-9)


def test_monotone_in_cores():
    q = 360
    cores = [n for n in range(1, q + 1) if q % n == 0]
    ups = [comm_upper_bound(q, 2000, 0.5, n) for n in cores]
    assert ups == sorted(ups)


def test_plateau_ratio():
    q, g, f = 120, 2000, 0.5
    ratio = comm_upper_bound(q, g, f, q) / comm_upper_bound(q, g, f, 2)
    assert ratio == pytest.approx(2 * (q - 1) / q)
    # approaches 2gf as N -> q for large q
    assert comm_upper_bound(q, g, f, q) == pytest.approx(2 * g * f, rel=0.01)


def test_report_and_sweeps():
    r = bounds_report(120, 2000, 0.5, 10, t=100)
    assert r.lower == r.upper / 2
    assert r.expected_unfeasible_per_slice == pytest.approx(18.151, abs=5e-4)
    assert [x.n_cores for x in sweep_cores(120, 2000, 0.5, list(range(2, 19)))] == [2, 3, 4, 5, 6, 8, 10, 12, 15]
    strong = sweep_strong(10, 0.5, [2, 4])
    assert [(x.q, x.g) for x in strong] == [(20, 400), (40, 800)]
