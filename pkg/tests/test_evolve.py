import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from superzeno.errors import InvalidState, InvalidTolerance, ShapeError
from superzeno.evolve import (
    CSV_HEADER,
    compose,
    cost_table,
    leakage,
    leakage_for_state,
    zeno_measurement_leakage,
    zeno_worst_leakage,
)
from superzeno.qcore import Hamiltonian, SubspaceSplit, random_hamiltonian
from superzeno.sequences import (
    PulseSequence,
    make_sequence,
    periodic_sequence,
    recursive_sequence,
    yoshida_sequence,
)

FREE = PulseSequence((1.0,), "free")


def _expm_product(seq, h, split, t):
    w = np.eye(h.dim, dtype=complex)
    for j, x in enumerate(seq.intervals):
        w = expm(-1j * h.matrix * x * t) @ w
        if j < seq.pulse_count:
            w = split.J @ w
    return w


def test_compose_free_zero_time(generic):
    h, split = generic
    assert np.array_equal(compose(FREE, h, split, 0.0), np.eye(4))


@pytest.mark.parametrize("t", [0.1, 1.0, 3.7])
def test_midpoint_pulse_collapses_to_inversion(sigma_x, qubit_split, t):
    w = compose(recursive_sequence(1), sigma_x, qubit_split, t)
    assert np.allclose(w, np.diag([-1, 1]), atol=1e-14)
    assert leakage(recursive_sequence(1), sigma_x, qubit_split, t).leakage < 1e-24


@pytest.mark.parametrize("family,k", [("recursive", 4), ("yoshida", 2), ("optimal", 5), ("periodic", 7)])
def test_compose_matches_expm(generic, family, k):
    h, split = generic
    seq = make_sequence(family, k)
    assert np.allclose(compose(seq, h, split, 1.3), _expm_product(seq, h, split, 1.3), atol=1e-12)


def test_compose_shape_error(generic):
    h, _ = generic
    with pytest.raises(ShapeError):
        compose(FREE, h, SubspaceSplit.standard(3, 1), 1.0)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 5000), dim=st.integers(2, 8), m=st.integers(0, 6), t=st.floats(0, 4))
def test_compose_unitary(seed, dim, m, t):
    h = random_hamiltonian(dim, seed, 1.0)
    split = SubspaceSplit.standard(dim, 1 + seed % (dim - 1))
    w = compose(recursive_sequence(m), h, split, t)
    assert np.linalg.norm(w.conj().T @ w - np.eye(dim), 2) <= 1e-9


def test_periodic_two_first_order_cancels():
    h = random_hamiltonian(2, 5, 1.0)
    split = SubspaceSplit.standard(2, 1)
    seq = periodic_sequence(2)
    b1 = leakage(seq, h, split, 1e-3).b_norm
    b2 = leakage(seq, h, split, 2e-3).b_norm
    assert np.log2(b2 / b1) == pytest.approx(2.0, abs=0.01)


def test_zero_hamiltonian_no_leakage():
    h = Hamiltonian.from_matrix(np.zeros((3, 3)))
    rep = leakage(recursive_sequence(2), h, SubspaceSplit.standard(3, 1), 5.0)
    assert rep.leakage == 0.0
    assert rep.bound_satisfied


def test_leakage_recursive1_bound():
    h = random_hamiltonian(4, 11, 1.0)
    rep = leakage(recursive_sequence(1), h, SubspaceSplit.standard(4, 2), 0.1)
    assert rep.bound == pytest.approx(2.5e-5, rel=1e-12)
    assert rep.leakage <= 2.5e-5
    assert rep.leakage == rep.b_norm ** 2


def test_leakage_recursive4_at_unit_time(generic):
    h, split = generic
    rep = leakage(recursive_sequence(4), h, split, 1.0)
    assert rep.pulse_count == 10
    assert rep.bound == pytest.approx(2.0 ** -20)
    assert rep.leakage <= 1e-4
    assert rep.bound_satisfied


def test_bound_absent_for_other_families(generic):
    h, split = generic
    rep = leakage(yoshida_sequence(2), h, split, 1.0)
    assert rep.bound is None and rep.bound_satisfied


def test_report_csv(generic):
    h, split = generic
    row = leakage(recursive_sequence(1), h, split, 0.5).to_csv_row()
    assert len(row.split(",")) == len(CSV_HEADER.split(","))
    assert row.startswith("recursive m=1,0.5,1,")
    assert row.endswith(",true")


def test_leakage_for_state_trivial(generic):
    h, split = generic
    assert leakage_for_state(FREE, h, split, 0.0, [1, 0, 0, 0]) == pytest.approx(0.0, abs=1e-30)


@pytest.mark.parametrize("t", [0.2, 1.0, 2.5])
def test_rabi_formula(sigma_x, qubit_split, t):
    assert leakage_for_state(FREE, sigma_x, qubit_split, t, [1, 0]) == pytest.approx(np.sin(t) ** 2, abs=1e-14)


def test_state_leakage_below_worst_case(generic, rng):
    h, split = generic
    seq = recursive_sequence(2)
    worst = leakage(seq, h, split, 1.0).leakage
    sampled = []
    for _ in range(100):
        p = np.zeros(4, dtype=complex)
        p[:2] = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        p /= np.linalg.norm(p)
        sampled.append(leakage_for_state(seq, h, split, 1.0, p))
    assert max(sampled) <= worst + 1e-12
    assert max(sampled) > 0.5 * worst


@pytest.mark.parametrize("state", [[0, 0, 1, 0], [2, 0, 0, 0]])
def test_invalid_state(generic, state):
    h, split = generic
    with pytest.raises(InvalidState):
        leakage_for_state(FREE, h, split, 1.0, state)


def test_zeno_trivial(generic):
    h, split = generic
    assert zeno_measurement_leakage(h, split, 0.0, 1, [1, 0, 0, 0]) == pytest.approx(0, abs=1e-15)


def test_zeno_sigma_x(sigma_x, qubit_split):
    v = zeno_measurement_leakage(sigma_x, qubit_split, 1.0, 10, [1, 0])
    assert v == pytest.approx(0.0953137789413251607, abs=1e-14)
    assert v <= 0.1


def test_zeno_one_over_n_scaling():
    h = random_hamiltonian(4, 2, 1.0)
    split = SubspaceSplit.standard(4, 1)
    a = zeno_measurement_leakage(h, split, 0.5, 20, [1, 0, 0, 0])
    b = zeno_measurement_leakage(h, split, 0.5, 80, [1, 0, 0, 0])
    assert b / a == pytest.approx(0.25, rel=0.1)


def test_zeno_multi_dim_matches_repeated_projection(generic, rng):
    h, split = generic
    p = np.array([0.6, 0.8j, 0, 0])
    u = expm(-1j * h.matrix * 0.1)
    psi = p.copy()
    for _ in range(10):
        psi = split.P @ u @ psi
    expected = 1 - np.linalg.norm(psi) ** 2
    assert zeno_measurement_leakage(h, split, 1.0, 10, p) == pytest.approx(expected, abs=1e-14)
    assert zeno_worst_leakage(h, split, 1.0, 10) >= expected - 1e-14


def test_zeno_worst_matches_one_dimensional():
    h = random_hamiltonian(4, 9, 1.0)
    split = SubspaceSplit.standard(4, 1)
    assert zeno_worst_leakage(h, split, 1.0, 7) == pytest.approx(
        zeno_measurement_leakage(h, split, 1.0, 7, [1, 0, 0, 0]), abs=1e-14)


def test_cost_table_trivial_epsilon(generic):
    h, split = generic
    rows = cost_table(h, split, 1.0, [0.5, 1.0])
    assert {r.pulses for r in rows} == {0}


def test_cost_table_values(generic):
    h, split = generic
    rows = {r.family: r for r in cost_table(h, split, 1e-4, [1.0])}
    assert rows["recursive"].pulses <= 10
    assert rows["recursive"].leakage <= 1e-4
    assert rows["periodic"].pulses is not None
    zeno = {r.family: r for r in cost_table(h, split, 0.1, [1.0])}["zeno"]
    assert zeno.pulses <= 10


def test_cost_table_sigma_x_zeno(sigma_x, qubit_split):
    # closed form 1 - cos(1/N)^(2N) first drops below 0.1 at N = 10
    zeno = [r for r in cost_table(sigma_x, qubit_split, 0.1, [1.0]) if r.family == "zeno"][0]
    expected = next(n for n in range(1, 100) if 1 - np.cos(1 / n) ** (2 * n) <= 0.1)
    assert zeno.pulses == expected == 10


@pytest.mark.parametrize("eps", [0.0, 1.5, -1.0])
def test_cost_table_bad_epsilon(generic, eps):
    h, split = generic
    with pytest.raises(InvalidTolerance):
        cost_table(h, split, eps, [1.0])


def test_cost_table_cost_ordering(generic):
    h, split = generic
    rows = {r.family: r.pulses for r in cost_table(h, split, 1e-3, [1.0])}
    assert rows["recursive"] < rows["periodic"] < rows["zeno"]
