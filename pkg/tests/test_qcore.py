import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from superzeno.errors import InvalidDimension, InvalidNorm, ShapeError
from superzeno.qcore import (
    SIGMA_X,
    Hamiltonian,
    SubspaceSplit,
    evolve_free,
    operator_norm,
    random_hamiltonian,
    random_unitary,
    transition_block,
)


def test_random_hamiltonian_is_normalized():
    h = random_hamiltonian(2, 7, 1.0)
    assert np.allclose(h.matrix, h.matrix.conj().T, atol=1e-12)
    assert abs(np.max(np.abs(np.linalg.eigvalsh(h.matrix))) - 1.0) <= 1e-12
    assert abs(h.norm_E - 1.0) <= 1e-12


def test_random_hamiltonian_deterministic():
    a = random_hamiltonian(4, 7, 1.0)
    b = random_hamiltonian(4, 7, 1.0)
    assert np.array_equal(a.matrix, b.matrix)


def test_random_hamiltonian_seeds_differ():
    a = random_hamiltonian(4, 7, 1.0)
    b = random_hamiltonian(4, 8, 1.0)
    assert np.max(np.abs(a.matrix - b.matrix)) > 1e-6


@pytest.mark.parametrize("dim,norm,exc", [(1, 1.0, InvalidDimension), (4, 0.0, InvalidNorm), (4, -2.0, InvalidNorm)])
def test_random_hamiltonian_errors(dim, norm, exc):
    with pytest.raises(exc):
        random_hamiltonian(dim, 0, norm)


def test_from_matrix_rejects_non_hermitian():
    with pytest.raises(ShapeError):
        Hamiltonian.from_matrix([[0, 1], [0, 0]])


def test_eigendecomposition_reconstructs():
    h = random_hamiltonian(6, 1, 2.5)
    v, w = h.eigenvectors, h.eigenvalues
    assert np.max(np.abs((v * w) @ v.conj().T - h.matrix)) <= 1e-10
    assert h.norm_E == pytest.approx(2.5, abs=1e-12)


def test_evolve_free_zero_is_identity(generic):
    h, _ = generic
    assert np.array_equal(evolve_free(h, 0.0), np.eye(4))


def test_evolve_free_sigma_x(sigma_x):
    u = evolve_free(sigma_x, np.pi / 2)
    assert np.allclose(u, [[0, -1j], [-1j, 0]], atol=1e-12)


def test_evolve_free_inverse(generic):
    h, _ = generic
    assert np.allclose(evolve_free(h, 0.7) @ evolve_free(h, -0.7), np.eye(4), atol=1e-10)


def test_operator_norm_simple():
    assert operator_norm(np.eye(3)) == pytest.approx(1.0, abs=1e-12)
    assert operator_norm(np.diag([3.0, -4.0])) == pytest.approx(4.0, abs=1e-12)


def test_operator_norm_monte_carlo_lower_bound(rng):
    m = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    v = rng.standard_normal((5, 10_000)) + 1j * rng.standard_normal((5, 10_000))
    v /= np.linalg.norm(v, axis=0)
    sampled = np.max(np.linalg.norm(m @ v, axis=0))
    norm = operator_norm(m)
    assert norm >= sampled - 1e-8
    # random sampling in C^5 gets within a few percent of the sup
    assert sampled > 0.9 * norm


def test_transition_block_identity_and_pulse():
    split = SubspaceSplit.standard(5, 2)
    assert np.all(transition_block(np.eye(5), split) == 0)
    assert np.all(transition_block(split.J, split) == 0)
    assert transition_block(np.eye(5), split).shape == (3, 2)


@pytest.mark.parametrize("t", [0.1, 0.9, 2.3])
def test_transition_block_sigma_x(sigma_x, qubit_split, t):
    block = transition_block(evolve_free(sigma_x, t), qubit_split)
    assert block.shape == (1, 1)
    assert block[0, 0] == pytest.approx(-1j * np.sin(t), abs=1e-12)


def test_transition_block_shape_error():
    with pytest.raises(ShapeError):
        transition_block(np.eye(3), SubspaceSplit.standard(4, 2))


@settings(max_examples=60, deadline=None)
@given(dim=st.integers(2, 16), data=st.data())
def test_split_invariants(dim, data):
    dim_p = data.draw(st.integers(1, dim - 1))
    s = SubspaceSplit.standard(dim, dim_p)
    eye = np.eye(dim)
    assert np.allclose(s.P @ s.P, s.P, atol=1e-12)
    assert np.allclose(s.Q @ s.Q, s.Q, atol=1e-12)
    assert np.allclose(s.P + s.Q, eye, atol=1e-12)
    assert np.allclose(s.P @ s.Q, 0, atol=1e-12)
    assert np.allclose(s.J, s.Q - s.P)
    assert np.allclose(s.J @ s.J, eye, atol=1e-12)
    assert np.allclose(s.J, s.J.conj().T)
    assert np.allclose(s.J @ s.P, -s.P)
    assert np.allclose(s.J @ s.Q, s.Q)


@pytest.mark.parametrize("dim,dim_p", [(1, 1), (4, 0), (4, 4)])
def test_split_errors(dim, dim_p):
    with pytest.raises(InvalidDimension):
        SubspaceSplit.standard(dim, dim_p)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10_000), dim=st.integers(2, 8),
       s=st.floats(-5, 5), t=st.floats(-5, 5))
def test_evolve_free_group_and_unitarity(seed, dim, s, t):
    h = random_hamiltonian(dim, seed, 1.0)
    us, ut = evolve_free(h, s), evolve_free(h, t)
    assert np.allclose(ut.conj().T @ ut, np.eye(dim), atol=1e-10)
    assert np.allclose(us @ ut, evolve_free(h, s + t), atol=1e-10)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10_000), dim=st.integers(2, 8), t=st.floats(0, 3))
def test_distance_from_identity(seed, dim, t):
    h = random_hamiltonian(dim, seed, 1.3)
    assert operator_norm(evolve_free(h, t) - np.eye(dim)) <= h.norm_E * t + 1e-9


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10_000), dim=st.integers(1, 8))
def test_norm_submultiplicative(seed, dim):
    r = np.random.default_rng(seed)
    a = r.standard_normal((dim, dim)) + 1j * r.standard_normal((dim, dim))
    b = r.standard_normal((dim, dim)) + 1j * r.standard_normal((dim, dim))
    assert operator_norm(a @ b) <= operator_norm(a) * operator_norm(b) + 1e-10


def test_random_unitary_is_unitary(rng):
    u = random_unitary(6, rng)
    assert np.allclose(u.conj().T @ u, np.eye(6), atol=1e-12)


def test_scaled_powers(generic):
    h, _ = generic
    p = h.scaled_powers(3)
    a = -1j * h.matrix
    assert np.allclose(p[2], a @ a / 2)
    assert np.allclose(p[3], a @ a @ a / 6)
