"""Dense complex linear algebra for small Hilbert spaces.

Matrices are plain ``numpy`` complex arrays. The protected subspace is
always spanned by the first ``dim_p`` standard basis vectors, so the
transition block of an operator is simply its lower-left corner.
"""
from dataclasses import dataclass, field

import numpy as np

from superzeno.errors import InvalidDimension, InvalidNorm, ShapeError

HERMITIAN_TOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """Hermitian matrix with its eigendecomposition and operator norm ``E``."""

    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    norm_E: float
    dim: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "dim", self.matrix.shape[0])

    @classmethod
    def from_matrix(cls, matrix):
        m = np.array(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeError(f"Hamiltonian must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ShapeError("Hamiltonian has non-finite entries")
        if np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise ShapeError("matrix is not Hermitian")
        m = (m + m.conj().T) / 2
        w, v = np.linalg.eigh(m)
        norm = float(np.max(np.abs(w))) if w.size else 0.0
        m.setflags(write=False)
        return cls(m, w, v, norm)

    @classmethod
    def from_eigh(cls, eigenvalues, eigenvectors):
        """Build from a known spectral decomposition, keeping it as the cache."""
        w = np.asarray(eigenvalues, dtype=float)
        v = np.asarray(eigenvectors, dtype=complex)
        m = (v * w) @ v.conj().T
        m = (m + m.conj().T) / 2
        m.setflags(write=False)
        return cls(m, w, v, float(np.max(np.abs(w))))

    def scaled_powers(self, max_order):
        """Stack of ``(-iH)^k / k!`` for ``k = 0..max_order``."""
        out = np.empty((max_order + 1, self.dim, self.dim), dtype=complex)
        out[0] = np.eye(self.dim)
        a = -1j * self.matrix
        for k in range(1, max_order + 1):
            out[k] = a @ out[k - 1] / k
        return out


@dataclass(frozen=True, eq=False)
class SubspaceSplit:
    """Projectors onto the protected subspace and its complement.

    ``J = Q - P`` is the inverting pulse.
    """

    dim: int
    dim_p: int
    P: np.ndarray
    Q: np.ndarray
    J: np.ndarray

    @classmethod
    def standard(cls, dim, dim_p):
        if dim < 2:
            raise InvalidDimension(f"dim must be >= 2, got {dim}")
        if not 1 <= dim_p < dim:
            raise InvalidDimension(f"dim_p must satisfy 1 <= dim_p < {dim}, got {dim_p}")
        diag_p = np.zeros(dim)
        diag_p[:dim_p] = 1.0
        P = np.diag(diag_p).astype(complex)
        Q = np.eye(dim, dtype=complex) - P
        return cls(dim, dim_p, P, Q, Q - P)

    @property
    def dim_q(self):
        return self.dim - self.dim_p


def random_hamiltonian(dim, seed, target_norm=1.0):
    """Seeded Gaussian Hermitian matrix rescaled to operator norm ``target_norm``."""
    if dim < 2:
        raise InvalidDimension(f"dim must be >= 2, got {dim}")
    if not target_norm > 0:
        raise InvalidNorm(f"target_norm must be positive, got {target_norm}")
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    w, v = np.linalg.eigh((g + g.conj().T) / 2)
    top = np.argmax(np.abs(w))
    w = w * (target_norm / abs(w[top]))
    w[top] = np.copysign(target_norm, w[top])
    return Hamiltonian.from_eigh(w, v)


def evolve_free(h, duration):
    """``exp(-i H duration)`` from the cached eigendecomposition."""
    if duration == 0:
        return np.eye(h.dim, dtype=complex)
    v = h.eigenvectors
    return (v * np.exp(-1j * h.eigenvalues * duration)) @ v.conj().T


def operator_norm(m):
    """Largest singular value."""
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False)[0])


def transition_block(w, split):
    """The Q-rows / P-columns block of ``w`` in the split basis."""
    w = np.asarray(w)
    if w.shape != (split.dim, split.dim):
        raise ShapeError(f"expected {split.dim}x{split.dim} operator, got {w.shape}")
    return w[split.dim_p:, : split.dim_p]


def random_unitary(dim, rng):
    """Haar-distributed unitary (QR of a complex Gaussian matrix)."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
