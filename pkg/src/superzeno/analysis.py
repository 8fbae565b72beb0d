"""Taylor-series order analysis and the order-condition search.

The transition block of ``W_N(t)`` is expanded in powers of ``t``. The
coefficients are polynomials in the intervals ``x_j`` whose vanishing
does not depend on the Hamiltonian, so order conditions are imposed
numerically over a small ensemble of random Hamiltonians.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from superzeno import kernels
from superzeno._workers import parallel_map
from superzeno.errors import DegenerateCase, InvalidCandidate, ShapeError, UnsupportedOrder
from superzeno.evolve import amplitude_bound, compose
from superzeno.qcore import SubspaceSplit, operator_norm, random_hamiltonian, transition_block
from superzeno.sequences import PulseSequence, recursive_sequence

MAX_SERIES_ORDER = 12
MAX_TARGET_ORDER = 8
SUCCESS_RESIDUAL = 1e-16
SUSPECT_RESIDUAL = 1e-10
DEDUP_TOL = 1e-6
ORDER_AGREE_TOL = 0.25


@dataclass(frozen=True, eq=False)
class MatrixPolynomial:
    """Truncated matrix power series ``sum_k C_k t^k``, ``k <= max_order``."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 3:
            raise ShapeError("coefficients must be a stack of matrices")
        object.__setattr__(self, "coefficients", c)

    @property
    def max_order(self):
        return self.coefficients.shape[0] - 1

    @classmethod
    def constant(cls, matrix, max_order):
        m = np.asarray(matrix, dtype=complex)
        c = np.zeros((max_order + 1,) + m.shape, dtype=complex)
        c[0] = m
        return cls(c)

    @classmethod
    def exponential(cls, generator, max_order):
        """Series of ``exp(t A)``."""
        a = np.asarray(generator, dtype=complex)
        c = np.empty((max_order + 1,) + a.shape, dtype=complex)
        c[0] = np.eye(a.shape[0])
        for k in range(1, max_order + 1):
            c[k] = a @ c[k - 1] / k
        return cls(c)

    def __matmul__(self, other):
        if self.coefficients.shape[1:] != other.coefficients.shape[1:]:
            raise ShapeError("coefficient shapes differ")
        order = min(self.max_order, other.max_order)
        a, b = self.coefficients, other.coefficients
        out = np.zeros((order + 1,) + a.shape[1:], dtype=complex)
        for k in range(order + 1):
            for i in range(k + 1):
                out[k] += a[i] @ b[k - i]
        return MatrixPolynomial(out)

    def __call__(self, t):
        powers = t ** np.arange(self.max_order + 1)
        return np.tensordot(powers, self.coefficients, axes=1)

    def block_norms(self, split):
        """Operator norms of the transition blocks ``Q C_k P``."""
        return np.array([operator_norm(transition_block(c, split)) for c in self.coefficients])


def series_of_sequence(seq, h, split, max_order):
    """Exact truncated Taylor series of ``W_N(t)`` in powers of ``t``."""
    if max_order > MAX_SERIES_ORDER:
        raise UnsupportedOrder(f"max_order must be <= {MAX_SERIES_ORDER}, got {max_order}")
    if h.dim != split.dim:
        raise ShapeError(f"Hamiltonian dim {h.dim} does not match split dim {split.dim}")
    c = kernels.sequence_series(
        np.asarray(seq.intervals), h.scaled_powers(max_order), split.dim_p
    )
    return MatrixPolynomial(c)


def taylor_order(seq, h, split, max_order=MAX_SERIES_ORDER, rel_tol=1e-10):
    """Smallest ``k`` with ``||Q C_k P|| > rel_tol * E^k``; ``None`` if none up to ``max_order``."""
    norms = series_of_sequence(seq, h, split, max_order).block_norms(split)
    for k, v in enumerate(norms):
        if v > rel_tol * h.norm_E ** k:
            return k
    return None


@dataclass(frozen=True)
class OrderEstimate:
    fitted_slope: float
    fit_window_ET: tuple
    taylor_order: int | None
    agree: bool


def block_norm_curve(seq, h, split, et_grid):
    scale = h.norm_E
    return np.array(
        [operator_norm(transition_block(compose(seq, h, split, et / scale), split)) for et in et_grid]
    )


def estimate_order(seq, h, split, low=1e-11, high=1e-3, et_grid=None):
    """Suppression order from a log-log fit and from the Taylor series."""
    qhp = operator_norm(transition_block(h.matrix, split))
    if qhp < 1e-8:
        raise DegenerateCase(f"{seq.label}: ||QHP|| = {qhp:.3g} is degenerate")
    if et_grid is None:
        et_grid = np.geomspace(1e-7, 1.0, 141)
    et_grid = np.asarray(et_grid, dtype=float)
    b = block_norm_curve(seq, h, split, et_grid)
    mask = (b >= low) & (b <= high)
    if mask.sum() < 4:
        raise DegenerateCase(f"{seq.label}: no fit window with amplitudes in [{low}, {high}]")
    ets = et_grid[mask]
    slope = float(np.polyfit(np.log(ets), np.log(b[mask]), 1)[0])
    order = taylor_order(seq, h, split)
    agree = order is not None and abs(slope - order) <= ORDER_AGREE_TOL
    return OrderEstimate(slope, (float(ets[0]), float(ets[-1])), order, agree)


def default_ensemble(seed=0, size=4, dim=5):
    """Random unit-norm Hamiltonians used to impose order conditions."""
    return [random_hamiltonian(dim, [seed, k], 1.0) for k in range(size)]


class OrderSystem:
    """Order conditions up to ``target_order`` over a Hamiltonian ensemble."""

    def __init__(self, target_order, ensemble, split):
        if target_order > MAX_TARGET_ORDER:
            raise UnsupportedOrder(f"target_order must be <= {MAX_TARGET_ORDER}, got {target_order}")
        for h in ensemble:
            if h.dim != split.dim:
                raise ShapeError(f"ensemble member dim {h.dim} does not match split dim {split.dim}")
        self.target_order = target_order
        self.split = split
        self._hpow = [h.scaled_powers(target_order) for h in ensemble]

    def vector(self, x):
        """Real and imaginary parts of every ``Q C_k P`` entry, ``k = 1..target``."""
        p = self.split.dim_p
        parts = []
        for hp in self._hpow:
            c = kernels.sequence_series(x, hp, p)
            blocks = c[1:, p:, :p].ravel()
            parts.append(blocks.real)
            parts.append(blocks.imag)
        return np.concatenate(parts)

    def residual(self, x):
        v = self.vector(x)
        return float(v @ v)


def _normalized(x):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise InvalidCandidate(f"intervals must be non-negative: {x}")
    total = x.sum()
    if abs(total - 1.0) > 1e-9:
        raise InvalidCandidate(f"intervals sum to {total!r}, not 1")
    return x / total


def order_residual(x, target_order, ensemble, split):
    """Sum of squared Frobenius norms of ``Q C_k P`` for ``k = 1..target_order``."""
    return OrderSystem(target_order, ensemble, split).residual(_normalized(x))


@dataclass(frozen=True)
class SearchSolution:
    intervals: tuple
    residual: float
    status: str

    def to_line(self, label):
        seq = PulseSequence(self.intervals, label)
        return f"{seq.to_line()}; {self.residual:.3e}"


@dataclass
class SearchResult:
    n_pulses: int
    target_order: int
    restarts: int
    seed: int
    solutions: list = field(default_factory=list)
    suspects: list = field(default_factory=list)
    successful_runs: int = 0


def canonicalize(x):
    """Reflection canonical form: the lexicographically smaller of ``x`` and its reverse."""
    x = tuple(float(v) for v in x)
    return min(x, x[::-1])


def _dedupe(items):
    items = sorted(items, key=lambda s: (s.residual, s.intervals))
    kept = []
    for s in items:
        if all(max(abs(a - b) for a, b in zip(s.intervals, k.intervals)) > DEDUP_TOL for k in kept):
            kept.append(s)
    return kept


def _polish(system, x):
    # Newton-type refinement on the simplex once the trust-region solve is close
    fun = lambda y: np.append(system.vector(y / y.sum()), y.sum() - 1.0)
    res = least_squares(fun, x, bounds=(0.0, np.inf), method="trf",
                        xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=200)
    y = np.clip(res.x, 0.0, None)
    return y / y.sum()


def search_sequence(n_pulses, target_order, restarts, seed, ensemble=None, split=None):
    """Multi-start least-squares search for intervals satisfying the order conditions.

    Deterministic given ``seed``. A run succeeds when the final residual is
    at most 1e-16; runs ending in (1e-16, 1e-10] are kept as suspects.
    """
    if n_pulses > 8:
        raise UnsupportedOrder(f"n_pulses must be <= 8, got {n_pulses}")
    if restarts < 1:
        raise InvalidCandidate(f"restarts must be >= 1, got {restarts}")
    if split is None:
        split = SubspaceSplit.standard(5, 2)
    if ensemble is None:
        ensemble = default_ensemble(seed, dim=split.dim)
    system = OrderSystem(target_order, ensemble, split)
    starts = np.random.default_rng(seed).dirichlet(np.ones(n_pulses + 1), size=restarts)

    def run(y0):
        fun = lambda y: np.append(system.vector(y / y.sum()), y.sum() - 1.0)
        res = least_squares(fun, y0, bounds=(0.0, np.inf), method="trf",
                            xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
        y = np.clip(res.x, 0.0, None)
        if y.sum() <= 0:
            return None
        x = y / y.sum()
        r = system.residual(x)
        if SUCCESS_RESIDUAL < r <= SUSPECT_RESIDUAL:
            x = _polish(system, x)
            r = system.residual(x)
        return canonicalize(x), r

    result = SearchResult(n_pulses, target_order, restarts, seed)
    successes, suspects = [], []
    for out in parallel_map(run, starts):
        if out is None:
            continue
        x, r = out
        if r <= SUCCESS_RESIDUAL:
            result.successful_runs += 1
            successes.append(SearchSolution(x, r, "success"))
        elif r <= SUSPECT_RESIDUAL:
            suspects.append(SearchSolution(x, r, "suspect"))
    result.solutions = _dedupe(successes)
    result.suspects = _dedupe(suspects)
    return result


@dataclass(frozen=True)
class KRow:
    m: int
    K_hat: float
    K_bound: float
    ok: bool
    max_dropped: float


def empirical_k(m, h, split, n_grid=64, series_order=MAX_SERIES_ORDER, switch_et=0.5):
    """``sup_{0 < ET <= 1} B_m / (ET)^{m+1}`` for the recursive sequence ``U_m``.

    Below ``switch_et`` the ratio is evaluated from the Taylor tail
    ``sum_{k > m} Q C_k P (ET)^{k-m-1}``, which also supplies the exact
    ``ET -> 0`` limit; at and above it the exact product is used. Returns
    the supremum and the largest dropped coefficient norm ``||Q C_k P||``,
    ``k <= m``, which must be at roundoff level.
    """
    seq = recursive_sequence(m)
    e = h.norm_E
    poly = series_of_sequence(seq, h, split, series_order)
    c = poly.coefficients[:, split.dim_p:, : split.dim_p]
    dropped = max((operator_norm(c[k]) for k in range(m + 1)), default=0.0)
    tail = c[m + 1:] * (e ** np.arange(m + 1, series_order + 1) / e ** (m + 1))[:, None, None]
    best = 0.0
    for et in np.concatenate([[0.0], np.linspace(0.0, switch_et, n_grid, endpoint=False)[1:]]):
        block = np.tensordot(et ** np.arange(tail.shape[0]), tail, axes=1)
        best = max(best, operator_norm(block))
    for et in np.linspace(switch_et, 1.0, n_grid):
        w = compose(seq, h, split, et / e)
        best = max(best, operator_norm(transition_block(w, split)) / et ** (m + 1))
    return best, dropped


def verify_k_recursion(max_m, ensemble, splits=None):
    """Empirical amplitude constants against ``2^{-m(m+1)/2}`` for ``m = 0..max_m``."""
    if max_m > 6:
        raise UnsupportedOrder(f"max_m must be <= 6, got {max_m}")
    if splits is None:
        splits = [SubspaceSplit.standard(h.dim, max(1, h.dim // 2)) for h in ensemble]
    rows = []
    for m in range(max_m + 1):
        cells = parallel_map(lambda hs: empirical_k(m, *hs), list(zip(ensemble, splits)))
        k_hat = max(v for v, _ in cells)
        dropped = max(d for _, d in cells)
        bound = amplitude_bound(m, 1.0)
        rows.append(KRow(m, k_hat, bound, k_hat <= bound + 1e-10, dropped))
    return rows
