"""Pulsed evolution operators, leakage, and the Zeno baselines."""
from dataclasses import dataclass
import math
import re

import numpy as np

from superzeno import kernels
from superzeno.errors import InvalidState, InvalidTolerance, ShapeError
from superzeno.qcore import evolve_free, operator_norm, transition_block
from superzeno.sequences import periodic_sequence, recursive_sequence, PulseSequence

CSV_HEADER = "label,ET,N,b_norm,leakage,bound,satisfied"
_RECURSIVE_LABEL = re.compile(r"^recursive m=(\d+)$")


@dataclass(frozen=True)
class LeakageReport:
    sequence_label: str
    total_time_ET: float
    pulse_count: int
    b_norm: float
    leakage: float
    bound: float | None
    bound_satisfied: bool

    def to_csv_row(self):
        bound = "" if self.bound is None else f"{self.bound:.17g}"
        return (
            f"{self.sequence_label},{self.total_time_ET:.17g},{self.pulse_count},"
            f"{self.b_norm:.17g},{self.leakage:.17g},{bound},"
            f"{str(self.bound_satisfied).lower()}"
        )


def _check_shapes(h, split):
    if h.dim != split.dim:
        raise ShapeError(f"Hamiltonian dim {h.dim} does not match split dim {split.dim}")


def compose(seq, h, split, total_time):
    """Exact ``W_N(T) = U_0(x_{N+1}T) J ... J U_0(x_1 T)``."""
    _check_shapes(h, split)
    distinct = sorted(set(seq.intervals))
    props = np.stack([evolve_free(h, x * total_time) for x in distinct])
    lookup = {x: i for i, x in enumerate(distinct)}
    index = np.array([lookup[x] for x in seq.intervals], dtype=np.int_)
    return kernels.pulsed_product(props, index, split.dim_p)


def recursive_bound(m, et):
    """Worst-case leakage bound ``2^{-m(m+1)} (ET)^{2m+2}`` for ``U_m``."""
    return 2.0 ** (-m * (m + 1)) * et ** (2 * m + 2)


def amplitude_bound(m, et):
    """Transition-amplitude bound ``2^{-m(m+1)/2} (ET)^{m+1}`` for ``U_m``."""
    return 2.0 ** (-m * (m + 1) / 2) * et ** (m + 1)


def sequence_bound(seq, et):
    match = _RECURSIVE_LABEL.match(seq.label)
    if match:
        return recursive_bound(int(match.group(1)), et)
    return None


def leakage(seq, h, split, total_time):
    """Worst-case leakage over initial states in P (squared block norm)."""
    w = compose(seq, h, split, total_time)
    b = min(operator_norm(transition_block(w, split)), 1.0)
    et = h.norm_E * abs(total_time)
    leak = b * b
    bound = sequence_bound(seq, et)
    ok = True if bound is None else leak <= bound + 1e-12
    return LeakageReport(seq.label, et, seq.pulse_count, b, leak, bound, ok)


def _check_initial(split, initial):
    p = np.asarray(initial, dtype=complex).reshape(-1)
    if p.shape != (split.dim,):
        raise InvalidState(f"initial state must have length {split.dim}")
    if abs(np.linalg.norm(p) - 1.0) > 1e-10:
        raise InvalidState("initial state is not normalized")
    if np.linalg.norm(p[split.dim_p:]) > 1e-10:
        raise InvalidState("initial state does not lie in the protected subspace")
    return p


def leakage_for_state(seq, h, split, total_time, initial):
    """``||Q W |p>||^2`` for a specific initial state."""
    p = _check_initial(split, initial)
    w = compose(seq, h, split, total_time)
    amp = (w @ p)[split.dim_p:]
    return float(np.vdot(amp, amp).real)


def zeno_measurement_leakage(h, split, total_time, n_measurements, initial):
    """Leakage under ``N`` projective measurements at ``T/N, 2T/N, ..., T``."""
    _check_shapes(h, split)
    if n_measurements < 1:
        raise InvalidTolerance(f"n_measurements must be >= 1, got {n_measurements}")
    p = _check_initial(split, initial)
    u = evolve_free(h, total_time / n_measurements)
    if split.dim_p == 1:
        return float(1.0 - abs(u[0, 0]) ** (2 * n_measurements))
    psi = p
    for _ in range(n_measurements):
        psi = u @ psi
        psi[split.dim_p:] = 0.0
    return float(max(0.0, 1.0 - np.vdot(psi, psi).real))


def zeno_worst_leakage(h, split, total_time, n_measurements):
    """Measurement-Zeno leakage maximized over initial states in P."""
    _check_shapes(h, split)
    if n_measurements == 0:
        w = evolve_free(h, total_time)
        return operator_norm(transition_block(w, split)) ** 2
    u = evolve_free(h, total_time / n_measurements)
    block = u[: split.dim_p, : split.dim_p]
    smin = np.linalg.svd(np.linalg.matrix_power(block, n_measurements), compute_uv=False)[-1]
    return float(max(0.0, 1.0 - smin * smin))


def large_t_reference(et, epsilon):
    """``ET 2^{sqrt(log2(E^2 T^2 / eps))}``, the large-T cost scaling without its constant."""
    if et <= 0:
        return 0.0
    arg = math.log2(et * et / epsilon)
    return et * 2.0 ** math.sqrt(max(arg, 0.0))


@dataclass(frozen=True)
class CostRow:
    family: str
    ET: float
    epsilon: float
    pulses: int | None
    leakage: float | None
    reference: float | None = None


def _first_success(leak_of, counts, epsilon):
    for n in counts:
        value = leak_of(n)
        if value <= epsilon:
            return n, value
    return None, None


def cost_table(h, split, epsilon, total_time_grid, max_zeno=4096, max_periodic=4096, max_m=12):
    """Smallest simulated pulse count reaching leakage <= epsilon, per family.

    Counts are scanned upward and the first success is recorded; leakage is
    not assumed monotone in the count. ``None`` means no success within the
    scan cap.
    """
    if not 0 < epsilon <= 1:
        raise InvalidTolerance(f"epsilon must lie in (0, 1], got {epsilon}")
    rows = []
    scale = h.norm_E if h.norm_E > 0 else 1.0
    for et in total_time_grid:
        if et < 0:
            raise InvalidTolerance(f"ET values must be non-negative, got {et}")
        t = et / scale

        def zeno(n):
            return zeno_worst_leakage(h, split, t, n)

        def periodic(n):
            seq = PulseSequence((1.0,)) if n == 0 else periodic_sequence(n)
            return leakage(seq, h, split, t).leakage

        def recursive(m):
            return leakage(recursive_sequence(m), h, split, t).leakage

        n, v = _first_success(zeno, range(0, max_zeno + 1), epsilon)
        rows.append(CostRow("zeno", et, epsilon, n, v))
        n, v = _first_success(periodic, range(0, max_periodic + 1), epsilon)
        rows.append(CostRow("periodic", et, epsilon, n, v))
        m, v = _first_success(recursive, range(0, max_m + 1), epsilon)
        rows.append(
            CostRow(
                "recursive", et, epsilon,
                None if m is None else recursive_sequence(m).pulse_count, v,
                large_t_reference(et, epsilon),
            )
        )
    return rows
