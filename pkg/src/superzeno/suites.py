"""Seeded verification sweeps for the leakage and amplitude bounds."""
from dataclasses import dataclass

import numpy as np

from superzeno._workers import parallel_map
from superzeno.evolve import amplitude_bound, leakage, zeno_worst_leakage
from superzeno.qcore import (
    SubspaceSplit,
    operator_norm,
    random_hamiltonian,
    random_unitary,
    transition_block,
)
from superzeno.sequences import periodic_sequence, recursive_sequence


@dataclass(frozen=True)
class BoundCheck:
    name: str
    seed: int
    dim: int
    dim_p: int
    ET: float
    param: int
    value: float
    bound: float
    ok: bool


def ensemble_member(seed):
    """Seeded (Hamiltonian, split) pair; dims cycle through 4..8 and every dim_p."""
    dim = 4 + seed % 5
    dim_p = 1 + (seed // 5) % (dim - 1)
    return random_hamiltonian(dim, seed, 1.0), SubspaceSplit.standard(dim, dim_p)


def recursive_bound_suite(seeds=range(100), ets=(0.25, 0.5, 1.0), ms=range(7)):
    """Leakage and amplitude bounds of ``U_m`` on a random ensemble."""
    seqs = [recursive_sequence(m) for m in ms]

    def cell(seed):
        h, split = ensemble_member(seed)
        out = []
        for et in ets:
            for m, seq in zip(ms, seqs):
                rep = leakage(seq, h, split, et)
                out.append(BoundCheck("leakage", seed, split.dim, split.dim_p, et, m,
                                      rep.leakage, rep.bound, rep.bound_satisfied))
                ab = amplitude_bound(m, et)
                out.append(BoundCheck("amplitude", seed, split.dim, split.dim_p, et, m,
                                      rep.b_norm, ab, rep.b_norm <= ab + 1e-12))
        return out

    return [c for cells in parallel_map(cell, seeds) for c in cells]


def periodic_suite(seeds=range(20), counts=range(2, 65, 2), et=1.0):
    """Even-count periodic kicks: amplitude <= (ET)^2/N and leakage <= (ET)^4/N^2."""
    def cell(seed):
        h, split = ensemble_member(seed)
        out = []
        for n in counts:
            rep = leakage(periodic_sequence(n), h, split, et)
            amp = et ** 2 / n
            out.append(BoundCheck("periodic-amplitude", seed, split.dim, split.dim_p, et, n,
                                  rep.b_norm, amp, rep.b_norm <= amp + 1e-10))
            out.append(BoundCheck("periodic-leakage", seed, split.dim, split.dim_p, et, n,
                                  rep.leakage, amp * amp, rep.leakage <= amp * amp + 1e-10))
        return out

    return [c for cells in parallel_map(cell, seeds) for c in cells]


def zeno_suite(seeds=range(20), counts=range(10, 201), et=1.0):
    """Measurement-Zeno worst-case leakage against ``(ET)^2/N``."""
    def cell(seed):
        h, split = ensemble_member(seed)
        out = []
        for n in counts:
            v = zeno_worst_leakage(h, split, et, n)
            b = et ** 2 / n
            out.append(BoundCheck("zeno", seed, split.dim, split.dim_p, et, n, v, b, v <= b + 1e-10))
        return out

    return [c for cells in parallel_map(cell, seeds) for c in cells]


def inequality_suite(n_instances=1000, seed=0, max_dim=8):
    """Spot-check the two pulse inequalities on random unitaries and splits.

    ``||Q U J U P|| <= 2 ||Q U P|| min(1, ||U - I||)`` and
    ``||Q V V P|| <= 2 ||Q V P|| min(1, ||V - J||)``. Half the instances
    use operators close to ``I`` (or ``J``) so the ``min`` is not always 1.
    """
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n_instances):
        dim = int(rng.integers(2, max_dim + 1))
        dim_p = int(rng.integers(1, dim))
        split = SubspaceSplit.standard(dim, dim_p)
        if i % 2 == 0:
            u = random_unitary(dim, rng)
        else:
            h = random_hamiltonian(dim, int(rng.integers(1 << 31)), 1.0)
            u = h.eigenvectors @ np.diag(np.exp(-1j * h.eigenvalues * rng.uniform(0, 2))) @ h.eigenvectors.conj().T
        lhs = operator_norm(transition_block(u @ split.J @ u, split))
        rhs = 2 * operator_norm(transition_block(u, split)) * min(1.0, operator_norm(u - np.eye(dim)))
        out.append(BoundCheck("ineq-UJU", i, dim, dim_p, 0.0, 0, lhs, rhs, lhs <= rhs + 1e-10))
        v = split.J @ u
        lhs = operator_norm(transition_block(v @ v, split))
        rhs = 2 * operator_norm(transition_block(v, split)) * min(1.0, operator_norm(v - split.J))
        out.append(BoundCheck("ineq-VV", i, dim, dim_p, 0.0, 0, lhs, rhs, lhs <= rhs + 1e-10))
    return out
