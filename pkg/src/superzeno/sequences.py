"""Pulse-sequence families as explicit interval lists.

A sequence of ``N`` pulses is stored as ``N + 1`` interval fractions
``x_1 .. x_{N+1}`` of the total time; pulse ``j`` fires after interval
``x_j``.
"""
from dataclasses import dataclass
import math

from superzeno.errors import InvalidCandidate, UnsupportedParameter

SUM_TOL = 1e-12


@dataclass(frozen=True)
class PulseSequence:
    intervals: tuple
    label: str = ""
    claimed_order: int | None = None

    def __post_init__(self):
        xs = tuple(float(v) for v in self.intervals)
        object.__setattr__(self, "intervals", xs)
        if not xs:
            raise InvalidCandidate("a sequence needs at least one interval")
        if any(not math.isfinite(v) or v < 0 for v in xs):
            raise InvalidCandidate(f"intervals must be finite and non-negative: {xs}")
        if abs(math.fsum(xs) - 1.0) > SUM_TOL:
            raise InvalidCandidate(f"intervals sum to {math.fsum(xs)!r}, not 1")

    @property
    def pulse_count(self):
        return len(self.intervals) - 1

    def is_reflection_symmetric(self, tol=SUM_TOL):
        xs = self.intervals
        return all(abs(a - b) <= tol for a, b in zip(xs, reversed(xs)))

    def to_line(self):
        body = ",".join(f"{v:.17g}" for v in self.intervals)
        return f"{self.label}; {self.pulse_count}; {body}"

    @classmethod
    def from_line(cls, line):
        """Parse ``label; N; x_1,...,x_{N+1}``."""
        parts = [p.strip() for p in line.strip().split(";")]
        if len(parts) < 3:
            raise InvalidCandidate(f"malformed sequence line: {line!r}")
        label, count, body = parts[0], parts[1], parts[2]
        xs = tuple(float(v) for v in body.split(","))
        if int(count) != len(xs) - 1:
            raise InvalidCandidate(f"pulse count {count} does not match {len(xs)} intervals")
        return cls(xs, label)


def recursive_sequence(m):
    """Flattened intervals of the recursive construction ``U_m``.

    Even ``m``: ``U_{m+1} = U_m(1/2) J U_m(1/2)``. Odd ``m``:
    ``U_{m+1} = U_m(1/2) U_m(1/2)``, with the seam intervals merged.
    Arithmetic is exact (dyadic rationals).
    """
    if m < 0:
        raise UnsupportedParameter(f"m must be >= 0, got {m}")
    xs = [1]
    denom = 1
    for k in range(m):
        denom *= 2
        if k % 2 == 0:
            xs = xs + xs
        else:
            xs = xs[:-1] + [xs[-1] + xs[0]] + xs[1:]
    return PulseSequence(tuple(v / denom for v in xs), f"recursive m={m}", m + 1)


def pulse_count_formula(m):
    if m < 0:
        raise UnsupportedParameter(f"m must be >= 0, got {m}")
    if m % 2 == 0:
        return (2 ** (m + 1) - 2) // 3
    return (2 ** (m + 1) - 1) // 3


def yoshida_sequence(level):
    """Reflection-symmetric triple-jump recursion.

    Each level maps ``W`` of odd order ``r`` to
    ``W(a t) J W(b t) J W(a t)`` with ``a = 1/(2 + 2^(1/r))``, ``b = 1 - 2a``,
    raising the order to ``r + 2``.
    """
    if level < 0:
        raise UnsupportedParameter(f"level must be >= 0, got {level}")
    xs = [1.0]
    r = 1
    for _ in range(level):
        a = 1.0 / (2.0 + 2.0 ** (1.0 / r))
        b = 1.0 - 2.0 * a
        xs = [a * v for v in xs] + [b * v for v in xs] + [a * v for v in xs]
        r += 2
    total = math.fsum(xs)
    xs = [v / total for v in xs]
    # renormalization can break exact palindromy in the last ulp
    half = len(xs) // 2
    xs = xs[: len(xs) - half] + xs[:half][::-1]
    return PulseSequence(tuple(xs), f"yoshida level={level}", 2 * level + 1)


# Three pulses, amplitude O(t^4): (a, b, b, a) with a = (2 - sqrt(2))/4,
# b = sqrt(2)/4. Derived numerically with analysis.search_sequence(3, 3)
# (the only solution found, up to reflection) and pinned in the tests.
def _optimal3():
    a = (2.0 - math.sqrt(2.0)) / 4.0
    b = math.sqrt(2.0) / 4.0
    return (a, b, b, a)


def _optimal4():
    beta = (3.0 - math.sqrt(5.0)) / 8.0
    return (beta, 0.25, 0.5 - 2.0 * beta, 0.25, beta)


def _optimal5():
    # The outer pair is (1/4 - gamma, gamma); the ordering (gamma, 1/4 - gamma)
    # already fails the second-order condition.
    gamma = (math.sqrt(3.0) - 1.0) / 4.0
    return (0.25 - gamma, gamma, 0.25, 0.25, gamma, 0.25 - gamma)


def optimal_sequence(m):
    """Minimal ``m``-pulse sequence with transition amplitude ``O(t^(m+1))``."""
    if m < 0:
        raise UnsupportedParameter(f"m must be >= 0, got {m}")
    if m > 5:
        raise UnsupportedParameter(
            f"optimal sequences are tabulated for 0 <= m <= 5 only (claimed N_min(6) > 6; "
            f"note that `superzeno search --param 6` finds a 6-pulse solution), got m={m}"
        )
    if m <= 2:
        xs = recursive_sequence(m).intervals
    else:
        xs = {3: _optimal3, 4: _optimal4, 5: _optimal5}[m]()
    return PulseSequence(xs, f"optimal m={m}", m + 1)


def periodic_sequence(n):
    """``n`` equispaced kicks at ``kT/n``; the final interval is empty."""
    if n < 1:
        raise UnsupportedParameter(f"n must be >= 1, got {n}")
    return PulseSequence((1.0 / n,) * n + (0.0,), f"periodic n={n}")


FAMILIES = {
    "recursive": (recursive_sequence, "m >= 0"),
    "yoshida": (yoshida_sequence, "level >= 0"),
    "optimal": (optimal_sequence, "0 <= m <= 5"),
    "periodic": (periodic_sequence, "n >= 1"),
}


def make_sequence(family, parameter):
    try:
        builder, _ = FAMILIES[family]
    except KeyError:
        raise UnsupportedParameter(
            f"unknown family {family!r}; choose from {', '.join(FAMILIES)}"
        ) from None
    return builder(parameter)
