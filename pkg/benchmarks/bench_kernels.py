#!/usr/bin/env python3
"""Time the compiled kernels against the numpy fallback.

Writes one CSV row per (kernel, backend, case):
kernel,backend,dim,pulses,order,repeats,mean_us,min_us
"""
import argparse
import csv
import sys
import timeit

import numpy as np

from superzeno import _purekernels
from superzeno.qcore import SubspaceSplit, evolve_free, random_hamiltonian
from superzeno.sequences import optimal_sequence, recursive_sequence

try:
    from superzeno import _kernels
except ImportError:
    _kernels = None

BACKENDS = {"python": _purekernels, "cython": _kernels}


def series_case(seq, dim, order):
    h = random_hamiltonian(dim, 1, 1.0)
    hpow = h.scaled_powers(order)
    x = np.asarray(seq.intervals)
    return lambda impl: impl.sequence_series(x, hpow, dim // 2)


def product_case(seq, dim):
    h = random_hamiltonian(dim, 1, 1.0)
    distinct = sorted(set(seq.intervals))
    props = np.stack([evolve_free(h, v) for v in distinct])
    index = np.array([distinct.index(v) for v in seq.intervals], dtype=np.int_)
    return lambda impl: impl.pulsed_product(props, index, dim // 2)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=7)
    parser.add_argument("--out")
    args = parser.parse_args(argv)

    cases = []
    for dim in (4, 8):
        for m in (4, 5):
            seq = optimal_sequence(m)
            cases.append(("sequence_series", dim, seq.pulse_count, m + 1, series_case(seq, dim, m + 1)))
        seq = recursive_sequence(6)
        cases.append(("sequence_series", dim, seq.pulse_count, 8, series_case(seq, dim, 8)))
        for m in (4, 6, 8):
            seq = recursive_sequence(m)
            cases.append(("pulsed_product", dim, seq.pulse_count, 0, product_case(seq, dim)))

    out = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["kernel", "backend", "dim", "pulses", "order", "repeats", "mean_us", "min_us"])
    for kernel, dim, pulses, order, make in cases:
        for name, impl in BACKENDS.items():
            if impl is None:
                continue
            timer = timeit.Timer(lambda: make(impl))
            loops, _ = timer.autorange()
            times = np.array(timer.repeat(args.repeats, loops)) / loops * 1e6
            writer.writerow([kernel, name, dim, pulses, order, args.repeats,
                             f"{times.mean():.2f}", f"{times.min():.2f}"])
    if args.out:
        out.close()


if __name__ == "__main__":
    main()
