"""Reference numpy implementations of the hot kernels.

Used when the compiled ``_kernels`` extension is unavailable, and as the
cross-check for it in the test suite.
"""
import numpy as np


def sequence_series(x, hpow, dim_p):
    """Truncated Taylor coefficients of a pulsed evolution operator.

    ``hpow[a]`` must hold ``(-iH)^a / a!``. Factors are applied right to
    left: free evolution over ``x[0]``, a pulse, free evolution over
    ``x[1]``, ..., free evolution over ``x[-1]``. The pulse multiplies the
    first ``dim_p`` rows by -1.
    """
    x = np.asarray(x, dtype=float)
    hpow = np.asarray(hpow, dtype=complex)
    order = hpow.shape[0] - 1
    dim = hpow.shape[1]
    coeffs = np.zeros((order + 1, dim, dim), dtype=complex)
    coeffs[0] = np.eye(dim)
    last = len(x) - 1
    for j, xj in enumerate(x):
        scaled = hpow * (xj ** np.arange(order + 1))[:, None, None]
        new = np.empty_like(coeffs)
        for k in range(order + 1):
            # C'_k = sum_a x^a hpow[a] C_{k-a}
            new[k] = np.einsum("aij,ajl->il", scaled[: k + 1], coeffs[k::-1])
        coeffs = new
        if j < last:
            coeffs[:, :dim_p, :] *= -1.0
    return coeffs


def pulsed_product(props, index, dim_p):
    """Ordered product ``props[index[-1]] J ... J props[index[0]]``."""
    props = np.asarray(props, dtype=complex)
    dim = props.shape[1]
    out = np.eye(dim, dtype=complex)
    last = len(index) - 1
    for j, i in enumerate(index):
        out = props[i] @ out
        if j < last:
            out[:dim_p, :] *= -1.0
    return out
