"""Pure numpy transfer-matrix assembly kernel (fallback for the Cython build).

For a source state ``b`` and a flip pattern ``s in {0,1}^r`` the transfer
matrix emits

    prod_k C[b_{k+1}, b_k, s_k]  ->  |out>,   out_k = bar^(s_k xor s_{k+1}) b_{k+1}

with ``C[x, y, 0] = (e^{m+ t} + e^{m- t}) / 2`` and ``C[x, y, 1] = (e^{m+ t} - e^{m- t}) / 2``
for ``m = m_xy``. Each ``C`` is passed as a truncated Taylor series so the
same loop produces ``d^L T / d theta^L``.
"""

from __future__ import annotations

from math import factorial

import numpy as np


def _jet_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Truncated product of Taylor series stored along the last axis."""
    L = a.shape[-1]
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=complex)
    for i in range(L):
        for j in range(L - i):
            out[..., i + j] += a[..., i] * b[..., j]
    return out


def assemble(N: int, r: int, jets: np.ndarray, bar: np.ndarray, digits: np.ndarray):
    """COO triplets of the transfer matrix (or its derivative).

    Parameters
    ----------
    jets : complex array, shape (N, N, 2, L + 1)
        Taylor coefficients of ``C[x, y, s]`` around theta; index with 0-based
        site values, ``x`` the next site and ``y`` the current one.
    bar : int array, shape (N,)
        0-based bar involution.
    digits : int array, shape (N**r, r)
        0-based site values of every basis state, row = flat index.

    Returns
    -------
    rows, cols, vals
        Duplicates are not summed.
    """
    order = jets.shape[-1] - 1
    dim = digits.shape[0]
    nxt = np.roll(digits, -1, axis=1)
    weights = N ** np.arange(r - 1, -1, -1, dtype=np.int64)
    cols = np.arange(dim, dtype=np.int64)
    rows_all, cols_all, vals_all = [], [], []
    for pattern in range(1 << r):
        s = np.array([(pattern >> (r - 1 - k)) & 1 for k in range(r)], dtype=np.int64)
        flip = s ^ np.roll(s, -1)
        acc = np.zeros((dim, order + 1), dtype=complex)
        acc[:, 0] = 1.0
        for k in range(r):
            acc = _jet_mul(acc, jets[nxt[:, k], digits[:, k], s[k]])
        out = np.where(flip.astype(bool), bar[nxt], nxt)
        rows_all.append(out @ weights)
        cols_all.append(cols)
        vals_all.append(acc[:, order] * factorial(order))
    return np.concatenate(rows_all), np.concatenate(cols_all), np.concatenate(vals_all)
