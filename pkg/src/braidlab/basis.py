"""Basis-state indexing for the N**r dimensional tensor-product space.

Site values are 1-based (``1..N``). A basis state ``|b1 b2 ... br>`` is a
plain tuple of ints; its flattened 0-based index treats site 1 as the most
significant digit, so ``|a> (x) |b>`` sits at ``(a - 1) * N + (b - 1)``.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import DomainError, ResourceError

DEFAULT_MAX_DIM = 4096
DEFAULT_MAX_ENTRIES = 10**6
DEFAULT_BLOCK_BUDGET = 1024


def max_dense_dim() -> int:
    """Dense-dimension budget, overridable through ``BRAIDLAB_MAX_DIM``."""
    value = os.environ.get("BRAIDLAB_MAX_DIM")
    if value is None:
        return DEFAULT_MAX_DIM
    try:
        return int(value)
    except ValueError:
        raise DomainError(f"BRAIDLAB_MAX_DIM must be an integer, got {value!r}") from None


def check_budget(N: int, r: int, limit: int | None = None) -> int:
    """Return ``N**r`` or raise ResourceError when it exceeds the budget."""
    dim = N**r
    limit = max_dense_dim() if limit is None else limit
    if dim > limit:
        raise ResourceError(f"dimension N**r = {N}**{r} = {dim} exceeds budget {limit}")
    return dim


def bar(a: int, N: int) -> int:
    return N + 1 - a


def fold(a: int, N: int) -> int:
    """Representative of ``{a, bar(a)}`` in ``1..n``."""
    return min(a, N + 1 - a)


def half(N: int) -> int:
    """``n`` with ``N = 2n`` or ``N = 2n - 1``."""
    return (N + 1) // 2


def state_index(state, N: int) -> int:
    idx = 0
    for b in state:
        idx = idx * N + (b - 1)
    return idx


def index_state(idx: int, N: int, r: int) -> tuple[int, ...]:
    digits = []
    for _ in range(r):
        idx, d = divmod(idx, N)
        digits.append(d + 1)
    return tuple(reversed(digits))


def all_digits(N: int, r: int) -> np.ndarray:
    """Array of shape ``(N**r, r)`` with 0-based site values, row = flat index."""
    grids = np.indices((N,) * r).reshape(r, -1)
    return np.ascontiguousarray(grids.T, dtype=np.int64)


def cyclic_shift(state, steps: int = 1) -> tuple[int, ...]:
    """``(b1, ..., br) -> (b2, ..., br, b1)`` applied ``steps`` times."""
    steps %= len(state)
    return tuple(state[steps:]) + tuple(state[:steps])


def bar_state(state, N: int, positions) -> tuple[int, ...]:
    out = list(state)
    for k in positions:
        out[k] = N + 1 - out[k]
    return tuple(out)
