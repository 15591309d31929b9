"""Monodromy blocks, transfer matrices ``T^(r)(theta)`` and related checks.

``transfer_matrix`` goes through the compiled (or numpy) kernel that expands
every source state into its cyclically shifted, even-bar images. The
coproduct route (``monodromy_block`` / ``transfer_matrix_coproduct``) builds
the same operator from ``N x N`` blocks and is kept as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np
import scipy.sparse as sp

from . import _kernels
from .basis import DEFAULT_MAX_ENTRIES, all_digits, check_budget, half
from .errors import ResourceError
from .params import ParamSet
from .projectors import unit


@dataclass(frozen=True)
class SparseOperator:
    """Operator on ``(C^N)^(x)r`` stored as CSR; rows and columns use the flat basis index."""

    N: int
    r: int
    matrix: sp.csr_matrix

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def nnz(self) -> int:
        return self.matrix.nnz

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def __matmul__(self, other):
        if isinstance(other, SparseOperator):
            return SparseOperator(self.N, self.r, (self.matrix @ other.matrix).tocsr())
        return self.matrix @ other

    def column_counts(self) -> np.ndarray:
        return np.diff(self.matrix.tocsc().indptr)

    def triplets(self) -> list[list]:
        """``[row, col, re, im]`` with 1-based indices, sorted by (row, col)."""
        coo = self.matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return [
            [int(coo.row[k]) + 1, int(coo.col[k]) + 1, float(coo.data[k].real), float(coo.data[k].imag)]
            for k in order
        ]

    def to_dict(self) -> dict:
        return {"dim": self.dim, "triplets": self.triplets()}

    @classmethod
    def from_dict(cls, doc: dict, N: int, r: int) -> "SparseOperator":
        dim = int(doc["dim"])
        if dim != N**r:
            raise ValueError(f"dim {dim} does not match N**r = {N**r}")
        trip = np.array(doc["triplets"], dtype=float).reshape(-1, 4)
        data = trip[:, 2] + 1j * trip[:, 3]
        mat = sp.csr_matrix((data, (trip[:, 0].astype(int) - 1, trip[:, 1].astype(int) - 1)), shape=(dim, dim))
        return cls(N, r, mat)


def _bar_array(N: int) -> np.ndarray:
    return np.array([N - 1 - a for a in range(N)], dtype=np.int64)


def _jets(p: ParamSet, theta: complex, order: int) -> np.ndarray:
    """Taylor coefficients of ``(e^{m+ t} +- e^{m- t}) / 2`` around ``theta`` up to ``order``."""
    mp, mm = p.table[0], p.table[1]
    ep, em = np.exp(mp * theta), np.exp(mm * theta)
    out = np.empty((p.N, p.N, 2, order + 1), dtype=complex)
    for j in range(order + 1):
        a = mp**j * ep / factorial(j)
        b = mm**j * em / factorial(j)
        out[:, :, 0, j] = 0.5 * (a + b)
        out[:, :, 1, j] = 0.5 * (a - b)
    return np.ascontiguousarray(out)


def _assemble(p: ParamSet, r: int, theta: complex, order: int, max_entries: int | None, backend=None) -> SparseOperator:
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    dim = check_budget(p.N, r)
    limit = DEFAULT_MAX_ENTRIES if max_entries is None else max_entries
    if dim * (1 << r) > limit:
        raise ResourceError(f"N**r * 2**r = {dim * (1 << r)} stored entries exceed budget {limit}")
    kernel = _kernels.assemble if backend is None else _kernels.BACKENDS[backend]
    rows, cols, vals = kernel(p.N, r, _jets(p, complex(theta), order), _bar_array(p.N), all_digits(p.N, r))
    mat = sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim))
    mat.sum_duplicates()
    mat.eliminate_zeros()
    return SparseOperator(p.N, r, mat)


def transfer_matrix(p: ParamSet, r: int, theta: complex, *, max_entries: int | None = None, backend=None) -> SparseOperator:
    """``T^(r)(theta) = sum_a T^(r)_aa`` as a sparse operator of dimension ``N**r``."""
    return _assemble(p, r, theta, 0, max_entries, backend)


def transfer_derivative(p: ParamSet, r: int, theta: complex, order: int, *, backend=None) -> SparseOperator:
    """Exact ``d^order/dtheta^order T^(r)`` (each entry is a finite sum of exponentials)."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return _assemble(p, r, theta, order, None, backend)


# -- coproduct route -----------------------------------------------------------

def monodromy_block_r1(p: ParamSet, a: int, b: int, theta: complex) -> np.ndarray:
    """``T^(1)_ab = f+_ba (ba) + f-_ba (bar b, bar a)`` as a dense ``N x N`` matrix."""
    N = p.N
    theta = complex(theta)
    ep = np.exp(p.m(b, a, "+") * theta)
    em = np.exp(p.m(b, a, "-") * theta)
    return 0.5 * (ep + em) * unit(b, a, N) + 0.5 * (ep - em) * unit(N + 1 - b, N + 1 - a, N)


def _monodromy_table(p: ParamSet, r: int, theta: complex) -> list[list[sp.csr_matrix]]:
    N = p.N
    base = [[sp.csr_matrix(monodromy_block_r1(p, a, b, theta)) for b in range(1, N + 1)] for a in range(1, N + 1)]
    table = base
    for _ in range(r - 1):
        table = [
            [sum(sp.kron(table[a][c], base[c][b], format="csr") for c in range(N)) for b in range(N)]
            for a in range(N)
        ]
    return table


def monodromy_block(p: ParamSet, r: int, a: int, b: int, theta: complex) -> SparseOperator:
    """Coproduct ``T^(r)_ab = sum_c T_ac1 (x) T_c1c2 (x) ... (x) T_c(r-1)b``."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    check_budget(p.N, r)
    mat = _monodromy_table(p, r, theta)[a - 1][b - 1].tocsr()
    mat.eliminate_zeros()
    return SparseOperator(p.N, r, mat)


def transfer_matrix_coproduct(p: ParamSet, r: int, theta: complex) -> SparseOperator:
    """Block trace of the coproduct monodromy matrix (independent of the kernel)."""
    check_budget(p.N, r)
    table = _monodromy_table(p, r, theta)
    mat = sum(table[a][a] for a in range(p.N)).tocsr()
    mat.eliminate_zeros()
    return SparseOperator(p.N, r, mat)


# -- closed forms and checks --------------------------------------------------

def trace_closed_form(p: ParamSet, r: int, theta: complex) -> complex:
    """``2 sum_i exp(r m_ii^+ theta)`` (+ ``exp(r center_shift theta)`` for odd N)."""
    theta = complex(theta)
    n = half(p.N)
    if p.N % 2 == 0:
        return complex(2 * sum(np.exp(r * p.m(i, i, "+") * theta) for i in range(1, n + 1)))
    total = 2 * sum(np.exp(r * p.m(i, i, "+") * theta) for i in range(1, n))
    return complex(total + np.exp(r * p.center_shift * theta))


def transfer_inverse_candidate(p: ParamSet, r: int, theta: complex) -> SparseOperator:
    """Sign-flipped exponents with transposed elementary factors, i.e. ``T^(r)(-theta)^T``.

    Whether this is the two-sided inverse is measured by
    :func:`inverse_candidate_residual`, not assumed.
    """
    T = transfer_matrix(p, r, -complex(theta))
    return SparseOperator(p.N, r, T.matrix.transpose().tocsr())


def inverse_candidate_residual(p: ParamSet, r: int, theta: complex) -> dict:
    T = transfer_matrix(p, r, theta).matrix
    C = transfer_inverse_candidate(p, r, theta).matrix
    eye = sp.identity(T.shape[0], format="csr")
    return {
        "left": _maxabs(C @ T - eye),
        "right": _maxabs(T @ C - eye),
    }


def _maxabs(mat) -> float:
    if sp.issparse(mat):
        mat = mat.tocsr()
        return float(np.max(np.abs(mat.data))) if mat.nnz else 0.0
    return float(np.max(np.abs(mat))) if mat.size else 0.0


def commutator_residual(p: ParamSet, r: int, theta: complex, theta2: complex) -> float:
    """``|| [T(theta), T(theta')] ||_max``."""
    A = transfer_matrix(p, r, theta).matrix
    B = transfer_matrix(p, r, theta2).matrix
    return _maxabs(A @ B - B @ A)
