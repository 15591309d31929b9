"""Spin-chain Hamiltonians and conserved charges built from ``R-hat`` at ``theta = 0``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .basis import all_digits, check_budget
from .errors import NumericalError, UnsupportedOperation
from .params import ParamSet
from .projectors import projector_sum
from .transfer import SparseOperator, transfer_derivative, transfer_matrix

BOUNDARIES = ("closed", "open")


@dataclass(frozen=True)
class ChainOperator:
    sites: int
    boundary: str
    operator: SparseOperator

    @property
    def matrix(self) -> sp.csr_matrix:
        return self.operator.matrix

    def to_dict(self) -> dict:
        out = self.operator.to_dict()
        out.update({"sites": self.sites, "boundary": self.boundary})
        return out


def rhat_derivative(p: ParamSet, l: int) -> np.ndarray:
    """``d^l R-hat / d theta^l`` at 0: ``sum (m_label)^l P_label`` (``P_nn`` weighted by ``center_shift^l``)."""
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    return projector_sum(p.N, lambda lab: p.m(lab.i, lab.j, lab.eps or "+") ** l)


def two_site_operator(op: np.ndarray, N: int, r: int, first: int, second: int) -> sp.csr_matrix:
    """Embed an ``N**2 x N**2`` operator acting on sites ``first``, ``second`` (1-based) of ``r`` sites.

    The left tensor factor of ``op`` acts on ``first``.
    """
    if first == second:
        raise ValueError("sites must differ")
    dim = N**r
    digits = all_digits(N, r)
    weights = N ** np.arange(r - 1, -1, -1, dtype=np.int64)
    f, s = first - 1, second - 1
    local_col = digits[:, f] * N + digits[:, s]
    base = digits @ weights - digits[:, f] * weights[f] - digits[:, s] * weights[s]
    rows, cols, vals = [], [], []
    op = np.asarray(op)
    for lr in range(N * N):
        coeff = op[lr, local_col]
        keep = coeff != 0
        if not np.any(keep):
            continue
        x, y = divmod(lr, N)
        rows.append(base[keep] + x * weights[f] + y * weights[s])
        cols.append(np.nonzero(keep)[0])
        vals.append(coeff[keep])
    if not rows:
        return sp.csr_matrix((dim, dim), dtype=complex)
    mat = sp.csr_matrix(
        (np.concatenate(vals).astype(complex), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim)
    )
    mat.sum_duplicates()
    return mat


def hamiltonian(p: ParamSet, r: int, boundary: str = "closed") -> ChainOperator:
    """``sum_k R-hat'(0)_{k,k+1}``; the closed chain adds the ``(r, 1)`` bond.

    On bond ``(k, k+1)`` the left tensor factor of ``R-hat'(0)`` acts on site
    ``k+1``. This is the orientation produced by differentiating the
    coproduct transfer matrix, so the closed chain equals
    ``conserved_quantity(p, r, 1)``. The mirrored sum also commutes with
    ``T^(r)`` and coincides with it whenever ``m_ij = m_ji``.
    """
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    if boundary not in BOUNDARIES:
        raise ValueError(f"boundary must be one of {BOUNDARIES}, got {boundary!r}")
    check_budget(p.N, r)
    local = rhat_derivative(p, 1)
    bonds = [(k, k + 1) for k in range(1, r)]
    if boundary == "closed":
        bonds.append((r, 1))
    H = sum(two_site_operator(local, p.N, r, b, a) for a, b in bonds)
    H = H.tocsr()
    H.eliminate_zeros()
    return ChainOperator(r, boundary, SparseOperator(p.N, r, H))


def conserved_quantity(p: ParamSet, r: int, l: int) -> ChainOperator:
    """``H_l = d^l/dtheta^l log T^(r)(theta)`` at 0 for ``l in {1, 2}`` (closed chain).

    ``H_1 = T^-1 T'`` and ``H_2 = T^-1 T'' - H_1^2`` with exact theta-derivatives of ``T``.
    """
    if l not in (1, 2):
        raise UnsupportedOperation(f"conserved quantities are implemented for l = 1, 2 only, got {l}")
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    T0 = transfer_matrix(p, r, 0.0).matrix.tocsc()
    try:
        T0inv = sp.csr_matrix(spla.inv(T0))
    except RuntimeError as exc:
        raise NumericalError(f"T^({r})(0) is singular: {exc}") from None
    H1 = (T0inv @ transfer_derivative(p, r, 0.0, 1).matrix).tocsr()
    if l == 1:
        out = H1
    else:
        out = (T0inv @ transfer_derivative(p, r, 0.0, 2).matrix - H1 @ H1).tocsr()
    out.eliminate_zeros()
    return ChainOperator(r, "closed", SparseOperator(p.N, r, out))


def _maxabs(mat) -> float:
    mat = sp.csr_matrix(mat)
    return float(np.max(np.abs(mat.data))) if mat.nnz else 0.0


def integrability_residual(p: ParamSet, r: int, theta: complex) -> float:
    """``|| [H, T^(r)(theta)] ||_max`` for the closed chain."""
    H = hamiltonian(p, r, "closed").matrix
    T = transfer_matrix(p, r, theta).matrix
    return _maxabs(H @ T - T @ H)


def commutator(A, B) -> float:
    A, B = sp.csr_matrix(A), sp.csr_matrix(B)
    return _maxabs(A @ B - B @ A)


def affine_fit(A, B) -> tuple[complex, complex, float]:
    """Least-squares ``A ~ alpha B + beta I``; returns ``(alpha, beta, max residual)``."""
    A = sp.csr_matrix(A).toarray()
    B = sp.csr_matrix(B).toarray()
    I = np.eye(A.shape[0])
    design = np.stack([B.ravel(), I.ravel()], axis=1)
    coef, *_ = np.linalg.lstsq(design, A.ravel(), rcond=None)
    resid = float(np.max(np.abs(A - coef[0] * B - coef[1] * I)))
    return complex(coef[0]), complex(coef[1]), resid
