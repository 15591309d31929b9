"""Braid matrix ``R-hat(theta)``, Yang-Baxter matrix ``R = P R-hat`` and residual checks.

All residuals use the max-abs entry norm. Large ``Re(m theta)`` inflates
absolute round-off, so the braid and Yang-Baxter checks also expose a
magnitude scale (product of the largest exponential factor of each of the
three matrices in a triple product); ``scaled=True`` divides by it.
"""

from __future__ import annotations

import numpy as np

from .params import ParamSet
from .projectors import projector_sum

DEFAULT_TOL = 1e-9


def rhat(p: ParamSet, theta: complex) -> np.ndarray:
    """``sum exp(m theta) P`` over the full projector basis (``P_nn`` gets ``center_shift``)."""
    theta = complex(theta)
    return projector_sum(p.N, lambda lab: np.exp(p.m(lab.i, lab.j, lab.eps or "+") * theta))


def permutation_matrix(N: int) -> np.ndarray:
    """Swap operator ``P = sum_ab (ab) (x) (ba)``."""
    dim = N * N
    P = np.zeros((dim, dim))
    for a in range(N):
        for b in range(N):
            P[b * N + a, a * N + b] = 1.0
    return P


def r_matrix(p: ParamSet, theta: complex) -> np.ndarray:
    return permutation_matrix(p.N) @ rhat(p, theta)


def magnitude_scale(p: ParamSet, *thetas) -> float:
    scale = 1.0
    for t in thetas:
        scale *= max(1.0, p.max_exponent(t))
    return scale


def _maxabs(A) -> float:
    return float(np.max(np.abs(A))) if A.size else 0.0


def braid_residual(p: ParamSet, theta: complex, theta2: complex, scaled: bool = False) -> float:
    """``|| R12(t) R23(t+t') R12(t') - R23(t') R12(t+t') R23(t) ||_max`` on ``(C^N)^3``."""
    N = p.N
    I = np.eye(N)
    r1, r2, r12 = rhat(p, theta), rhat(p, theta2), rhat(p, theta + theta2)
    lhs = np.kron(r1, I) @ np.kron(I, r12) @ np.kron(r2, I)
    rhs = np.kron(I, r2) @ np.kron(r12, I) @ np.kron(I, r1)
    res = _maxabs(lhs - rhs)
    return res / magnitude_scale(p, theta, theta2, theta + theta2) if scaled else res


def _swap23(N: int) -> np.ndarray:
    return np.kron(np.eye(N), permutation_matrix(N))


def ybe_residual(p: ParamSet, theta: complex, theta2: complex, scaled: bool = False) -> float:
    """Residual of ``R12(t) R13(t+t') R23(t') = R23(t') R13(t+t') R12(t)``."""
    N = p.N
    I = np.eye(N)
    S = _swap23(N)

    def r12(t):
        return np.kron(r_matrix(p, t), I)

    def r23(t):
        return np.kron(I, r_matrix(p, t))

    def r13(t):
        return S @ r12(t) @ S

    lhs = r12(theta) @ r13(theta + theta2) @ r23(theta2)
    rhs = r23(theta2) @ r13(theta + theta2) @ r12(theta)
    res = _maxabs(lhs - rhs)
    return res / magnitude_scale(p, theta, theta2, theta + theta2) if scaled else res


def unitarity_residual(p: ParamSet, theta: float) -> float:
    """``|| R-hat R-hat^dagger - I ||_max`` for real ``theta``."""
    if isinstance(theta, complex) and theta.imag != 0:
        raise ValueError("unitarity is checked for real theta only")
    R = rhat(p, float(np.real(theta)))
    return _maxabs(R @ R.conj().T - np.eye(R.shape[0]))
