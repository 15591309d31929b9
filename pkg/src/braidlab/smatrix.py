"""Inverse Cayley transform ``X = (R - lambda I)^-1`` and the potential ``-iV = I + 2 lambda X``.

Matrix units ``(ab) (x) (cd)`` are stored at row ``(a, c)`` and column
``(b, d)`` of the ``N**2 x N**2`` matrix, so ``V_{ab,cd} = V[(a, c), (b, d)]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import bar
from .braid import r_matrix
from .errors import SingularityError
from .params import EPS, ParamSet

DEFAULT_MARGIN = 1e-6
_DEDUP_TOL = 1e-12


def _pair_exponent(p: ParamSet, a: int, b: int, eps: str) -> complex:
    return p.m(a, b, eps) + p.m(b, a, eps)


def excluded_lambdas(p: ParamSet, theta: complex) -> list[complex]:
    """All ``+-exp((m_ab + m_ba) theta / 2)``, deduplicated and sorted.

    For odd ``N`` the central sector contributes ``+-exp(center_shift * theta)``.
    """
    theta = complex(theta)
    raw = []
    for a in range(1, p.N + 1):
        for b in range(1, p.N + 1):
            for e in EPS:
                root = complex(np.exp(0.5 * _pair_exponent(p, a, b, e) * theta))
                raw.extend([root, -root])
    out: list[complex] = []
    for z in sorted(raw, key=lambda z: (z.real, z.imag)):
        if not any(abs(z - w) <= _DEDUP_TOL * max(1.0, abs(w)) for w in out):
            out.append(z)
    return out


def check_lambda(p: ParamSet, theta: complex, lam: complex, margin: float = DEFAULT_MARGIN) -> list[complex]:
    """Raise :class:`SingularityError` if ``lam`` is within ``margin * max(1, |x|)`` of an excluded ``x``."""
    excluded = excluded_lambdas(p, theta)
    lam = complex(lam)
    for x in excluded:
        if abs(lam - x) <= margin * max(1.0, abs(x)):
            raise SingularityError(
                f"lambda = {lam} is within {abs(lam - x):.3e} of excluded value {x}", offending=x
            )
    return excluded


def cayley_x(p: ParamSet, theta: complex, lam: complex, margin: float = DEFAULT_MARGIN) -> np.ndarray:
    """Closed-form ``(R(theta) - lam I)^-1`` as a dense ``N**2 x N**2`` matrix."""
    check_lambda(p, theta, lam, margin)
    N = p.N
    theta, lam = complex(theta), complex(lam)
    X = np.zeros((N * N, N * N), dtype=complex)
    for a in range(1, N + 1):
        ab_ = bar(a, N)
        for b in range(1, N + 1):
            bb_ = bar(b, N)
            for e in EPS:
                sign = 1.0 if e == "+" else -1.0
                c = -0.5 / (lam**2 - np.exp(_pair_exponent(p, a, b, e) * theta))
                w = c * np.exp(p.m(b, a, e) * theta)
                # lam [(aa)(x)(bb) + eps (a abar)(x)(b bbar)]
                X[(a - 1) * N + b - 1, (a - 1) * N + b - 1] += c * lam
                X[(a - 1) * N + b - 1, (ab_ - 1) * N + bb_ - 1] += sign * c * lam
                # e^{m_ba theta} [(ab)(x)(ba) + eps (a bbar)(x)(b abar)]
                X[(a - 1) * N + b - 1, (b - 1) * N + a - 1] += w
                X[(a - 1) * N + b - 1, (bb_ - 1) * N + ab_ - 1] += sign * w
    return X


def cayley_identity_residual(p: ParamSet, theta: complex, lam: complex) -> float:
    """``|| (R - lam I) X - I ||_max``."""
    R = r_matrix(p, theta)
    X = cayley_x(p, theta, lam)
    eye = np.eye(R.shape[0])
    return float(np.max(np.abs((R - complex(lam) * eye) @ X - eye)))


def potential_matrix(p: ParamSet, theta: complex, lam: complex, margin: float = DEFAULT_MARGIN) -> np.ndarray:
    """``V = i (I + 2 lam X)``."""
    X = cayley_x(p, theta, lam, margin)
    return 1j * (np.eye(X.shape[0]) + 2 * complex(lam) * X)


def family_prediction(p: ParamSet, theta: complex, lam: complex, swap_scale: complex | None = None) -> np.ndarray:
    """Assemble ``V`` from the four element families, column by column.

    For a source pair ``(b, d)`` the families land on rows ``(b, d)``,
    ``(bbar, dbar)``, ``(d, b)`` and ``(dbar, bbar)``; coinciding rows add.
    With ``E = exp((m_bd + m_db) theta)`` the diagonal pair carries
    ``-(i/2) sum_eps eps^k (lam^2 + E) / (lam^2 - E)`` and the exchanged pair
    ``-(i/2) swap_scale sum_eps eps^k exp(m_bd theta) / (lam^2 - E)``.
    ``swap_scale = 2 lam`` (the default) is what ``-iV = I + 2 lam X``
    implies; ``swap_scale = 1`` gives the unweighted exchanged families.
    """
    N = p.N
    theta, lam = complex(theta), complex(lam)
    scale = 2 * lam if swap_scale is None else complex(swap_scale)
    V = np.zeros((N * N, N * N), dtype=complex)
    for b in range(1, N + 1):
        for d in range(1, N + 1):
            col = (b - 1) * N + d - 1
            rows = {
                "diag": (b - 1) * N + d - 1,
                "bar": (bar(b, N) - 1) * N + bar(d, N) - 1,
                "swap": (d - 1) * N + b - 1,
                "barswap": (bar(d, N) - 1) * N + bar(b, N) - 1,
            }
            for e in EPS:
                sign = 1.0 if e == "+" else -1.0
                E = np.exp(_pair_exponent(p, b, d, e) * theta)
                den = lam**2 - E
                diag = -0.5j * (lam**2 + E) / den
                swap = -0.5j * scale * np.exp(p.m(b, d, e) * theta) / den
                V[rows["diag"], col] += diag
                V[rows["bar"], col] += sign * diag
                V[rows["swap"], col] += swap
                V[rows["barswap"], col] += sign * swap
    return V


def center_potential(lam: complex, center: complex = 0.0) -> complex:
    """``V_{nn,nn}`` implied by the identity: ``-i (lam + e^c) / (lam - e^c)`` with ``c = center_shift * theta``."""
    lam = complex(lam)
    ec = np.exp(complex(center))
    return complex(-1j * (lam + ec) / (lam - ec))


def center_potential_unweighted(lam: complex) -> complex:
    """Central element summed from the unweighted families: ``-i (lam^2 + 2) / (lam^2 - 1)`` (``m_nn = 0``)."""
    lam = complex(lam)
    return complex(-1j * (lam**2 + 2) / (lam**2 - 1))


@dataclass(frozen=True)
class PotentialTable:
    """Nonzero couplings ``V_{ab,cd}`` keyed by ``((a, b), (c, d))`` (1-based)."""

    N: int
    theta: complex
    lam: complex
    entries: dict = field(repr=False)
    excluded: tuple
    reconstruction_residual: float
    family_residual: float
    unweighted_family_deviation: float

    def matrix(self) -> np.ndarray:
        N = self.N
        V = np.zeros((N * N, N * N), dtype=complex)
        for ((a, b), (c, d)), v in self.entries.items():
            V[(a - 1) * N + c - 1, (b - 1) * N + d - 1] = v
        return V

    def element(self, a: int, b: int, c: int, d: int) -> complex:
        return self.entries.get(((a, b), (c, d)), 0j)

    def to_dict(self) -> dict:
        rows = [
            {"a": a, "b": b, "c": c, "d": d, "re": float(v.real), "im": float(v.imag)}
            for ((a, b), (c, d)), v in sorted(self.entries.items())
        ]
        return {
            "N": self.N,
            "theta": {"re": self.theta.real, "im": self.theta.imag},
            "lambda": {"re": self.lam.real, "im": self.lam.imag},
            "entries": rows,
            "excluded": [{"re": z.real, "im": z.imag} for z in self.excluded],
            "checks": {
                "reconstruction_residual": self.reconstruction_residual,
                "family_residual": self.family_residual,
                "unweighted_family_deviation": self.unweighted_family_deviation,
            },
        }


def potential(
    p: ParamSet, theta: complex, lam: complex, margin: float = DEFAULT_MARGIN, zero_tol: float = 1e-14
) -> PotentialTable:
    """Potential table with its reconstruction and family checks."""
    theta, lam = complex(theta), complex(lam)
    excluded = check_lambda(p, theta, lam, margin)
    N = p.N
    X = cayley_x(p, theta, lam, margin)
    V = 1j * (np.eye(N * N) + 2 * lam * X)
    entries = {}
    for row, col in zip(*np.nonzero(np.abs(V) > zero_tol)):
        a, c = divmod(int(row), N)
        b, d = divmod(int(col), N)
        entries[((a + 1, b + 1), (c + 1, d + 1))] = complex(V[row, col])
    table_V = np.zeros_like(V)
    for ((a, b), (c, d)), v in entries.items():
        table_V[(a - 1) * N + c - 1, (b - 1) * N + d - 1] = v
    eye = np.eye(N * N)
    recon = float(np.max(np.abs(-1j * table_V - (eye + 2 * lam * X))))
    fam = float(np.max(np.abs(V - family_prediction(p, theta, lam))))
    unweighted = float(np.max(np.abs(V - family_prediction(p, theta, lam, swap_scale=1.0))))
    return PotentialTable(N, theta, lam, entries, tuple(excluded), recon, fam, unweighted)
