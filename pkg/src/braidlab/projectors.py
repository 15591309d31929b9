"""Nested-sequence projectors on ``C^N (x) C^N`` and their algebra check.

Every projector is rank one: ``P = v v^T`` with
``v = (|a b> + eps |bar a, bar b>) / sqrt 2``, except the odd-N central
``P_nn = |n n><n n|``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import half
from .errors import DomainError


@dataclass(frozen=True)
class ProjectorLabel:
    N: int
    i: int
    j: int
    barred: bool = False
    eps: str | None = "+"

    def validate(self) -> None:
        N, n = self.N, half(self.N)
        if N < 2:
            raise DomainError(f"N must be >= 2, got {N}")
        if not (1 <= self.i <= n and 1 <= self.j <= n):
            raise DomainError(f"projector indices must lie in 1..{n}, got ({self.i}, {self.j})")
        central = N % 2 == 1 and self.i == n and self.j == n
        if central:
            if self.eps is not None or self.barred:
                raise DomainError("P_nn takes neither eps nor a bar")
            return
        if self.eps not in ("+", "-"):
            raise DomainError(f"eps must be '+' or '-', got {self.eps!r}")
        if self.barred and N % 2 == 1 and (self.i == n or self.j == n):
            raise DomainError("P_in / P_ni have no barred variant (bar n = n)")

    @property
    def pair(self) -> tuple[int, int]:
        """Row-state ``(a, b)`` of the ``|a b>`` component with coefficient 1."""
        j = self.N + 1 - self.j if self.barred else self.j
        return self.i, j

    @property
    def param_key(self) -> tuple[int, int, str]:
        """Key of the parameter multiplying this projector in ``R-hat``."""
        return (self.i, self.j, self.eps or "+")


def all_labels(N: int) -> list[ProjectorLabel]:
    """Complete label set, in a fixed order."""
    n = half(N)
    labels = []
    if N % 2 == 0:
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for barred in (False, True):
                    for e in ("+", "-"):
                        labels.append(ProjectorLabel(N, i, j, barred, e))
        return labels
    for i in range(1, n):
        for j in range(1, n):
            for barred in (False, True):
                for e in ("+", "-"):
                    labels.append(ProjectorLabel(N, i, j, barred, e))
    for i in range(1, n):
        for e in ("+", "-"):
            labels.append(ProjectorLabel(N, i, n, False, e))
            labels.append(ProjectorLabel(N, n, i, False, e))
    labels.append(ProjectorLabel(N, n, n, False, None))
    return labels


def unit(a: int, b: int, N: int) -> np.ndarray:
    """``(ab)``: N x N matrix with a single 1 at row ``a``, column ``b`` (1-based)."""
    out = np.zeros((N, N))
    out[a - 1, b - 1] = 1.0
    return out


def projector(label: ProjectorLabel) -> np.ndarray:
    """Dense real ``N**2 x N**2`` matrix of a nested-sequence projector."""
    label.validate()
    N = label.N
    a, b = label.pair
    if label.eps is None:
        return np.kron(unit(a, a, N), unit(b, b, N))
    e = 1.0 if label.eps == "+" else -1.0
    ab, cd = N + 1 - a, N + 1 - b
    return 0.5 * (
        np.kron(unit(a, a, N), unit(b, b, N))
        + np.kron(unit(ab, ab, N), unit(cd, cd, N))
        + e * (np.kron(unit(a, ab, N), unit(b, cd, N)) + np.kron(unit(ab, a, N), unit(cd, b, N)))
    )


def projector_sum(N: int, coefficient) -> np.ndarray:
    """``sum_label coefficient(label) * P_label`` as a dense complex matrix."""
    out = np.zeros((N * N, N * N), dtype=complex)
    for label in all_labels(N):
        out += coefficient(label) * projector(label)
    return out


@dataclass(frozen=True)
class AlgebraReport:
    N: int
    orthogonality: float
    completeness: float
    idempotence: float
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.orthogonality, self.completeness, self.idempotence) <= self.tol


def verify_projector_algebra(N: int, tol: float = 0.0) -> AlgebraReport:
    """Max deviations of ``P_a P_b = delta_ab P_a`` and ``sum P = I``."""
    labels = all_labels(N)
    stack = np.stack([projector(lab) for lab in labels])
    completeness = float(np.max(np.abs(stack.sum(axis=0) - np.eye(N * N))))
    ortho = 0.0
    idem = 0.0
    for k, P in enumerate(stack):
        prods = P @ stack
        idem = max(idem, float(np.max(np.abs(prods[k] - P))))
        prods[k] = 0.0
        ortho = max(ortho, float(np.max(np.abs(prods))))
    return AlgebraReport(N, ortho, completeness, idem, tol)
