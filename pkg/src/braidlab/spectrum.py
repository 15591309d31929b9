"""Spectrum of ``T^(r)``: closed subspaces, symbolic eigenvalues, oracles, multiplet census.

Closed form
-----------
Rotate every site to ``u(i,+) = (|i> + |bar i>)/sqrt 2`` and
``u(i,-) = (|i> - |bar i>)/sqrt 2`` (``|n>`` unchanged for odd N). ``R-hat`` is
diagonal on ``u(a,alpha) (x) u(b,beta)`` with eigenvalue
``exp(m_ab^(alpha beta) theta)``, so ``T^(r)`` acts on rotated product states
as a weighted cyclic shift

    T |e_1 ... e_r> = exp(E theta) |e_2 ... e_r e_1>,
    E = sum_k m_{f(k+1) f(k)}^(alpha_k alpha_(k+1)).

``E`` is invariant under rotation, so a necklace of period ``d`` contributes
``exp(E theta) * exp(2 pi i k / d)`` for ``k = 0..d-1``. Rotated sequences are
encoded with the same digits as basis states: ``a <= n`` means ``(fold a, +)``,
``a > n`` means ``(fold a, -)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .basis import DEFAULT_BLOCK_BUDGET, check_budget, fold, half, state_index
from .errors import ResourceError
from .params import ParamSet
from .transfer import transfer_matrix


@dataclass(frozen=True)
class ClosedSubspace:
    """Orbit of basis states under cyclic shifts and even-count bar flips.

    ``parity`` is ``"even"``/``"odd"`` (bar count of every member) or
    ``"mixed"`` when the odd-N fixed index ``n`` occurs, since flipping it is
    trivial and both parities then mix. ``period`` is the least shift that
    maps the folded index sequence to itself.
    """

    seed: tuple[int, ...]
    parity: str
    states: tuple[tuple[int, ...], ...]
    period: int

    @property
    def dim(self) -> int:
        return len(self.states)

    def indices(self, N: int) -> np.ndarray:
        return np.array([state_index(s, N) for s in self.states], dtype=np.int64)


@dataclass(frozen=True)
class EigenvalueRecord:
    """``multiplicity`` eigenvalues equal to ``exp(2 pi i k/d) * exp((exponent . m) theta)``."""

    seed_state: tuple[int, ...]
    parity: str
    period: int
    root_index: int
    exponent: tuple[int, ...]
    multiplicity: int
    params: ParamSet = field(repr=False, compare=False)

    @property
    def root(self) -> complex:
        return complex(np.exp(2j * np.pi * self.root_index / self.period))

    def rate(self) -> complex:
        """``exponent . m``, the theta-derivative of ``log`` of the eigenvalue."""
        return complex(np.dot(self.exponent, self.params.values))

    def value_at(self, theta: complex) -> complex:
        return self.root * complex(np.exp(self.rate() * complex(theta)))

    def exponent_terms(self) -> list[dict]:
        basis = self.params.basis
        return [
            {"i": basis[k][0], "j": basis[k][1], "eps": basis[k][2], "coeff": int(c)}
            for k, c in enumerate(self.exponent)
            if c
        ]

    def to_dict(self, theta: complex) -> dict:
        v = self.value_at(theta)
        return {
            "seed_state": list(self.seed_state),
            "parity": self.parity,
            "period": self.period,
            "root_index": self.root_index,
            "exponent": self.exponent_terms(),
            "multiplicity": self.multiplicity,
            "value": {"re": v.real, "im": v.imag},
        }


# -- orbits -------------------------------------------------------------------

def _rotations(seq: tuple) -> list[tuple]:
    return [seq[k:] + seq[:k] for k in range(len(seq))]


def _period(seq: tuple) -> int:
    r = len(seq)
    for d in range(1, r + 1):
        if r % d == 0 and seq[d:] + seq[:d] == seq:
            return d
    return r


def _fold_class(f: tuple[int, ...], N: int) -> list[tuple[int, ...]]:
    """All digit tuples whose folded sequence is a rotation of ``f``."""
    out = []
    for g in sorted(set(_rotations(f))):
        choices = [(a,) if a == N + 1 - a else (a, N + 1 - a) for a in g]
        out.extend(product(*choices))
    return out


def _bar_count(state, N: int) -> int:
    return sum(1 for b in state if b > N + 1 - b)


def orbit_decompose(N: int, r: int) -> list[ClosedSubspace]:
    """Partition all ``N**r`` basis states into subspaces closed under ``T^(r)``."""
    check_budget(N, r)
    n = half(N)
    seen = set()
    out = []
    for state in product(range(1, N + 1), repeat=r):
        if state in seen:
            continue
        f = tuple(fold(b, N) for b in state)
        members = _fold_class(f, N)
        seen.update(members)
        period = _period(f)
        if N % 2 == 1 and n in f:
            out.append(ClosedSubspace(min(members), "mixed", tuple(sorted(members)), period))
            continue
        for par, name in ((0, "even"), (1, "odd")):
            states = tuple(sorted(s for s in members if _bar_count(s, N) % 2 == par))
            out.append(ClosedSubspace(states[0], name, states, period))
    out.sort(key=lambda s: (s.seed, s.parity))
    return out


# -- closed form --------------------------------------------------------------

def _sign(a: int, N: int) -> int:
    return -1 if a > N + 1 - a else 1


def _cycle_exponent(p: ParamSet, seq: tuple[int, ...]) -> tuple[int, ...]:
    N, r = p.N, len(seq)
    vec = [0] * len(p.basis)
    for k in range(r):
        x, y = seq[(k + 1) % r], seq[k]
        eps = "+" if _sign(x, N) * _sign(y, N) > 0 else "-"
        vec[p.basis_index[p.key(x, y, eps)]] += 1
    return tuple(vec)


def _cycles(members: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Canonical (minimal-rotation) representative of every necklace among ``members``."""
    reps = set()
    for seq in members:
        reps.add(min(_rotations(seq)))
    return sorted(reps)


def _negate(seq: tuple[int, ...], N: int) -> tuple[int, ...]:
    return tuple(N + 1 - a for a in seq)


def _orbit_records(p: ParamSet, orbit: ClosedSubspace, members: list[tuple[int, ...]]) -> list[EigenvalueRecord]:
    N = p.N
    counts: Counter = Counter()
    cycles = _cycles(members)
    if orbit.parity == "mixed":
        for c in cycles:
            d = _period(c)
            E = _cycle_exponent(p, c)
            for k in range(d):
                counts[(d, k, E)] += 1
    else:
        want = 0 if orbit.parity == "even" else 1
        done = set()
        for c in cycles:
            if c in done:
                continue
            partner = min(_rotations(_negate(c, N)))
            done.update((c, partner))
            d = _period(c)
            E = _cycle_exponent(p, c)
            if partner == c:
                ks = [k for k in range(d) if k % 2 == want]
            else:
                ks = range(d)
            for k in ks:
                counts[(d, k, E)] += 1
    return [
        EigenvalueRecord(orbit.seed, orbit.parity, d, k, E, m, p)
        for (d, k, E), m in sorted(counts.items())
    ]


def closed_form_spectrum(p: ParamSet, r: int) -> list[EigenvalueRecord]:
    """Symbolic eigenvalues of ``T^(r)`` for every closed subspace; multiplicities sum to ``N**r``."""
    N = p.N
    records = []
    by_fold: dict = {}
    for orbit in orbit_decompose(N, r):
        f = min(_rotations(tuple(fold(b, N) for b in orbit.seed)))
        if f not in by_fold:
            by_fold[f] = _fold_class(f, N)
        records.extend(_orbit_records(p, orbit, by_fold[f]))
    return records


def spectrum_values(records, theta: complex) -> np.ndarray:
    vals = []
    for rec in records:
        vals.extend([rec.value_at(theta)] * rec.multiplicity)
    return sort_spectrum(np.array(vals, dtype=complex))


# -- numerical routes ---------------------------------------------------------

def sort_spectrum(values) -> np.ndarray:
    values = np.asarray(values, dtype=complex)
    return values[np.lexsort((values.imag, values.real))]


def _normalize_vector(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    return v / v[k]


def block_spectrum(p: ParamSet, s: ClosedSubspace, theta: complex, block_budget: int = DEFAULT_BLOCK_BUDGET):
    """Exact eigenpairs of ``T^(r)(theta)`` restricted to one closed subspace.

    Returns ``[(eigenvalue, vector), ...]`` with each vector scaled so that its
    largest-modulus coefficient is 1; coefficients follow ``s.states``.
    """
    if s.dim > block_budget:
        raise ResourceError(f"subspace dimension {s.dim} exceeds block budget {block_budget}")
    r = len(s.seed)
    T = transfer_matrix(p, r, theta).matrix
    idx = s.indices(p.N)
    block = T[idx][:, idx].toarray()
    vals, vecs = np.linalg.eig(block)
    order = np.lexsort((vals.imag, vals.real))
    return [(complex(vals[k]), _normalize_vector(vecs[:, k])) for k in order]


def leakage(p: ParamSet, s: ClosedSubspace, theta: complex) -> float:
    """Largest amplitude ``T`` sends from ``s`` to states outside it (0 when closed)."""
    r = len(s.seed)
    T = transfer_matrix(p, r, theta).matrix.tocsc()
    idx = s.indices(p.N)
    cols = T[:, idx].tocsr()
    mask = np.ones(cols.shape[0], dtype=bool)
    mask[idx] = False
    outside = cols[mask]
    return float(np.max(np.abs(outside.data))) if outside.nnz else 0.0


def eigenstate_drift(p: ParamSet, s: ClosedSubspace, theta: complex, theta2: complex) -> float:
    """Max residual ``|T(theta2) v - mu v|`` over eigenvectors ``v`` computed at ``theta``."""
    r = len(s.seed)
    T2 = transfer_matrix(p, r, theta2).matrix
    idx = s.indices(p.N)
    block2 = T2[idx][:, idx].toarray()
    worst = 0.0
    for _, v in block_spectrum(p, s, theta):
        w = block2 @ v
        mu = np.vdot(v, w) / np.vdot(v, v)
        worst = max(worst, float(np.max(np.abs(w - mu * v))))
    return worst


def oracle_spectrum(p: ParamSet, r: int, theta: complex) -> np.ndarray:
    """Eigenvalues of the densified ``T^(r)(theta)`` (general eigensolver), sorted."""
    check_budget(p.N, r)
    T = transfer_matrix(p, r, theta).toarray()
    return sort_spectrum(np.linalg.eigvals(T))


@dataclass(frozen=True)
class SpectrumMatch:
    matched: bool
    max_deviation: float
    tolerance: float


def match_spectra(a, b, tol: float = 1e-8) -> SpectrumMatch:
    """Greedy nearest-neighbour pairing of two eigenvalue multisets.

    ``a`` is walked in lexicographic (Re, Im) order; the tolerance is scaled
    by ``max(1, largest modulus)``.
    """
    a = sort_spectrum(a)
    b = sort_spectrum(b)
    if a.shape != b.shape:
        return SpectrumMatch(False, float("inf"), tol)
    if a.size == 0:
        return SpectrumMatch(True, 0.0, tol)
    scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    free = np.ones(b.size, dtype=bool)
    worst = 0.0
    for x in a:
        dist = np.where(free, np.abs(b - x), np.inf)
        j = int(np.argmin(dist))
        free[j] = False
        worst = max(worst, float(dist[j]))
    return SpectrumMatch(worst <= tol * scale, worst, tol * scale)


# -- multiplet census ---------------------------------------------------------

@dataclass(frozen=True)
class MultipletCensus:
    """Zero-sum multiplets of the identical-index subspace ``|i i ... i>`` (all bar patterns).

    ``patterns`` maps ``s`` (number of ``m^(-)`` factors in the exponent
    ``(r - s) m_ii^+ + s m_ii^-``) to ``(multiplicity, {root_set_size: count})``.
    """

    r: int
    index: int
    trace_doublet: int
    patterns: dict
    fermat_total: int
    max_root_sum: float
    oracle_deviation: float

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "index": self.index,
            "trace_doublet": self.trace_doublet,
            "multiplets": [
                {
                    "minus_count": s,
                    "plus_count": self.r - s,
                    "multiplicity": mult,
                    "root_set_sizes": [{"size": d, "count": c} for d, c in sorted(sizes.items())],
                }
                for s, (mult, sizes) in sorted(self.patterns.items())
            ],
            "fermat_total": self.fermat_total,
            "max_root_sum": self.max_root_sum,
            "oracle_deviation": self.oracle_deviation,
        }


def multiplet_census(p: ParamSet, r: int, index: int = 1, theta: float = 0.5) -> MultipletCensus:
    """Classify the identical-index spectrum into the trace doublet and zero-sum multiplets.

    ``oracle_deviation`` is the spectrum-match deviation between the census
    multiplets and the exact diagonalization of the same subspace at ``theta``.
    """
    if r < 2:
        raise ValueError("census needs r >= 2")
    N = p.N
    i = fold(index, N)
    if N % 2 == 1 and i == half(N):
        raise ValueError("the identical-index census needs a non-fixed index")
    members = _fold_class((i,) * r, N)
    doublet = 0
    patterns: dict = {}
    root_sum = 0.0
    predicted = []
    for c in _cycles(members):
        d = _period(c)
        s = sum(1 for k in range(r) if _sign(c[k], N) != _sign(c[(k + 1) % r], N))
        rate = p.m(i, i, "+") * (r - s) + p.m(i, i, "-") * s
        roots = np.exp(2j * np.pi * np.arange(d) / d)
        predicted.extend(roots * np.exp(rate * theta))
        if d == 1:
            doublet += 1
            continue
        mult, sizes = patterns.get(s, (0, Counter()))
        sizes[d] += 1
        patterns[s] = (mult + 1, sizes)
        root_sum = max(root_sum, float(abs(roots.sum())))
    patterns = {s: (m, dict(sizes)) for s, (m, sizes) in patterns.items()}
    numeric = []
    for orbit in orbit_decompose(N, r):
        if orbit.seed == (i,) * r or (orbit.states and set(orbit.states) <= set(members)):
            numeric.extend(v for v, _ in block_spectrum(p, orbit, theta))
    dev = match_spectra(predicted, numeric).max_deviation
    total = sum(m for m, _ in patterns.values())
    return MultipletCensus(r, i, doublet, patterns, total, root_sum, dev)
