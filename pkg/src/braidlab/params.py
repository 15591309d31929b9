"""Free parameter sets ``m_ab^(eps)`` of the nested-projector braid matrices.

Only an independent block is stored; every full-index lookup ``m(a, b, eps)``
with ``a, b in 1..N`` is resolved through the bar symmetry
``m_ab = m_{bar a, b} = m_{a, bar b} = m_{bar a, bar b}``.

Independent keys are ``(i, j, eps)`` tuples with ``eps in {"+", "-"}``:

* even ``N = 2n``: ``i, j in 1..n``;
* odd ``N = 2n - 1``: ``i, j in 1..n-1`` plus ``(n, i)`` and ``(i, n)``.

For odd N the fixed index ``n`` pairs with itself only through the
``P_nn`` projector, whose exponent is ``center_shift`` (0 by default).
"""

from __future__ import annotations

import json
import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType

import numpy as np

from .basis import fold, half
from .errors import ConstraintViolation, DomainError, UnsupportedOperation

EPS = ("+", "-")

Key = tuple[int, int, str]


def _norm_eps(eps) -> str:
    if eps in ("+", 1, +1.0):
        return "+"
    if eps in ("-", -1, -1.0):
        return "-"
    raise DomainError(f"eps must be '+' or '-', got {eps!r}")


def _check_N(N) -> int:
    if not isinstance(N, (int, np.integer)) or isinstance(N, bool):
        raise DomainError(f"N must be an integer, got {N!r}")
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    return int(N)


def independent_keys(N: int) -> list[Key]:
    """Independent index set for ``N`` in canonical (sorted) order."""
    N = _check_N(N)
    n = half(N)
    if N % 2 == 0:
        pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    else:
        pairs = [(i, j) for i in range(1, n) for j in range(1, n)]
        pairs += [(n, i) for i in range(1, n)] + [(i, n) for i in range(1, n)]
    return sorted((i, j, e) for i, j in pairs for e in EPS)


def count_free_parameters(N: int) -> int:
    """Number of independent scalars: ``N**2/2`` (even), ``(N+3)(N-1)/2`` (odd)."""
    N = _check_N(N)
    if N % 2 == 0:
        return N * N // 2
    return (N + 3) * (N - 1) // 2


@dataclass(frozen=True, eq=False)
class ParamSet:
    """Validated, immutable set of free parameters for one ``N``.

    Use :func:`new_param_set` to construct; the constructor itself performs
    the same validation.
    """

    N: int
    entries: Mapping[Key, complex]
    center_shift: complex = 0j
    _frozen: Mapping[Key, complex] = field(init=False, repr=False)

    def __post_init__(self):
        N = _check_N(self.N)
        expected = set(independent_keys(N))
        normalized = {}
        for key, value in self.entries.items():
            try:
                i, j, e = key
                k = (int(i), int(j), _norm_eps(e))
            except (TypeError, ValueError, DomainError):
                raise ConstraintViolation(f"malformed parameter key {key!r}") from None
            if k not in expected:
                raise ConstraintViolation(f"m_{k[0]}{k[1]}^({k[2]}) is not an independent parameter for N={N}")
            if k in normalized:
                raise ConstraintViolation(f"duplicate entry for m_{k[0]}{k[1]}^({k[2]})")
            normalized[k] = complex(value)
        missing = sorted(expected - normalized.keys())
        if missing:
            i, j, e = missing[0]
            raise ConstraintViolation(f"missing m_{i}{j}^({e}) (and {len(missing) - 1} more) for N={N}")
        if N % 2 == 0 and complex(self.center_shift) != 0:
            raise ConstraintViolation("center_shift is only defined for odd N")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "center_shift", complex(self.center_shift))
        frozen = MappingProxyType(dict(sorted(normalized.items())))
        object.__setattr__(self, "entries", frozen)
        object.__setattr__(self, "_frozen", frozen)

    @property
    def n(self) -> int:
        return half(self.N)

    @property
    def parity(self) -> str:
        return "even" if self.N % 2 == 0 else "odd"

    def key(self, a: int, b: int, eps) -> Key:
        """Basis key carrying the value of ``m_ab^(eps)``.

        For odd N the ``(n, n)`` pair maps to ``(n, n, "+")``, the slot of
        ``center_shift`` in :attr:`basis`.
        """
        N, n = self.N, self.n
        if not (1 <= a <= N and 1 <= b <= N):
            raise DomainError(f"indices must lie in 1..{N}, got ({a}, {b})")
        i, j = fold(a, N), fold(b, N)
        e = _norm_eps(eps)
        if N % 2 == 1 and i == n and j == n:
            return (n, n, "+")
        return (i, j, e)

    def m(self, a: int, b: int, eps) -> complex:
        """Full-index lookup of ``m_ab^(eps)``."""
        k = self.key(a, b, eps)
        if self.N % 2 == 1 and k[0] == self.n and k[1] == self.n:
            return self.center_shift
        return self._frozen[k]

    @cached_property
    def basis(self) -> tuple[Key, ...]:
        """Coordinate basis for symbolic exponents: independent keys, then the center slot (odd N)."""
        keys = independent_keys(self.N)
        if self.N % 2 == 1:
            keys.append((self.n, self.n, "+"))
        return tuple(keys)

    @cached_property
    def basis_index(self) -> Mapping[Key, int]:
        return MappingProxyType({k: i for i, k in enumerate(self.basis)})

    @cached_property
    def values(self) -> np.ndarray:
        """Parameter values aligned with :attr:`basis`."""
        vals = [self._frozen[k] for k in independent_keys(self.N)]
        if self.N % 2 == 1:
            vals.append(self.center_shift)
        out = np.array(vals, dtype=complex)
        out.setflags(write=False)
        return out

    @cached_property
    def table(self) -> np.ndarray:
        """Array ``M[s, a-1, b-1] = m_ab^(eps)`` with ``s = 0`` for ``+`` and 1 for ``-``."""
        N = self.N
        out = np.empty((2, N, N), dtype=complex)
        for s, e in enumerate(EPS):
            for a in range(1, N + 1):
                for b in range(1, N + 1):
                    out[s, a - 1, b - 1] = self.m(a, b, e)
        out.setflags(write=False)
        return out

    def max_exponent(self, theta) -> float:
        """``max |exp(m theta)|`` over all parameters, including the center slot."""
        return float(np.max(np.abs(np.exp(self.values * complex(theta)))))

    def __eq__(self, other):
        if not isinstance(other, ParamSet):
            return NotImplemented
        return (self.N, dict(self._frozen), self.center_shift) == (other.N, dict(other._frozen), other.center_shift)

    def __hash__(self):
        return hash((self.N, tuple(self._frozen.items()), self.center_shift))


def new_param_set(N: int, entries: Mapping, center_shift: complex = 0j) -> ParamSet:
    """Build a validated :class:`ParamSet` from the independent entries."""
    return ParamSet(N, dict(entries), center_shift)


def random_param_set(
    N: int,
    seed: int,
    low: float = -1.0,
    high: float = 1.0,
    imaginary: bool = False,
    boltzmann: bool = False,
) -> ParamSet:
    """Deterministic random parameter set.

    Values are drawn uniformly from ``[low, high)``. With ``imaginary`` every
    entry becomes ``1j * value`` (unitary regime). With ``boltzmann`` each
    pair is ordered so that ``m^(+) > m^(-)`` (on the imaginary part when
    ``imaginary`` is also set).
    """
    N = _check_N(N)
    if not high > low:
        raise DomainError(f"empty range [{low}, {high})")
    rng = np.random.default_rng(seed)
    entries = {}
    pairs = sorted({(i, j) for i, j, _ in independent_keys(N)})
    for i, j in pairs:
        plus, minus = rng.uniform(low, high, size=2)
        if boltzmann:
            if plus == minus:
                minus = math.nextafter(plus, -math.inf)
            plus, minus = max(plus, minus), min(plus, minus)
        scale = 1j if imaginary else 1.0
        entries[(i, j, "+")] = scale * plus
        entries[(i, j, "-")] = scale * minus
    return ParamSet(N, entries)


def shift_params(p: ParamSet, m: complex) -> ParamSet:
    """Multiply the odd-N braid matrix by ``exp(m theta)``.

    Adds ``m`` to every stored entry and to ``center_shift``.
    """
    if p.N % 2 == 0:
        raise UnsupportedOperation("shift_params is only defined for odd N")
    m = complex(m)
    entries = {k: v + m for k, v in p.entries.items()}
    return ParamSet(p.N, entries, p.center_shift + m)


# -- JSON ---------------------------------------------------------------------

_TOP_KEYS = {"N", "entries", "center_shift"}
_ENTRY_KEYS = {"i", "j", "eps", "re", "im"}


def _cplx(obj, where: str) -> complex:
    if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
        raise ConstraintViolation(f"{where}: expected {{'re', 'im'}} object")
    return complex(float(obj["re"]), float(obj["im"]))


def params_to_dict(p: ParamSet) -> dict:
    return {
        "N": p.N,
        "entries": [
            {"i": i, "j": j, "eps": e, "re": v.real, "im": v.imag}
            for (i, j, e), v in p.entries.items()
        ],
        "center_shift": {"re": p.center_shift.real, "im": p.center_shift.imag},
    }


def params_from_dict(doc: Mapping) -> ParamSet:
    """Parse the JSON document form; unknown keys are rejected."""
    if not isinstance(doc, Mapping):
        raise ConstraintViolation("parameter document must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConstraintViolation(f"unknown keys {sorted(unknown)}")
    if "N" not in doc or "entries" not in doc:
        raise ConstraintViolation("parameter document needs 'N' and 'entries'")
    entries = {}
    for pos, item in enumerate(doc["entries"]):
        if not isinstance(item, Mapping):
            raise ConstraintViolation(f"entries[{pos}] must be an object")
        if set(item) != _ENTRY_KEYS:
            extra = set(item) - _ENTRY_KEYS
            raise ConstraintViolation(f"entries[{pos}]: bad keys {sorted(extra or _ENTRY_KEYS - set(item))}")
        key = (item["i"], item["j"], item["eps"])
        if key in entries:
            raise ConstraintViolation(f"duplicate entry for m_{key[0]}{key[1]}^({key[2]})")
        entries[key] = complex(float(item["re"]), float(item["im"]))
    shift = _cplx(doc["center_shift"], "center_shift") if "center_shift" in doc else 0j
    return ParamSet(doc["N"], entries, shift)


def dump_params(p: ParamSet) -> str:
    return json.dumps(params_to_dict(p), indent=2)


def load_params(path) -> ParamSet:
    with open(path) as fh:
        return params_from_dict(json.load(fh))
