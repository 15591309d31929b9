from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidlab.params import new_param_set, random_param_set, shift_params
from braidlab.spectrum import (
    block_spectrum,
    closed_form_spectrum,
    eigenstate_drift,
    leakage,
    match_spectra,
    multiplet_census,
    oracle_spectrum,
    orbit_decompose,
    sort_spectrum,
    spectrum_values,
)
from braidlab.transfer import trace_closed_form


def _roots(records):
    out = Counter()
    for rec in records:
        out[(rec.period, rec.root_index)] += rec.multiplicity
    return dict(out)


def _values(records, theta):
    return sorted((round(v.real, 12), round(v.imag, 12)) for v in spectrum_values(records, theta))


def test_orbits_n2_r2():
    orbits = orbit_decompose(2, 2)
    assert [(o.states, o.parity) for o in orbits] == [
        (((1, 1), (2, 2)), "even"),
        (((1, 2), (2, 1)), "odd"),
    ]


def test_orbit_of_111():
    orbit = next(o for o in orbit_decompose(2, 3) if o.seed == (1, 1, 1))
    assert set(orbit.states) == {(1, 1, 1), (2, 2, 1), (1, 2, 2), (2, 1, 2)}


@pytest.mark.parametrize("N, r", [(2, 4), (3, 3), (4, 2), (5, 2)])
def test_orbits_partition(N, r):
    orbits = orbit_decompose(N, r)
    states = [s for o in orbits for s in o.states]
    assert len(states) == len(set(states)) == N**r


@pytest.mark.parametrize("N, r", [(2, 3), (3, 3), (4, 2)])
def test_orbits_are_closed(N, r):
    p = random_param_set(N, 2)
    assert max(leakage(p, o, 0.7 + 0.2j) for o in orbit_decompose(N, r)) == 0


def test_n2_r2_records():
    a, b = 0.3, -0.2
    p = new_param_set(2, {(1, 1, "+"): a, (1, 1, "-"): b})
    got = _values(closed_form_spectrum(p, 2), 1.0)
    want = sorted((round(z.real, 12), round(z.imag, 12)) for z in
                  [np.exp(2 * a), np.exp(2 * a), np.exp(2 * b), -np.exp(2 * b)])
    assert got == want


def test_n2_r3_identical_class():
    p = random_param_set(2, 5)
    mp, mm = p.m(1, 1, "+"), p.m(1, 1, "-")
    recs = [r for r in closed_form_spectrum(p, 3)]
    plus = [r for r in recs if r.rate() == pytest.approx(3 * mp)]
    mixed = [r for r in recs if r.rate() == pytest.approx(mp + 2 * mm)]
    assert sum(r.multiplicity for r in plus) == 2
    assert {r.period for r in plus} == {1}
    assert sum(r.multiplicity for r in mixed) == 6
    assert _roots(mixed) == {(3, 0): 2, (3, 1): 2, (3, 2): 2}


def test_n2_r4_identical_class():
    p = random_param_set(2, 6)
    mp, mm = p.m(1, 1, "+"), p.m(1, 1, "-")
    recs = closed_form_spectrum(p, 4)
    quads = [r for r in recs if r.rate() == pytest.approx(2 * (mp + mm))]
    assert _roots(quads) == {(4, k): 3 for k in range(4)}
    minus = [r for r in recs if r.rate() == pytest.approx(4 * mm)]
    assert _roots(minus) == {(2, 0): 1, (2, 1): 1}


@pytest.mark.parametrize("N, r", [(2, 2), (2, 5), (3, 2), (3, 4), (4, 3), (5, 2), (6, 2), (2, 6)])
def test_closed_form_matches_oracle(N, r):
    p = random_param_set(N, 10 + r)
    if N % 2:
        p = shift_params(p, 0.15)
    recs = closed_form_spectrum(p, r)
    assert sum(rec.multiplicity for rec in recs) == N**r
    for theta in (0.5, -0.3 + 0.4j):
        match = match_spectra(spectrum_values(recs, theta), oracle_spectrum(p, r, theta), 1e-8)
        assert match.matched, match


def test_oracle_r1():
    p = random_param_set(2, 0)
    e = np.exp(p.m(1, 1, "+") * 0.4)
    np.testing.assert_allclose(oracle_spectrum(p, 1, 0.4), [e, e])


def test_oracle_trace(p3):
    assert oracle_spectrum(p3, 3, 0.6).sum() == pytest.approx(trace_closed_form(p3, 3, 0.6), rel=1e-9)


def test_block_spectrum_odd_subspace():
    p = random_param_set(2, 1)
    odd = next(o for o in orbit_decompose(2, 2) if o.parity == "odd")
    pairs = block_spectrum(p, odd, 0.5)
    ratios = sorted(round((v[0] / v[1]).real, 12) for _, v in pairs)
    assert ratios == [-1.0, 1.0]


def test_block_spectrum_at_zero_roots_of_unity():
    p = random_param_set(3, 1)
    for o in orbit_decompose(3, 3):
        for val, _ in block_spectrum(p, o, 0.0):
            assert abs(val) == pytest.approx(1.0)
            assert val**6 == pytest.approx(1.0)


def test_eigenstates_theta_independent():
    p = random_param_set(2, 3)
    for o in orbit_decompose(2, 3):
        assert eigenstate_drift(p, o, 0.3, 1.1) <= 1e-8


def test_match_spectra_detects_mismatch():
    a = np.array([1.0, 2.0, 3.0])
    assert match_spectra(a, a[::-1]).matched
    assert not match_spectra(a, a + 1e-6).matched
    assert not match_spectra(a, a[:2]).matched


def test_sort_spectrum_order():
    vals = sort_spectrum([1 + 1j, 1 - 1j, -2])
    assert list(vals) == [-2, 1 - 1j, 1 + 1j]


@pytest.mark.parametrize("r, total", [(3, 2), (5, 6), (7, 18)])
def test_fermat_census(r, total):
    c = multiplet_census(random_param_set(2, 4), r)
    assert c.fermat_total == total == (2**r - 2) // r
    assert c.trace_doublet == 2
    assert c.max_root_sum <= 1e-10
    assert c.oracle_deviation <= 1e-8


def test_census_r5_split():
    c = multiplet_census(random_param_set(4, 4), 5)
    mults = {s: m for s, (m, _) in c.patterns.items()}
    assert mults == {2: 4, 4: 2}
    assert sum(mults.values()) == 6


def test_census_r4():
    c = multiplet_census(random_param_set(2, 4), 4)
    sizes = {s: sizes for s, (_, sizes) in c.patterns.items()}
    assert sizes == {2: {4: 3}, 4: {2: 1}}


@settings(max_examples=15, deadline=None)
@given(N=st.integers(2, 4), r=st.integers(1, 4), seed=st.integers(0, 10**6),
       re=st.floats(-1, 1), im=st.floats(-1, 1))
def test_closed_form_property(N, r, seed, re, im):
    p = random_param_set(N, seed)
    theta = complex(re, im)
    recs = closed_form_spectrum(p, r)
    assert match_spectra(spectrum_values(recs, theta), oracle_spectrum(p, r, theta), 1e-7).matched
