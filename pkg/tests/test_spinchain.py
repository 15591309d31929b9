from collections import Counter

import numpy as np
import pytest

from braidlab.braid import rhat
from braidlab.errors import UnsupportedOperation
from braidlab.params import new_param_set, random_param_set
from braidlab.spectrum import closed_form_spectrum, match_spectra
from braidlab.spinchain import (
    affine_fit,
    commutator,
    conserved_quantity,
    hamiltonian,
    integrability_residual,
    rhat_derivative,
    two_site_operator,
)
from braidlab.transfer import transfer_matrix

from conftest import maxabs


def test_rhat_derivative_n2():
    p = new_param_set(2, {(1, 1, "+"): 0.9, (1, 1, "-"): -0.3})
    D = rhat_derivative(p, 1).real
    hp, hm = 0.5 * (0.9 - 0.3), 0.5 * (0.9 + 0.3)
    expected = np.array([
        [hp, 0, 0, hm],
        [0, hp, hm, 0],
        [0, hm, hp, 0],
        [hm, 0, 0, hp],
    ])
    np.testing.assert_allclose(D, expected, atol=1e-15)


def test_rhat_derivative_center():
    p = new_param_set(3, dict(random_param_set(3, 0).entries), center_shift=0.35)
    assert rhat_derivative(p, 1)[4, 4] == pytest.approx(0.35)
    assert rhat_derivative(p, 2)[4, 4] == pytest.approx(0.35**2)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_rhat_derivative_finite_difference(N):
    p = random_param_set(N, 3)
    h = 1e-4
    first = (rhat(p, h) - rhat(p, -h)) / (2 * h)
    second = (rhat(p, h) - 2 * rhat(p, 0) + rhat(p, -h)) / h**2
    assert maxabs(rhat_derivative(p, 1) - first) <= 1e-6
    assert maxabs(rhat_derivative(p, 2) - second) <= 1e-6


def test_two_site_adjacent_is_kron():
    op = np.kron(np.diag([1.0, 2.0, 3.0]), np.eye(3)) + np.kron(np.eye(3), np.ones((3, 3)))
    emb = two_site_operator(op, 3, 3, 2, 3).toarray()
    np.testing.assert_allclose(emb, np.kron(np.eye(3), op))
    with pytest.raises(ValueError):
        two_site_operator(op, 3, 3, 2, 2)


def test_hamiltonian_n2_r2(p2):
    H = hamiltonian(p2, 2, "closed").matrix.toarray()
    np.testing.assert_allclose(H, 2 * rhat_derivative(p2, 1), atol=1e-15)


def test_open_closed_differ_by_wrap(p3):
    closed = hamiltonian(p3, 3, "closed").matrix
    open_ = hamiltonian(p3, 3, "open").matrix
    wrap = two_site_operator(rhat_derivative(p3, 1), 3, 3, 1, 3)
    assert maxabs(closed - open_ - wrap) <= 1e-15


@pytest.mark.parametrize("N, r", [(2, 3), (3, 2), (3, 3), (4, 3), (5, 2)])
def test_hamiltonian_is_first_charge(N, r):
    p = random_param_set(N, 7)
    H = hamiltonian(p, r).matrix
    H1 = conserved_quantity(p, r, 1).matrix
    assert maxabs(H - H1) <= 1e-8
    alpha, beta, resid = affine_fit(H1, H)
    assert alpha == pytest.approx(1.0) and abs(beta) <= 1e-10 and resid <= 1e-10


@pytest.mark.parametrize("N, r", [(2, 3), (2, 4), (3, 2), (3, 3)])
def test_integrability(N, r):
    p = random_param_set(N, 8)
    assert integrability_residual(p, r, 0.5) <= 1e-8
    assert integrability_residual(p, r, 0.0) <= 1e-10
    H1 = conserved_quantity(p, r, 1).matrix
    H2 = conserved_quantity(p, r, 2).matrix
    assert commutator(H1, H2) <= 1e-8
    assert commutator(H1, transfer_matrix(p, r, 0.7).matrix) <= 1e-8


def test_hamiltonian_spectrum_is_log_derivative():
    p = random_param_set(2, 9)
    H = hamiltonian(p, 3).matrix.toarray()
    rates = [rec.rate() for rec in closed_form_spectrum(p, 3) for _ in range(rec.multiplicity)]
    assert match_spectra(np.linalg.eigvals(H), rates, 1e-7).matched


def test_higher_charges_unsupported(p2):
    with pytest.raises(UnsupportedOperation):
        conserved_quantity(p2, 3, 3)


def test_bad_boundary(p2):
    with pytest.raises(ValueError):
        hamiltonian(p2, 3, "twisted")


def test_chain_json(p2):
    doc = hamiltonian(p2, 3, "open").to_dict()
    assert doc["sites"] == 3 and doc["boundary"] == "open" and doc["dim"] == 8
    assert Counter(len(t) for t in doc["triplets"]) == Counter({4: len(doc["triplets"])})
