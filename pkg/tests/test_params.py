import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidlab.errors import ConstraintViolation, DomainError, UnsupportedOperation
from braidlab.params import (
    ParamSet,
    count_free_parameters,
    dump_params,
    independent_keys,
    load_params,
    new_param_set,
    params_from_dict,
    params_to_dict,
    random_param_set,
    shift_params,
)


def test_n2_minimal_set():
    p = new_param_set(2, {(1, 1, "+"): 1.0, (1, 1, "-"): 0.3})
    assert len(p.entries) == 2
    assert p.m(2, 2, "+") == 1.0
    assert p.m(1, 2, "-") == 0.3


def test_missing_entry_rejected():
    with pytest.raises(ConstraintViolation):
        new_param_set(2, {(1, 1, "+"): 1.0})


def test_unknown_key_rejected():
    with pytest.raises(ConstraintViolation):
        new_param_set(2, {(1, 1, "+"): 1.0, (1, 1, "-"): 0.3, (2, 1, "+"): 0.0})


def test_even_center_shift_rejected():
    with pytest.raises(ConstraintViolation):
        new_param_set(2, {(1, 1, "+"): 1.0, (1, 1, "-"): 0.3}, center_shift=0.1)


def test_bad_N():
    with pytest.raises(DomainError):
        count_free_parameters(1)


def test_n3_lookup_through_bar():
    entries = {(1, 1, "+"): 0.1, (1, 1, "-"): 0.2, (2, 1, "+"): 0.3, (2, 1, "-"): 0.4,
               (1, 2, "+"): 0.5, (1, 2, "-"): 0.6}
    p = new_param_set(3, entries)
    assert p.m(1, 3, "+") == p.m(1, 1, "+") == 0.1
    assert p.m(3, 3, "-") == 0.2
    assert p.m(2, 3, "+") == 0.3
    assert p.m(3, 2, "-") == 0.6
    assert p.m(2, 2, "+") == p.m(2, 2, "-") == 0


@pytest.mark.parametrize("N, expected", [(2, 2), (3, 6), (4, 8), (5, 16), (6, 18), (7, 30)])
def test_count_free_parameters(N, expected):
    assert count_free_parameters(N) == expected
    assert len(independent_keys(N)) == expected


def test_random_is_deterministic():
    assert random_param_set(2, 7) == random_param_set(2, 7)
    assert random_param_set(2, 7) != random_param_set(2, 8)


def test_random_flags():
    p = random_param_set(4, 1, imaginary=True)
    assert all(v.real == 0 and v.imag != 0 for v in p.entries.values())
    q = random_param_set(3, 2, boltzmann=True)
    for i, j, e in q.entries:
        if e == "+":
            assert q.entries[(i, j, "+")].real > q.entries[(i, j, "-")].real


def test_shift():
    p = random_param_set(3, 4)
    assert shift_params(p, 0) == p
    q = shift_params(p, 0.5)
    assert q.center_shift == 0.5
    for k, v in p.entries.items():
        assert q.entries[k] == pytest.approx(v + 0.5)
    with pytest.raises(UnsupportedOperation):
        shift_params(random_param_set(2, 0), 0.5)


def test_values_align_with_basis():
    p = shift_params(random_param_set(5, 3), 0.25)
    for k, v in zip(p.basis, p.values):
        assert p.m(*k) == v
    assert p.table[0, 2, 2] == 0.25


def test_json_roundtrip(tmp_path):
    p = shift_params(random_param_set(5, 9, imaginary=True), 0.1j)
    path = tmp_path / "p.json"
    path.write_text(dump_params(p))
    assert load_params(path) == p
    assert params_from_dict(json.loads(dump_params(p))) == p


def test_json_rejects_unknown_keys():
    doc = params_to_dict(random_param_set(2, 0))
    doc["extra"] = 1
    with pytest.raises(ConstraintViolation):
        params_from_dict(doc)
    doc = params_to_dict(random_param_set(2, 0))
    doc["entries"][0]["note"] = "x"
    with pytest.raises(ConstraintViolation):
        params_from_dict(doc)


@settings(max_examples=40, deadline=None)
@given(N=st.integers(2, 8), seed=st.integers(0, 2**31 - 1))
def test_random_params_roundtrip(N, seed):
    p = random_param_set(N, seed)
    assert isinstance(p, ParamSet)
    assert params_from_dict(json.loads(dump_params(p))) == p
    assert hash(params_from_dict(params_to_dict(p))) == hash(p)
