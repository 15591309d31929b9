import numpy as np
import pytest

from braidlab.params import random_param_set


def maxabs(A) -> float:
    A = A.toarray() if hasattr(A, "toarray") else np.asarray(A)
    return float(np.max(np.abs(A))) if A.size else 0.0


@pytest.fixture
def p2():
    return random_param_set(2, 11)


@pytest.fixture
def p3():
    return random_param_set(3, 12)


@pytest.fixture
def p4():
    return random_param_set(4, 13)
