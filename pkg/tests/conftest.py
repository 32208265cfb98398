from pathlib import Path

import pytest

from src.config import clear_settings_cache
from src.monoid import identity_map, new_map, new_monoid
from src.pushout import PushoutData

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    for name in ("MONOIDKIT_CONFIG", "MONOIDKIT_ORACLE_BOUND", "MONOIDKIT_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    clear_settings_cache()
    yield
    clear_settings_cache()


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def nat():
    return new_monoid(1, [[1]])


@pytest.fixture
def nat2():
    return new_monoid(2, [[1, 0], [0, 1]])


@pytest.fixture
def half_cone():
    """{(x, y) : y >= 0, x + y >= 0}"""
    return new_monoid(2, [[1, 0], [0, 1], [-1, 1]])


@pytest.fixture
def sum_map(nat2, nat):
    return new_map(nat2, nat, [[1, 1]])


@pytest.fixture
def twice_plus_map(nat2, nat):
    return new_map(nat2, nat, [[2, 1]])


@pytest.fixture
def diagonal_map(nat, nat2):
    return new_map(nat, nat2, [[1], [1]])


@pytest.fixture
def id_nat(nat):
    return identity_map(nat)


@pytest.fixture
def worked_pushout(sum_map, nat2, half_cone):
    return PushoutData(sum_map, new_map(nat2, half_cone, [[1, 0], [0, 1]]))


def same_monoid(A, B):
    """Mutual membership of generators."""
    return (
        A.ambient_dim == B.ambient_dim
        and all(B.member(g) is not None for g in A.generators)
        and all(A.member(g) is not None for g in B.generators)
    )
