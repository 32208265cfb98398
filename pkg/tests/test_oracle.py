import logging

import pytest

from src.monoid import new_map, new_monoid
from src.oracle import bounded_pushout_oracle
from src.pushout import PushoutData, validate_pushout


@pytest.fixture
def free_product(nat):
    zero = new_monoid(1, [])
    to_nat = new_map(zero, nat, [[0]])
    return PushoutData(to_nat, to_nat)


def test_free_product_has_no_merges(free_product):
    approx = bounded_pushout_oracle(free_product, 3)
    assert len(approx.ball) == 10
    assert len(approx.partition()) == 10
    assert not approx.exists_absorption()


def test_codiagonal_classes_follow_total_degree(id_nat):
    approx = bounded_pushout_oracle(PushoutData(id_nat, id_nat), 4)
    partition = approx.partition()
    assert len(partition) == 5
    for members in partition:
        assert len({m[0] + l[0] for m, l in members}) == 1
    assert not approx.exists_absorption()


def test_worked_example_absorbs(worked_pushout):
    approx = bounded_pushout_oracle(worked_pushout, 3)
    assert approx.exists_absorption()
    assert approx.classes_equal(((1,), (-1, 1)), ((1,), (0, 0)))
    chain = approx.relation_chain(((1,), (-1, 1)), ((1,), (0, 0)))
    assert chain[0] == ((1,), (-1, 1)) and chain[-1] == ((1,), (0, 0))
    p, q = approx.find_absorption()
    assert approx.classes_equal(p, (tuple(a + b for a, b in zip(p[0], q[0])),
                                    tuple(a + b for a, b in zip(p[1], q[1]))))
    assert q not in approx.zero_class()


def test_class_queries_outside_ball(worked_pushout):
    approx = bounded_pushout_oracle(worked_pushout, 1)
    far = ((5,), (0, 0))
    assert approx.class_of(far) is None
    assert not approx.classes_equal(far, far)
    assert approx.relation_chain(far, approx.zero) is None


def test_sharp_local_diagram_keeps_zero_class_trivial(worked_pushout):
    assert validate_pushout(worked_pushout).all_hold
    approx = bounded_pushout_oracle(worked_pushout, 4)
    assert approx.zero_class() == frozenset({approx.zero})
    assert approx.bounded_unit_pairs() == []
    assert approx.nonlocal_generators(worked_pushout) == []


def test_nonlocal_generator_falls_into_zero_class(nat, id_nat):
    zero_map = new_map(nat, nat, [[0]])
    data = PushoutData(zero_map, id_nat)
    approx = bounded_pushout_oracle(data, 2)
    assert ((0,), (1,)) in approx.nonlocal_generators(data)


def test_classes_are_closed_under_translation(worked_pushout):
    approx = bounded_pushout_oracle(worked_pushout, 4)
    assert approx.congruence_violations() == []


def test_oracle_is_deterministic(worked_pushout):
    first = bounded_pushout_oracle(worked_pushout, 3)
    second = bounded_pushout_oracle(worked_pushout, 3)
    assert first.partition() == second.partition()
    assert first.find_absorption() == second.find_absorption()


def test_large_bound_warns(free_product, caplog, monkeypatch):
    monkeypatch.setenv("MONOIDKIT_CONFIG", "/nonexistent/defaults.yaml")
    with caplog.at_level(logging.WARNING, logger="src.oracle"):
        bounded_pushout_oracle(free_product, 9)
    assert "exceeds the configured maximum" in caplog.text
