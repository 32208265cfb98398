import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import DiagramShapeError, PreconditionError
from src.logpoint import (
    ChartMorphism,
    ChartPoint,
    diagonal_rank_condition,
    is_strict_chart,
    kummer_strict_condition,
    pushout_chart,
)
from src.monoid import identity_map, is_injective_map, is_saturated, is_sharp, new_map, new_monoid
from src.sampling import make_rng, random_fs_monoid, random_local_map


@pytest.fixture
def id_chart(nat2):
    return ChartMorphism(identity_map(nat2))


@pytest.fixture
def double_chart(nat):
    return ChartMorphism(new_map(nat, nat, [[2]]))


def test_chart_point_hypotheses():
    with pytest.raises(PreconditionError) as info:
        ChartPoint(new_monoid(1, [[2], [3]]))
    assert info.value.hypothesis == "chart monoid is not saturated"
    with pytest.raises(PreconditionError) as info:
        ChartPoint(new_monoid(1, [[1], [-1]]))
    assert info.value.hypothesis == "chart monoid is not sharp"


def test_chart_morphism_must_be_local(nat):
    with pytest.raises(PreconditionError):
        ChartMorphism(new_map(nat, nat, [[0]]))


def test_is_strict_chart(id_chart, double_chart, diagonal_map):
    assert is_strict_chart(id_chart)
    assert not is_strict_chart(double_chart)
    assert not is_strict_chart(ChartMorphism(diagonal_map))


def test_diagonal_rank_condition(id_chart, diagonal_map, sum_map):
    assert diagonal_rank_condition(id_chart)
    assert not diagonal_rank_condition(ChartMorphism(diagonal_map))
    assert diagonal_rank_condition(ChartMorphism(sum_map))


def test_kummer_strict_condition(id_chart, double_chart, diagonal_map):
    assert kummer_strict_condition(id_chart)
    assert not kummer_strict_condition(double_chart)
    assert not kummer_strict_condition(ChartMorphism(diagonal_map))


def test_pushout_chart_graph_of_sum(id_nat, sum_map):
    W = pushout_chart(ChartMorphism(id_nat), ChartMorphism(sum_map))
    assert set(W.generators) == {(1, 1, 0), (1, 0, 1)}
    assert is_sharp(W) and is_saturated(W)


def test_pushout_chart_of_identities(id_nat):
    W = pushout_chart(ChartMorphism(id_nat), ChartMorphism(id_nat))
    assert W.generators == ((1, 1),)


def test_pushout_chart_needs_a_strict_map(sum_map):
    with pytest.raises(PreconditionError) as info:
        pushout_chart(ChartMorphism(sum_map), ChartMorphism(sum_map))
    assert info.value.hypothesis == "neither chart map is strict"


def test_pushout_chart_needs_common_target(id_nat, id_chart):
    with pytest.raises(DiagramShapeError):
        pushout_chart(ChartMorphism(id_nat), id_chart)


@pytest.mark.slow
@settings(deadline=None, max_examples=30)
@given(st.integers(0, 10_000))
def test_strictness_criteria_on_random_maps(seed):
    rng = make_rng(seed)
    phi = ChartMorphism(random_local_map(rng, random_fs_monoid(rng, max_dim=2), max_dim=2))
    strict = is_strict_chart(phi)
    kummer = kummer_strict_condition(phi)
    if strict:
        assert diagonal_rank_condition(phi) and kummer
    generated = all(
        new_monoid(phi.target.ambient_dim, [phi.map.apply(g) for g in phi.source.generators]).member(g) is not None
        for g in phi.target.generators
    )
    assert (kummer and is_injective_map(phi.map) and generated) == strict
