import pytest

from src.monoid import inclusion_map, new_monoid
from src.pushout import PushoutData
from src.sweep import (
    FAILED,
    PASSED,
    PROPERTIES,
    UNKNOWN,
    check_criterion_against_oracle,
    cone_points,
    run_sweep,
    saturation_multiplier,
)


def test_criterion_agrees_with_oracle_on_worked_example(worked_pushout):
    assert check_criterion_against_oracle(worked_pushout) == PASSED


def test_criterion_agrees_with_oracle_on_codiagonal(id_nat):
    assert check_criterion_against_oracle(PushoutData(id_nat, id_nat)) == PASSED


def test_criterion_reports_undecided_diagrams(nat2, sum_map):
    L = new_monoid(2, [[1, 0], [0, 1], [-9, 9]])
    data = PushoutData(sum_map, inclusion_map(nat2, L))
    assert check_criterion_against_oracle(data) == UNKNOWN


def test_cone_points_of_the_quadrant(nat2):
    assert set(cone_points(nat2, 2)) == {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)}


def test_cone_points_stay_in_the_group():
    M = new_monoid(2, [[1, 0], [1, 2]])
    assert set(cone_points(M, 2)) == {(0, 0), (1, 0), (1, 2)}


def test_saturation_multiplier(nat2):
    assert saturation_multiplier(new_monoid(1, [[2], [3]])) == 6
    assert saturation_multiplier(nat2) == 1
    assert saturation_multiplier(new_monoid(2, [[1, 0], [1, 2]])) == 1


def test_sweep_summary_shape():
    summary = run_sweep(seed=11, count=1, properties=["self_pushout_rank", "adjoin_negative_sharpness"])
    assert list(summary.columns) == ["property", "instances", PASSED, FAILED, UNKNOWN]
    assert list(summary["property"]) == ["self_pushout_rank", "adjoin_negative_sharpness"]


def test_selected_properties_reuse_their_streams():
    alone = run_sweep(seed=3, count=2, properties=["self_pushout_rank"])
    full = run_sweep(seed=3, count=2, properties=["adjoin_negative_sharpness", "self_pushout_rank"])
    assert alone.iloc[0].tolist() == full.iloc[1].tolist()


@pytest.mark.slow
def test_sweep_is_deterministic():
    assert run_sweep(seed=5, count=1).equals(run_sweep(seed=5, count=1))


@pytest.mark.slow
@pytest.mark.parametrize(
    "name, count",
    [
        ("adjoin_negative_sharpness", 100),
        ("nonqi_extension", 50),
        ("criterion_oracle_agreement", 100),
        ("self_pushout_rank", 100),
        ("saturation_definition", 100),
        ("hilbert_basis_oracle", 100),
    ],
)
def test_property_holds_on_every_instance(name, count):
    assert name in PROPERTIES
    row = run_sweep(seed=20240611, count=count, properties=[name]).iloc[0]
    assert row["instances"] == count
    assert row[FAILED] == 0
    assert row[UNKNOWN] == 0
    assert row[PASSED] == count
