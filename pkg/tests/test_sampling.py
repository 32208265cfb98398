import pytest

from src.monoid import is_injective_map, is_local, is_saturated, is_sharp
from src.pushout import PushoutData, quasi_integrality
from src.sampling import (
    fits_oracle_bound,
    free_monoid,
    make_rng,
    random_extension_pair,
    random_fs_monoid,
    random_integer_matrix,
    random_local_map,
    random_outside_element,
    random_pushout,
    random_sharp_monoid,
)


@pytest.mark.parametrize("seed", [0, 1, 7, 2024])
def test_draws_are_reproducible(seed):
    assert random_sharp_monoid(make_rng(seed)) == random_sharp_monoid(make_rng(seed))
    assert random_pushout(make_rng(seed)) == random_pushout(make_rng(seed))


@pytest.mark.parametrize("seed", range(5))
def test_random_monoids_have_requested_shape(seed):
    rng = make_rng(seed)
    M = random_sharp_monoid(rng)
    assert is_sharp(M) and M.generators and M.ambient_dim <= 3
    F = random_fs_monoid(rng, max_dim=4, max_generators=6)
    assert is_sharp(F) and is_saturated(F) and F.ambient_dim <= 4


@pytest.mark.parametrize("seed", range(5))
def test_outside_element(seed):
    rng = make_rng(seed)
    M = random_fs_monoid(rng)
    n = random_outside_element(rng, M)
    if n is not None:
        assert M.member(n) is None


@pytest.mark.parametrize("seed", range(5))
def test_random_local_maps(seed):
    rng = make_rng(seed)
    phi = random_local_map(rng, random_fs_monoid(rng))
    assert is_local(phi)
    assert is_sharp(phi.target) and is_saturated(phi.target)


def test_nonnegative_maps_keep_entries_small():
    rng = make_rng(3)
    phi = random_local_map(rng, free_monoid(3), radius=1, nonnegative=True)
    assert all(0 <= x <= 1 for x in phi.matrix.entries)


@pytest.mark.parametrize("seed", range(3))
def test_extension_pairs_are_not_injective(seed):
    i1, i2 = random_extension_pair(make_rng(seed))
    assert i1.source == i2.source
    assert i1.source.generators in (free_monoid(2).generators, free_monoid(3).generators)
    assert not is_injective_map(i1) and not is_injective_map(i2)
    assert is_local(i1) and is_local(i2)


def test_non_injective_needs_rank_two(nat):
    with pytest.raises(ValueError):
        random_local_map(make_rng(0), nat, non_injective=True)


def test_free_monoid():
    assert free_monoid(2).generators == ((1, 0), (0, 1))


def test_fits_oracle_bound(worked_pushout, id_nat):
    assert fits_oracle_bound(worked_pushout, 2)
    assert not fits_oracle_bound(worked_pushout, 1)
    assert fits_oracle_bound(PushoutData(id_nat, id_nat), 0)


@pytest.mark.parametrize("seed", range(4))
def test_pushouts_within_a_bound(seed):
    data = random_pushout(make_rng(seed), oracle_bound=5)
    assert fits_oracle_bound(data, 5, quasi_integrality(data))


def test_random_integer_matrix_shape():
    rng = make_rng(0)
    for _ in range(20):
        A = random_integer_matrix(rng)
        assert 1 <= A.rows <= 6 and 1 <= A.cols <= 6
        assert all(-9 <= x <= 9 for x in A.entries)
