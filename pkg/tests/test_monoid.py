import itertools

import pytest
from conftest import same_monoid
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.errors import DiagramShapeError, DimensionError, MorphismError, PreconditionError
from src.intlin import coordinates, neg, scale
from src.monoid import (
    adjoin_negative_sat,
    dual_facets,
    elements_by_length,
    fiber_product_saturated,
    gp_basis,
    gp_coordinates,
    identity_map,
    is_fs,
    is_injective_map,
    is_local,
    is_saturated,
    is_sharp,
    member,
    new_map,
    new_monoid,
    positive_grading,
    saturation,
    unit_generators,
)
from src.sweep import cone_points, saturation_multiplier


@pytest.fixture
def two_three():
    return new_monoid(1, [[2], [3]])


@pytest.fixture
def line():
    return new_monoid(1, [[1], [-1]])


# ---------------- Construction ----------------

def test_new_monoid_normalizes_generators():
    M = new_monoid(2, [[1, 0], [0, 1], [1, 0], [0, 0]])
    assert M.generators == ((1, 0), (0, 1))
    assert new_monoid(2, []).generators == ()


def test_new_monoid_rejects_wrong_length():
    with pytest.raises(DimensionError):
        new_monoid(2, [[1, 0, 0]])
    with pytest.raises(DimensionError):
        new_monoid(-1, [])


# ---------------- Membership ----------------

def test_member_certificate(two_three):
    cert = member(two_three, (7,))
    assert cert is not None
    assert cert.evaluate(two_three) == (7,)
    assert all(m >= 1 for _, m in cert.coefficients)
    assert member(two_three, (1,)) is None
    assert member(two_three, (-2,)) is None


def test_member_of_zero_is_empty(two_three, nat2):
    assert member(two_three, (0,)).coefficients == ()
    assert member(nat2, (0, 0)).length == 0


def test_member_uses_units(line):
    cert = member(line, (-3,))
    assert cert.evaluate(line) == (-3,)


def test_member_dimension_check(nat2):
    with pytest.raises(DimensionError):
        nat2.member((1,))


# ---------------- Groups and units ----------------

def test_gp_basis(two_three):
    assert gp_basis(two_three) == [(1,)]
    assert gp_basis(new_monoid(2, [[2, 0], [0, 2]])) == [(2, 0), (0, 2)]
    assert gp_basis(new_monoid(2, [])) == []
    assert gp_coordinates(new_monoid(1, [[2]]), (3,)) is None


def test_unit_generators(nat2, line):
    assert unit_generators(nat2) == []
    assert unit_generators(line) == [(1,)]
    assert unit_generators(new_monoid(2, [[1, 0], [-1, 0], [0, 1]])) == [(1, 0)]


def test_is_sharp(nat2, line):
    assert is_sharp(nat2)
    assert not is_sharp(line)
    assert is_sharp(new_monoid(3, []))


def test_dual_facets(nat2, half_cone):
    assert set(dual_facets(nat2)) == {(1, 0), (0, 1)}
    assert set(dual_facets(new_monoid(2, [[1, 0], [1, 2]]))) == {(0, 1), (2, -1)}
    assert set(dual_facets(half_cone)) == {(0, 1), (1, 1)}


def test_positive_grading(nat2, line, two_three):
    assert positive_grading(nat2) == (1, 1)
    assert positive_grading(line) is None
    assert positive_grading(two_three) == (1,)
    assert positive_grading(new_monoid(2, [])) == (0, 0)


# ---------------- Saturation ----------------

def test_saturation_examples(two_three, nat2):
    assert saturation(two_three).generators == ((1,),)
    assert saturation(new_monoid(1, [[2]])).generators == ((2,),)
    assert set(saturation(nat2).generators) == {(1, 0), (0, 1)}
    # (1, 1) is outside the group generated by (1, 0) and (1, 2)
    assert set(saturation(new_monoid(2, [[1, 0], [1, 2]])).generators) == {(1, 0), (1, 2)}


def test_saturation_keeps_units():
    M = new_monoid(2, [[1, 0], [-1, 0], [0, 2], [1, 2]])
    S = saturation(M)
    assert unit_generators(S) == [(1, 0)]
    assert S.member((5, 2)) is not None
    assert S.member((0, 1)) is None


def test_is_saturated(two_three, nat2):
    assert not is_saturated(two_three)
    assert is_saturated(new_monoid(1, [[2]]))
    assert is_saturated(nat2)
    assert is_fs(nat2) and not is_fs(two_three)


def test_adjoin_negative_sat(nat2, half_cone, nat):
    L = adjoin_negative_sat(nat2, (1, -1))
    assert same_monoid(L, half_cone)
    assert set(L.generators) == {(1, 0), (-1, 1)}
    assert is_sharp(L)
    assert adjoin_negative_sat(nat, (-1,)).generators == ((1,),)


@pytest.mark.parametrize("M, n, hypothesis", [
    (new_monoid(2, [[1, 0], [0, 1]]), (1, 1), "n lies in M"),
    (new_monoid(1, [[1], [-1]]), (1,), "M is not sharp"),
    (new_monoid(1, [[2], [3]]), (-1,), "M is not saturated"),
    (new_monoid(2, [[1, 0]]), (0, 1), "n is not in M^gp"),
])
def test_adjoin_negative_sat_preconditions(M, n, hypothesis):
    with pytest.raises(PreconditionError) as info:
        adjoin_negative_sat(M, n)
    assert info.value.hypothesis == hypothesis


def test_elements_by_length(two_three):
    lengths = elements_by_length(two_three, 2)
    assert lengths == {(0,): 0, (2,): 1, (3,): 1, (4,): 2, (5,): 2, (6,): 2}


# ---------------- Maps ----------------

def test_new_map_checks(nat, nat2):
    with pytest.raises(DimensionError):
        new_map(nat2, nat, [[1, 1, 1]])
    with pytest.raises(MorphismError):
        new_map(nat2, nat, [[1, -1]])


def test_is_local(nat, nat2, line):
    assert is_local(identity_map(nat2))
    assert is_local(new_map(nat, nat2, [[1], [1]]))
    assert not is_local(new_map(nat, line, [[1]]))
    assert not is_local(new_map(nat, nat, [[0]]))


def test_is_injective_map(sum_map, diagonal_map, nat):
    assert is_injective_map(diagonal_map)
    assert not is_injective_map(sum_map)
    assert not is_injective_map(new_map(nat, nat, [[0]]))


@st.composite
def maps_out_of_free_monoids(draw):
    rank = draw(st.integers(1, 3))
    dim = draw(st.integers(1, 3))
    rows = draw(st.lists(st.lists(st.integers(-1, 1), min_size=rank, max_size=rank), min_size=dim, max_size=dim))
    N = new_monoid(rank, [[1 if i == j else 0 for j in range(rank)] for i in range(rank)])
    images = [[row[j] for row in rows] for j in range(rank)]
    return new_map(N, new_monoid(dim, images), rows)


@settings(deadline=None, max_examples=100)
@given(maps_out_of_free_monoids())
def test_injectivity_matches_collision_search(phi):
    N = phi.source
    grading = positive_grading(N)
    elements = [
        x for x in itertools.product(range(7), repeat=N.ambient_dim)
        if sum(w * c for w, c in zip(grading, x)) <= 6
    ]
    images = {phi.apply(x) for x in elements}
    assert is_injective_map(phi) == (len(images) == len(elements))


def test_gp_matrix_uses_gp_coordinates(nat):
    evens = new_monoid(1, [[2]])
    phi = new_map(evens, nat, [[1]])
    assert phi.gp_matrix.to_rows() == [[2]]


# ---------------- Fiber products ----------------

def test_fiber_product_of_identities(id_nat):
    W = fiber_product_saturated(id_nat, id_nat)
    assert W.generators == ((1, 1),)


def test_fiber_product_graph_of_sum(sum_map, id_nat):
    W = fiber_product_saturated(sum_map, id_nat)
    assert set(W.generators) == {(1, 0, 1), (0, 1, 1)}
    assert is_sharp(W) and is_saturated(W)


def test_fiber_product_shape_and_hypotheses(sum_map, diagonal_map, nat):
    with pytest.raises(DiagramShapeError):
        fiber_product_saturated(sum_map, diagonal_map)
    two_three = new_monoid(1, [[2], [3]])
    with pytest.raises(PreconditionError):
        fiber_product_saturated(new_map(two_three, nat, [[1]]), identity_map(nat))


# ---------------- Properties ----------------

@st.composite
def small_monoids(draw, max_dim=2, max_generators=4):
    dim = draw(st.integers(1, max_dim))
    vector = st.tuples(*[st.integers(-3, 3)] * dim)
    return new_monoid(dim, draw(st.lists(vector, min_size=0, max_size=max_generators)))


@settings(deadline=None, max_examples=40)
@given(small_monoids(), st.data())
def test_members_of_generated_elements(M, data):
    count = len(M.generators)
    coefficients = data.draw(st.lists(st.integers(0, 2), min_size=count, max_size=count))
    x = tuple(sum(c * g[i] for c, g in zip(coefficients, M.generators)) for i in range(M.ambient_dim))
    cert = M.member(x)
    assert cert is not None
    assert cert.evaluate(M) == x


@settings(deadline=None, max_examples=40)
@given(small_monoids())
def test_unit_face_property(M):
    units = unit_generators(M)
    for g in M.generators:
        in_unit_lattice = coordinates(units, g) is not None
        assert (M.member(neg(g)) is not None) == in_unit_lattice


@pytest.mark.slow
@settings(deadline=None, max_examples=25)
@given(small_monoids())
def test_saturation_matches_bounded_multiples(M):
    S = saturation(M)
    assert is_saturated(S)
    assert all(S.member(g) is not None for g in M.generators)
    # in two dimensions with entries in [-3, 3] a multiple of at most 18 lands in M
    for c in itertools.product((-1, 0, 1), repeat=len(M.gp_basis)):
        x = tuple(sum(c[j] * M.gp_basis[j][i] for j in range(len(c))) for i in range(M.ambient_dim))
        some_multiple = any(M.member(tuple(a * v for v in x)) is not None for a in range(1, 19))
        assert (S.member(x) is not None) == some_multiple


@pytest.mark.slow
@settings(deadline=None, max_examples=50)
@given(small_monoids(max_dim=3, max_generators=5))
def test_saturation_by_grading(M):
    assume(M.generators and is_sharp(M))
    S = saturation(M)
    multiplier = saturation_multiplier(M)
    for x in cone_points(M, 12):
        assert S.member(x) is not None
        found = any(M.member(scale(a, x)) is not None for a in range(1, 13))
        assert found or M.member(scale(multiplier, x)) is not None
        if any(x):
            assert S.member(neg(x)) is None
