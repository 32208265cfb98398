"""
Seeded random instances for property sweeps and tests.

All draws go through a numpy Generator so a seed reproduces the whole
instance stream. Sizes stay at desk scale: ambient dimension up to 4,
a handful of generators, entries in [-3, 3]. Push-out draws can be
restricted to diagrams whose absorption, if any, shows up inside a given
oracle ball.
"""

import logging

import numpy as np

from .intlin import IntegerMatrix, is_zero
from .monoid import (
    LatticeMap,
    adjoin_negative_sat,
    inclusion_map,
    is_sharp,
    new_monoid,
    saturation,
)
from .pushout import (
    NOT_QUASI_INTEGRAL,
    QUASI_INTEGRAL,
    PushoutData,
    absorption_certificate,
    kernel_witnesses,
    quasi_integrality,
)

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 200


def make_rng(seed):
    return np.random.default_rng(seed)


def _vector(rng, dim, radius, nonnegative=False):
    low = 0 if nonnegative else -radius
    return tuple(int(x) for x in rng.integers(low, radius + 1, size=dim))


def random_integer_matrix(rng, max_rows=6, max_cols=6, bound=9):
    rows = int(rng.integers(1, max_rows + 1))
    cols = int(rng.integers(1, max_cols + 1))
    entries = rng.integers(-bound, bound + 1, size=rows * cols)
    return IntegerMatrix(rows, cols, tuple(int(x) for x in entries))


def free_monoid(rank):
    """N^rank with its standard basis."""
    return new_monoid(rank, [tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)])


def random_sharp_monoid(rng, max_dim=3, max_generators=5, radius=3):
    """Sharp nonzero monoid with ambient_dim <= max_dim."""
    for _ in range(MAX_ATTEMPTS):
        dim = int(rng.integers(1, max_dim + 1))
        count = int(rng.integers(1, max_generators + 1))
        M = new_monoid(dim, [_vector(rng, dim, radius) for _ in range(count)])
        if M.generators and is_sharp(M):
            return M
    raise RuntimeError("could not draw a sharp monoid")


def random_fs_monoid(rng, max_dim=3, max_generators=4, radius=3):
    return saturation(random_sharp_monoid(rng, max_dim, max_generators, radius))


def random_outside_element(rng, M, radius=2):
    """n in M^gp outside M, or None if the draws keep landing in M."""
    for _ in range(MAX_ATTEMPTS):
        c = _vector(rng, len(M.gp_basis), radius)
        n = tuple(sum(c[j] * M.gp_basis[j][i] for j in range(len(c))) for i in range(M.ambient_dim))
        if not is_zero(n) and M.member(n) is None:
            return n
    return None


def random_local_map(rng, N, non_injective=False, max_dim=3, radius=2, extra_generators=1, nonnegative=False):
    """
    Local map N -> M into a sharp fs monoid M built around the image of N.
    non_injective forces the target rank below rank(N^gp); nonnegative keeps
    matrix entries and extra generators in [0, radius].
    """
    rank = len(N.gp_basis)
    for _ in range(MAX_ATTEMPTS):
        if non_injective:
            if rank < 2:
                raise ValueError("a non-injective local map needs rank(N^gp) >= 2")
            dim = int(rng.integers(1, rank))
        else:
            dim = int(rng.integers(1, max_dim + 1))
        rows = [_vector(rng, N.ambient_dim, radius, nonnegative) for _ in range(dim)]
        A = IntegerMatrix.from_rows(rows, cols=N.ambient_dim)
        images = [A.apply(g) for g in N.generators]
        if any(is_zero(v) for v in images):
            continue
        extras = [_vector(rng, dim, radius, nonnegative) for _ in range(int(rng.integers(0, extra_generators + 1)))]
        M = saturation(new_monoid(dim, images + extras))
        if not is_sharp(M):
            continue
        return LatticeMap(N, M, A)
    raise RuntimeError("could not draw a local map")


def _small_non_injective_map(rng, N):
    # N is free here; entries in {0, 1, 2} for rank 2 and {0, 1} for rank 3
    radius = 2 if len(N.gp_basis) == 2 else 1
    return random_local_map(rng, N, non_injective=True, radius=radius, extra_generators=0, nonnegative=True)


def fits_oracle_bound(data, bound, report=None):
    """
    True when the verdict is quasi_integral, or not_quasi_integral with an
    absorption certificate whose pairs all lie in the oracle ball of that bound.
    """
    report = report or quasi_integrality(data)
    if report.verdict == QUASI_INTEGRAL:
        return True
    if report.verdict != NOT_QUASI_INTEGRAL:
        return False
    return absorption_certificate(data, report.witness).bound <= bound


def _draw_pushout(rng):
    branch = rng.random()
    if branch < 1 / 3:
        # a kernel vector of f, negated into L, always absorbs
        N = free_monoid(int(rng.integers(2, 4)))
        f = _small_non_injective_map(rng, N)
        n, _ = kernel_witnesses(f, f)
        return PushoutData(f, inclusion_map(N, adjoin_negative_sat(N, n)))
    if rng.random() < 0.5:
        N = free_monoid(int(rng.integers(1, 4)))
    else:
        N = random_fs_monoid(rng, max_dim=3, max_generators=3, radius=1)
    f = random_local_map(rng, N, radius=1)
    if branch < 2 / 3:
        n = random_outside_element(rng, N, radius=1)
        if n is not None:
            return PushoutData(f, inclusion_map(N, adjoin_negative_sat(N, n)))
    return PushoutData(f, random_local_map(rng, N, radius=1))


def random_pushout(rng, oracle_bound=None):
    """
    Diagram M <- N -> L of sharp fs monoids and local maps.
    With oracle_bound, draws are repeated until fits_oracle_bound holds.
    """
    for attempt in range(MAX_ATTEMPTS):
        data = _draw_pushout(rng)
        if oracle_bound is None or fits_oracle_bound(data, oracle_bound):
            return data
        logger.debug("push-out draw %d needs a ball larger than %d", attempt, oracle_bound)
    raise RuntimeError(f"could not draw a push-out within oracle bound {oracle_bound}")


def random_extension_pair(rng):
    """Two non-injective local maps out of N = N^2 or N^3 with small non-negative matrices."""
    N = free_monoid(int(rng.integers(2, 4)))
    return _small_non_injective_map(rng, N), _small_non_injective_map(rng, N)
