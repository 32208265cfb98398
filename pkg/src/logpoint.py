"""
Chart-level model of fs log points.

A log point is represented by its sharp fs chart monoid and a morphism of
log points by a local map of charts. Strictness at chart level means the
chart map is an isomorphism of monoids.
"""

import logging
from dataclasses import dataclass

from .errors import DiagramShapeError, InvariantViolation, PreconditionError
from .intlin import IntegerMatrix, cokernel_invariants, rational_rank
from .monoid import (
    LatticeMap,
    fiber_product_saturated,
    is_injective_map,
    is_local,
    is_saturated,
    is_sharp,
    new_monoid,
    same_generator_set,
)
from .pushout import PushoutData, pushout_group_invariants

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChartPoint:
    monoid: object

    def __post_init__(self):
        if not is_sharp(self.monoid):
            raise PreconditionError("chart monoid is not sharp")
        if not is_saturated(self.monoid):
            raise PreconditionError("chart monoid is not saturated")


@dataclass(frozen=True)
class ChartMorphism:
    map: LatticeMap

    def __post_init__(self):
        ChartPoint(self.map.source)
        ChartPoint(self.map.target)
        if not is_local(self.map):
            raise PreconditionError("chart map is not local")

    @property
    def source(self):
        return self.map.source

    @property
    def target(self):
        return self.map.target


def _image_generates_target(phi):
    image = new_monoid(phi.target.ambient_dim, [phi.map.apply(g) for g in phi.source.generators])
    return all(image.member(g) is not None for g in phi.target.generators)


def is_strict_chart(phi):
    """phi^gp is a lattice isomorphism and the image of the source generators generates the target."""
    G = phi.map.gp_matrix
    if G.rows != G.cols or not cokernel_invariants(G).is_trivial:
        return False
    return _image_generates_target(phi)


def diagonal_rank_condition(phi):
    """coker(phi^gp) ⊗ Q = 0, with the self-push-out rank identity checked on the way."""
    G = phi.map.gp_matrix
    invariants = cokernel_invariants(G)
    self_rank = pushout_group_invariants(PushoutData(phi.map, phi.map)).free_rank
    expected = 2 * len(phi.target.gp_basis) - rational_rank(G)
    if self_rank != expected:
        raise InvariantViolation(f"self push-out rank {self_rank} differs from {expected}")
    return invariants.free_rank == 0


def kummer_strict_condition(phi):
    """phi^gp is surjective: its cokernel is free of rank zero and torsion-free."""
    holds = cokernel_invariants(phi.map.gp_matrix).is_trivial
    if holds and is_injective_map(phi.map) and _image_generates_target(phi) and not is_strict_chart(phi):
        raise InvariantViolation("surjective injective chart map with generating image is not strict")
    return holds


def _projection(W, M, offset):
    rows = [[1 if j == offset + i else 0 for j in range(W.ambient_dim)] for i in range(M.ambient_dim)]
    return LatticeMap(W, M, IntegerMatrix.from_rows(rows, cols=W.ambient_dim))


def pushout_chart(s, t):
    """Chart M_X ×_{M_Z} M_Y of the fiber product when s or t is strict."""
    if not same_generator_set(s.target, t.target):
        raise DiagramShapeError("chart maps must share their target")
    s_strict, t_strict = is_strict_chart(s), is_strict_chart(t)
    if not (s_strict or t_strict):
        raise PreconditionError("neither chart map is strict")
    W = fiber_product_saturated(s.map, t.map)
    dx = s.source.ambient_dim
    if s_strict and not is_strict_chart(ChartMorphism(_projection(W, t.source, dx))):
        raise InvariantViolation("projection onto M_Y is not an isomorphism")
    if t_strict and not is_strict_chart(ChartMorphism(_projection(W, s.source, 0))):
        raise InvariantViolation("projection onto M_X is not an isomorphism")
    logger.debug("push-out chart has %d generators in Z^%d", len(W.generators), W.ambient_dim)
    return W
