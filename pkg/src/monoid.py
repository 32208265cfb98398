"""
Affine monoids: finitely generated submonoids of Z^d.

Every AffineMonoid is integral and fine by construction. Saturation is
taken relative to the monoid's own group M^gp, so <2> inside Z counts as
saturated. Dual descriptions, gradings and membership certificates are
computed lazily and cached on the instance.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .cones import cone_facets, cone_lattice_hilbert_basis, extreme_rays, grading_of
from .cones import hilbert_basis  # noqa: F401
from .errors import (
    DiagramShapeError,
    DimensionError,
    InvariantViolation,
    MorphismError,
    PreconditionError,
)
from .intlin import (
    IntegerMatrix,
    add,
    coordinates,
    dot,
    is_zero,
    kernel_basis,
    lattice_basis,
    neg,
    orthogonal_complement,
    scale,
    smith_normal_form,
    solve_linear,
    sub,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MembershipCertificate:
    """Non-negative combination: (generator index, multiplicity >= 1), sorted by index."""

    coefficients: tuple = ()

    def evaluate(self, monoid):
        total = (0,) * monoid.ambient_dim
        for index, multiplicity in self.coefficients:
            total = add(total, scale(multiplicity, monoid.generators[index]))
        return total

    @property
    def length(self):
        return sum(m for _, m in self.coefficients)


@dataclass(frozen=True)
class AffineMonoid:
    ambient_dim: int
    generators: tuple = ()

    def __post_init__(self):
        if self.ambient_dim < 0:
            raise DimensionError(f"negative ambient dimension {self.ambient_dim}")
        seen, normalized = set(), []
        for g in self.generators:
            g = tuple(int(x) for x in g)
            if len(g) != self.ambient_dim:
                raise DimensionError(f"generator {g} does not live in Z^{self.ambient_dim}")
            if is_zero(g) or g in seen:
                continue
            seen.add(g)
            normalized.append(g)
        object.__setattr__(self, "generators", tuple(normalized))

    # ---------------- Cached structure ----------------

    @cached_property
    def gp_basis(self):
        return tuple(lattice_basis(self.generators, self.ambient_dim))

    @cached_property
    def cone(self):
        return cone_facets(self.generators, self.ambient_dim)

    @cached_property
    def facet_normals(self):
        return self.cone.facets

    @cached_property
    def _facet_sum(self):
        return grading_of(self.cone.facets, self.ambient_dim)

    @cached_property
    def unit_indices(self):
        """Generators on which every facet normal vanishes: they span the unit face."""
        return tuple(i for i, g in enumerate(self.generators)
                     if all(dot(lam, g) == 0 for lam in self.cone.facets))

    @cached_property
    def unit_basis(self):
        return tuple(lattice_basis([self.generators[i] for i in self.unit_indices], self.ambient_dim))

    @cached_property
    def grading(self):
        """Strictly positive functional on nonzero elements; None unless sharp."""
        return self._facet_sum if not self.unit_indices else None

    @cached_property
    def _unit_relation(self):
        """Strictly positive c with sum c_i u_i = 0 over the unit generators."""
        units = [self.generators[i] for i in self.unit_indices]
        if not units:
            return ()
        kernel = kernel_basis(IntegerMatrix.from_columns(units, rows=self.ambient_dim))
        rows = [tuple(kappa[i] for kappa in kernel) for i in range(len(units))]
        rays, _ = extreme_rays(rows, len(kernel))
        relation = [0] * len(units)
        for y in rays:
            for i, row in enumerate(rows):
                relation[i] += dot(row, y)
        if any(c <= 0 for c in relation):
            raise InvariantViolation("unit generators admit no strictly positive relation")
        return tuple(relation)

    @cached_property
    def _member_cache(self):
        return {}

    # ---------------- Membership ----------------

    def _unit_part(self, rest):
        """Certificate entries writing rest over the unit generators, or None."""
        if is_zero(rest):
            return []
        if not self.unit_indices:
            return None
        units = [self.generators[i] for i in self.unit_indices]
        z = solve_linear(IntegerMatrix.from_columns(units, rows=self.ambient_dim), rest)
        if z is None:
            return None
        c = self._unit_relation
        t = max([0] + [-(zi // ci) for zi, ci in zip(z, c)])
        return [(self.unit_indices[i], zi + t * ci) for i, (zi, ci) in enumerate(zip(z, c)) if zi + t * ci]

    def member(self, x):
        """Certificate that x is a non-negative combination of the generators, or None."""
        x = tuple(x)
        if len(x) != self.ambient_dim:
            raise DimensionError(f"vector {x} does not live in Z^{self.ambient_dim}")
        cache = self._member_cache
        if x in cache:
            return cache[x]
        if is_zero(x):
            result = MembershipCertificate(())
        elif not self.cone.contains(x) or coordinates(self.gp_basis, x) is None:
            result = None
        else:
            result = self._search(x)
        cache[x] = result
        return result

    def _search(self, x):
        grading = self._facet_sum
        units = set(self.unit_indices)
        movable = [i for i in range(len(self.generators)) if i not in units]
        weights = {i: dot(grading, self.generators[i]) for i in movable}
        failed = set()
        word = []

        def dfs(position, rest, budget):
            if budget == 0:
                tail = self._unit_part(rest)
                if tail is None:
                    return None
                return word + tail
            key = (position, rest)
            if key in failed:
                return None
            for k in range(position, len(movable)):
                i = movable[k]
                if weights[i] > budget:
                    continue
                nxt = sub(rest, self.generators[i])
                if not self.cone.contains(nxt):
                    continue
                word.append((i, 1))
                found = dfs(k, nxt, budget - weights[i])
                word.pop()
                if found is not None:
                    return found
            failed.add(key)
            return None

        found = dfs(0, x, dot(grading, x))
        logger.debug("membership search for %s: %d dead states", x, len(failed))
        if found is None:
            return None
        totals = {}
        for i, m in found:
            totals[i] = totals.get(i, 0) + m
        return MembershipCertificate(tuple(sorted(totals.items())))


def new_monoid(ambient_dim, generators=()):
    return AffineMonoid(ambient_dim, tuple(tuple(g) for g in generators))


def same_generator_set(A, B):
    """Same lattice and the same generators, listed in any order."""
    return A.ambient_dim == B.ambient_dim and set(A.generators) == set(B.generators)


def member(M, x):
    return M.member(x)


def gp_basis(M):
    return list(M.gp_basis)


def gp_coordinates(M, x):
    """Coordinates of x in gp_basis(M), or None if x is outside M^gp."""
    return coordinates(M.gp_basis, tuple(x))


def unit_generators(M):
    return list(M.unit_basis)


def is_sharp(M):
    return not M.unit_indices


def dual_facets(M):
    """Facet normals plus both signs of each equation cutting out the span; {0} gets the ± standard normals."""
    return M.cone.inequalities()


def positive_grading(M):
    return M.grading


def is_fine(M):
    return True


def _from_gp_coordinates(M, y):
    return tuple(sum(y[j] * M.gp_basis[j][i] for j in range(len(M.gp_basis))) for i in range(M.ambient_dim))


def saturation(M):
    """
    cone(M) ∩ M^gp with its Hilbert basis as generators.
    The linear part of the cone is split off through an SNF completion of
    its lattice, the pointed quotient gets a Hilbert basis, and both are
    lifted back.
    """
    k = len(M.gp_basis)
    if k == 0:
        return M
    coords = [gp_coordinates(M, g) for g in M.generators]
    normals = [tuple(dot(lam, b) for b in M.gp_basis) for lam in M.cone.facets]
    linear = orthogonal_complement(normals, k) if normals else [
        tuple(1 if i == j else 0 for j in range(k)) for i in range(k)
    ]
    t = len(linear)
    if t:
        completion = smith_normal_form(IntegerMatrix.from_columns(linear, rows=k))
        U, U_inverse = completion.U, completion.U_inverse
    else:
        U = U_inverse = IntegerMatrix.identity(k)
    projected = [U_inverse.apply(c)[t:] for c in coords]
    quotient_basis = [tuple(1 if i == j else 0 for j in range(k - t)) for i in range(k - t)]
    pointed = hilbert_basis(projected, quotient_basis) if k > t else []
    lifted = [U.apply((0,) * t + tuple(h)) for h in pointed]
    for j in range(t):
        column = U.column(j)
        lifted.extend([column, neg(column)])
    result = new_monoid(M.ambient_dim, [_from_gp_coordinates(M, y) for y in lifted])
    logger.debug("saturation: %d generators -> %d", len(M.generators), len(result.generators))
    return result


def is_saturated(M):
    return all(M.member(g) is not None for g in saturation(M).generators)


def is_fs(M):
    return is_saturated(M)


def adjoin_negative_sat(M, n):
    """<M, -n>^sat for sharp saturated M and n in M^gp outside M; the result is sharp."""
    n = tuple(n)
    if len(n) != M.ambient_dim:
        raise DimensionError(f"vector {n} does not live in Z^{M.ambient_dim}")
    if not is_sharp(M):
        raise PreconditionError("M is not sharp")
    if not is_saturated(M):
        raise PreconditionError("M is not saturated")
    if gp_coordinates(M, n) is None:
        raise PreconditionError("n is not in M^gp", detail=f"n = {list(n)}")
    if M.member(n) is not None:
        raise PreconditionError("n lies in M", detail=f"n = {list(n)}")
    result = saturation(new_monoid(M.ambient_dim, list(M.generators) + [neg(n)]))
    if not is_sharp(result):
        raise InvariantViolation(f"<M, -n>^sat is not sharp for n = {list(n)}")
    return result


def elements_by_length(M, bound):
    """Every element reachable by a generator word of length <= bound, mapped to its minimal length."""
    lengths = {(0,) * M.ambient_dim: 0}
    frontier = deque([(0,) * M.ambient_dim])
    while frontier:
        x = frontier.popleft()
        if lengths[x] == bound:
            continue
        for g in M.generators:
            y = add(x, g)
            if y not in lengths:
                lengths[y] = lengths[x] + 1
                frontier.append(y)
    return lengths


# ---------------- Maps ----------------

@dataclass(frozen=True)
class LatticeMap:
    """Monoid homomorphism source -> target given by a target.ambient_dim x source.ambient_dim matrix."""

    source: AffineMonoid
    target: AffineMonoid
    matrix: IntegerMatrix

    def __post_init__(self):
        matrix = self.matrix
        if not isinstance(matrix, IntegerMatrix):
            matrix = IntegerMatrix.from_rows(matrix, cols=self.source.ambient_dim)
            object.__setattr__(self, "matrix", matrix)
        if matrix.shape != (self.target.ambient_dim, self.source.ambient_dim):
            raise DimensionError(
                f"matrix of shape {matrix.shape} for a map Z^{self.source.ambient_dim} -> Z^{self.target.ambient_dim}"
            )
        for g in self.source.generators:
            if self.target.member(matrix.apply(g)) is None:
                raise MorphismError(f"generator {list(g)} maps to {list(matrix.apply(g))}, outside the target")

    def apply(self, x):
        return self.matrix.apply(tuple(x))

    @cached_property
    def gp_matrix(self):
        """f^gp in gp-basis coordinates (target rank x source rank)."""
        columns = []
        for b in self.source.gp_basis:
            c = gp_coordinates(self.target, self.apply(b))
            if c is None:
                raise InvariantViolation("image of M^gp escapes the target group")
            columns.append(c)
        return IntegerMatrix.from_columns(columns, rows=len(self.target.gp_basis))


def new_map(source, target, rows):
    return LatticeMap(source, target, IntegerMatrix.from_rows(rows, cols=source.ambient_dim))


def identity_map(M):
    return LatticeMap(M, M, IntegerMatrix.identity(M.ambient_dim))


def inclusion_map(N, L):
    if N.ambient_dim != L.ambient_dim:
        raise DimensionError("inclusion between monoids in different lattices")
    return LatticeMap(N, L, IntegerMatrix.identity(N.ambient_dim))


def _is_target_unit(phi, y):
    return all(dot(lam, y) == 0 for lam in phi.target.cone.facets)


def is_local(phi):
    """Units map to units and nothing else does."""
    units = set(phi.source.unit_indices)
    for i, g in enumerate(phi.source.generators):
        if _is_target_unit(phi, phi.apply(g)) != (i in units):
            return False
    return True


def is_injective_map(phi):
    B = IntegerMatrix.from_columns(phi.source.gp_basis, rows=phi.source.ambient_dim)
    return not kernel_basis(phi.matrix @ B)


def fiber_product_saturated(phi, psi):
    """{(x, y) in M_X x M_Y : phi(x) = psi(y)} inside Z^(dX + dY), presented by its Hilbert basis."""
    if not same_generator_set(phi.target, psi.target):
        raise DiagramShapeError("fiber product needs maps into the same monoid")
    for name, M in (("M_X", phi.source), ("M_Y", psi.source)):
        if not is_sharp(M):
            raise PreconditionError(f"{name} is not sharp")
        if not is_saturated(M):
            raise PreconditionError(f"{name} is not saturated")
    X, Y = phi.source, psi.source
    dx, dy = X.ambient_dim, Y.ambient_dim
    Bx = IntegerMatrix.from_columns(X.gp_basis, rows=dx)
    By = IntegerMatrix.from_columns(Y.gp_basis, rows=dy)
    left, right = phi.matrix @ Bx, psi.matrix @ By
    joined = IntegerMatrix.from_rows(
        [list(left.row(i)) + [-v for v in right.row(i)] for i in range(left.rows)],
        cols=left.cols + right.cols,
    )
    kx = len(X.gp_basis)
    lattice = [Bx.apply(v[:kx]) + By.apply(v[kx:]) for v in kernel_basis(joined)]
    inequalities = [tuple(a) + (0,) * dy for a in dual_facets(X)]
    inequalities += [(0,) * dx + tuple(a) for a in dual_facets(Y)]
    generators = cone_lattice_hilbert_basis(inequalities, lattice, dx + dy) if lattice else []
    result = new_monoid(dx + dy, generators)
    if not is_saturated(result):
        raise InvariantViolation("fiber product of saturated monoids came out unsaturated")
    return result
