"""
Rational polyhedral cones over integer lattices.

Facets and extreme rays come from a double-description pass (Fourier-Motzkin
elimination in its dual form). Hilbert bases are built from an ordered
pulling triangulation, SNF enumeration of each fundamental parallelepiped,
and a final reduction to irreducible elements.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .errors import DimensionError, NonSalientConeError
from .intlin import (
    IntegerMatrix,
    coordinates,
    dot,
    integral_multiple,
    is_zero,
    lattice_basis,
    neg,
    orthogonal_complement,
    primitive,
    rational_rank,
    rational_solve,
    smith_normal_form,
    sub,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConeDescription:
    """
    Dual description of cone(generators) in Z^dim.

    facets: primitive integral normals lying in the span of the cone.
    equations: integer basis of the orthogonal complement of the span.
    basis: HNF basis of the integer span of the generators.
    """

    facets: tuple
    equations: tuple
    basis: tuple

    def inequalities(self):
        """Facets plus both signs of every equation: the cone is exactly where all are >= 0."""
        out = list(self.facets)
        for e in self.equations:
            out.extend([e, neg(e)])
        return out

    def contains(self, x):
        return all(dot(a, x) >= 0 for a in self.facets) and all(dot(e, x) == 0 for e in self.equations)


def extreme_rays(inequalities, dim):
    """
    Extreme rays and lineality basis of {y in Q^dim : a·y >= 0 for every a}.
    Rays are primitive integer vectors.
    """
    lineality = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    rays = []  # (vector, frozenset of tight inequality indices)
    for idx, a in enumerate(inequalities):
        a = tuple(a)
        if len(a) != dim:
            raise DimensionError(f"inequality {a} does not act on Q^{dim}")
        values = [dot(a, l) for l in lineality]
        k = next((i for i, v in enumerate(values) if v), None)
        if k is not None:
            l, s = lineality.pop(k), values.pop(k)
            if s < 0:
                l, s = neg(l), -s
            lineality = [primitive(sub(tuple(s * x for x in m), tuple(v * x for x in l))) if v else m
                         for m, v in zip(lineality, values)]
            moved = []
            for r, tight in rays:
                v = dot(a, r)
                if v:
                    r = primitive(sub(tuple(s * x for x in r), tuple(v * x for x in l)))
                moved.append((r, tight | {idx}))
            moved.append((l, frozenset(range(idx))))
            rays = moved
            continue
        positive, negative, kept = [], [], []
        for r, tight in rays:
            v = dot(a, r)
            if v > 0:
                positive.append((r, tight, v))
                kept.append((r, tight))
            elif v < 0:
                negative.append((r, tight, v))
            else:
                kept.append((r, tight | {idx}))
        threshold = dim - len(lineality) - 2
        for p, tp, vp in positive:
            for n, tn, vn in negative:
                common = tp & tn
                if len(common) < threshold:
                    continue
                if any(common <= to for o, to in rays if o != p and o != n):
                    continue
                combo = primitive(tuple(vp * x - vn * y for x, y in zip(n, p)))
                kept.append((combo, common | {idx}))
        rays = kept
    seen, out = set(), []
    for r, _ in rays:
        if r not in seen and not is_zero(r):
            seen.add(r)
            out.append(r)
    return out, lineality


def _lift_functional(basis, functional):
    """Primitive integer vector in span(basis) whose dot with basis[i] is a positive multiple of functional[i]."""
    gram = IntegerMatrix.from_rows([[dot(b, c) for c in basis] for b in basis])
    z = rational_solve(gram, functional)
    vector = [sum(z[j] * basis[j][i] for j in range(len(basis))) for i in range(len(basis[0]))]
    return primitive(integral_multiple(vector))


def cone_facets(generators, dim):
    """Facet normals, orthogonal equations and lattice basis of cone(generators)."""
    gens = [tuple(g) for g in generators if not is_zero(g)]
    basis = lattice_basis(gens, dim)
    equations = tuple(orthogonal_complement(basis, dim)) if basis else tuple(
        tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)
    )
    if not basis:
        return ConeDescription(facets=(), equations=equations, basis=())
    coords = [coordinates(basis, g) for g in gens]
    normals, lineality = extreme_rays(coords, len(basis))
    if lineality:
        raise AssertionError("dual of a full-dimensional cone has lineality")
    facets = []
    for y in normals:
        lam = _lift_functional(basis, y)
        if lam not in facets:
            facets.append(lam)
    return ConeDescription(facets=tuple(facets), equations=equations, basis=tuple(basis))


def grading_of(facets, dim):
    """Sum of facet normals: strictly positive on a pointed cone minus the origin."""
    total = [0] * dim
    for f in facets:
        for i, x in enumerate(f):
            total[i] += x
    return tuple(total)


def triangulate(rays):
    """
    Ordered pulling triangulation of cone(rays) into simplicial cones.
    Returns index tuples into rays; the first ray of each sub-list is the apex.
    """
    rays = [tuple(r) for r in rays]
    if not rays:
        return [()]
    dim = len(rays[0])

    def pull(indices):
        vecs = [rays[i] for i in indices]
        rank = rational_rank(IntegerMatrix.from_rows(vecs, cols=dim)) if vecs else 0
        if rank == 0:
            return [()]
        if len(indices) == rank:
            return [tuple(indices)]
        apex = indices[0]
        out = []
        for lam in cone_facets(vecs, dim).facets:
            if dot(lam, rays[apex]) == 0:
                continue
            face = [i for i in indices if dot(lam, rays[i]) == 0]
            out.extend((apex,) + simplex for simplex in pull(face))
        return out

    simplices = pull([i for i, r in enumerate(rays) if not is_zero(r)])
    logger.debug("triangulated %d rays into %d simplicial cones", len(rays), len(simplices))
    return simplices


def parallelepiped_points(rays):
    """Lattice points of the half-open parallelepiped spanned by independent rays in Z^n."""
    R = IntegerMatrix.from_columns(rays)
    snf = smith_normal_form(R)
    factors = snf.S.diagonal()
    if len(factors) != R.cols or 0 in factors:
        raise DimensionError("parallelepiped rays must be linearly independent and square")
    points = []
    for residues in itertools.product(*(range(d) for d in factors)):
        ua = snf.U.apply(residues)
        t = [sum(snf.V_inverse[j, i] * Fraction(residues[i], factors[i]) for i in range(len(factors)))
             for j in range(len(factors))]
        shift = R.apply(tuple(floor(x) for x in t))
        points.append(sub(ua, shift))
    return points


def hilbert_basis(rays, lattice_basis_vectors):
    """
    Minimal generating set of cone(rays) ∩ lattice.
    The rays must lie in the rational span of the lattice and generate a
    salient cone; a cone containing a line raises NonSalientConeError.
    """
    rays = [tuple(r) for r in rays if not is_zero(r)]
    lattice = [tuple(b) for b in lattice_basis_vectors]
    if not rays:
        return []
    dim = len(rays[0])
    if any(len(r) != dim for r in rays + lattice):
        raise DimensionError("rays and lattice vectors must share an ambient dimension")
    k = len(lattice)
    basis_matrix = IntegerMatrix.from_columns(lattice, rows=dim)
    ray_coords = []
    for r in rays:
        c = rational_solve(basis_matrix, r) if k else None
        if c is None:
            raise DimensionError(f"ray {r} is not in the span of the lattice")
        ray_coords.append(primitive(integral_multiple(c)))
    # restrict the lattice to the span of the cone
    complement = orthogonal_complement(ray_coords, k)
    sub_basis = orthogonal_complement(complement, k)
    s = len(sub_basis)
    local = [coordinates(sub_basis, c) for c in ray_coords]
    desc = cone_facets(local, s)
    if not desc.facets or rational_rank(IntegerMatrix.from_rows(desc.facets, cols=s)) < s:
        raise NonSalientConeError("cone contains a line")
    grading = grading_of(desc.facets, s)
    candidates = set(local)
    simplices = triangulate(local)
    for simplex in simplices:
        for p in parallelepiped_points([local[i] for i in simplex]):
            if not is_zero(p):
                candidates.add(p)
    ordered = sorted(candidates, key=lambda x: (dot(grading, x), x))
    irreducible = []
    for x in ordered:
        gx = dot(grading, x)
        if any(dot(grading, y) < gx and desc.contains(sub(x, y)) for y in irreducible):
            continue
        irreducible.append(x)
    logger.debug("hilbert basis: %d simplices, %d candidates, %d irreducible",
                 len(simplices), len(candidates), len(irreducible))

    def to_ambient(x):
        in_k = [sum(x[j] * sub_basis[j][i] for j in range(s)) for i in range(k)]
        return tuple(sum(in_k[i] * lattice[i][t] for i in range(k)) for t in range(dim))

    return [to_ambient(x) for x in irreducible]


def cone_lattice_hilbert_basis(inequalities, lattice_basis_vectors, dim):
    """
    Hilbert basis of {x in lattice : a·x >= 0 for every a}.
    Rays are found in lattice coordinates, mapped back, and handed to hilbert_basis.
    """
    lattice = [tuple(b) for b in lattice_basis_vectors]
    if not lattice:
        return []
    k = len(lattice)
    rows = [tuple(dot(a, b) for b in lattice) for a in inequalities]
    rays, lineality = extreme_rays(rows, k)
    if lineality:
        raise NonSalientConeError("cone contains a line")
    ambient = [tuple(sum(r[i] * lattice[i][t] for i in range(k)) for t in range(dim)) for r in rays]
    return hilbert_basis(ambient, lattice)
