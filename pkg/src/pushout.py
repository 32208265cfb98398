"""
Amalgamated sums M ⨿_N L kept as diagrams.

Nothing here presents P as a monoid. Verdicts come from the cone test on
the image of N^gp in M^gp ⊕ L^gp, and the two non-quasi-integral
constructions are built from kernel vectors of the given maps.
"""

import itertools
import logging
from dataclasses import dataclass

from .config import get_settings
from .errors import DiagramShapeError, InvariantViolation, PreconditionError
from .cones import extreme_rays, hilbert_basis
from .intlin import (
    IntegerMatrix,
    add,
    cokernel_invariants,
    dot,
    is_zero,
    kernel_basis,
    lattice_basis,
    neg,
    scale,
    solve_linear,
    sub,
)
from .monoid import (
    LatticeMap,
    adjoin_negative_sat,
    dual_facets,
    inclusion_map,
    is_injective_map,
    is_local,
    is_saturated,
    is_sharp,
    new_monoid,
    positive_grading,
    same_generator_set,
)

logger = logging.getLogger(__name__)

QUASI_INTEGRAL = "quasi_integral"
NOT_QUASI_INTEGRAL = "not_quasi_integral"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class PushoutData:
    """The diagram M <-f- N -g-> L."""

    f: object
    g: object

    def __post_init__(self):
        if not same_generator_set(self.f.source, self.g.source):
            raise DiagramShapeError("f and g must share their source monoid N")
        if self.g.source != self.f.source:
            # one presentation of N for both legs
            object.__setattr__(self, "g", LatticeMap(self.f.source, self.g.target, self.g.matrix))

    @property
    def N(self):
        return self.f.source

    @property
    def M(self):
        return self.f.target

    @property
    def L(self):
        return self.g.target


@dataclass(frozen=True)
class PushoutValidation:
    M_sharp: bool
    N_sharp: bool
    L_sharp: bool
    f_local: bool
    g_local: bool

    @property
    def all_hold(self):
        return all((self.M_sharp, self.N_sharp, self.L_sharp, self.f_local, self.g_local))

    def as_dict(self):
        return {
            "M_sharp": self.M_sharp,
            "N_sharp": self.N_sharp,
            "L_sharp": self.L_sharp,
            "f_local": self.f_local,
            "g_local": self.g_local,
            "all_hold": self.all_hold,
        }


@dataclass(frozen=True)
class QuasiIntegralityReport:
    verdict: str
    witness: tuple = None

    def as_dict(self):
        return {"verdict": self.verdict, "witness": list(self.witness) if self.witness is not None else None}


def validate_pushout(data):
    """When every flag holds, P is sharp and both insertions are local."""
    return PushoutValidation(
        M_sharp=is_sharp(data.M),
        N_sharp=is_sharp(data.N),
        L_sharp=is_sharp(data.L),
        f_local=is_local(data.f),
        g_local=is_local(data.g),
    )


def pushout_group_invariants(data):
    """P^gp = coker(N^gp -> M^gp ⊕ L^gp, n -> (f n, -g n))."""
    F, G = data.f.gp_matrix, data.g.gp_matrix
    stacked = IntegerMatrix.from_rows(
        [F.row(i) for i in range(F.rows)] + [neg(G.row(i)) for i in range(G.rows)],
        cols=len(data.N.gp_basis),
    )
    return cokernel_invariants(stacked)


# ---------------- Quasi-integrality ----------------

def _image_matrix(data):
    """Columns are (f b, -g b) for b in gp_basis(N), inside Z^(dM + dL)."""
    columns = [data.f.apply(b) + neg(data.g.apply(b)) for b in data.N.gp_basis]
    return IntegerMatrix.from_columns(columns, rows=data.M.ambient_dim + data.L.ambient_dim)


def _image_cone_elements(data):
    """
    Hilbert basis of h(N^gp) ∩ (cone M × cone L), or the lineality basis
    when that cone contains a line. Returns (elements, is_linear).
    """
    dm, dl = data.M.ambient_dim, data.L.ambient_dim
    H = _image_matrix(data)
    lattice = lattice_basis(H.columns(), dm + dl)
    if not lattice:
        return [], False
    inequalities = [tuple(a) + (0,) * dl for a in dual_facets(data.M)]
    inequalities += [(0,) * dm + tuple(a) for a in dual_facets(data.L)]
    rows = [tuple(dot(a, b) for b in lattice) for a in inequalities]
    rays, lineality = extreme_rays(rows, len(lattice))

    def to_ambient(y):
        return tuple(sum(y[i] * lattice[i][t] for i in range(len(lattice))) for t in range(dm + dl))

    if lineality:
        return [to_ambient(v) for v in lineality], True
    return hilbert_basis([to_ambient(r) for r in rays], lattice), False


def _lift(data, c):
    """An n in N^gp with h(n) = c."""
    H = _image_matrix(data)
    y = solve_linear(H, c)
    if y is None:
        raise InvariantViolation(f"{list(c)} is not in the image of N^gp")
    return tuple(sum(y[j] * data.N.gp_basis[j][i] for j in range(len(y))) for i in range(data.N.ambient_dim))


def _ordered_candidates(data, elements, is_linear):
    """Witness candidates n, sorted by the grading of the image cone and then lexicographically."""
    lifted = [(c, _lift(data, c)) for c in elements]
    if is_linear:
        return [n for _, n in sorted(lifted, key=lambda item: item[1])]
    grading = positive_grading(new_monoid(len(elements[0]), elements))
    return [n for _, n in sorted(lifted, key=lambda item: (dot(grading, item[0]), item[1]))]


def satisfies_witness_conditions(data, n):
    """f(n) ∈ M, -g(n) ∈ L, and not both images zero."""
    fn, gn = data.f.apply(n), data.g.apply(n)
    if is_zero(fn) and is_zero(gn):
        return False
    return data.M.member(fn) is not None and data.L.member(neg(gn)) is not None


def quasi_integrality(data):
    """
    Decide quasi-integrality of M ⨿_N L.
    Exact when M and L are saturated; otherwise the saturated relaxation
    decides the quasi_integral side and multiples of its Hilbert basis are
    tried against the real monoids.
    """
    elements, is_linear = _image_cone_elements(data)
    if not elements:
        return QuasiIntegralityReport(QUASI_INTEGRAL)
    candidates = _ordered_candidates(data, elements, is_linear)
    if is_saturated(data.M) and is_saturated(data.L):
        witness = candidates[0]
        if not satisfies_witness_conditions(data, witness):
            raise InvariantViolation(f"witness {list(witness)} fails the membership conditions")
        return QuasiIntegralityReport(NOT_QUASI_INTEGRAL, witness)
    limit = get_settings().multiple_search_limit
    for n in candidates:
        for a in range(1, limit + 1):
            if satisfies_witness_conditions(data, scale(a, n)):
                return QuasiIntegralityReport(NOT_QUASI_INTEGRAL, scale(a, n))
    logger.warning("quasi-integrality undecided after multiples up to %d of %d candidates", limit, len(candidates))
    return QuasiIntegralityReport(UNKNOWN)


# ---------------- Absorption certificates ----------------

@dataclass(frozen=True)
class AbsorptionCertificate:
    """
    Classes p, q of P with q nonzero and p + q = p, together with the
    relation chain joining p + q to p and the oracle bound needed to see it.
    """

    p: tuple
    q: tuple
    chain: tuple
    bound: int


def _generator_word(N, n):
    """Split n = a - b with a, b given as lists of generators of N."""
    G = IntegerMatrix.from_columns(N.generators, rows=N.ambient_dim)
    z = solve_linear(G, n)
    if z is None:
        raise InvariantViolation(f"{list(n)} is not in N^gp")
    a = [g for g, c in zip(N.generators, z) for _ in range(max(c, 0))]
    b = [g for g, c in zip(N.generators, z) for _ in range(max(-c, 0))]
    return a, b


def _pair_length(data, pair):
    m, l = pair
    cm, cl = data.M.member(m), data.L.member(l)
    if cm is None or cl is None:
        raise InvariantViolation(f"pair {pair} left M x L")
    return cm.length + cl.length


def absorption_certificate(data, witness):
    """Explicit absorption p + q ~ p in P from a not_quasi_integral witness."""
    n = tuple(witness)
    if not satisfies_witness_conditions(data, n):
        raise PreconditionError("witness fails the membership conditions", detail=f"n = {list(n)}")
    a, b = _generator_word(data.N, n)
    q = (data.f.apply(n), neg(data.g.apply(n)))
    m, l = (0,) * data.M.ambient_dim, q[1]
    for nu in a:
        m = add(m, data.f.apply(nu))
    chain = [(m, l)]
    # each step is one relation (base + (f nu, 0)) ~ (base + (0, g nu))
    bases = []
    for nu in a:
        m = sub(m, data.f.apply(nu))
        bases.append((m, l))
        l = add(l, data.g.apply(nu))
        chain.append((m, l))
    for nu in b:
        l = sub(l, data.g.apply(nu))
        bases.append((m, l))
        m = add(m, data.f.apply(nu))
        chain.append((m, l))
    bound = max(_pair_length(data, pair) for pair in chain + bases + [q])
    return AbsorptionCertificate(p=chain[-1], q=q, chain=tuple(chain), bound=bound)


# ---------------- Non-quasi-integral extensions ----------------

def _check_extension_hypotheses(i1, i2):
    if not same_generator_set(i1.source, i2.source):
        raise DiagramShapeError("i1 and i2 must share their source monoid N")
    N = i1.source
    if not is_sharp(N):
        raise PreconditionError("N is not sharp")
    if not is_saturated(N):
        raise PreconditionError("N is not saturated")
    for name, phi in (("i1", i1), ("i2", i2)):
        if is_injective_map(phi):
            raise PreconditionError(f"{name} is injective")
        if not is_local(phi):
            raise PreconditionError(f"{name} is not local")


def kernel_combinations(kernel, grading, radius):
    """
    Nonzero integer combinations of the kernel vectors with coefficients in
    [-radius, radius], ordered by grading and then lexicographically.
    """
    dim = len(kernel[0])
    found = set()
    for c in itertools.product(range(-radius, radius + 1), repeat=len(kernel)):
        v = tuple(sum(ci * k[t] for ci, k in zip(c, kernel)) for t in range(dim))
        if not is_zero(v):
            found.add(v)
    return sorted(found, key=lambda v: (dot(grading, v), v))


def _kernel_vector_outside(phi, excluded):
    """A vector of ker(phi^gp) outside the excluded monoid, canonical kernel vector first."""
    N = phi.source
    B = IntegerMatrix.from_columns(N.gp_basis, rows=N.ambient_dim)
    kernel = [B.apply(v) for v in kernel_basis(phi.matrix @ B)]
    z = kernel[0]
    for candidate in (z, neg(z)):
        if excluded.member(candidate) is None:
            return candidate
    grading = positive_grading(excluded) or (0,) * N.ambient_dim
    for candidate in kernel_combinations(kernel, grading, get_settings().combination_radius):
        if excluded.member(candidate) is None:
            return candidate
    raise InvariantViolation("every small kernel vector lies in the excluded monoid")


def kernel_witnesses(i1, i2):
    """n1 in ker(i1^gp) outside N, n2 in ker(i2^gp) outside <N, -n1>^sat."""
    _check_extension_hypotheses(i1, i2)
    N = i1.source
    n1 = _kernel_vector_outside(i1, N)
    L1 = adjoin_negative_sat(N, n1)
    n2 = _kernel_vector_outside(i2, L1)
    logger.debug("kernel witnesses n1=%s n2=%s", n1, n2)
    return n1, n2


@dataclass(frozen=True)
class ExtensionRecord:
    """L = <N, -n1, -n2>^sat and the checks that make both push-outs fail quasi-integrality."""

    monoid: object
    n1: tuple
    n2: tuple
    contains_N: bool
    same_group: bool
    sharp: bool
    saturated: bool
    reports: tuple

    def as_dict(self):
        return {
            "n1": list(self.n1),
            "n2": list(self.n2),
            "contains_N": self.contains_N,
            "same_group": self.same_group,
            "sharp": self.sharp,
            "saturated": self.saturated,
            "reports": [r.as_dict() for r in self.reports],
        }


def construct_nonqi_extension(i1, i2):
    n1, n2 = kernel_witnesses(i1, i2)
    N = i1.source
    L = adjoin_negative_sat(adjoin_negative_sat(N, n1), n2)
    contains_N = all(L.member(g) is not None for g in N.generators)
    same_group = L.gp_basis == N.gp_basis
    sharp, saturated = is_sharp(L), is_saturated(L)
    if not (contains_N and same_group and sharp and saturated):
        raise InvariantViolation(
            f"extension checks failed: contains_N={contains_N} same_group={same_group} "
            f"sharp={sharp} saturated={saturated}"
        )
    inclusion = inclusion_map(N, L)
    reports = tuple(quasi_integrality(PushoutData(phi, inclusion)) for phi in (i1, i2))
    if any(r.verdict != NOT_QUASI_INTEGRAL for r in reports):
        raise InvariantViolation(f"extension push-out came out {[r.verdict for r in reports]}")
    return ExtensionRecord(L, n1, n2, contains_N, same_group, sharp, saturated, reports)


def nonqi_extension(i1, i2):
    """Monoid N ⊆ L ⊆ N^gp with neither M ⨿_{i1,N} L nor M ⨿_{i2,N} L quasi-integral."""
    return construct_nonqi_extension(i1, i2).monoid

