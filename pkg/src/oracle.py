"""
Bounded approximation of a push-out M ⨿_N L.

Pairs (m, l) whose minimal generator word lengths add up to at most the
bound form the ball. The relations (m + f(nu), l) ~ (m, l + g(nu)) are
applied inside the ball, then classes are closed under translation by
generator steps. Classes live in a networkx UnionFind; every merge is also
recorded as a graph edge so relation chains can be read back.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field

import networkx as nx
from networkx.utils import UnionFind

from .config import get_settings
from .intlin import add, sub
from .monoid import elements_by_length

logger = logging.getLogger(__name__)


def _shift(pair, step):
    return (add(pair[0], step[0]), add(pair[1], step[1]))


def _difference(y, x):
    return (sub(y[0], x[0]), sub(y[1], x[1]))


@dataclass
class FinitePushoutApprox:
    """Partition of the ball into bounded push-out classes."""

    bound: int
    ball: frozenset
    zero: tuple
    steps: tuple
    classes: UnionFind = field(repr=False)
    graph: nx.Graph = field(repr=False)

    def _members(self):
        groups = defaultdict(list)
        for x in sorted(self.ball):
            groups[self.classes[x]].append(x)
        return groups

    def class_of(self, pair):
        """Canonical (smallest) member of the class of pair, or None outside the ball."""
        if pair not in self.ball:
            return None
        root = self.classes[pair]
        return min(x for x in self.ball if self.classes[x] == root)

    def classes_equal(self, p, q):
        return p in self.ball and q in self.ball and self.classes[p] == self.classes[q]

    def zero_class(self):
        root = self.classes[self.zero]
        return frozenset(x for x in self.ball if self.classes[x] == root)

    def partition(self):
        """Classes as sorted tuples, sorted by their first member."""
        return sorted(tuple(members) for members in self._members().values())

    def find_absorption(self):
        """
        First (p, q) in sorted order with p + q ~ p, q in the ball and q
        outside the zero class; None when the ball shows no absorption.
        """
        zero_class = self.zero_class()
        for members in sorted(self._members().values()):
            for x in members:
                for y in members:
                    if y == x:
                        continue
                    q = _difference(y, x)
                    if q in self.ball and q not in zero_class:
                        return x, q
        return None

    def exists_absorption(self):
        return self.find_absorption() is not None

    def relation_chain(self, p, q):
        """Shortest chain of recorded merges from p to q, or None."""
        if not self.classes_equal(p, q):
            return None
        try:
            return nx.shortest_path(self.graph, p, q)
        except nx.NetworkXNoPath:
            return None

    def bounded_unit_pairs(self):
        """Pairs x, x' outside the zero class whose sum lands in it."""
        zero_class = self.zero_class()
        found = []
        for z in sorted(zero_class):
            for x in sorted(self.ball):
                other = _difference(z, x)
                if x in zero_class or other not in self.ball or other in zero_class:
                    continue
                found.append((x, other))
        return found

    def nonlocal_generators(self, data):
        """Nonzero generator images (m, 0) or (0, l) that fall into the zero class."""
        zero_class = self.zero_class()
        zm, zl = self.zero
        images = [(g, zl) for g in data.M.generators] + [(zm, g) for g in data.L.generators]
        return [pair for pair in images if pair in zero_class]

    def congruence_violations(self):
        """Classes whose translates by one generator step stay in the ball but split."""
        violations = []
        for members in self._members().values():
            for step in self.steps:
                moved = [t for t in (_shift(x, step) for x in members) if t in self.ball]
                roots = {self.classes[t] for t in moved}
                if len(roots) > 1:
                    violations.append((members[0], step))
        return violations


def _close_under_translation(classes, graph, ball, steps):
    merges = 0
    changed = True
    while changed:
        changed = False
        groups = defaultdict(list)
        for x in sorted(ball):
            groups[classes[x]].append(x)
        for members in groups.values():
            if len(members) < 2:
                continue
            for step in steps:
                moved = [t for t in (_shift(x, step) for x in members) if t in ball]
                for t in moved[1:]:
                    if classes[t] != classes[moved[0]]:
                        classes.union(moved[0], t)
                        graph.add_edge(moved[0], t, kind="translation")
                        merges += 1
                        changed = True
    return merges


def bounded_pushout_oracle(data, bound):
    """Enumerate the ball of radius bound and merge it by the push-out relations."""
    settings = get_settings()
    if bound > settings.oracle_max_bound:
        logger.warning("oracle bound %d exceeds the configured maximum %d", bound, settings.oracle_max_bound)
    M, L, N = data.M, data.L, data.N
    lengths_m = elements_by_length(M, bound)
    lengths_l = elements_by_length(L, bound)
    ball = frozenset(
        (m, l)
        for m, a in lengths_m.items()
        for l, b in lengths_l.items()
        if a + b <= bound
    )
    zero = ((0,) * M.ambient_dim, (0,) * L.ambient_dim)
    steps = tuple([(g, zero[1]) for g in M.generators] + [(zero[0], g) for g in L.generators])

    classes = UnionFind(sorted(ball))
    graph = nx.Graph()
    graph.add_nodes_from(sorted(ball))
    relations = 0
    images = [(data.f.apply(nu), data.g.apply(nu)) for nu in N.generators]
    for m, l in sorted(ball):
        for fn, gn in images:
            left, right = (add(m, fn), l), (m, add(l, gn))
            if left in ball and right in ball and left != right:
                graph.add_edge(left, right, kind="relation")
                classes.union(left, right)
                relations += 1
    merges = _close_under_translation(classes, graph, ball, steps)
    logger.debug("oracle bound %d: %d pairs, %d relation edges, %d translation merges",
                 bound, len(ball), relations, merges)
    return FinitePushoutApprox(bound=bound, ball=ball, zero=zero, steps=steps, classes=classes, graph=graph)
