"""Cohen-Macaulay decision procedure for bipartite graphs.

A normalized bipartite graph is Cohen-Macaulay iff it has a perfect matching
``{x_i, y_i}`` (``x_i`` on side A) such that

1. ``N(y_i)`` and ``N(x_i)`` induce a complete bipartite graph, for every i;
2. ``x_i ~ y_j`` and ``x_j ~ y_i`` never both hold for ``i != j``.

Condition 1 alone characterizes unmixed graphs. In the CM case the matching is
unique and repeatedly removing a degree-one vertex with its neighbor (peeling)
recovers it, which is how :py:func:`is_cohen_macaulay` finds it.
"""
import heapq
import logging

from .exceptions import (
    NotAPerfectMatching, OrderCycle, OrderViolation)
from .graph import complete_between_masks
from .matching import HopcroftKarp, Matching
from .utils import bit_permuter, bits, enum, full_mask, lowest_bit, popcount

logger = logging.getLogger(__name__)

Provenance = enum(
    'Provenance',
    PEELED='peeled',
    SUPPLIED='supplied',
    MAXIMUM='max_matching',
)

WitnessKind = enum(
    'WitnessKind',
    ODD_OR_UNBALANCED='odd_or_unbalanced',
    NO_PERFECT_MATCHING='no_perfect_matching',
    CONDITION1='condition1',
    CONDITION2='condition2',
    PEEL_STUCK='peel_stuck',
)

A_FIRST, B_SECOND = 0, 1


class OrderedMatching(Matching):
    """A perfect matching with a fixed pair order; pair ``i`` is ``(x_i, y_i)``."""

    def __init__(self, pairs, provenance=Provenance.SUPPLIED):
        super().__init__(pairs)
        self.provenance = provenance

    def require_perfect(self, g):
        if not self.is_perfect(g):
            raise NotAPerfectMatching(f'{self!r} is not a perfect matching of {g!r}')

    def to_record(self):
        return [[a + 1, b + 1] for a, b in self.pairs]


class Witness:
    """Why a graph is not Cohen-Macaulay (or not unmixed).

    Every witness carries enough data to be re-checked against the graph with
    :py:meth:`is_valid`."""

    def __init__(self, kind, **data):
        self.kind = kind
        self.data = data

    @classmethod
    def odd_or_unbalanced(cls, g):
        return cls(WitnessKind.ODD_OR_UNBALANCED,
                   part_a=g.part_a_size, part_b=g.part_b_size)

    @classmethod
    def no_perfect_matching(cls, violator):
        return cls(WitnessKind.NO_PERFECT_MATCHING, violator=violator)

    @classmethod
    def condition1(cls, matching, pair, u, v):
        return cls(WitnessKind.CONDITION1, matching=list(matching.pairs),
                   pair=pair, u=u, v=v)

    @classmethod
    def condition2(cls, matching, i, j):
        return cls(WitnessKind.CONDITION2, matching=list(matching.pairs), i=i, j=j)

    @classmethod
    def peel_stuck(cls, peeled, remaining_a, remaining_b, min_degree):
        return cls(WitnessKind.PEEL_STUCK, peeled=peeled, remaining_a=remaining_a,
                   remaining_b=remaining_b, min_degree=min_degree, diagnosis=None)

    def __getattr__(self, name):
        try:
            return self.__dict__['data'][name]
        except KeyError:
            raise AttributeError(name) from None

    def __repr__(self):
        return f'Witness({self.kind}, {self.data!r})'

    def is_valid(self, g):
        return getattr(self, f'_valid_{self.kind}')(g)

    def _valid_odd_or_unbalanced(self, g):
        return ((self.part_a, self.part_b) == (g.part_a_size, g.part_b_size) and
                (g.vertex_count % 2 == 1 or not g.is_balanced))

    def _valid_no_perfect_matching(self, g):
        return g.is_balanced and self.violator.is_valid(g)

    def _valid_condition1(self, g):
        matching = Matching(self.matching)
        if not matching.is_perfect(g) or not 0 <= self.pair < len(matching):
            return False
        x, y = matching[self.pair]
        u, v = self.u, self.v
        return g.has_edge(u, y) and g.has_edge(x, v) and not g.has_edge(u, v)

    def _valid_condition2(self, g):
        matching = Matching(self.matching)
        if not matching.is_perfect(g) or self.i == self.j:
            return False
        (x_i, y_i), (x_j, y_j) = matching[self.i], matching[self.j]
        return g.has_edge(x_i, y_j) and g.has_edge(x_j, y_i)

    def _valid_peel_stuck(self, g):
        alive_a = full_mask(g.part_a_size)
        alive_b = full_mask(g.part_b_size)
        for a, b in self.peeled:
            if not (alive_a >> a & 1 and alive_b >> b & 1 and g.has_edge(a, b)):
                return False
            if popcount(g.adj_a[a] & alive_b) != 1 and popcount(g.adj_b[b] & alive_a) != 1:
                return False
            alive_a &= ~(1 << a)
            alive_b &= ~(1 << b)
        if bits(alive_a) != list(self.remaining_a) or bits(alive_b) != list(self.remaining_b):
            return False
        if not alive_a and not alive_b:
            return False
        degrees = ([popcount(g.adj_a[a] & alive_b) for a in bits(alive_a)] +
                   [popcount(g.adj_b[b] & alive_a) for b in bits(alive_b)])
        if 1 in degrees or min(degrees) != self.min_degree:
            return False
        return self.diagnosis is None or self.diagnosis.is_valid(g)

    def describe(self):
        if self.kind == WitnessKind.ODD_OR_UNBALANCED:
            return f'parts differ: {self.part_a} A-vertices, {self.part_b} B-vertices'
        if self.kind == WitnessKind.NO_PERFECT_MATCHING:
            record = self.violator.to_record()
            subset = ','.join(f'a{a}' for a in record['subset'])
            hood = ','.join(f'b{b}' for b in record['neighborhood'])
            return f'no perfect matching: N({{{subset}}}) = {{{hood}}} is smaller'
        if self.kind == WitnessKind.CONDITION1:
            x, y = self.matching[self.pair]
            return (f'condition 1 fails at pair {self.pair + 1} (a{x + 1}, b{y + 1}): '
                    f'a{self.u + 1} ~ b{y + 1} and a{x + 1} ~ b{self.v + 1} '
                    f'but a{self.u + 1} !~ b{self.v + 1}')
        if self.kind == WitnessKind.CONDITION2:
            (x_i, y_i), (x_j, y_j) = self.matching[self.i], self.matching[self.j]
            return (f'condition 2 fails at pairs {self.i + 1}, {self.j + 1}: '
                    f'a{x_i + 1} ~ b{y_j + 1} and a{x_j + 1} ~ b{y_i + 1}')
        text = (f'peeling stuck after {len(self.peeled)} pair(s); '
                f'{len(self.remaining_a) + len(self.remaining_b)} vertices remain, '
                f'minimum degree {self.min_degree}')
        if self.diagnosis is not None:
            text += f'; {self.diagnosis.describe()}'
        return text

    def to_record(self):
        if self.kind == WitnessKind.ODD_OR_UNBALANCED:
            data = {'part_a': self.part_a, 'part_b': self.part_b}
        elif self.kind == WitnessKind.NO_PERFECT_MATCHING:
            data = self.violator.to_record()
        elif self.kind == WitnessKind.CONDITION1:
            data = {'matching': _pairs_record(self.matching), 'pair': self.pair + 1,
                    'u': self.u + 1, 'v': self.v + 1}
        elif self.kind == WitnessKind.CONDITION2:
            data = {'matching': _pairs_record(self.matching),
                    'i': self.i + 1, 'j': self.j + 1}
        else:
            data = {'peeled': _pairs_record(self.peeled),
                    'remaining_a': [a + 1 for a in self.remaining_a],
                    'remaining_b': [b + 1 for b in self.remaining_b],
                    'min_degree': self.min_degree,
                    'diagnosis': self.diagnosis.to_record() if self.diagnosis else None}
        return {'kind': self.kind, 'data': data}


def _pairs_record(pairs):
    return [[a + 1, b + 1] for a, b in pairs]


class Certificate:
    def __init__(self, matching, hh_order):
        self.matching = matching
        self.hh_order = hh_order

    def is_valid(self, g):
        return (self.matching.is_perfect(g) and
                verify_hh_order(g, self.matching, self.hh_order) is None)

    def to_record(self):
        return {'matching': self.matching.to_record(),
                'hh_order': [i + 1 for i in self.hh_order],
                'conditions': {'c1': 'ok', 'c2': 'ok'}}


class Verdict:
    def __init__(self, is_cm, is_unmixed, certificate=None, witness=None):
        assert (certificate is None) != (witness is None)
        assert is_unmixed or not is_cm
        self.is_cm = is_cm
        self.is_unmixed = is_unmixed
        self.certificate = certificate
        self.witness = witness

    def __repr__(self):
        detail = self.witness.kind if self.witness else 'certificate'
        return f'Verdict(is_cm={self.is_cm}, is_unmixed={self.is_unmixed}, {detail})'

    def to_record(self):
        return {
            'is_cm': self.is_cm,
            'is_unmixed': self.is_unmixed,
            'certificate': self.certificate.to_record() if self.certificate else None,
            'witness': self.witness.to_record() if self.witness else None,
        }


class PairDigraph:
    """Arcs between pair indices: ``i -> j`` iff ``x_i ~ y_j``.

    ``out[i]`` and ``inn[i]`` are bitsets over pair indices and include the
    loop ``i -> i`` of the matching edge itself."""

    def __init__(self, g, matching):
        pair_of_a = [0] * g.part_a_size
        pair_of_b = [0] * g.part_b_size
        for i, (a, b) in enumerate(matching.pairs):
            pair_of_a[a] = i
            pair_of_b[b] = i
        self.size = len(matching)
        b_to_pair = bit_permuter(pair_of_b)
        a_to_pair = bit_permuter(pair_of_a)
        self.out = [b_to_pair(g.adj_a[a]) for a, _ in matching.pairs]
        self.inn = [a_to_pair(g.adj_b[b]) for _, b in matching.pairs]

    def find_cycle(self, among):
        """A cycle inside the pair set `among`, where every pair has a
        predecessor in `among`."""
        walk = []
        seen = {}
        v = lowest_bit(among)
        while v not in seen:
            seen[v] = len(walk)
            walk.append(v)
            v = lowest_bit(self.inn[v] & among & ~(1 << v))
        return list(reversed(walk[seen[v]:]))


def peel(g):
    """Strip degree-one vertices together with their neighbors.

    Returns ``(OrderedMatching, None)`` when every vertex was consumed,
    otherwise ``(None, witness)``. Among degree-one vertices the lowest A
    vertex goes first, then the lowest B vertex."""
    if g.vertex_count % 2:
        return None, Witness.odd_or_unbalanced(g)

    adj_a, adj_b = g.adj_a, g.adj_b
    alive_a = full_mask(g.part_a_size)
    alive_b = full_mask(g.part_b_size)
    degree_a = [popcount(row) for row in adj_a]
    degree_b = [popcount(row) for row in adj_b]
    candidates = ([(A_FIRST, a) for a, d in enumerate(degree_a) if d == 1] +
                  [(B_SECOND, b) for b, d in enumerate(degree_b) if d == 1])
    heapq.heapify(candidates)

    pairs = []
    while candidates:
        side, v = heapq.heappop(candidates)
        if side == A_FIRST:
            if not alive_a >> v & 1 or degree_a[v] != 1:
                continue
            a, b = v, lowest_bit(adj_a[v] & alive_b)
        else:
            if not alive_b >> v & 1 or degree_b[v] != 1:
                continue
            a, b = lowest_bit(adj_b[v] & alive_a), v
        pairs.append((a, b))
        alive_a &= ~(1 << a)
        alive_b &= ~(1 << b)
        for other in bits(adj_a[a] & alive_b):
            degree_b[other] -= 1
            if degree_b[other] == 1:
                heapq.heappush(candidates, (B_SECOND, other))
        for other in bits(adj_b[b] & alive_a):
            degree_a[other] -= 1
            if degree_a[other] == 1:
                heapq.heappush(candidates, (A_FIRST, other))

    if alive_a or alive_b:
        remaining_a, remaining_b = bits(alive_a), bits(alive_b)
        min_degree = min([degree_a[a] for a in remaining_a] +
                         [degree_b[b] for b in remaining_b])
        logger.debug(f'Peeling stuck after {len(pairs)} pairs, '
                     f'{len(remaining_a) + len(remaining_b)} vertices left')
        return None, Witness.peel_stuck(pairs, remaining_a, remaining_b, min_degree)
    return OrderedMatching(pairs, Provenance.PEELED), None


def check_condition1(g, m):
    """None if ``N(y_i) x N(x_i)`` is complete for every pair, else the
    first failing pair as a witness."""
    m.require_perfect(g)
    for i, (x, y) in enumerate(m.pairs):
        missing = complete_between_masks(g, g.adj_b[y], g.adj_a[x])
        if missing is not None:
            return Witness.condition1(m, i, *missing)
    return None


def check_condition2(g, m, digraph=None):
    """None if no two pairs are joined by both cross edges, else the first
    such ``(i, j)`` with ``i < j``."""
    m.require_perfect(g)
    digraph = digraph or PairDigraph(g, m)
    for i in range(digraph.size):
        both = (digraph.out[i] & digraph.inn[i]) >> (i + 1)
        if both:
            return Witness.condition2(m, i, i + 1 + lowest_bit(both))
    return None


def is_unmixed(g):
    """``(True, matching)`` or ``(False, witness)``.

    Condition 1 does not depend on the perfect matching chosen, so a maximum
    matching serves."""
    if not g.is_balanced:
        return False, Witness.odd_or_unbalanced(g)
    hopcroft_karp = HopcroftKarp(g)
    matching = hopcroft_karp.get_maximum_matching()
    if len(matching) < g.part_a_size:
        return False, Witness.no_perfect_matching(hopcroft_karp.hall_violator())
    matching = OrderedMatching(matching.pairs, Provenance.MAXIMUM)
    witness = check_condition1(g, matching)
    if witness is not None:
        return False, witness
    return True, matching


def is_cohen_macaulay(g, matching=None):
    """Decide Cohen-Macaulayness of the normalized graph `g`.

    Without `matching` the perfect matching comes from :py:func:`peel`; a
    stuck peel means not CM. A supplied matching is checked as given."""
    if not g.is_normalized:
        raise ValueError('graph has isolated vertices, normalize it first')
    if not g.is_balanced:
        return Verdict(False, False, witness=Witness.odd_or_unbalanced(g))

    if matching is None:
        m, stuck = peel(g)
        if m is None:
            unmixed, detail = is_unmixed(g)
            stuck.data['diagnosis'] = check_condition2(g, detail) if unmixed else detail
            return Verdict(False, unmixed, witness=stuck)
    else:
        m = OrderedMatching(matching, Provenance.SUPPLIED)
        m.require_perfect(g)

    witness = check_condition1(g, m)
    if witness is not None:
        return Verdict(False, False, witness=witness)
    digraph = PairDigraph(g, m)
    witness = check_condition2(g, m, digraph)
    if witness is not None:
        return Verdict(False, True, witness=witness)
    order = find_hh_order(g, m, digraph)
    return Verdict(True, True, certificate=Certificate(m, order))


def find_hh_order(g, m, digraph=None):
    """Order the pairs so that ``x_i ~ y_j`` implies ``i <= j``.

    When the arc relation is a strict partial order, sorting by in-degree is
    a topological sort; pairs with fewer predecessors come first, then the
    lowest pair index. The result is checked with :py:func:`verify_hh_order`;
    raises :py:class:`OrderCycle` or :py:class:`OrderViolation` when the
    graph admits no such order."""
    m.require_perfect(g)
    digraph = digraph or PairDigraph(g, m)
    order = sorted(range(digraph.size), key=lambda i: (popcount(digraph.inn[i]), i))
    violation = verify_hh_order(g, m, order, digraph)
    if violation is None:
        return order

    order = _kahn_order(digraph)
    if len(order) < digraph.size:
        placed = 0
        for i in order:
            placed |= 1 << i
        raise OrderCycle(digraph.find_cycle(full_mask(digraph.size) & ~placed))
    raise OrderViolation(verify_hh_order(g, m, order, digraph))


def _kahn_order(digraph):
    """Topological order, lowest ready pair first; short when there is a cycle."""
    indegree = [popcount(inn) - 1 for inn in digraph.inn]
    ready = [i for i, d in enumerate(indegree) if d == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        i = heapq.heappop(ready)
        order.append(i)
        for j in bits(digraph.out[i] & ~(1 << i)):
            indegree[j] -= 1
            if indegree[j] == 0:
                heapq.heappush(ready, j)
    return order


def _check_permutation(order, n):
    if sorted(order) != list(range(n)):
        raise ValueError(f'{order!r} is not a permutation of the {n} pair indices')


def verify_hh_order(g, m, order, digraph=None):
    """Check the three ordering conditions for the pairs listed in `order`.

    Returns None, or ``(condition, pair indices)`` for the first violation."""
    _check_permutation(order, len(m))
    for i, (x, y) in enumerate(m.pairs):
        if not g.has_edge(x, y):
            return ('matching', (i,))
    digraph = digraph or PairDigraph(g, m)

    placed = 0
    for j in order:
        early = digraph.inn[j] & ~placed & ~(1 << j)
        if early:
            return ('forward', (lowest_bit(early), j))
        placed |= 1 << j

    # All arcs now point forward, so any i -> j -> k has positions i < j < k.
    return _transitivity_violation(digraph)


def _transitivity_violation(digraph):
    for j in range(digraph.size):
        loop = 1 << j
        predecessors = digraph.inn[j] & ~loop
        successors = digraph.out[j] & ~loop
        if popcount(predecessors) <= popcount(successors):
            for i in bits(predecessors):
                missing = successors & ~digraph.out[i]
                if missing:
                    return ('transitivity', (i, j, lowest_bit(missing)))
        else:
            for k in bits(successors):
                missing = predecessors & ~digraph.inn[k]
                if missing:
                    return ('transitivity', (lowest_bit(missing), j, k))
    return None


def verify_villarreal_order(g, m, order, ordered_triples=False):
    """Check ``x_i ~ y_i`` and ``x_i ~ y_j, x_j ~ y_k => x_i ~ y_k``.

    By default the implication is required for every triple of distinct
    pairs, which makes the order irrelevant. ``ordered_triples=True`` only
    requires it for positions ``i < j < k`` in `order`; that weaker form
    accepts some graphs that are not unmixed."""
    _check_permutation(order, len(m))
    if not m.is_perfect(g):
        return False
    digraph = PairDigraph(g, m)
    if not ordered_triples:
        for j in range(digraph.size):
            for i in bits(digraph.inn[j] & ~(1 << j)):
                if digraph.out[j] & ~digraph.out[i]:
                    return False
        return True

    placed = 0
    everything = full_mask(digraph.size)
    for j in order:
        loop = 1 << j
        later = everything & ~placed & ~loop
        for i in bits(digraph.inn[j] & placed):
            if digraph.out[j] & later & ~digraph.out[i]:
                return False
        placed |= loop
    return True
