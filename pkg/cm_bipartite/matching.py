import logging
from collections import deque, namedtuple

from .conf import resolve
from .exceptions import UnbalancedParts
from .utils import bits, enum, full_mask, popcount

logger = logging.getLogger(__name__)

FAKE_INFINITY = -1
UNMATCHED = -1

PerfectMatchings = enum(
    'PerfectMatchings',
    UNIQUE='unique',
    MULTIPLE='multiple',
    NONE='none',
)


class Matching:
    """A set of vertex-disjoint edges as 0-based ``(a, b)`` pairs."""

    def __init__(self, pairs):
        self.pairs = [tuple(p) for p in pairs]

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __getitem__(self, i):
        return self.pairs[i]

    def __eq__(self, other):
        if not isinstance(other, Matching):
            return NotImplemented
        return sorted(self.pairs) == sorted(other.pairs)

    def __hash__(self):
        return hash(tuple(sorted(self.pairs)))

    def __repr__(self):
        pairs = ', '.join(f'a{a + 1}b{b + 1}' for a, b in self.pairs)
        return f'{type(self).__name__}([{pairs}])'

    def is_valid(self, g):
        a_seen = set()
        b_seen = set()
        for a, b in self.pairs:
            if not (0 <= a < g.part_a_size and 0 <= b < g.part_b_size):
                return False
            if not g.has_edge(a, b) or a in a_seen or b in b_seen:
                return False
            a_seen.add(a)
            b_seen.add(b)
        return True

    def is_perfect(self, g):
        return (g.is_balanced and len(self.pairs) == g.part_a_size and
                self.is_valid(g))

    def to_record(self):
        return [[a + 1, b + 1] for a, b in sorted(self.pairs)]


class HallViolator(namedtuple('HallViolator', ['subset', 'neighborhood'])):
    """A-vertices whose joint neighborhood is smaller than the set itself."""
    __slots__ = ()

    def is_valid(self, g):
        if not self.subset or not all(0 <= a < g.part_a_size for a in self.subset):
            return False
        union = set()
        for a in self.subset:
            union.update(bits(g.adj_a[a]))
        return union == set(self.neighborhood) and len(union) < len(self.subset)

    def to_record(self):
        return {'subset': sorted(a + 1 for a in self.subset),
                'neighborhood': sorted(b + 1 for b in self.neighborhood)}


class HopcroftKarp:
    """Hopcroft-Karp maximum matching on a `BipartiteGraph`.

    Left vertices are the A side. Vertices and neighbors are scanned in
    ascending index order so the result is fixed for a given graph.
    """

    def __init__(self, g):
        self._graph_left = [bits(row) for row in g.adj_a]
        self._right_count = g.part_b_size
        self._reference_distance = FAKE_INFINITY
        self._pair_left = [UNMATCHED] * g.part_a_size
        self._pair_right = [UNMATCHED] * g.part_b_size
        self._dist_left = [FAKE_INFINITY] * g.part_a_size
        self._size = None

    def run(self):
        if self._size is not None:
            return self._size
        matchings = 0
        while self._bfs():
            for left in range(len(self._graph_left)):
                if self._pair_left[left] == UNMATCHED and self._dfs(left):
                    matchings += 1
        self._size = matchings
        return matchings

    def get_maximum_matching(self):
        self.run()
        return Matching((left, right) for left, right in enumerate(self._pair_left)
                        if right != UNMATCHED)

    def _bfs(self):
        vertex_queue = deque()
        for left, right in enumerate(self._pair_left):
            if right == UNMATCHED:
                vertex_queue.append(left)
                self._dist_left[left] = 0
            else:
                self._dist_left[left] = FAKE_INFINITY
        self._reference_distance = FAKE_INFINITY
        while vertex_queue:
            left = vertex_queue.popleft()
            dist = self._dist_left[left]
            if self._reference_distance != FAKE_INFINITY and dist >= self._reference_distance:
                continue
            for right in self._graph_left[left]:
                other_left = self._pair_right[right]
                if other_left == UNMATCHED:
                    if self._reference_distance == FAKE_INFINITY:
                        self._reference_distance = dist + 1
                elif self._dist_left[other_left] == FAKE_INFINITY:
                    self._dist_left[other_left] = dist + 1
                    vertex_queue.append(other_left)
        return self._reference_distance != FAKE_INFINITY

    def _dfs(self, root):
        # Iterative form of the layered augmenting-path search; `path[i]` is
        # the right vertex taken from `stack[i]`.
        stack = [[root, 0]]
        path = []
        while stack:
            frame = stack[-1]
            left = frame[0]
            adjacency = self._graph_left[left]
            next_dist = self._dist_left[left] + 1
            descended = False
            while frame[1] < len(adjacency):
                right = adjacency[frame[1]]
                frame[1] += 1
                other_left = self._pair_right[right]
                if other_left == UNMATCHED:
                    if self._reference_distance == next_dist:
                        path.append(right)
                        for (l, _), r in zip(stack, path):
                            self._pair_left[l] = r
                            self._pair_right[r] = l
                        return True
                elif self._dist_left[other_left] == next_dist:
                    path.append(right)
                    stack.append([other_left, 0])
                    descended = True
                    break
            if not descended:
                self._dist_left[left] = FAKE_INFINITY
                stack.pop()
                if path:
                    path.pop()
        return False

    def hall_violator(self):
        """Alternating reachability from the unmatched A vertices.

        Returns None when every A vertex is matched."""
        self.run()
        free = [a for a, b in enumerate(self._pair_left) if b == UNMATCHED]
        if not free:
            return None
        reached_a = set(free)
        reached_b = set()
        queue = deque(free)
        while queue:
            left = queue.popleft()
            for right in self._graph_left[left]:
                if right in reached_b:
                    continue
                reached_b.add(right)
                # a free right vertex here would be an augmenting path
                partner = self._pair_right[right]
                if partner not in reached_a:
                    reached_a.add(partner)
                    queue.append(partner)
        return HallViolator(frozenset(reached_a), frozenset(reached_b))


def max_matching(g):
    return HopcroftKarp(g).get_maximum_matching()


def hall_violator(g):
    """None iff `g` has a perfect matching, else a violating A-subset."""
    if not g.is_balanced:
        raise UnbalancedParts(g.part_a_size, g.part_b_size)
    return HopcroftKarp(g).hall_violator()


def enumerate_perfect_matchings(g, cap=None):
    """All perfect matchings, at most `cap` of them.

    Returns ``(matchings, truncated)``; `truncated` is set iff the cap was
    reached. Branches on the uncovered vertex of least remaining degree."""
    cap = resolve(cap, 'ENUMERATION_CAP')
    if cap < 1:
        raise ValueError('cap must be at least 1')
    if not g.is_balanced:
        return [], False

    found = []
    chosen = []

    def least_degree_vertex(alive_a, alive_b):
        best = None
        for a in bits(alive_a):
            degree = popcount(g.adj_a[a] & alive_b)
            if best is None or degree < best[0]:
                best = (degree, 'A', a)
                if degree <= 1:
                    return best
        for b in bits(alive_b):
            degree = popcount(g.adj_b[b] & alive_a)
            if degree < best[0]:
                best = (degree, 'B', b)
                if degree <= 1:
                    return best
        return best

    def options_at(alive_a, alive_b):
        _, side, v = least_degree_vertex(alive_a, alive_b)
        if side == 'A':
            return iter([(v, b) for b in bits(g.adj_a[v] & alive_b)])
        return iter([(a, v) for a in bits(g.adj_b[v] & alive_a)])

    full_a, full_b = full_mask(g.part_a_size), full_mask(g.part_b_size)
    if not full_a:
        found.append(Matching([]))
        stack = []
    else:
        stack = [(full_a, full_b, options_at(full_a, full_b))]
    # `chosen` holds the pair taken by every frame but the top one
    while stack and len(found) < cap:
        alive_a, alive_b, options = stack[-1]
        pair = next(options, None)
        if pair is None:
            stack.pop()
            if chosen:
                chosen.pop()
            continue
        a, b = pair
        rest_a, rest_b = alive_a & ~(1 << a), alive_b & ~(1 << b)
        chosen.append(pair)
        if rest_a:
            stack.append((rest_a, rest_b, options_at(rest_a, rest_b)))
        else:
            found.append(Matching(sorted(chosen)))
            chosen.pop()

    truncated = len(found) >= cap
    if truncated:
        logger.debug(f'Perfect matching enumeration stopped at cap {cap}')
    return found, truncated


def has_unique_perfect_matching(g):
    matchings, _ = enumerate_perfect_matchings(g, cap=2)
    if not matchings:
        return PerfectMatchings.NONE
    if len(matchings) == 1:
        return PerfectMatchings.UNIQUE
    return PerfectMatchings.MULTIPLE
