"""Instances for tests, sweeps and benchmarks.

All randomness comes from :py:class:`random.Random` seeded explicitly (a
Mersenne Twister, recorded as ``RANDOM_ALGORITHM`` in generated files)."""
import heapq
import logging
import random

from .conf import resolve, settings
from .exceptions import BoundExceeded, GeneratorError
from .graph import BipartiteGraph, normalize
from .utils import bits, enum, full_mask, lowest_bit, mask_of

logger = logging.getLogger(__name__)

PerturbOp = enum(
    'PerturbOp',
    ADD_EDGE='add_edge',
    REMOVE_EDGE='remove_edge',
)


def grid_graph(part_a_size, part_b_size, rank):
    """Raw graph whose edge ``(a, b)`` is present iff bit ``a * nB + b`` of
    `rank` is set."""
    if not 0 <= rank < 1 << (part_a_size * part_b_size):
        raise ValueError(f'rank {rank} outside the {part_a_size}x{part_b_size} grid')
    row = full_mask(part_b_size)
    adj_a = [rank >> (a * part_b_size) & row for a in range(part_a_size)]
    return BipartiteGraph(part_a_size, part_b_size, adj_a)


def grid_rank(g):
    return sum(row << (a * g.part_b_size) for a, row in enumerate(g.adj_a))


def check_grid_bound(part_a_size, part_b_size, limit=None):
    limit = resolve(limit, 'SWEEP_CELL_LIMIT')
    if part_a_size < 0 or part_b_size < 0:
        raise GeneratorError('part sizes must be nonnegative')
    if part_a_size * part_b_size > limit:
        raise BoundExceeded(f'{part_a_size}x{part_b_size} grid has more than {limit} cells')


def all_bipartite_graphs(part_a_size, part_b_size, limit=None):
    """Every edge subset of the grid by ascending rank, normalized."""
    check_grid_bound(part_a_size, part_b_size, limit)
    for rank in range(1 << (part_a_size * part_b_size)):
        yield normalize(grid_graph(part_a_size, part_b_size, rank))[0]


def random_bipartite(part_a_size, part_b_size, edge_probability, seed):
    if not 0 <= edge_probability <= 1:
        raise GeneratorError(f'edge probability {edge_probability} outside [0, 1]')
    rng = random.Random(seed)
    edges = [(a, b) for a in range(part_a_size) for b in range(part_b_size)
             if rng.random() < edge_probability]
    return normalize(BipartiteGraph.from_edges(part_a_size, part_b_size, edges))[0]


class PosetSpec:
    """Strict partial order on ``0..element_count-1``.

    ``above[i]`` is the bitset of elements strictly greater than ``i``. The
    given relation is transitively closed on construction; a relation with a
    cycle (or a reflexive pair) is rejected."""

    def __init__(self, element_count, relation=()):
        above = [0] * element_count
        for i, j in relation:
            if not (0 <= i < element_count and 0 <= j < element_count):
                raise GeneratorError(f'({i}, {j}) is outside 0..{element_count - 1}')
            above[i] |= 1 << j
        self._close(above)

    @classmethod
    def from_masks(cls, above):
        ps = cls.__new__(cls)
        ps._close(list(above))
        return ps

    @classmethod
    def chain(cls, n):
        everything = full_mask(n)
        return cls.from_masks(everything & ~full_mask(i + 1) for i in range(n))

    @classmethod
    def antichain(cls, n):
        return cls.from_masks([0] * n)

    def _close(self, above):
        n = len(above)
        for i, up in enumerate(above):
            if up >> i & 1:
                raise GeneratorError(f'relation is reflexive at {i}')
            if up >> n:
                raise GeneratorError(f'{i} is related to an element outside 0..{n - 1}')
        below = [[] for _ in range(n)]
        waiting = [0] * n
        for i, up in enumerate(above):
            for j in bits(up):
                below[j].append(i)
                waiting[i] += 1

        # Close maximal elements first; an element's closure only needs the
        # closures of its direct successors, and a successor already absorbed
        # into the running union contributes nothing new.
        ready = [i for i in range(n) if not waiting[i]]
        heapq.heapify(ready)
        closed = [0] * n
        done = 0
        while ready:
            i = heapq.heappop(ready)
            done += 1
            pending = union = above[i]
            while pending:
                j = lowest_bit(pending)
                union |= closed[j]
                pending &= ~(1 << j) & ~closed[j]
            closed[i] = union
            for k in below[i]:
                waiting[k] -= 1
                if not waiting[k]:
                    heapq.heappush(ready, k)
        if done < n:
            raise GeneratorError('relation has a cycle, it is not a strict partial order')

        self.element_count = n
        self.above = closed
        self.below = _transpose_masks(closed, n)

    @property
    def relation(self):
        return {(i, j) for i, up in enumerate(self.above) for j in bits(up)}

    def less(self, i, j):
        return bool(self.above[i] >> j & 1)

    def __eq__(self, other):
        if not isinstance(other, PosetSpec):
            return NotImplemented
        return self.above == other.above

    def __repr__(self):
        return f'PosetSpec({self.element_count} elements, {len(self.relation)} relations)'


def _transpose_masks(rows, width):
    cols = [[] for _ in range(width)]
    for i, row in enumerate(rows):
        for j in bits(row):
            cols[j].append(i)
    return [mask_of(c) for c in cols]


def poset_graph(ps):
    """``x_i ~ y_j`` iff ``i == j`` or ``i < j`` in the poset."""
    adj_a = [up | 1 << i for i, up in enumerate(ps.above)]
    adj_b = [down | 1 << j for j, down in enumerate(ps.below)]
    return BipartiteGraph(ps.element_count, ps.element_count, adj_a, adj_b)


def random_poset(n, relation_probability, seed):
    """Relate each forward pair ``i < j`` (by index) independently, then close."""
    if n < 1:
        raise GeneratorError('a poset needs at least one element')
    if not 0 <= relation_probability <= 1:
        raise GeneratorError(f'relation probability {relation_probability} outside [0, 1]')
    rng = random.Random(seed)
    above = [mask_of(j for j in range(i + 1, n) if rng.random() < relation_probability)
             for i in range(n)]
    return PosetSpec.from_masks(above)


def perturb(g, op, seed):
    """Add or remove one uniformly chosen edge, then normalize."""
    if op == PerturbOp.ADD_EDGE:
        positions = [(a, b) for a in range(g.part_a_size) for b in range(g.part_b_size)
                     if not g.has_edge(a, b)]
    elif op == PerturbOp.REMOVE_EDGE:
        positions = list(g.edges)
    else:
        raise GeneratorError(f'unknown perturbation {op!r}')
    if not positions:
        raise GeneratorError(f'no position for {op} in {g!r}')
    a, b = random.Random(seed).choice(positions)
    adj_a = list(g.adj_a)
    adj_a[a] ^= 1 << b
    logger.debug(f'{op} a{a + 1} b{b + 1}')
    return normalize(BipartiteGraph(g.part_a_size, g.part_b_size, adj_a))[0]


def provenance_comment(kind, **params):
    """``generator: ...`` comment recording how a graph was made."""
    fields = [f'{k}={v}' for k, v in params.items()]
    fields.append(f'rng={settings.RANDOM_ALGORITHM}')
    return f'generator: {kind} ' + ' '.join(fields)
