import itertools
import logging
from bisect import bisect_left
from collections import namedtuple
from functools import lru_cache

from .conf import resolve
from .exceptions import InvalidVertex, ParseError
from .utils import bits, enum, full_mask, lowest_bit, mask_of, popcount

logger = logging.getLogger(__name__)

Side = enum(
    'Side',
    A='A',
    B='B',
)


class VertexRef(namedtuple('VertexRef', ['side', 'index'])):
    """A vertex of either part. `index` is 0-based, labels are 1-based."""
    __slots__ = ()

    @classmethod
    def parse(cls, label):
        label = label.strip()
        side = label[:1].upper()
        if side not in (Side.A, Side.B) or not label[1:].isdigit() or int(label[1:]) < 1:
            raise InvalidVertex(f'{label!r} is not a vertex label')
        return cls(side, int(label[1:]) - 1)

    def __str__(self):
        return f'{self.side.lower()}{self.index + 1}'


class BipartiteGraph:
    """Immutable bipartite graph with per-vertex neighbor bitsets.

    ``adj_a[a]`` has bit ``b`` set iff ``a ~ b``; ``adj_b`` is the transpose.
    """

    def __init__(self, part_a_size, part_b_size, adj_a, adj_b=None):
        adj_a = tuple(adj_a)
        if len(adj_a) != part_a_size:
            raise ValueError(f'expected {part_a_size} A-rows, got {len(adj_a)}')
        limit = full_mask(part_b_size)
        for a, row in enumerate(adj_a):
            if row < 0 or row & ~limit:
                raise InvalidVertex(f'a{a + 1} has a neighbor outside 1..{part_b_size}')
        if adj_b is None:
            adj_b = _transpose(adj_a, part_b_size)
        else:
            adj_b = tuple(adj_b)
            if len(adj_b) != part_b_size:
                raise ValueError(f'expected {part_b_size} B-rows, got {len(adj_b)}')
        self.part_a_size = part_a_size
        self.part_b_size = part_b_size
        self.adj_a = adj_a
        self.adj_b = adj_b
        self._edges = None

    @classmethod
    def from_edges(cls, part_a_size, part_b_size, edges):
        """Build from 0-based ``(a, b)`` pairs. Duplicates are an error."""
        rows = [set() for _ in range(part_a_size)]
        for a, b in edges:
            if not (0 <= a < part_a_size and 0 <= b < part_b_size):
                raise InvalidVertex(f'edge a{a + 1} b{b + 1} outside '
                                    f'{part_a_size}x{part_b_size}')
            if b in rows[a]:
                raise ValueError(f'duplicate edge a{a + 1} b{b + 1}')
            rows[a].add(b)
        return cls(part_a_size, part_b_size, [mask_of(r) for r in rows])

    @classmethod
    def empty(cls):
        return cls(0, 0, ())

    @property
    def vertex_count(self):
        return self.part_a_size + self.part_b_size

    @property
    def edge_count(self):
        return sum(popcount(row) for row in self.adj_a)

    @property
    def edges(self):
        """Sorted list of 0-based ``(a, b)`` pairs."""
        if self._edges is None:
            self._edges = [(a, b) for a, row in enumerate(self.adj_a) for b in bits(row)]
        return self._edges

    @property
    def is_balanced(self):
        return self.part_a_size == self.part_b_size

    @property
    def is_normalized(self):
        return all(self.adj_a) and all(self.adj_b)

    def side_size(self, side):
        return self.part_a_size if side == Side.A else self.part_b_size

    def check_vertex(self, v):
        if v.side not in (Side.A, Side.B) or not 0 <= v.index < self.side_size(v.side):
            raise InvalidVertex(f'{v} is not a vertex of this graph')

    def neighbor_mask(self, v):
        self.check_vertex(v)
        return self.adj_a[v.index] if v.side == Side.A else self.adj_b[v.index]

    def degree(self, v):
        return popcount(self.neighbor_mask(v))

    def has_edge(self, a, b):
        return bool(self.adj_a[a] >> b & 1)

    def vertices(self):
        return ([VertexRef(Side.A, a) for a in range(self.part_a_size)] +
                [VertexRef(Side.B, b) for b in range(self.part_b_size)])

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self.part_a_size, self.part_b_size, self.adj_a) == \
            (other.part_a_size, other.part_b_size, other.adj_a)

    def __hash__(self):
        return hash((self.part_a_size, self.part_b_size, self.adj_a))

    def __repr__(self):
        return (f'BipartiteGraph({self.part_a_size}x{self.part_b_size}, '
                f'{self.edge_count} edges)')


def _transpose(rows, width):
    cols = [[] for _ in range(width)]
    for i, row in enumerate(rows):
        for j in bits(row):
            cols[j].append(i)
    return tuple(mask_of(c) for c in cols)


def _side_mask(g, side, vertices):
    positions = []
    for v in vertices:
        if isinstance(v, VertexRef):
            if v.side != side:
                raise InvalidVertex(f'{v} is not on side {side}')
        else:
            v = VertexRef(side, v)
        g.check_vertex(v)
        positions.append(v.index)
    return mask_of(positions)


def neighbors(g, v):
    """The opposite-side vertices adjacent to `v`."""
    other = Side.B if v.side == Side.A else Side.A
    return {VertexRef(other, i) for i in bits(g.neighbor_mask(v))}


def complete_between_masks(g, a_mask, b_mask):
    """Return None if every a in `a_mask` is adjacent to every b in `b_mask`,
    otherwise the first missing ``(a, b)`` pair.

    Scans whichever side has fewer vertices."""
    if not a_mask or not b_mask:
        return None
    if popcount(a_mask) <= popcount(b_mask):
        for a in bits(a_mask):
            missing = b_mask & ~g.adj_a[a]
            if missing:
                return (a, lowest_bit(missing))
    else:
        for b in bits(b_mask):
            missing = a_mask & ~g.adj_b[b]
            if missing:
                return (lowest_bit(missing), b)
    return None


def is_complete_between(g, a_vertices, b_vertices):
    """Whether the A-set and B-set induce a complete bipartite graph.

    Returns ``(True, None)`` or ``(False, (a, b))`` with a missing pair as
    0-based indices. Vertices may be given as indices or `VertexRef`s."""
    missing = complete_between_masks(g, _side_mask(g, Side.A, a_vertices),
                                     _side_mask(g, Side.B, b_vertices))
    return missing is None, missing


def complement_connected_on_pairs(g, e1, e2):
    """Whether the complement of the subgraph induced on the endpoints of the
    disjoint edges `e1` and `e2` is connected."""
    (a1, b1), (a2, b2) = e1, e2
    for a, b in (e1, e2):
        g.check_vertex(VertexRef(Side.A, a))
        g.check_vertex(VertexRef(Side.B, b))
        if not g.has_edge(a, b):
            raise ValueError(f'a{a + 1} b{b + 1} is not an edge')
    if a1 == a2 or b1 == b2:
        raise ValueError('pairs are not vertex-disjoint')

    nodes = [VertexRef(Side.A, a1), VertexRef(Side.B, b1),
             VertexRef(Side.A, a2), VertexRef(Side.B, b2)]

    def adjacent(u, v):
        if u.side == v.side:
            return False
        a, b = (u, v) if u.side == Side.A else (v, u)
        return g.has_edge(a.index, b.index)

    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        u = stack.pop()
        for v in nodes:
            if v not in seen and not adjacent(u, v):
                seen.add(v)
                stack.append(v)
    return len(seen) == len(nodes)


def induced(g, a_mask, b_mask):
    """Subgraph on the kept vertices, reindexed in ascending order."""
    a_keep = bits(a_mask)
    b_keep = bits(b_mask)
    b_new = {b: i for i, b in enumerate(b_keep)}
    a_new = {a: i for i, a in enumerate(a_keep)}
    adj_a = [mask_of(b_new[b] for b in bits(g.adj_a[a] & b_mask)) for a in a_keep]
    adj_b = [mask_of(a_new[a] for a in bits(g.adj_b[b] & a_mask)) for b in b_keep]
    return BipartiteGraph(len(a_keep), len(b_keep), adj_a, adj_b)


def normalize(g):
    """Strip isolated vertices. Returns the new graph and the stripped
    vertices (indexed as in `g`)."""
    a_mask = mask_of(a for a, row in enumerate(g.adj_a) if row)
    b_mask = mask_of(b for b, row in enumerate(g.adj_b) if row)
    stripped = ([VertexRef(Side.A, a) for a, row in enumerate(g.adj_a) if not row] +
                [VertexRef(Side.B, b) for b, row in enumerate(g.adj_b) if not row])
    if not stripped:
        return g, []
    logger.debug(f'Stripping isolated vertices {", ".join(map(str, stripped))}')
    return induced(g, a_mask, b_mask), stripped


def delete_pair(g, a, b):
    """Remove `a` and `b` with their edges, then strip isolated vertices."""
    a_mask = full_mask(g.part_a_size) & ~(1 << a)
    b_mask = full_mask(g.part_b_size) & ~(1 << b)
    return normalize(induced(g, a_mask, b_mask))[0]


def renumber_pairs(pairs, stripped):
    """Map ``(a, b)`` pairs indexed as in the input onto the graph left after
    stripping the vertices in `stripped` (see :py:func:`normalize`)."""
    removed = {side: sorted(v.index for v in stripped if v.side == side)
               for side in (Side.A, Side.B)}

    def shift(side, index):
        position = bisect_left(removed[side], index)
        if position < len(removed[side]) and removed[side][position] == index:
            raise InvalidVertex(f'{VertexRef(side, index)} is isolated and was stripped')
        return index - position

    return [(shift(Side.A, a), shift(Side.B, b)) for a, b in pairs]


def parse_graph(text, normalized=True):
    """Parse the ``p bip`` text format.

    Returns ``(graph, stripped)``; `stripped` lists the isolated vertices that
    were removed (empty when `normalized` is false)."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode('ascii', errors='replace')
    if isinstance(text, str):
        text = text.splitlines()

    header = None
    edges = []
    seen = set()
    line_number = 0
    for line_number, line in enumerate(text, start=1):
        if isinstance(line, (bytes, bytearray)):
            line = line.decode('ascii', errors='replace')
        tokens = line.split()
        if not tokens or tokens[0] == 'c':
            continue
        kind = tokens[0]
        if kind == 'p':
            if header is not None:
                raise ParseError('duplicate header', line_number)
            if len(tokens) != 5 or tokens[1] != 'bip':
                raise ParseError("malformed header, expected 'p bip <nA> <nB> <m>'",
                                 line_number)
            header = tuple(_count(t, line_number) for t in tokens[2:])
        elif kind == 'e':
            if header is None:
                raise ParseError('edge before header', line_number)
            if len(tokens) != 3:
                raise ParseError("malformed edge, expected 'e <a> <b>'", line_number)
            a, b = (_count(t, line_number) for t in tokens[1:])
            if not (1 <= a <= header[0] and 1 <= b <= header[1]):
                raise ParseError(f'edge endpoint out of range: e {a} {b}', line_number)
            if (a, b) in seen:
                raise ParseError(f'duplicate edge: e {a} {b}', line_number)
            seen.add((a, b))
            edges.append((a - 1, b - 1))
        else:
            raise ParseError(f'unknown line type {kind!r}', line_number)

    if header is None:
        raise ParseError('missing header', line_number or None)
    part_a_size, part_b_size, edge_count = header
    if len(edges) != edge_count:
        raise ParseError(f'header announces {edge_count} edges, found {len(edges)}',
                         line_number)
    graph = BipartiteGraph.from_edges(part_a_size, part_b_size, edges)
    if not normalized:
        return graph, []
    return normalize(graph)


def _count(token, line_number):
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f'{token!r} is not an integer', line_number) from None
    if value < 0:
        raise ParseError(f'{token!r} is negative', line_number)
    return value


def serialize_graph(g, comments=()):
    lines = [f'c {comment}' for comment in comments]
    lines.append(f'p bip {g.part_a_size} {g.part_b_size} {g.edge_count}')
    lines.extend(f'e {a + 1} {b + 1}' for a, b in g.edges)
    return '\n'.join(lines) + '\n'


def graph_record(g):
    return {
        'part_a': g.part_a_size,
        'part_b': g.part_b_size,
        'edges': [[a + 1, b + 1] for a, b in g.edges],
    }


def graph_from_record(record):
    return BipartiteGraph.from_edges(
        record['part_a'], record['part_b'],
        [(a - 1, b - 1) for a, b in record['edges']])


@lru_cache(maxsize=None)
def _permutation_table(width):
    table = []
    for perm in itertools.permutations(range(width)):
        table.append([mask_of(perm[p] for p in bits(m)) for m in range(1 << width)])
    return table


def canonical_key(g, side_limit=None):
    """Key shared by exactly the graphs isomorphic to `g` (sides may be
    swapped). None when the smaller side exceeds `side_limit`."""
    side_limit = resolve(side_limit, 'CANONICAL_KEY_SIDE_LIMIT')
    small = min(g.part_a_size, g.part_b_size)
    if small > side_limit:
        return None
    candidates = []
    if g.part_b_size <= g.part_a_size:
        candidates.append(g.adj_a)
    if g.part_a_size <= g.part_b_size:
        candidates.append(g.adj_b)
    best = min(tuple(sorted(table[row] for row in rows))
               for rows in candidates for table in _permutation_table(small))
    return (small, max(g.part_a_size, g.part_b_size), best)
