"""Independence complexes and the combinatorial checks run on them.

Vertices of the independence complex of a graph with parts of sizes ``nA``
and ``nB`` are numbered ``0..nA-1`` for side A and ``nA..nA+nB-1`` for side
B. Facets are kept as sorted tuples, in lexicographic order.
"""
import logging

from .conf import resolve
from .exceptions import OracleUnavailable
from .utils import bits, enum, full_mask, mask_of, popcount

logger = logging.getLogger(__name__)

Shellable = enum(
    'Shellable',
    YES='yes',
    NO='no',
    CAP_EXCEEDED='cap_exceeded',
)


class SimplicialComplex:
    def __init__(self, vertex_count, facets, part_a_size=None):
        facets = sorted({tuple(sorted(f)) for f in facets})
        masks = [mask_of(f) for f in facets]
        limit = full_mask(vertex_count)
        for facet, mask in zip(facets, masks):
            if mask & ~limit:
                raise ValueError(f'facet {facet} has a vertex outside 0..{vertex_count - 1}')
        for i, mask in enumerate(masks):
            for j, other in enumerate(masks):
                if i != j and mask & other == mask:
                    raise ValueError(f'facet {facets[i]} is contained in {facets[j]}')
        self.vertex_count = vertex_count
        self.facets = facets
        self.facet_masks = masks
        self.part_a_size = part_a_size

    @property
    def dimension(self):
        """-1 for the complex whose only face is the empty set."""
        if not self.facets:
            return -2
        return max(len(f) for f in self.facets) - 1

    def contains(self, face):
        mask = mask_of(face)
        return any(mask & m == mask for m in self.facet_masks)

    def label(self, v):
        if self.part_a_size is None:
            return str(v + 1)
        if v < self.part_a_size:
            return f'a{v + 1}'
        return f'b{v - self.part_a_size + 1}'

    def describe_face(self, face):
        return '{' + ','.join(self.label(v) for v in face) + '}'

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (self.vertex_count, self.facets) == (other.vertex_count, other.facets)

    def __hash__(self):
        return hash((self.vertex_count, tuple(self.facets)))

    def __repr__(self):
        return f'SimplicialComplex({self.vertex_count} vertices, {len(self.facets)} facets)'


def independence_complex(g, cap=None):
    """Facets are the maximal independent sets of `g`, found as the maximal
    cliques of its complement with pivoting Bron-Kerbosch."""
    cap = resolve(cap, 'FACET_CAP')
    n_a = g.part_a_size
    vertex_count = g.vertex_count
    side_a = full_mask(n_a)
    side_b = full_mask(vertex_count) & ~side_a
    compatible = []
    for a in range(n_a):
        compatible.append(side_a & ~(1 << a) | (side_b & ~(g.adj_a[a] << n_a)))
    for b in range(g.part_b_size):
        compatible.append(side_b & ~(1 << (n_a + b)) | (side_a & ~g.adj_b[b]))

    facets = []

    def branch(chosen, candidates, excluded):
        """A search frame, or None once `chosen` can grow no further."""
        if not candidates:
            if not excluded:
                if len(facets) >= cap:
                    raise OracleUnavailable(
                        f'independence complex has more than {cap} facets', cap)
                facets.append(chosen)
            return None
        pivot = max(bits(candidates | excluded),
                    key=lambda u: popcount(candidates & compatible[u]))
        return [chosen, candidates, excluded, iter(bits(candidates & ~compatible[pivot]))]

    root = branch(0, full_mask(vertex_count), 0)
    stack = [root] if root else []
    while stack:
        frame = stack[-1]
        chosen, candidates, excluded, order = frame
        v = next(order, None)
        if v is None:
            stack.pop()
            continue
        frame[1] = candidates & ~(1 << v)
        frame[2] = excluded | 1 << v
        child = branch(chosen | 1 << v, candidates & compatible[v], excluded & compatible[v])
        if child:
            stack.append(child)
    return SimplicialComplex(vertex_count, [bits(f) for f in facets], part_a_size=n_a)


def is_pure(c):
    """``(True, None)`` or ``(False, (smaller_facet, larger_facet))``."""
    if not c.facets:
        return True, None
    smallest = min(c.facets, key=len)
    largest = max(c.facets, key=len)
    if len(smallest) == len(largest):
        return True, None
    return False, (smallest, largest)


def pair_masks(c, m):
    if c.part_a_size is None:
        raise ValueError('complex does not come from a bipartite graph')
    return [1 << a | 1 << (c.part_a_size + b) for a, b in m.pairs]


def is_completely_balanced(c, m):
    """Every facet meets every matched pair ``{x_i, y_i}`` exactly once."""
    blocks = pair_masks(c, m)
    return all(popcount(facet & block) == 1
               for facet in c.facet_masks for block in blocks)


def faces(c, cap=None):
    """All faces including the empty one, by size and then lexicographically."""
    cap = resolve(cap, 'FACE_CAP')
    if not c.facets:
        return []
    level = [()]
    found = [()]
    while level:
        next_level = []
        for face in level:
            mask = mask_of(face)
            reach = 0
            for facet in c.facet_masks:
                if facet & mask == mask:
                    reach |= facet
            start = face[-1] + 1 if face else 0
            for v in bits(reach >> start):
                next_level.append(face + (start + v,))
        if len(found) + len(next_level) > cap:
            raise OracleUnavailable(f'complex has more than {cap} faces', cap)
        found.extend(next_level)
        level = next_level
    return found


def link(c, face):
    face = tuple(sorted(face))
    mask = mask_of(face)
    containing = [f for f in c.facet_masks if f & mask == mask]
    if not containing:
        raise ValueError(f'{c.describe_face(face)} is not a face of the complex')
    return SimplicialComplex(c.vertex_count, [bits(f & ~mask) for f in containing],
                             part_a_size=c.part_a_size)


def is_shellable_bruteforce(c, facet_cap=None):
    """Search for a shelling order of the pure complex `c`.

    Adding facet F to the facets placed so far is allowed when F meets their
    union in a pure subcomplex of codimension one in F. Whether that holds
    depends only on the set of placed facets, so dead sets are memoized."""
    facet_cap = resolve(facet_cap, 'SHELLING_FACET_CAP')
    pure, _ = is_pure(c)
    if not pure:
        raise ValueError('shellability search needs a pure complex')
    count = len(c.facets)
    if count > facet_cap:
        logger.warning(f'Shellability search skipped: {count} facets > cap {facet_cap}')
        return Shellable.CAP_EXCEEDED
    if count <= 1:
        return Shellable.YES

    masks = c.facet_masks
    size = popcount(masks[0])
    everything = full_mask(count)
    dead = set()

    def attaches(placed, new):
        facet = masks[new]
        walls = [masks[g] & facet for g in bits(placed)]
        ridges = [w for w in walls if popcount(w) == size - 1]
        return all(any(w & r == w for r in ridges) for w in walls)

    def search(placed):
        if placed == everything:
            return True
        if placed in dead:
            return False
        for new in bits(everything & ~placed):
            if attaches(placed, new) and search(placed | 1 << new):
                return True
        dead.add(placed)
        return False

    found = any(search(1 << first) for first in range(count))
    return Shellable.YES if found else Shellable.NO
