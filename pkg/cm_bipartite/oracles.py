"""Brute-force ground truth for the decision procedure.

Everything here is exponential in the graph size and only meant for small
instances; caps come from :py:mod:`cm_bipartite.conf`."""
import itertools
import logging

from .checker import verify_hh_order, verify_villarreal_order
from .complexes import (
    faces, independence_complex, is_completely_balanced, is_pure,
    is_shellable_bruteforce, link)
from .conf import resolve
from .exceptions import BoundExceeded
from .homology import reduced_homology
from .matching import enumerate_perfect_matchings, max_matching
from .utils import enum, popcount

logger = logging.getLogger(__name__)

OrderCriterion = enum(
    'OrderCriterion',
    HERZOG_HIBI='herzog_hibi',
    VILLARREAL='villarreal',
)


def reisner_is_cm(c, cap=None):
    """Reisner's criterion: the link of every face F has vanishing reduced
    homology below ``dim lk F``.

    Returns ``(True, None)`` or ``(False, (face, dimension))`` for the first
    failing face in :py:func:`faces` order."""
    cache = {}
    for face in faces(c, cap):
        lk = link(c, face)
        key = tuple(lk.facets)
        if key not in cache:
            cache[key] = _first_homology_below_top(lk, cap)
        failing = cache[key]
        if failing is not None:
            logger.debug(f'Reisner fails at {c.describe_face(face)} in dimension {failing}')
            return False, (face, failing)
    return True, None


def _first_homology_below_top(lk, cap):
    common = -1
    for facet in lk.facet_masks:
        common &= facet
    if common:
        # a cone is contractible
        return None
    return reduced_homology(lk, cap).first_nonzero_below(lk.dimension)


class QuadraticMonomialIdeal:
    """Square-free quadratic monomial ideal in variables ``1..variable_count``."""

    def __init__(self, variable_count, generators):
        self.variable_count = variable_count
        self.neighbors = [0] * (variable_count + 1)
        for generator in generators:
            k, l = generator
            if k == l:
                raise ValueError(f'x{k}^2 is not square-free')
            if not (1 <= k <= variable_count and 1 <= l <= variable_count):
                raise ValueError(f'x{k}x{l} uses an unknown variable')
            self.neighbors[k] |= 1 << l
            self.neighbors[l] |= 1 << k

    @property
    def generators(self):
        return sorted((k, l) for k in range(1, self.variable_count + 1)
                      for l in range(k + 1, self.variable_count + 1)
                      if self.contains(k, l))

    def contains(self, k, l):
        return bool(self.neighbors[k] >> l & 1)

    def __repr__(self):
        return f'QuadraticMonomialIdeal({self.variable_count} variables, ' \
            f'{len(self.generators)} generators)'


def edge_ideal(g):
    """Variable of ``a`` is ``a + 1``, variable of ``b`` is ``nA + b + 1``."""
    offset = g.part_a_size + 1
    return QuadraticMonomialIdeal(g.vertex_count, ((a + 1, offset + b) for a, b in g.edges))


def pair_variables(g, pair):
    a, b = pair
    return a + 1, g.part_a_size + b + 1


def is_zero_divisor_sum(ideal, i, j):
    """Whether ``x_i + x_j`` is a zero-divisor modulo `ideal`.

    True iff some other variable divides into the ideal with both ``x_i`` and
    ``x_j``, or some non-generator ``x_k x_l`` (k, l outside ``{i, j}``) times
    either of them lands in the ideal."""
    if i == j:
        raise ValueError('variables must differ')
    others = [k for k in range(1, ideal.variable_count + 1) if k not in (i, j)]
    if any(ideal.contains(k, i) and ideal.contains(k, j) for k in others):
        return True
    for k, l in itertools.combinations(others, 2):
        if ideal.contains(k, l):
            continue
        if ((ideal.contains(k, i) or ideal.contains(l, i)) and
                (ideal.contains(k, j) or ideal.contains(l, j))):
            return True
    return False


def permanent(g):
    """Permanent of the biadjacency matrix by Ryser's inclusion-exclusion."""
    if not g.is_balanced:
        return 0
    n = g.part_a_size
    total = 0
    for columns in range(1 << n):
        product = 1
        for row in g.adj_a:
            product *= popcount(row & columns)
            if not product:
                break
        if product:
            total += -product if popcount(columns) % 2 else product
    return -total if n % 2 else total


def find_order_bruteforce(g, criterion, limit=None, ordered_triples=False):
    """Try every perfect matching with every pair order.

    Returns the first ``(matching, order)`` satisfying `criterion`, or None.
    Raises :py:class:`BoundExceeded` above `limit` pairs."""
    limit = resolve(limit, 'BRUTE_FORCE_PAIR_LIMIT')
    if not g.is_balanced:
        return None
    n = g.part_a_size
    if n > limit:
        raise BoundExceeded(f'{n} pairs is more than the brute-force limit {limit}')
    matchings, _ = enumerate_perfect_matchings(g)
    for m in matchings:
        if criterion == OrderCriterion.VILLARREAL and not ordered_triples:
            # the order-free form does not look at the order
            orders = [list(range(n))]
        else:
            orders = itertools.permutations(range(n))
        for order in orders:
            order = list(order)
            if criterion == OrderCriterion.HERZOG_HIBI:
                found = verify_hh_order(g, m, order) is None
            else:
                found = verify_villarreal_order(g, m, order, ordered_triples)
            if found:
                return m, order
    return None


def oracle_report(g, betti=False, shellable=False, facet_cap=None, face_cap=None,
                  shelling_cap=None):
    """Every oracle verdict for `g` as one record.

    Raises :py:class:`OracleUnavailable` when a cap is hit."""
    c = independence_complex(g, facet_cap)
    pure, sizes = is_pure(c)
    m = max_matching(g)
    balanced = is_completely_balanced(c, m) if m.is_perfect(g) else None
    reisner, failing = reisner_is_cm(c, face_cap)
    report = {
        'facets': [c.describe_face(f) for f in c.facets],
        'purity': pure,
        'impure_facets': [c.describe_face(f) for f in sizes] if sizes else None,
        'balanced': balanced,
        'reisner': reisner,
        'failing_face': None,
    }
    if failing:
        face, dimension = failing
        report['failing_face'] = {'face': c.describe_face(face), 'dimension': dimension}
    if betti:
        report['betti'] = reduced_homology(c, face_cap).to_record()
    if shellable:
        # only pure shellability is searched
        report['shellable'] = is_shellable_bruteforce(c, shelling_cap) if pure else None
    return report
