"""Cross-checking the decision procedure against the oracles, one graph at a
time or exhaustively over a grid."""
import logging
import multiprocessing
import os
from itertools import combinations

from .checker import (
    OrderedMatching, check_condition1, check_condition2, is_cohen_macaulay, is_unmixed,
    peel)
from .complexes import (
    Shellable, independence_complex, is_completely_balanced, is_pure,
    is_shellable_bruteforce)
from .conf import resolve, settings
from .generators import check_grid_bound, grid_graph
from .graph import canonical_key, complement_connected_on_pairs, delete_pair, normalize
from .matching import (
    PerfectMatchings, enumerate_perfect_matchings, hall_violator,
    has_unique_perfect_matching, max_matching)
from .oracles import (
    OrderCriterion, edge_ideal, find_order_bruteforce, is_zero_divisor_sum,
    pair_variables, permanent, reisner_is_cm)
from .utils import popcount

logger = logging.getLogger(__name__)

# Disagreements kept verbatim in a summary; the count is always exact.
EXAMPLE_LIMIT = 10


class CrossCheck:
    def __init__(self, verdict, oracle, disagreements):
        self.verdict = verdict
        self.oracle = oracle
        self.disagreements = disagreements

    @property
    def ok(self):
        return not self.disagreements


def oracle_values(g, shellable=False, orders=True):
    """The isomorphism-invariant oracle results for `g`."""
    c = independence_complex(g)
    pure, _ = is_pure(c)
    reisner, _ = reisner_is_cm(c)
    values = {'pure': pure, 'reisner': reisner, 'permanent': permanent(g)}
    if shellable and pure:
        values['shellable'] = is_shellable_bruteforce(c)
    if orders and g.is_balanced and g.part_a_size <= settings.BRUTE_FORCE_PAIR_LIMIT:
        values['hh_order'] = find_order_bruteforce(g, OrderCriterion.HERZOG_HIBI) is not None
        values['villarreal_order'] = \
            find_order_bruteforce(g, OrderCriterion.VILLARREAL) is not None
    return values


def cross_check(g, shellable=False, orders=True, oracle_cache=None):
    """Run the checker, every oracle and every structural property on `g`.

    `oracle_cache` maps :py:func:`canonical_key` values to earlier
    :py:func:`oracle_values` results."""
    disagreements = []

    def expect(holds, message):
        if not holds:
            disagreements.append(message)

    verdict = is_cohen_macaulay(g)
    unmixed, _ = is_unmixed(g)

    key = canonical_key(g) if oracle_cache is not None else None
    if key is not None and key in oracle_cache:
        oracle = oracle_cache[key]
    else:
        oracle = oracle_values(g, shellable, orders)
        if key is not None:
            oracle_cache[key] = oracle

    expect(verdict.is_cm == oracle['reisner'],
           f'checker says CM={verdict.is_cm}, Reisner says {oracle["reisner"]}')
    expect(verdict.is_unmixed == oracle['pure'],
           f'checker says unmixed={verdict.is_unmixed}, purity says {oracle["pure"]}')
    expect(unmixed == oracle['pure'],
           f'is_unmixed says {unmixed}, purity says {oracle["pure"]}')
    if verdict.certificate:
        expect(verdict.certificate.is_valid(g), 'certificate does not verify')
    else:
        expect(verdict.witness.is_valid(g), f'witness {verdict.witness!r} does not verify')
    if 'shellable' in oracle:
        expect((oracle['shellable'] == Shellable.YES) == oracle['reisner'] or
               oracle['shellable'] == Shellable.CAP_EXCEEDED,
               f'shellable={oracle["shellable"]} but Reisner says {oracle["reisner"]}')
    if 'hh_order' in oracle:
        expect(oracle['hh_order'] == verdict.is_cm,
               f'brute-force Herzog-Hibi order exists={oracle["hh_order"]}, CM={verdict.is_cm}')
        expect(oracle['villarreal_order'] == verdict.is_unmixed,
               f'brute-force Villarreal order exists={oracle["villarreal_order"]}, '
               f'unmixed={verdict.is_unmixed}')

    _check_matchings(g, verdict, oracle, expect)
    if verdict.is_cm:
        _check_cm_consequences(g, verdict, expect)
    return CrossCheck(verdict, oracle, disagreements)


def _check_matchings(g, verdict, oracle, expect):
    m = max_matching(g)
    expect(m.is_valid(g), f'maximum matching {m!r} is not a matching')
    matchings, truncated = enumerate_perfect_matchings(g)
    expect(not truncated and len(matchings) == oracle['permanent'],
           f'{len(matchings)} perfect matchings enumerated, permanent is {oracle["permanent"]}')
    if g.is_balanced:
        expect((hall_violator(g) is None) == m.is_perfect(g),
               'Hall violator disagrees with the maximum matching')

    peeled, _ = peel(g)
    if peeled is not None:
        expect(matchings == [peeled], 'peeled matching is not the unique perfect matching')

    if not m.is_perfect(g):
        return
    uniqueness = has_unique_perfect_matching(g)
    if verdict.is_unmixed:
        expect((uniqueness == PerfectMatchings.UNIQUE) == verdict.is_cm,
               f'unmixed graph with {uniqueness} perfect matching has CM={verdict.is_cm}')

    ordered = OrderedMatching(m.pairs)
    condition2_ok = check_condition2(g, ordered) is None
    connected = all(complement_connected_on_pairs(g, e1, e2)
                    for e1, e2 in combinations(ordered.pairs, 2))
    expect(condition2_ok == connected,
           f'condition 2 holds={condition2_ok}, all complements connected={connected}')
    if verdict.is_unmixed:
        expect(connected == verdict.is_cm,
               f'unmixed graph with all complements connected={connected} has CM={verdict.is_cm}')

    ideal = edge_ideal(g)
    condition1_ok = check_condition1(g, ordered) is None
    zero_divisor = any(is_zero_divisor_sum(ideal, *pair_variables(g, pair))
                       for pair in ordered.pairs)
    expect(condition1_ok != zero_divisor,
           f'condition 1 holds={condition1_ok}, some x_i+y_i is a zero-divisor={zero_divisor}')
    if verdict.is_unmixed:
        expect(is_completely_balanced(independence_complex(g), ordered),
               'unmixed graph whose complex is not completely balanced')


def _check_cm_consequences(g, verdict, expect):
    m = verdict.certificate.matching
    expect(has_unique_perfect_matching(g) == PerfectMatchings.UNIQUE,
           'CM graph without a unique perfect matching')
    if g.vertex_count:
        expect(any(popcount(row) == 1 for row in g.adj_a), 'CM graph without a degree-1 A vertex')
        expect(any(popcount(row) == 1 for row in g.adj_b), 'CM graph without a degree-1 B vertex')
    for a, b in m.pairs:
        rest = delete_pair(g, a, b)
        expect(is_cohen_macaulay(rest).is_cm,
               f'deleting pair (a{a + 1}, b{b + 1}) of a CM graph breaks CM')


class SweepSummary:
    def __init__(self, part_a_size, part_b_size):
        self.part_a_size = part_a_size
        self.part_b_size = part_b_size
        self.total = 0
        self.cm = 0
        self.unmixed = 0
        self.unmixed_not_cm = 0
        self.disagreements = 0
        self.examples = []

    def add(self, rank, result):
        self.total += 1
        self.cm += result.verdict.is_cm
        self.unmixed += result.verdict.is_unmixed
        self.unmixed_not_cm += result.verdict.is_unmixed and not result.verdict.is_cm
        if result.disagreements:
            self.disagreements += 1
            if len(self.examples) < EXAMPLE_LIMIT:
                self.examples.append((rank, result.disagreements))

    def merge(self, other):
        self.total += other.total
        self.cm += other.cm
        self.unmixed += other.unmixed
        self.unmixed_not_cm += other.unmixed_not_cm
        self.disagreements += other.disagreements
        self.examples = sorted(self.examples + other.examples)[:EXAMPLE_LIMIT]

    def to_record(self):
        return {
            'part_a': self.part_a_size,
            'part_b': self.part_b_size,
            'total': self.total,
            'cm': self.cm,
            'unmixed': self.unmixed,
            'unmixed_not_cm': self.unmixed_not_cm,
            'disagreements': self.disagreements,
            'examples': [{'rank': rank, 'disagreements': messages}
                         for rank, messages in self.examples],
        }


_worker_cache = {}


def _sweep_chunk(job):
    part_a_size, part_b_size, start, stop, shellable, orders, use_cache = job
    summary = SweepSummary(part_a_size, part_b_size)
    cache = _worker_cache if use_cache else None
    for rank in range(start, stop):
        g, _ = normalize(grid_graph(part_a_size, part_b_size, rank))
        summary.add(rank, cross_check(g, shellable, orders, cache))
    return summary


def run_sweep(part_a_size, part_b_size, jobs=None, shellable=False, orders=True,
              chunk_size=None, limit=None):
    """Cross-check every edge subset of the ``nA x nB`` grid.

    ``jobs=1`` runs in this process; otherwise chunks of ranks go to a
    :py:class:`multiprocessing.Pool` of `jobs` workers (default: all cores)."""
    check_grid_bound(part_a_size, part_b_size, limit)
    _worker_cache.clear()
    chunk_size = resolve(chunk_size, 'SWEEP_CHUNK_SIZE')
    jobs = jobs or os.cpu_count() or 1
    use_cache = settings.SWEEP_ORACLE_CACHE
    count = 1 << (part_a_size * part_b_size)
    chunks = [(part_a_size, part_b_size, start, min(start + chunk_size, count),
               shellable, orders, use_cache)
              for start in range(0, count, chunk_size)]
    logger.info(f'Sweeping {count} graphs on the {part_a_size}x{part_b_size} grid '
                f'in {len(chunks)} chunks with {jobs} job(s)')

    summary = SweepSummary(part_a_size, part_b_size)
    if jobs == 1:
        results = map(_sweep_chunk, chunks)
        _collect(summary, results, len(chunks))
    else:
        with multiprocessing.Pool(jobs) as pool:
            _collect(summary, pool.imap_unordered(_sweep_chunk, chunks), len(chunks))
    if summary.disagreements:
        logger.warning(f'{summary.disagreements} graph(s) with disagreements')
    return summary


def _collect(summary, results, chunk_count):
    for done, part in enumerate(results, start=1):
        summary.merge(part)
        logger.debug(f'Chunk {done}/{chunk_count} done, {summary.total} graphs so far')
