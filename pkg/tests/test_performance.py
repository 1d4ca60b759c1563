"""Timing and large-sample tests, all behind ``--run-slow``."""
import random
import time

import pytest

from cm_bipartite.checker import find_hh_order, is_cohen_macaulay, peel, verify_hh_order
from cm_bipartite.complexes import independence_complex
from cm_bipartite.generators import PosetSpec, poset_graph, random_bipartite, random_poset
from cm_bipartite.oracles import OrderCriterion, find_order_bruteforce, reisner_is_cm

pytestmark = pytest.mark.slow


def best_time(f, *args, repeat=5):
    best = None
    for _ in range(repeat):
        start = time.perf_counter()
        f(*args)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def random_tree_poset(n, seed):
    """Each element above one uniformly chosen earlier element."""
    rng = random.Random(seed)
    return PosetSpec(n, [(rng.randrange(i), i) for i in range(1, n)])


def test_chain_of_2000_pairs():
    g = poset_graph(PosetSpec.chain(2000))
    assert g.edge_count == 2000 * 2001 // 2
    start = time.perf_counter()
    verdict = is_cohen_macaulay(g)
    elapsed = time.perf_counter() - start
    assert verdict.is_cm
    assert elapsed <= 2.0


def test_peel_scales_near_linearly():
    graphs = {n: poset_graph(random_tree_poset(n, seed=n)) for n in (250, 500, 1000, 2000)}
    times = {n: best_time(peel, g) for n, g in graphs.items()}
    for n in (500, 1000, 2000):
        assert times[n] < 4 * times[n // 2], times
    assert all(peel(g)[0] is not None for g in graphs.values())


def test_poset_graph_sample():
    for seed in range(10000):
        rng = random.Random(seed)
        n = rng.randint(1, 50)
        ps = random_poset(n, rng.random(), seed)
        g = poset_graph(ps)
        verdict = is_cohen_macaulay(g)
        assert verdict.is_cm, seed
        assert verdict.certificate.is_valid(g), seed
        if n <= 6:
            assert reisner_is_cm(independence_complex(g))[0], seed


def test_ordering_criteria_sample():
    for seed in range(10000):
        rng = random.Random(seed)
        n = rng.randint(1, 5)
        g = random_bipartite(n, n, rng.uniform(0.2, 0.8), seed)
        verdict = is_cohen_macaulay(g)
        hh = find_order_bruteforce(g, OrderCriterion.HERZOG_HIBI)
        villarreal = find_order_bruteforce(g, OrderCriterion.VILLARREAL)
        assert (hh is not None) == verdict.is_cm, seed
        assert (villarreal is not None) == verdict.is_unmixed, seed
        if verdict.is_cm:
            m = verdict.certificate.matching
            assert verify_hh_order(g, m, find_hh_order(g, m)) is None, seed
