import pytest

from cm_bipartite.checker import (
    Certificate, OrderedMatching, PairDigraph, Provenance, Witness, WitnessKind,
    check_condition1, check_condition2, find_hh_order, is_cohen_macaulay, is_unmixed, peel,
    verify_hh_order, verify_villarreal_order)
from cm_bipartite.exceptions import (
    NoHerzogHibiOrder, NotAPerfectMatching, OrderCycle, OrderViolation)
from cm_bipartite.generators import PosetSpec, poset_graph
from cm_bipartite.graph import BipartiteGraph
from cm_bipartite.matching import HallViolator
from tests.utils import (
    K2, K22, K33, P4, condition1_violator, disjoint_edges, graph, matching,
    no_perfect_matching_3x3)


def test_peel_p4():
    m, witness = peel(P4())
    assert witness is None
    assert m.pairs == [(0, 0), (1, 1)]
    assert m.provenance == Provenance.PEELED


def test_peel_order():
    m, _ = peel(condition1_violator())
    assert m.pairs == [(2, 2), (1, 1), (0, 0)]

    m, _ = peel(graph(2, 2, (1, 1), (1, 2), (2, 1)))
    assert m.pairs == [(1, 0), (0, 1)]


def test_peel_stuck():
    m, witness = peel(K22())
    assert m is None
    assert witness.kind == WitnessKind.PEEL_STUCK
    assert witness.peeled == []
    assert (witness.remaining_a, witness.remaining_b) == ([0, 1], [0, 1])
    assert witness.min_degree == 2
    assert witness.is_valid(K22())

    m, witness = peel(no_perfect_matching_3x3())
    assert witness.peeled == [(1, 0), (0, 1)]
    assert (witness.remaining_a, witness.remaining_b) == ([2], [2])
    assert witness.min_degree == 0
    assert witness.is_valid(no_perfect_matching_3x3())

    _, witness = peel(graph(2, 1, (1, 1), (2, 1)))
    assert witness.kind == WitnessKind.ODD_OR_UNBALANCED


def test_conditions():
    assert check_condition1(P4(), matching((1, 1), (2, 2))) is None
    assert check_condition2(P4(), matching((1, 1), (2, 2))) is None

    witness = check_condition2(K22(), matching((1, 1), (2, 2)))
    assert witness.kind == WitnessKind.CONDITION2
    assert (witness.i, witness.j) == (0, 1)
    assert witness.is_valid(K22())
    assert check_condition1(K22(), matching((1, 2), (2, 1))) is None

    g = condition1_violator()
    witness = check_condition1(g, matching((3, 3), (2, 2), (1, 1)))
    assert (witness.pair, witness.u, witness.v) == (1, 0, 2)
    assert witness.is_valid(g)

    with pytest.raises(NotAPerfectMatching):
        check_condition1(P4(), matching((2, 1)))
    with pytest.raises(NotAPerfectMatching):
        check_condition2(P4(), matching((1, 2), (2, 1)))


def test_is_unmixed():
    unmixed, m = is_unmixed(K22())
    assert unmixed
    assert m.provenance == Provenance.MAXIMUM
    assert m.is_perfect(K22())

    unmixed, witness = is_unmixed(no_perfect_matching_3x3())
    assert not unmixed
    assert witness.kind == WitnessKind.NO_PERFECT_MATCHING
    assert witness.violator == HallViolator(frozenset({1, 2}), frozenset({0}))

    unmixed, witness = is_unmixed(condition1_violator())
    assert not unmixed
    assert witness.kind == WitnessKind.CONDITION1

    unmixed, witness = is_unmixed(graph(2, 1, (1, 1), (2, 1)))
    assert witness.kind == WitnessKind.ODD_OR_UNBALANCED


def test_verdict_p4():
    verdict = is_cohen_macaulay(P4())
    assert verdict.is_cm and verdict.is_unmixed
    assert verdict.witness is None
    assert verdict.certificate.hh_order == [1, 0]
    assert verdict.certificate.is_valid(P4())
    assert verdict.to_record() == {
        'is_cm': True,
        'is_unmixed': True,
        'certificate': {'matching': [[1, 1], [2, 2]], 'hh_order': [2, 1],
                        'conditions': {'c1': 'ok', 'c2': 'ok'}},
        'witness': None,
    }


@pytest.mark.parametrize('g', [BipartiteGraph.empty(), K2(), disjoint_edges(3)])
def test_verdict_trivially_cm(g):
    verdict = is_cohen_macaulay(g)
    assert verdict.is_cm
    assert verdict.certificate.is_valid(g)


def test_verdict_k22():
    verdict = is_cohen_macaulay(K22())
    assert not verdict.is_cm
    assert verdict.is_unmixed
    witness = verdict.witness
    assert witness.kind == WitnessKind.PEEL_STUCK
    assert witness.diagnosis.kind == WitnessKind.CONDITION2
    assert witness.is_valid(K22())
    assert witness.to_record()['data']['diagnosis']['kind'] == 'condition2'
    assert 'minimum degree 2; condition 2 fails at pairs 1, 2' in witness.describe()


def test_verdict_k33():
    verdict = is_cohen_macaulay(K33())
    assert not verdict.is_cm
    assert verdict.is_unmixed


def test_verdict_condition1():
    g = condition1_violator()
    verdict = is_cohen_macaulay(g)
    assert not verdict.is_cm
    assert not verdict.is_unmixed
    assert verdict.witness.kind == WitnessKind.CONDITION1
    assert verdict.witness.is_valid(g)
    assert verdict.witness.to_record() == {
        'kind': 'condition1',
        'data': {'matching': [[3, 3], [2, 2], [1, 1]], 'pair': 2, 'u': 1, 'v': 3},
    }
    assert verdict.witness.describe() == (
        'condition 1 fails at pair 2 (a2, b2): a1 ~ b2 and a2 ~ b3 but a1 !~ b3')


def test_verdict_no_perfect_matching():
    g = no_perfect_matching_3x3()
    verdict = is_cohen_macaulay(g)
    assert not verdict.is_cm
    assert not verdict.is_unmixed
    diagnosis = verdict.witness.diagnosis
    assert diagnosis.kind == WitnessKind.NO_PERFECT_MATCHING
    assert diagnosis.to_record() == {
        'kind': 'no_perfect_matching', 'data': {'subset': [2, 3], 'neighborhood': [1]}}
    assert verdict.witness.is_valid(g)


def test_verdict_unbalanced():
    g = graph(3, 1, (1, 1), (2, 1), (3, 1))
    verdict = is_cohen_macaulay(g)
    assert (verdict.is_cm, verdict.is_unmixed) == (False, False)
    assert verdict.witness.to_record() == {
        'kind': 'odd_or_unbalanced', 'data': {'part_a': 3, 'part_b': 1}}
    assert verdict.witness.is_valid(g)
    assert not verdict.witness.is_valid(K22())


def test_verdict_rejects_isolated_vertices():
    with pytest.raises(ValueError):
        is_cohen_macaulay(graph(2, 2, (1, 1)))


def test_supplied_matching():
    verdict = is_cohen_macaulay(K22(), [(0, 0), (1, 1)])
    assert not verdict.is_cm
    assert verdict.is_unmixed
    assert verdict.witness.kind == WitnessKind.CONDITION2

    verdict = is_cohen_macaulay(P4(), [(1, 1), (0, 0)])
    assert verdict.is_cm
    assert verdict.certificate.matching.provenance == Provenance.SUPPLIED
    assert verdict.certificate.hh_order == [0, 1]

    with pytest.raises(NotAPerfectMatching):
        is_cohen_macaulay(P4(), [(0, 0)])


def test_tampered_witnesses_do_not_verify():
    assert not Witness.condition2(matching((1, 1), (2, 2)), 0, 1).is_valid(P4())
    assert not Witness.condition1(matching((1, 1), (2, 2)), 1, 0, 0).is_valid(P4())
    assert not Witness.odd_or_unbalanced(P4()).is_valid(P4())
    stuck = Witness.peel_stuck([], [0, 1], [0, 1], 1)
    assert not stuck.is_valid(K22())
    assert not Witness.peel_stuck([], [0, 1], [0, 1], 2).is_valid(P4())


def test_pair_digraph():
    digraph = PairDigraph(P4(), matching((1, 1), (2, 2)))
    assert digraph.out == [0b01, 0b11]
    assert digraph.inn == [0b11, 0b10]


def test_find_hh_order():
    assert find_hh_order(P4(), matching((1, 1), (2, 2))) == [1, 0]

    with pytest.raises(OrderCycle) as excinfo:
        find_hh_order(K22(), matching((1, 1), (2, 2)))
    assert excinfo.value.cycle == [1, 0]
    assert str(excinfo.value) == 'pair digraph has a cycle: 2 -> 1'

    with pytest.raises(OrderViolation) as excinfo:
        find_hh_order(condition1_violator(), matching((1, 1), (2, 2), (3, 3)))
    assert excinfo.value.violation == ('transitivity', (0, 1, 2))
    assert isinstance(excinfo.value, NoHerzogHibiOrder)


def test_find_hh_order_puts_fewer_predecessors_first():
    # 5 < 0 and 1 < 2 < 3, with 4 unrelated
    g = poset_graph(PosetSpec(6, [(5, 0), (1, 2), (2, 3)]))
    m = matching(*((i, i) for i in range(1, 7)))
    order = find_hh_order(g, m)
    assert order == [1, 4, 5, 0, 2, 3]
    assert verify_hh_order(g, m, order) is None


def test_verify_hh_order():
    m = matching((1, 1), (2, 2))
    assert verify_hh_order(P4(), m, [1, 0]) is None
    assert verify_hh_order(P4(), m, [0, 1]) == ('forward', (1, 0))
    assert verify_hh_order(P4(), matching((1, 2), (2, 1)), [0, 1]) == ('matching', (0,))
    with pytest.raises(ValueError):
        verify_hh_order(P4(), m, [0, 0])

    assert not Certificate(m, [0, 1]).is_valid(P4())
    assert Certificate(m, [1, 0]).is_valid(P4())


def test_verify_villarreal_order():
    g = condition1_violator()
    m = matching((1, 1), (2, 2), (3, 3))
    assert not verify_villarreal_order(g, m, [2, 1, 0])
    assert verify_villarreal_order(g, m, [2, 1, 0], ordered_triples=True)
    assert not verify_villarreal_order(g, m, [0, 1, 2], ordered_triples=True)

    assert verify_villarreal_order(K22(), matching((1, 1), (2, 2)), [0, 1])
    assert not verify_villarreal_order(P4(), matching((1, 2), (2, 1)), [0, 1])


def test_ordered_matching_record_keeps_order():
    m = OrderedMatching([(1, 1), (0, 0)])
    assert m.to_record() == [[2, 2], [1, 1]]
    assert m == OrderedMatching([(0, 0), (1, 1)])
