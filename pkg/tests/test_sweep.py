from types import SimpleNamespace

import pytest

from cm_bipartite import sweep
from cm_bipartite.complexes import Shellable
from cm_bipartite.exceptions import BoundExceeded
from cm_bipartite.sweep import (
    EXAMPLE_LIMIT, CrossCheck, SweepSummary, cross_check, oracle_values, run_sweep)
from tests.utils import (
    K22, K33, P4, condition1_violator, disjoint_edges, graph, no_perfect_matching_3x3)


@pytest.mark.parametrize('g', [
    P4(), K22(), K33(), condition1_violator(), no_perfect_matching_3x3(), disjoint_edges(3),
    graph(2, 1, (1, 1), (2, 1)),
])
def test_cross_check_agrees(g):
    result = cross_check(g, shellable=True)
    assert result.ok, result.disagreements


def test_oracle_values():
    assert oracle_values(P4(), shellable=True) == {
        'pure': True, 'reisner': True, 'permanent': 1, 'shellable': Shellable.YES,
        'hh_order': True, 'villarreal_order': True,
    }
    assert oracle_values(K22(), orders=False) == {'pure': True, 'reisner': False, 'permanent': 2}


def test_cross_check_cache(mocker):
    spy = mocker.spy(sweep, 'oracle_values')
    cache = {}
    cross_check(P4(), oracle_cache=cache)
    cross_check(graph(2, 2, (1, 1), (1, 2), (2, 2)), oracle_cache=cache)
    assert spy.call_count == 1
    assert len(cache) == 1
    cross_check(K22(), oracle_cache=cache)
    assert spy.call_count == 2


def test_cross_check_reports_disagreement(mocker):
    mocker.patch('cm_bipartite.sweep.reisner_is_cm', return_value=(False, None))
    result = cross_check(P4())
    assert not result.ok
    assert result.disagreements[0] == 'checker says CM=True, Reisner says False'


def test_sweep_summary():
    ok = CrossCheck(SimpleNamespace(is_cm=True, is_unmixed=True), {}, [])
    bad = CrossCheck(SimpleNamespace(is_cm=False, is_unmixed=True), {}, ['x'])
    first = SweepSummary(2, 2)
    first.add(0, ok)
    first.add(3, bad)
    second = SweepSummary(2, 2)
    for rank in range(4, 4 + EXAMPLE_LIMIT):
        second.add(rank, bad)
    first.merge(second)
    record = first.to_record()
    assert (record['total'], record['cm'], record['unmixed']) == (2 + EXAMPLE_LIMIT, 1,
                                                                  2 + EXAMPLE_LIMIT)
    assert record['unmixed_not_cm'] == 1 + EXAMPLE_LIMIT
    assert record['disagreements'] == 1 + EXAMPLE_LIMIT
    assert [e['rank'] for e in record['examples']] == list(range(3, 3 + EXAMPLE_LIMIT))
    assert record['examples'][0] == {'rank': 3, 'disagreements': ['x']}


def test_sweep_1x1():
    summary = run_sweep(1, 1, jobs=1)
    assert (summary.total, summary.cm, summary.unmixed) == (2, 2, 2)
    assert summary.disagreements == 0


def test_sweep_2x2():
    summary = run_sweep(2, 2, jobs=1, shellable=True)
    assert summary.to_record() == {
        'part_a': 2, 'part_b': 2, 'total': 16, 'cm': 11, 'unmixed': 12,
        'unmixed_not_cm': 1, 'disagreements': 0, 'examples': [],
    }


def test_sweep_3x3():
    summary = run_sweep(3, 3, jobs=2)
    assert summary.total == 512
    assert summary.cm == 178
    assert summary.disagreements == 0


def test_sweep_without_cache(settings):
    settings.SWEEP_ORACLE_CACHE = False
    summary = run_sweep(2, 2, jobs=1, chunk_size=5)
    assert (summary.total, summary.cm, summary.unmixed_not_cm) == (16, 11, 1)


def test_sweep_planted_disagreement(mocker, caplog):
    mocker.patch('cm_bipartite.sweep.reisner_is_cm', return_value=(False, None))
    summary = run_sweep(1, 1, jobs=1)
    assert summary.disagreements == 2
    assert [rank for rank, _ in summary.examples] == [0, 1]
    assert '2 graph(s) with disagreements' in caplog.text


def test_sweep_bound():
    with pytest.raises(BoundExceeded):
        run_sweep(5, 4)


@pytest.mark.slow
def test_sweep_4x4():
    summary = run_sweep(4, 4)
    assert summary.total == 65536
    assert summary.cm == 7313
    assert summary.disagreements == 0
