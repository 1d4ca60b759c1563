import logging

import pytest

from cm_bipartite.complexes import (
    Shellable, SimplicialComplex, faces, independence_complex, is_completely_balanced, is_pure,
    is_shellable_bruteforce, link)
from cm_bipartite.exceptions import OracleUnavailable
from cm_bipartite.generators import PosetSpec, poset_graph
from cm_bipartite.graph import BipartiteGraph
from tests.utils import K22, P4, graph, matching

HOLLOW_TRIANGLE = SimplicialComplex(3, [(0, 1), (0, 2), (1, 2)])


def test_simplicial_complex():
    c = SimplicialComplex(3, [(1, 0), (0, 1), (2,)])
    assert c.facets == [(0, 1), (2,)]
    assert c.facet_masks == [0b011, 0b100]
    assert c.dimension == 1
    assert c.contains((1,))
    assert c.contains(())
    assert not c.contains((1, 2))
    assert c.describe_face((0, 2)) == '{1,3}'

    with pytest.raises(ValueError):
        SimplicialComplex(2, [(0, 2)])
    with pytest.raises(ValueError):
        SimplicialComplex(3, [(0, 1), (0,)])

    assert SimplicialComplex(0, [()]).dimension == -1
    assert SimplicialComplex(0, []).dimension == -2
    assert SimplicialComplex(3, [(2, 1)]) == SimplicialComplex(3, [(1, 2)])


def test_independence_complex():
    c = independence_complex(P4())
    assert c.facets == [(0, 1), (0, 3), (2, 3)]
    assert c.describe_face((0, 3)) == '{a1,b2}'
    assert independence_complex(K22()).facets == [(0, 1), (2, 3)]
    assert independence_complex(BipartiteGraph.empty()).facets == [()]

    star = independence_complex(graph(1, 2, (1, 1), (1, 2)))
    assert star.facets == [(0,), (1, 2)]


def test_independence_complex_cap(settings):
    assert len(independence_complex(K22(), cap=2).facets) == 2
    with pytest.raises(OracleUnavailable) as excinfo:
        independence_complex(K22(), cap=1)
    assert excinfo.value.cap == 1

    settings.FACET_CAP = 2
    with pytest.raises(OracleUnavailable):
        independence_complex(P4())


def test_is_pure():
    assert is_pure(independence_complex(P4())) == (True, None)
    assert is_pure(independence_complex(graph(1, 2, (1, 1), (1, 2)))) == \
        (False, ((0,), (1, 2)))
    assert is_pure(SimplicialComplex(0, [])) == (True, None)


def test_is_completely_balanced():
    assert is_completely_balanced(independence_complex(P4()), matching((1, 1), (2, 2)))
    assert is_completely_balanced(independence_complex(K22()), matching((1, 1), (2, 2)))
    c = independence_complex(graph(2, 2, (1, 1), (2, 2)))
    assert c.facets == [(0, 1), (0, 3), (1, 2), (2, 3)]
    assert is_completely_balanced(c, matching((1, 1), (2, 2)))
    assert not is_completely_balanced(c, matching((1, 2), (2, 1)))

    with pytest.raises(ValueError):
        is_completely_balanced(HOLLOW_TRIANGLE, matching((1, 1)))


def test_faces():
    assert faces(HOLLOW_TRIANGLE) == [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2)]
    assert faces(SimplicialComplex(0, [()])) == [()]
    assert faces(SimplicialComplex(0, [])) == []
    assert len(faces(independence_complex(P4()))) == 8

    with pytest.raises(OracleUnavailable):
        faces(HOLLOW_TRIANGLE, cap=6)


def test_link():
    assert link(HOLLOW_TRIANGLE, (0,)).facets == [(1,), (2,)]
    assert link(HOLLOW_TRIANGLE, ()) == HOLLOW_TRIANGLE
    assert link(HOLLOW_TRIANGLE, (1, 0)).facets == [()]
    with pytest.raises(ValueError):
        link(HOLLOW_TRIANGLE, (0, 1, 2))


@pytest.mark.parametrize('c, expected', [
    (independence_complex(P4()), Shellable.YES),
    (independence_complex(K22()), Shellable.NO),
    (HOLLOW_TRIANGLE, Shellable.YES),
    (SimplicialComplex(3, [(0, 1, 2)]), Shellable.YES),
    (SimplicialComplex(0, [()]), Shellable.YES),
    (SimplicialComplex(5, [(0, 1, 2), (2, 3, 4)]), Shellable.NO),
    (SimplicialComplex(4, [(0, 1, 2), (1, 2, 3), (0, 1, 3)]), Shellable.YES),
])
def test_is_shellable_bruteforce(c, expected):
    assert is_shellable_bruteforce(c) == expected


def test_is_shellable_bruteforce_limits(caplog):
    with pytest.raises(ValueError):
        is_shellable_bruteforce(independence_complex(graph(1, 2, (1, 1), (1, 2))))

    with caplog.at_level(logging.WARNING):
        assert is_shellable_bruteforce(HOLLOW_TRIANGLE, facet_cap=2) == Shellable.CAP_EXCEEDED
    assert 'Shellability search skipped: 3 facets > cap 2' in caplog.text


def test_independence_complex_deeper_than_recursion_limit():
    g = poset_graph(PosetSpec.antichain(1500))
    with pytest.raises(OracleUnavailable) as excinfo:
        independence_complex(g, cap=4)
    assert excinfo.value.cap == 4
