import random

import pytest

from conftest import random_graph

from gpsem.errors import HostGraphError
from gpsem.graph import Graph, isomorphic
from gpsem.hostgraph import HEADER, parse_host, serialize_host


def test_parse_basic():
    g = parse_host('node 1 0\nnode 2 0\nedge 1 2 1\n')
    assert g == Graph({1: (0,), 2: (0,)}, {1: (1, 2, (1,))})


def test_parse_tagged_and_comments():
    g = parse_host('# a comment\n\nnode 1 5_"abc"   # trailing\nnode 7 -2\n')
    assert g.label(1) == (5, 'abc') and g.label(7) == (-2,)


def test_parse_escapes():
    g = parse_host('node 1 "a\\"b\\\\"')
    assert g.label(1) == ('a"b\\',)


@pytest.mark.parametrize('text, fragment, line', [
    ('node 1 0\nedge 1 2 0', 'undeclared node 2', 2),
    ('node 1 0\nnode 1 1', 'duplicate node id 1', 2),
    ('node 1 x', 'variable', 1),
    ('node 1 1 + 2', 'arithmetic', 1),
    ('vertex 1 0', 'unknown item', 1),
    ('node 1', 'label', 1),
    ('node 1 0 0', 'end of line', 1),
    ('node 1 "open', 'string', 1),
])
def test_parse_errors(text, fragment, line):
    with pytest.raises(HostGraphError) as exc:
        parse_host(text)
    assert fragment in str(exc.value) and exc.value.line == line


def test_serialize_empty():
    assert serialize_host(Graph()) == HEADER + '\n'


def test_serialize_rejects_unlabelled():
    with pytest.raises(HostGraphError):
        serialize_host(Graph({1: None}))


def test_round_trip_random():
    rng = random.Random(3)
    labels = ((0,), (1,), ('a',), (0, 'b'), (-4, 2))
    for _ in range(100):
        g = random_graph(rng, max_nodes=5, max_edges=7, node_labels=labels, edge_labels=labels)
        text = serialize_host(g)
        assert isomorphic(parse_host(text), g)
        assert serialize_host(parse_host(text)) == text


def test_isomorphic_graphs_serialise_identically():
    a = Graph({1: 0, 2: 'x', 3: 0}, {1: (1, 2, 0), 2: (3, 2, 1)})
    b = Graph({9: 0, 4: 0, 6: 'x'}, {5: (4, 6, 1), 8: (9, 6, 0)})
    assert serialize_host(a) == serialize_host(b)
    assert serialize_host(a) != serialize_host(Graph({1: 0, 2: 'x', 3: 0}, {1: (1, 2, 0), 2: (3, 2, 0)}))
