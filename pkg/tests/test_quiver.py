import json
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klr import perm as P
from klr.quiver import (Quiver, QuiverParseError, RootVector, derive_datum, enumerate_sequences, multinomial,
                        parse_quiver, serialize_quiver, stabilizer_classes, weyl_act)

from conftest import corpus_quiver


def test_parse_minimal_documents():
    q = parse_quiver('{"vertices": ["i"]}')
    assert q.vertices == ("i",) and q.edges == ()
    q = parse_quiver('{"vertices": ["i"], "edges": [{"id": "a", "from": "i", "to": "i"}]}')
    assert q.edges[0].is_loop
    q = parse_quiver({"vertices": ["i", "j"], "edges": [{"id": "a", "from": "i", "to": "j"}]})
    assert (q.edges[0].out, q.edges[0].into) == ("i", "j")


@pytest.mark.parametrize("doc,location", [
    ("[1]", "$"),
    ("{}", "$"),
    ('{"vertices": []}', "$.vertices"),
    ('{"vertices": ["i", "i"]}', "$.vertices"),
    ('{"vertices": ["i"], "edges": [{"id": "a", "from": "i"}]}', "$.edges[0]"),
    ('{"vertices": ["i"], "edges": [{"id": "a", "from": "k", "to": "i"}]}', "$.edges[0].from"),
    ('{"vertices": ["i"], "edges": [{"id": "a", "from": "i", "to": "i"}, {"id": "a", "from": "i", "to": "i"}]}',
     "$.edges[1].id"),
    ("{not json", "$"),
])
def test_parse_errors_carry_a_location(doc, location):
    with pytest.raises(QuiverParseError) as info:
        parse_quiver(doc)
    assert info.value.location == location


def test_serialize_round_trip(quiver):
    assert parse_quiver(serialize_quiver(quiver)) == quiver


@pytest.mark.parametrize("name,matrix", [
    ("a1", [[2]]),
    ("jordan", [[0]]),
    ("a2", [[2, -1], [-1, 2]]),
    ("two_loop", [[-2]]),
    ("loop_edge", [[0, -1], [-1, 2]]),
])
def test_datum_hand_values(name, matrix):
    d = derive_datum(corpus_quiver(name))
    assert [list(r) for r in d.matrix] == matrix


def test_real_and_imaginary_vertices():
    assert derive_datum(corpus_quiver("a1")).real_vertices == ("i",)
    assert derive_datum(corpus_quiver("jordan")).imaginary_vertices == ("i",)
    d = derive_datum(corpus_quiver("a2"))
    assert (d.h("i", "j"), d.h("j", "i")) == (1, 0)


@st.composite
def random_quivers(draw):
    n = draw(st.integers(1, 6))
    verts = [f"v{k}" for k in range(n)]
    ends = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=8))
    edges = [{"id": f"e{k}", "from": verts[a], "to": verts[b]} for k, (a, b) in enumerate(ends)]
    return parse_quiver(json.dumps({"vertices": verts, "edges": edges}))


@given(random_quivers())
@settings(max_examples=80, deadline=None)
def test_datum_symmetric_with_even_diagonal(q):
    d = derive_datum(q)
    n = len(q.vertices)
    for a in range(n):
        assert d.matrix[a][a] % 2 == 0 and d.matrix[a][a] <= 2
        for b in range(n):
            assert d.matrix[a][b] == d.matrix[b][a]
            if a != b:
                assert d.matrix[a][b] <= 0


Q2 = Quiver(("i", "j"))
Q3 = Quiver(("i", "j", "k"))


@pytest.mark.parametrize("alpha,expected", [
    ({"i": 1, "j": 1}, [("i", "j"), ("j", "i")]),
    ({"i": 2}, [("i", "i")]),
])
def test_enumerate_sequences(alpha, expected):
    assert enumerate_sequences(RootVector.of(Q2, alpha)) == expected


def test_enumerate_count_is_multinomial():
    a = RootVector.of(Q2, {"i": 2, "j": 1})
    assert len(enumerate_sequences(a)) == multinomial(a) == 3


def test_weyl_act_examples():
    nu = ("i", "j", "k")
    assert weyl_act(P.simple(1, 3), nu) == ("j", "i", "k")
    assert weyl_act(P.identity(3), nu) == nu
    # the cycle 1 -> 2 -> 3 -> 1
    assert weyl_act((1, 2, 0), nu) == ("k", "i", "j")


@given(st.integers(1, 6).flatmap(lambda m: st.tuples(
    st.permutations(list(range(m))).map(tuple), st.permutations(list(range(m))).map(tuple),
    st.lists(st.sampled_from("ijk"), min_size=m, max_size=m).map(tuple))))
@settings(max_examples=80, deadline=None)
def test_weyl_act_is_a_left_action(data):
    v, w, nu = data
    assert weyl_act(P.compose(v, w), nu) == weyl_act(v, weyl_act(w, nu))


def test_stabilizer_class_examples():
    W = stabilizer_classes(RootVector.of(Q2, {"i": 2}))
    assert sorted(W[("i", "i")]) == sorted(P.all_perms(2))
    W = stabilizer_classes(RootVector.of(Q2, {"i": 1, "j": 1}))
    assert W[("i", "j")] == [(0, 1)] and W[("j", "i")] == [(1, 0)]
    W = stabilizer_classes(RootVector.of(Q2, {"i": 2, "j": 1}))
    assert len(W[("i", "i", "j")]) == 2


@pytest.mark.parametrize("alpha", [{"i": 3}, {"i": 2, "j": 2}, {"i": 1, "j": 1, "k": 2}, {"i": 2, "j": 1, "k": 1}])
def test_stabilizers_partition_the_symmetric_group(alpha):
    a = RootVector.of(Q3, alpha)
    W = stabilizer_classes(a)
    flat = [w for ws in W.values() for w in ws]
    assert sorted(flat) == sorted(P.all_perms(a.height))
    expected = 1
    for _, k in a.coeffs:
        expected *= factorial(k)
    assert all(len(ws) == expected for ws in W.values())
