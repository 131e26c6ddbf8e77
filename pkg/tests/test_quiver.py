import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallq.quiver import (
    BadRelation,
    LoopFound,
    MultipleArrow,
    OrientedCycle,
    QuiverError,
    UnknownVertex,
    enumerate_paths,
    load,
    parse_text,
    relation_counts,
    validate,
)

from conftest import quiver


EX1_TEXT = """
# chain with the composite killed
vertex 1
vertex 2
vertex 3
arrow a 1 2
arrow b 2 3
relation 1*a,b
"""


def test_chain_with_zero_relation_is_valid():
    bq = parse_text(EX1_TEXT)
    assert bq.vertices == ("1", "2", "3")
    (rel,) = bq.relations
    assert (rel.source, rel.target) == ("1", "3")
    assert [(c, p.arrows) for c, p in rel.terms] == [(1, ("a", "b"))]


def test_single_vertex_is_valid():
    bq = validate({"vertices": [1]})
    assert bq.n == 1 and not bq.arrows and not bq.relations


@pytest.mark.parametrize("spec,error", [
    ({"vertices": [1, 2], "arrows": [("a", 1, 2), ("b", 2, 1)]}, OrientedCycle),
    ({"vertices": [1], "arrows": [("a", 1, 1)]}, LoopFound),
    ({"vertices": [1, 2], "arrows": [("a", 1, 2), ("b", 1, 2)]}, MultipleArrow),
    ({"vertices": [1], "arrows": [("a", 1, 7)]}, UnknownVertex),
    ({"vertices": [1, 2], "arrows": [("a", 1, 2)], "relations": [[(1, ["a"])]]}, BadRelation),
    ({"vertices": [1, 2, 3, 4], "arrows": [("a", 1, 2), ("b", 2, 3), ("c", 1, 4)],
      "relations": [[(1, ["a", "b"]), (1, ["c"])]]}, BadRelation),
    ({"vertices": [1, 2, 3], "arrows": [("a", 1, 2), ("b", 2, 3)],
      "relations": [[(1, ["b", "a"])]]}, BadRelation),
])
def test_validation_errors(spec, error):
    with pytest.raises(error):
        validate(spec)


def test_unparseable_line():
    with pytest.raises(QuiverError):
        parse_text("vertex 1\nfoo bar\n")


def test_paths_in_chain():
    bq = quiver("a3")
    assert [p.arrows for p in enumerate_paths(bq.quiver, "1", "3")] == [("a", "b")]
    assert enumerate_paths(bq.quiver, "3", "1") == []
    (triv,) = enumerate_paths(bq.quiver, "2", "2")
    assert triv.arrows == () and triv.source == triv.target == "2"


def test_paths_in_rhombus():
    bq = quiver("ex3")
    assert sorted(p.arrows for p in enumerate_paths(bq.quiver, "1", "4")) == [("a1", "a2"), ("b1", "b2")]


def test_relation_counts():
    r1 = relation_counts(quiver("ex1"))
    assert r1[("1", "3")] == 1 and sum(r1.values()) == 1
    assert relation_counts(quiver("ex4"))[("1", "4")] == 2
    assert relation_counts(quiver("ex3"))[("1", "4")] == 1
    assert not any(relation_counts(quiver("a3")).values())


def test_text_and_json_round_trip(tmp_path):
    for name in ("ex1", "ex3", "ex4"):
        bq = quiver(name)
        assert parse_text(bq.to_text()) == bq
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(bq.to_dict()))
        assert load(path) == bq
        assert load(path).canonical_hash() == bq.canonical_hash()


def test_relation_with_signs_and_spaces():
    bq = parse_text("vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a1 1 2\narrow a2 2 4\n"
                    "arrow b1 1 3\narrow b2 3 4\nrelation a1,a2 - b1,b2\n")
    assert [(c, p.arrows) for c, p in bq.relations[0].terms] == [(1, ("a1", "a2")), (-1, ("b1", "b2"))]


@st.composite
def dags(draw):
    n = draw(st.integers(1, 5))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    perm = draw(st.permutations(range(n)))
    arrows = [(f"x{k}", perm[i], perm[j]) for k, (i, j) in enumerate(chosen)]
    return validate({"vertices": list(range(n)), "arrows": arrows})


@settings(max_examples=60, deadline=None)
@given(dags())
def test_length_two_paths_count_middle_vertices(bq):
    Q = bq.quiver
    for i in Q.vertices:
        for j in Q.vertices:
            two = [p for p in enumerate_paths(Q, i, j) if len(p.arrows) == 2]
            middles = [k for k in Q.vertices if Q.has_arrow(i, k) and Q.has_arrow(k, j)]
            assert len(two) == len(middles)


@settings(max_examples=60, deadline=None)
@given(dags())
def test_serialization_round_trip(bq):
    assert validate(bq.to_dict()) == bq
    assert parse_text(bq.to_text()) == bq
