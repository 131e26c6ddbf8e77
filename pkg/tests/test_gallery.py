import pytest

from hallq.gallery import example_quiver, golden_relations, match_golden
from hallq.presentation import GradedQuotient, degrees_up_to, field_for, quotient
from hallq.quiver import relation_counts

from conftest import hall, presentation


def test_example_shapes():
    assert example_quiver(1).n == 3 and len(example_quiver(1).relations) == 1
    assert example_quiver(2, 5).n == 5
    assert example_quiver(2, 3).to_dict()["arrows"] == [["a1", "1", "2"], ["a2", "2", "3"]]
    r3, r4 = relation_counts(example_quiver(3)), relation_counts(example_quiver(4))
    assert r3[("1", "4")] == 1 and r4[("1", "4")] == 2
    with pytest.raises(ValueError):
        example_quiver(5)
    with pytest.raises(ValueError):
        example_quiver(2, 2)


def test_chain_of_three_is_first_example():
    a, b = golden_relations(2, 3)[1], golden_relations(1)[1]
    assert [x.terms for _, x in a] == [x.terms for _, x in b]


@pytest.mark.parametrize("n,name", [(1, "ex1"), (2, "ex2"), (3, "ex3"), (4, "ex4")])
def test_golden_relations_lie_in_generated_ideal(n, name):
    report = match_golden(presentation(name), n, max_total=4)
    assert report.passed
    for m in report.matches:
        assert m.member and m.dim_generated == m.dim_published


@pytest.mark.parametrize("n,name", [(1, "ex1"), (2, "ex2")])
def test_published_and_generated_quotients_agree(n, name):
    report = match_golden(presentation(name), n, max_total=5)
    assert all(g == p for g, p in report.dims.values())


@pytest.mark.parametrize("n,name", [(1, "ex1"), (2, "ex2"), (3, "ex3"), (4, "ex4")])
def test_published_quotient_matches_hall_dims(n, name):
    _, published = golden_relations(n)
    h = hall(name, 3)
    Q = GradedQuotient(h.bq.n, [x for _, x in published], field_for("sqrt:3"))
    for alpha in degrees_up_to(h.bq.n, 5):
        assert Q.dim(alpha) == h.hall_graded_dim(alpha)


@pytest.mark.parametrize("n,name", [(3, "ex3"), (4, "ex4")])
def test_generated_ideal_is_larger_on_rhombus(n, name):
    report = match_golden(presentation(name), n, max_total=4)
    diff = {a for a, (g, p) in report.dims.items() if g != p}
    assert (2, 1, 1, 0) in diff and (0, 1, 1, 2) in diff
    assert all(g < p for a, (g, p) in report.dims.items() if a in diff)


def test_report_serializes():
    d = match_golden(presentation("ex1"), 1, max_total=3).to_dict()
    assert d["example"] == 1 and d["passed"]
    assert {g["relation"] for g in d["golden"]} == {"[e3,e1]_t", "[e1,[e2,...]_t]"}
