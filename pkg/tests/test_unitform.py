import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallq.unitform import (
    CapTooSmall,
    IndexMismatch,
    ad_exponent,
    bilinear,
    bilinear0,
    evaluate,
    from_coefficients,
    is_weakly_positive,
    kostant_partitions,
    nu,
    positive_roots,
    unit_form_of,
)
from hallq.quiver import validate

from conftest import quiver
from oracles import multiset_count


def form(name):
    return unit_form_of(quiver(name))


def published_ex1(b):
    b1, b2, b3 = b
    return b1 * b1 + b2 * b2 + b3 * b3 - b1 * b2 - b2 * b3 + b1 * b3


def published_rhombus(b, c14):
    b1, b2, b3, b4 = b
    return (b1 * b1 + b2 * b2 + b3 * b3 + b4 * b4 - b1 * b2 - b1 * b3
            - b2 * b4 - b3 * b4 + c14 * b1 * b4)


def box(n, cap):
    import itertools
    return [v for v in itertools.product(range(cap + 1), repeat=n) if any(v)]


def test_example_forms_match_published_polynomials():
    T1 = form("ex1")
    assert (T1.a(0, 1), T1.a(1, 2), T1.a(0, 2)) == (-1, -1, 1)
    for b in box(3, 3):
        assert evaluate(T1, b) == published_ex1(b)
    for name, c14 in (("ex3", 1), ("ex4", 2)):
        T = form(name)
        for b in box(4, 2):
            assert evaluate(T, b) == published_rhombus(b, c14)
    assert form("ex4").a(0, 3) == 2


def test_form_without_arrows_is_diagonal():
    T = unit_form_of(validate({"vertices": [1, 2, 3]}))
    assert all(T.a(i, j) == 0 for i in range(3) for j in range(3))


def test_evaluate_examples():
    T = form("ex1")
    assert evaluate(T, (1, 1, 1)) == 2
    assert evaluate(T, (1, 1, 0)) == 1
    assert all(evaluate(T, T.simple(i)) == 1 for i in range(3))
    with pytest.raises(IndexMismatch):
        evaluate(T, (1, 1))


def test_bilinear_examples():
    T = form("ex1")
    a1, a2, a3 = (T.simple(i) for i in range(3))
    assert bilinear(T, a1, a3) == 1
    assert bilinear0(T, a1, a3) == 0
    assert bilinear(T, a1, a2) - bilinear(T, a2, a1) == -1


def test_nu_examples():
    T = form("ex1")
    a1, a2 = T.simple(0), T.simple(1)
    assert nu(T, a1, a1) == 1
    assert nu(T, a1, a2) == 0
    assert nu(T, a2, a1) == 0


def test_ad_exponent_examples():
    T = form("ex1")
    a1, a2 = T.simple(0), T.simple(1)
    assert ad_exponent(T, a1, a2) == -1
    assert ad_exponent(T, a1, a1) == 0
    assert ad_exponent(T, a1, (1, 1, 0)) == 1


def test_roots_example1():
    assert set(positive_roots(form("ex1"))) == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1)}


def test_roots_example3():
    R = positive_roots(form("ex3"))
    assert (1, 1, 1, 1) in R and (1, 1, 0, 1) not in R
    # brute force over a larger box with the published polynomial
    assert set(R) == {b for b in box(4, 4) if published_rhombus(b, 1) == 1}


def test_single_vertex_roots():
    assert list(positive_roots(from_coefficients(1, {}))) == [(1,)]


def test_root_cap_certificate():
    # Kronecker-like form: a_12 = -2 has roots (k, k+1) for every k
    T = from_coefficients(2, {(0, 1): -2})
    with pytest.raises(CapTooSmall):
        positive_roots(T, 6)


def test_weak_positivity():
    assert is_weakly_positive(form("ex1"))
    assert not is_weakly_positive(from_coefficients(2, {(0, 1): -2}))
    assert is_weakly_positive(from_coefficients(1, {}))


def test_roots_stable_under_larger_cap():
    for name in ("ex1", "ex2", "ex3", "ex4"):
        assert set(positive_roots(form(name), 6)) == set(positive_roots(form(name), 7))


forms = st.builds(
    lambda n, entries: from_coefficients(n, {(i, j): c for (i, j, c) in entries if i != j and i < n and j < n}),
    st.integers(1, 4),
    st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2)), max_size=8),
)


@st.composite
def form_and_vectors(draw):
    T = draw(forms)
    vec = st.tuples(*[st.integers(-3, 3)] * T.n)
    return T, draw(vec), draw(vec)


@settings(max_examples=200, deadline=None)
@given(form_and_vectors())
def test_form_identities(data):
    T, b, c = data
    assert evaluate(T, b) == bilinear(T, b, b)
    assert ad_exponent(T, b, c) == -ad_exponent(T, c, b)
    for i in range(T.n):
        for j in range(T.n):
            assert bilinear(T, T.simple(i), T.simple(j)) == (1 if i == j else T.a(i, j))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_unbound_quivers_nu(data):
    n = data.draw(st.integers(1, 4))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    bq = validate({"vertices": list(range(n)), "arrows": [(f"x{k}", i, j) for k, (i, j) in enumerate(chosen)]})
    T = unit_form_of(bq)
    vec = st.tuples(*[st.integers(0, 3)] * n)
    b, c = data.draw(vec), data.draw(vec)
    assert bilinear(T, b, c) == bilinear0(T, b, c)
    assert nu(T, b, c) in (0, bilinear0(T, b, c))


@pytest.mark.parametrize("alpha", [(1, 1, 1), (2, 1, 0), (2, 2, 1), (1, 2, 2), (3, 1, 1)])
def test_kostant_partitions(alpha):
    R = list(positive_roots(form("ex1")))
    assert kostant_partitions(alpha, R) == multiset_count(alpha, R)
