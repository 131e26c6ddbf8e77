import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallq import gflinalg as gf

from oracles import gaussian_count, gl_count, rank_mod_p


def test_rref_examples():
    assert gf.rank(gf.identity(3), 3) == 3
    assert gf.rank(gf.zeros(2, 2), 3, 2) == 0
    assert gf.rank([[1, 2], [2, 1]], 3) == 1


def test_kernel_examples():
    assert gf.solve_kernel(gf.identity(3), 3) == []
    assert len(gf.solve_kernel([[0, 0]], 3)) == 2
    assert gf.solve_kernel([[1, 1]], 3) == [[2, 1]]  # same line as (1, 2)


def test_subspace_counts():
    assert len(gf.enumerate_subspaces(2, 1, 3)) == 4
    assert len(gf.enumerate_subspaces(2, 2, 3)) == 1
    assert len(gf.enumerate_subspaces(3, 1, 2)) == 7


def test_subspace_cap():
    with pytest.raises(gf.CapExceeded):
        gf.enumerate_subspaces(6, 3, 5, cap=1000)


def test_invertibility():
    assert gf.is_invertible(gf.identity(2), 3)
    assert not gf.is_invertible(gf.zeros(2, 2), 3)
    assert gf.is_invertible([[1, 1], [1, 2]], 3)
    with pytest.raises(gf.NotSquare):
        gf.is_invertible([[1, 2]], 3)


@pytest.mark.parametrize("n,k,p", [(2, 1, 2), (3, 1, 3), (3, 2, 2), (4, 2, 2), (2, 1, 5)])
def test_gaussian_binomial_against_brute_force(n, k, p):
    assert gf.gaussian_binomial(n, k, p) == gaussian_count(n, k, p)
    assert len(gf.enumerate_subspaces(n, k, p)) == gaussian_count(n, k, p)


@pytest.mark.parametrize("n,p", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_gl_order_against_brute_force(n, p):
    assert gf.gl_order(n, p) == gl_count(n, p)


primes = st.sampled_from([2, 3, 5, 7])


@st.composite
def matrices(draw):
    p = draw(primes)
    r = draw(st.integers(0, 5))
    c = draw(st.integers(1, 5))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return rows, c, p


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_properties(mc):
    m, c, p = mc
    r = gf.rank(m, p, c)
    assert r == rank_mod_p(m, c, p)
    assert r == gf.rank(gf.transpose(m, c), p, len(m))
    kernel = gf.solve_kernel(m, p, c)
    assert r + len(kernel) == c
    for v in kernel:
        assert not any(gf.matvec(m, v, p))
    assert gf.rank(kernel, p, c) == len(kernel)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.sampled_from([2, 3]), st.data())
def test_subspaces_are_canonical(n, p, data):
    k = data.draw(st.integers(0, n))
    for sub in gf.iter_subspaces(n, k, p):
        red, rank, _ = gf.rref(sub, p, n)
        assert rank == k and red == sub
