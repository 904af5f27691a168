import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from hopflift.fplinalg import in_column_space, matmul, nullspace, rank


def matrices(p):
    return st.tuples(st.integers(1, 6), st.integers(1, 6)).flatmap(
        lambda rc: st.lists(st.integers(0, p - 1), min_size=rc[0] * rc[1],
                            max_size=rc[0] * rc[1]).map(
            lambda xs: np.array(xs, dtype=np.int64).reshape(rc)))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(st.just(p), matrices(p))))
def test_rank_nullity(pm):
    p, M = pm
    ns = nullspace(M, p)
    assert rank(M, p) + len(ns) == M.shape[1]
    for v in ns:
        assert not np.any(matmul(M, v.reshape(-1, 1), p))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]).flatmap(
    lambda p: st.tuples(st.just(p), matrices(p), st.lists(st.integers(0, 4), min_size=6,
                                                          max_size=6))))
def test_images_lie_in_column_space(case):
    p, M, coeffs = case
    v = (M @ np.array(coeffs[:M.shape[1]], dtype=np.int64)) % p
    assert in_column_space(M, v, p)


def test_rank_examples():
    assert rank(np.array([[1, 1], [1, 1]]), 2) == 1
    assert rank(np.array([[1, 2], [2, 1]]), 3) == 1
    assert rank(np.array([[1, 2], [2, 1]]), 5) == 2
