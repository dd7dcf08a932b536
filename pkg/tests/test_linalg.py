from fractions import Fraction

from hypothesis import given, strategies as st

from homvar.linalg import (Echelon, kernel, matrix_rank, nullspace, rank, rref, span_contains,
                           span_equal)
from homvar.octonion import CplxRat, I

small = st.integers(-4, 4)
matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=5))


def apply(M, v):
    return [sum(Fraction(a) * b for a, b in zip(r, v)) for r in M]


def test_rank_examples():
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert matrix_rank([[1, 0], [0, 1]]) == 2
    assert matrix_rank([[0, 0]]) == 0
    assert rank([]) == 0


def test_rref_is_canonical():
    a = rref([{0: 2, 1: 4}, {1: 1}])
    b = rref([{0: 1}, {0: 3, 1: 5}])
    assert a == b == [{0: 1}, {1: 1}]


def test_nullspace_example():
    basis = nullspace([{0: 1, 1: 1, 2: 1}], range(3))
    assert len(basis) == 2
    for v in basis:
        assert sum(v.values()) == 0


def test_complex_entries():
    # rows (1, i) and (i, -1) are proportional over C
    assert rank([{0: CplxRat(1), 1: I}, {0: I, 1: CplxRat(-1)}]) == 1
    (v,) = nullspace([{0: CplxRat(1), 1: I}], range(2))
    assert v[0] * 1 + v[1] * I == 0


def test_echelon_membership():
    e = Echelon()
    assert e.add({0: 1, 1: 1}) and not e.add({0: 2, 1: 2})
    assert e.contains({0: -3, 1: -3}) and not e.contains({1: 1})


def test_span_relations():
    a = [{0: 1}, {1: 1}]
    b = [{0: 1, 1: 1}, {0: 1, 1: -1}]
    assert span_equal(a, b)
    assert span_contains(a, [{0: 5, 1: 7}])
    assert not span_contains([{0: 1}], [{1: 1}])


@given(matrices)
def test_rank_nullity(M):
    n = len(M[0])
    K = kernel(M, n)
    assert matrix_rank(M) + len(K) == n
    for v in K:
        assert apply(M, v) == [0] * len(M)


@given(matrices)
def test_rank_of_transpose(M):
    assert matrix_rank(M) == matrix_rank([list(c) for c in zip(*M)])
