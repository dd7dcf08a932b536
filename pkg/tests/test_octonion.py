import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from homvar.linalg import dense_rows, kernel, span_equal
from homvar.linalg import span_contains as span_contains_rows
from homvar.octonion import (
    I, ONE, CplxRat, HermOct3, NotAPoint, NotImaginary, Octonion, base_locus_map,
    cayley_dickson_mul, det, ff2_base_op2_0, g2p1_membership, g2p1_tangent,
    g2p1_tangent1, g2p1_tangent_by_real_part, general_line_witness, homogeneous_line_witness,
    is_op2_0_point, is_rank_one_traceless, jordan, left_mult_matrix, line_tests,
    null_imaginary, op2_0_tangents, oct_mul, base_point, random_null, random_null_imaginary,
    random_octonion, random_op2_0_point, rational_rotation, rotate, sharp, span_contains,
    tangent_model, verify_suite,
)

e = Octonion.unit
seeds = st.integers(0, 2**32 - 1)


def test_cplx_arithmetic():
    z = CplxRat(1, 2)
    assert z * z.conjugate() == 5
    assert I * I == -1
    assert (z / z) == 1
    assert 1 - I == CplxRat(1, -1)
    assert not CplxRat(0, 0) and CplxRat(0, Fraction(1, 3))


def test_units():
    assert e(1) * e(2) == e(3)
    assert e(2) * e(1) == -e(3)
    for k in range(1, 8):
        assert e(k) * e(k) == -e(0)
    one = Octonion.scalar(1)
    x = random_octonion(random.Random(0))
    assert one * x == x == x * one


def test_table_matches_cayley_dickson():
    rng = random.Random(11)
    for _ in range(30):
        x, y = random_octonion(rng), random_octonion(rng)
        assert oct_mul(x, y) == cayley_dickson_mul(x, y)


def test_not_associative():
    assert (e(1) * e(2)) * e(4) != e(1) * (e(2) * e(4))


@settings(max_examples=40)
@given(seeds)
def test_octonion_identities(seed):
    rng = random.Random(seed)
    x, y = random_octonion(rng), random_octonion(rng)
    assert x * x.conj() == Octonion.scalar(x.norm())
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * x) * y == x * (x * y)
    assert (x * y).conj() == y.conj() * x.conj()
    # Moufang
    z = random_octonion(rng)
    assert (z * x * z) * y == z * (x * (z * y))


@settings(max_examples=40)
@given(seeds)
def test_imaginary_square(seed):
    u = random_octonion(random.Random(seed), imaginary=True)
    assert u * u == Octonion.scalar(-u.norm())


def test_g2p1_membership():
    u = e(1) + I * e(2)
    assert g2p1_membership(u)
    assert not g2p1_membership(e(1))
    assert not g2p1_membership(Octonion())
    with pytest.raises(NotImaginary):
        g2p1_membership(e(0))


@settings(max_examples=30)
@given(seeds)
def test_null_parameterization(seed):
    v = random_null_imaginary(random.Random(seed))
    assert v.is_imaginary() and v.norm() == 0 and g2p1_membership(v)


def test_null_imaginary_polynomial():
    v = null_imaginary([ONE, ONE, 0, 0, 0, 0])
    assert v.norm() == 0 and v.is_imaginary()


def test_g2p1_tangent_spaces():
    rng = random.Random(4)
    for _ in range(10):
        u = random_null_imaginary(rng)
        T, T1 = g2p1_tangent(u), g2p1_tangent1(u)
        assert (len(T), len(T1)) == (6, 3)
        assert len(g2p1_tangent_by_real_part(u)) == 6
        assert len(kernel(left_mult_matrix(u), 8)) == 4


def test_g2p1_tangent_descriptions_agree():
    rng = random.Random(9)
    for _ in range(100):
        u = random_null_imaginary(rng)
        assert span_equal(dense_rows(g2p1_tangent(u)), dense_rows(g2p1_tangent_by_real_part(u)))
        assert span_contains_rows(dense_rows(g2p1_tangent(u)), dense_rows(g2p1_tangent1(u)))


def test_random_null_is_null():
    rng = random.Random(2)
    for _ in range(10):
        assert random_null(rng).norm() == 0


def test_jordan_basics():
    Id = HermOct3.diag(1, 1, 1)
    assert det(Id) == 1
    assert det(HermOct3.diag(2, 3, 5)) == 30
    assert jordan(Id, Id) == Id
    assert not is_op2_0_point(Id)
    assert not is_op2_0_point(HermOct3.zero())
    assert sharp(HermOct3.diag(2, 3, 5)) == HermOct3.diag(15, 10, 6)


def test_hermitian_round_trip():
    rng = random.Random(1)
    A = HermOct3(random_octonion(rng).re, 2, 3, random_octonion(rng), random_octonion(rng),
                 random_octonion(rng))
    assert HermOct3.from_matrix(A.matrix()) == A
    assert HermOct3.from_coords(A.coords()) == A


def test_base_point():
    A = base_point()
    assert is_op2_0_point(A) and is_rank_one_traceless(A)
    assert det(A) == 0 and A.trace() == 0
    assert op2_0_tangents(A).dims == (16, 9)
    with pytest.raises(NotAPoint):
        op2_0_tangents(HermOct3.diag(1, 0, 0))


def test_tangent_containments():
    A = base_point()
    T = op2_0_tangents(A)
    assert span_contains(T.hatT, T.hatT1)
    assert span_contains(T.hatT, [A])
    assert span_contains(T.hatT1, [A])
    rng = random.Random(3)
    u, v = random_octonion(rng), random_octonion(rng, imaginary=True)
    assert span_contains(T.hatT, [tangent_model(u, v)])
    assert span_contains(T.hatT1, [tangent_model(u, Octonion())])
    assert not span_contains(T.hatT1, [tangent_model(Octonion(), e(1))])


def test_rotations_preserve_points():
    rng = random.Random(8)
    for _ in range(5):
        g = rational_rotation(rng)
        B = rotate(g, base_point())
        assert is_op2_0_point(B) and op2_0_tangents(B).dims == (16, 9)


def test_random_points():
    rng = random.Random(12)
    for _ in range(5):
        assert is_rank_one_traceless(random_op2_0_point(rng))


def test_line_witnesses():
    rng = random.Random(6)
    A = base_point()
    v = random_null_imaginary(rng)
    B = general_line_witness(v)
    t = line_tests(A, B)
    assert t.general_line and not t.homogeneous_line and not t.degenerate
    B = homogeneous_line_witness(random_null(rng))
    t = line_tests(A, B)
    assert t.general_line and t.homogeneous_line
    assert line_tests(A, A.scale(3)).degenerate
    with pytest.raises(NotAPoint):
        line_tests(A, HermOct3.diag(1, 0, 0))


def test_ff2_strata():
    rng = random.Random(10)
    for _ in range(20):
        x = [CplxRat(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(14)]
        out = base_locus_map(x)
        u, v = Octonion(out[:8]), Octonion((0,) + tuple(out[8:]))
        assert ff2_base_op2_0(u, v)
        assert jordan(tangent_model(u, v), tangent_model(u, v)).is_zero()
    u, v = random_octonion(rng), random_octonion(rng, imaginary=True)
    assert not ff2_base_op2_0(u, v)
    assert not jordan(tangent_model(u, v), tangent_model(u, v)).is_zero()
    with pytest.raises(NotImaginary):
        ff2_base_op2_0(u, e(0))


def test_squares_of_tangent_directions():
    rng = random.Random(13)
    for _ in range(100):
        u = random_null(rng) if rng.random() < 0.5 else random_octonion(rng)
        v = random_null_imaginary(rng) if rng.random() < 0.5 else random_octonion(rng, True)
        if rng.random() < 0.3:
            u = Octonion()
        w = tangent_model(u, v)
        assert jordan(w, w).is_zero() == ff2_base_op2_0(u, v)


@pytest.mark.slow
def test_suite_passes():
    checks = verify_suite(samples=100, points=5)
    assert all(c.ok for c in checks), [c.to_json() for c in checks if not c.ok]
    assert len(checks) == 11
