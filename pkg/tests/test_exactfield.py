"""Linear algebra kernel: exact rational and prime-field matrices."""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from heartcheck.exactfield import (
    GFElem,
    Mat,
    gf_mat,
    hstack,
    in_span,
    kernel_basis,
    quotient_dim,
    rank,
    solve,
    span_rank,
    vstack,
)

F = Fraction


def mat_of(rows):
    m = Mat(len(rows), len(rows[0]) if rows else 0)
    for i, row in enumerate(rows):
        for j, val in enumerate(row):
            m.data[i][j] = F(val)
    return m


# --- Mat basics -------------------------------------------------------------------

def test_identity_multiplication():
    a = mat_of([[1, 2], [3, 4]])
    assert Mat.identity(2) * a == a
    assert a * Mat.identity(2) == a


def test_matrix_product_known():
    a = mat_of([[1, 2], [3, 4]])
    b = mat_of([[0, 1], [1, 0]])
    assert a * b == mat_of([[2, 1], [4, 3]])


def test_shape_mismatch_rejected():
    a = mat_of([[1, 2]])
    b = mat_of([[1, 2]])
    with pytest.raises(Exception):
        _ = a * b


def test_add_sub_scale():
    a = mat_of([[1, 2], [3, 4]])
    b = mat_of([[5, 6], [7, 8]])
    assert (a + b) - b == a
    assert a.scale(F(2)) == a + a
    assert (a - a).is_zero()


def test_transpose_involution():
    a = mat_of([[1, 2, 3], [4, 5, 6]])
    assert a.transpose().transpose() == a
    assert a.transpose().rows == 3 and a.transpose().cols == 2


def test_apply_matches_product():
    a = mat_of([[1, 2], [3, 4]])
    assert a.apply([F(1), F(1)]) == [F(3), F(7)]


# --- rank / kernel / solve ----------------------------------------------------------

def test_rank_known_values():
    assert rank(mat_of([[1, 2], [2, 4]])) == 1
    assert rank(mat_of([[1, 0], [0, 1]])) == 2
    assert rank(Mat.zero(3, 5)) == 0


def test_kernel_dimension_theorem():
    m = mat_of([[1, 2, 3], [4, 5, 6]])
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    for vec in ker:
        assert all(x == 0 for x in m.apply(vec))


def test_solve_consistent_and_inconsistent():
    m = mat_of([[1, 1], [0, 1]])
    x = solve(m, [F(3), F(1)])
    assert x is not None and m.apply(x) == [F(3), F(1)]
    sing = mat_of([[1, 1], [2, 2]])
    assert solve(sing, [F(1), F(3)]) is None


def test_span_and_quotient():
    vs = [[F(1), F(0), F(0)], [F(0), F(1), F(0)], [F(1), F(1), F(0)]]
    assert span_rank(vs, 3) == 2
    assert quotient_dim(3, vs) == 1
    assert in_span(vs[:2], 3, [F(2), F(3), F(0)])
    assert not in_span(vs[:2], 3, [F(0), F(0), F(1)])


def test_stacking():
    a = mat_of([[1], [2]])
    b = mat_of([[3], [4]])
    assert vstack(a, b) == mat_of([[1], [2], [3], [4]])
    assert hstack(a, b) == mat_of([[1, 3], [2, 4]])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
                min_size=1, max_size=4))
def test_rank_transpose_invariant(rows):
    m = mat_of(rows)
    assert rank(m) == rank(m.transpose())


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2),
                min_size=2, max_size=2),
       st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2),
                min_size=2, max_size=2))
def test_rank_subadditive(r1, r2):
    a, b = mat_of(r1), mat_of(r2)
    assert rank(a * b) <= min(rank(a), rank(b))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
                min_size=2, max_size=4))
def test_kernel_vectors_annihilate(rows):
    m = mat_of(rows)
    for vec in kernel_basis(m):
        assert all(x == 0 for x in m.apply(vec))
        assert any(x != 0 for x in vec)


# --- prime fields -------------------------------------------------------------------

def test_gf_arithmetic():
    a = GFElem(5, 3)
    b = GFElem(5, 4)
    assert (a + b).v == 2
    assert (a * b).v == 2
    assert (a - b).v == 4
    assert (-a).v == 2
    assert (a ** -1 * a).v == 1
    assert GFElem(5, 0) == 0
    assert not GFElem(5, 0)


def test_gf_constructor_coerces_fractions():
    assert GFElem(3, F(1, 2)).v == 2  # 1 * inverse(2) = 2 mod 3
    with pytest.raises(ValueError):
        GFElem(2, F(1, 2))  # denominator not invertible mod 2


def test_gf_inverse_all_nonzero():
    for p in (2, 3, 5, 7):
        for v in range(1, p):
            e = GFElem(p, v)
            assert (e ** -1 * e).v == 1


def test_gf_matrix_rank_and_kernel():
    m = gf_mat(2, 2, 2, [[1, 1], [1, 1]])
    assert rank(m) == 1
    ker = kernel_basis(m)
    assert len(ker) == 1
    for vec in ker:
        assert all(not x for x in m.apply(vec))


def test_gf_mat_rejects_bad_shape():
    with pytest.raises(ValueError):
        gf_mat(2, 2, 2, [[1, 1]])


def test_gf_rank_can_drop_from_rational_rank():
    # Invertible over the rationals, singular mod 2.
    mq = mat_of([[1, 1], [1, -1]])
    m2 = gf_mat(2, 2, 2, [[1, 1], [1, -1]])
    assert rank(mq) == 2
    assert rank(m2) == 1


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_gf5_field_axioms(a, b, c):
    p = 5
    x, y, z = GFElem(p, a), GFElem(p, b), GFElem(p, c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
