"""Windowed derived category of a linear-quiver path algebra."""
import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from heartcheck.modcat import Algebra, Interval, indecomposables
from heartcheck.dercat import (
    DMor,
    DObj,
    ShiftedInterval,
    Window,
    chain_map_of,
    cocone,
    cone,
    dcompose01,
    dgen,
    dhom01,
    dhom_basis_pairs,
    dhom_dim,
    dhom_dim_solver,
    factors_through,
    grid_cell,
    hereditary_algebra,
    homology,
    mapping_cone,
    parse_shifted,
    postcompose_matrix,
    precompose_matrix,
    two_term_resolution,
)

A3 = hereditary_algebra(3)
A4 = hereditary_algebra(4)


@st.composite
def shifted_pairs(draw, max_n=4, degree_span=3):
    n = draw(st.integers(2, max_n))
    alg = hereditary_algebra(n)
    ivs = indecomposables(alg)
    x = ShiftedInterval(draw(st.sampled_from(ivs)), draw(st.integers(-degree_span, degree_span)))
    y = ShiftedInterval(draw(st.sampled_from(ivs)), draw(st.integers(-degree_span, degree_span)))
    return alg, x, y


# --- basic objects -------------------------------------------------------------------

def test_hereditary_algebra_rejected_elsewhere():
    with pytest.raises(Exception):
        # derived machinery requires the full path algebra (no cap relations)
        two_term_resolution(Algebra(3, (1, 2, 2)), DObj([ShiftedInterval(Interval(1, 1), 0)]))


def test_parse_shifted():
    assert parse_shifted("[1,3]@2") == ShiftedInterval(Interval(1, 3), 2)
    assert parse_shifted("[2,2]@0") == ShiftedInterval(Interval(2, 2), 0)
    assert parse_shifted("[2,2]@-1").degree == -1
    with pytest.raises(ValueError):
        parse_shifted("[1,3]")
    with pytest.raises(ValueError):
        parse_shifted("[3,1]@0")


def test_dobj_shift_and_add():
    x = DObj([parse_shifted("[1,1]@0"), parse_shifted("[2,3]@1")])
    assert x.shift(2).shift(-2) == x
    assert len(x + x) == 4


# --- Hom in the derived category ------------------------------------------------------

@settings(max_examples=600, deadline=None)
@given(shifted_pairs())
def test_dhom_closed_form_vs_complex_solver(data):
    """Two independent routes: degree bookkeeping vs honest chain maps."""
    alg, x, y = data
    assert dhom01(alg, x, y) == dhom_dim_solver(alg, x, y)


def test_dhom_shift_invariance():
    alg = A4
    ivs = indecomposables(alg)
    for x in ivs:
        for y in ivs:
            for dx in (-1, 0, 2):
                a = ShiftedInterval(x, dx)
                b = ShiftedInterval(y, dx + 1)
                assert dhom01(alg, a, b) == dhom01(alg, a.shift(5), b.shift(5))


def test_dhom_known_values():
    alg = A3
    s1 = ShiftedInterval(Interval(1, 1), 0)
    s2 = ShiftedInterval(Interval(2, 2), 0)
    # Hom(S2, S1[1]) = Ext1(S2, S1) = k on the linear quiver
    assert dhom01(alg, s2, s1.shift(1)) == 1
    assert dhom01(alg, s1, s2.shift(1)) == 0
    assert dhom01(alg, s2, s1) == 0
    assert dhom01(alg, s2, s2) == 1
    # no maps backwards or two degrees up
    assert dhom01(alg, s2, s1.shift(2)) == 0
    assert dhom01(alg, s2, s1.shift(-1)) == 0


# --- composition and matrices ---------------------------------------------------------

def test_dmor_compose_surviving_and_vanishing():
    alg = A3
    # quotient then include: [1,2] ->> [2,2] -> [2,3] composes to the canonical map
    x = DObj([parse_shifted("[1,2]@0")])
    y = DObj([parse_shifted("[2,2]@0")])
    z = DObj([parse_shifted("[2,3]@0")])
    h = dgen(alg, y, z, 0, 0).compose(dgen(alg, x, y, 0, 0))
    assert not h.is_zero()
    assert h.src == x and h.tgt == z
    # two consecutive maps of a triangle compose to zero
    mid = DObj([parse_shifted("[2,2]@0")])
    conn = DObj([parse_shifted("[1,1]@1")])
    assert dgen(alg, mid, conn, 0, 0).compose(dgen(alg, x, mid, 0, 0)).is_zero()
    # a connecting composite that survives in degree one
    a = DObj([parse_shifted("[3,3]@0")])
    b = DObj([parse_shifted("[1,2]@1")])
    c = DObj([parse_shifted("[2,2]@1")])
    assert not dgen(alg, b, c, 0, 0).compose(dgen(alg, a, b, 0, 0)).is_zero()


def test_post_and_pre_compose_matrices_agree_with_compose():
    alg = A4
    a = DObj([parse_shifted("[1,3]@0"), parse_shifted("[2,4]@0")])
    x = DObj([parse_shifted("[2,3]@0")])
    y = DObj([parse_shifted("[2,2]@0"), parse_shifted("[1,2]@1")])
    for (i, j) in dhom_basis_pairs(alg, x, y):
        g = dgen(alg, x, y, i, j)
        post = postcompose_matrix(alg, g, a)
        pairs_ax = dhom_basis_pairs(alg, a, x)
        pairs_ay = dhom_basis_pairs(alg, a, y)
        assert (post.rows, post.cols) == (len(pairs_ay), len(pairs_ax))
        for k, pair in enumerate(pairs_ax):
            base = dgen(alg, a, x, *pair)
            composed = g.compose(base)
            assert composed.vector(pairs_ay) == [post.data[r][k] for r in range(post.rows)]
        pre = precompose_matrix(alg, g, a)
        pairs_xa = dhom_basis_pairs(alg, x, a)
        pairs_ya = dhom_basis_pairs(alg, y, a)
        assert (pre.rows, pre.cols) == (len(pairs_xa), len(pairs_ya))
        for k, pair in enumerate(pairs_ya):
            base = dgen(alg, y, a, *pair)
            composed = base.compose(g)
            assert composed.vector(pairs_xa) == [pre.data[r][k] for r in range(pre.rows)]


# --- cones ----------------------------------------------------------------------------

def test_cone_of_zero_map_splits():
    alg = A3
    x = DObj([parse_shifted("[1,1]@0")])
    y = DObj([parse_shifted("[3,3]@0")])
    f = DMor.zero(alg, x, y)
    c = cone(alg, f)
    assert c == y + x.shift(1)


def test_cone_of_identity_vanishes():
    alg = A3
    x = DObj([parse_shifted("[1,2]@0")])
    f = dgen(alg, x, x, 0, 0)
    assert not cone(alg, f)


def test_cone_known_triangle():
    # [1,1] -> [1,2] -> [2,2] -> [1,1][1] rotated: cone([2,2] -> [1,1][1]) = [1,2][1]
    alg = A3
    incl = dgen(alg, DObj([parse_shifted("[1,1]@0")]), DObj([parse_shifted("[1,2]@0")]), 0, 0)
    c = cone(alg, incl)
    assert c == DObj([parse_shifted("[2,2]@0")])
    conn = dgen(alg, DObj([parse_shifted("[2,2]@0")]), DObj([parse_shifted("[1,1]@1")]), 0, 0)
    assert cone(alg, conn) == DObj([parse_shifted("[1,2]@1")])


@settings(max_examples=250, deadline=None)
@given(shifted_pairs(max_n=4, degree_span=2))
def test_cone_dimension_balance(data):
    """Euler characteristic: dimvec of the cone telescopes."""
    alg, x, y = data
    if not dhom01(alg, x, y):
        return
    f = dgen(alg, DObj([x]), DObj([y]), 0, 0)
    c = cone(alg, f)

    def euler(obj):
        tot = [0] * alg.n
        for s in obj.slots:
            sign = 1 if s.degree % 2 == 0 else -1
            for v in range(s.iv.a, s.iv.b + 1):
                tot[v - 1] += sign
        return tot

    lhs = euler(c)
    ey, ex = euler(DObj([y])), euler(DObj([x]))
    assert lhs == [a - b for a, b in zip(ey, ex)]


@settings(max_examples=250, deadline=None)
@given(shifted_pairs(max_n=4, degree_span=2))
def test_cocone_is_shifted_cone(data):
    alg, x, y = data
    if not dhom01(alg, x, y):
        return
    f = dgen(alg, DObj([x]), DObj([y]), 0, 0)
    assert cocone(alg, f) == cone(alg, f).shift(-1)


def test_factors_through():
    alg = A3
    x = DObj([parse_shifted("[3,3]@0")])
    y = DObj([parse_shifted("[2,2]@1")])
    f = dgen(alg, x, y, 0, 0)
    assert factors_through(alg, f, [parse_shifted("[1,2]@1")])
    assert not factors_through(alg, f, [parse_shifted("[1,1]@1")])


# --- two-term resolutions and homology ------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(shifted_pairs(max_n=4, degree_span=1))
def test_two_term_resolution_recovers_object(data):
    alg, x, y = data
    obj = DObj([x, y])
    cpx, top, bot = two_term_resolution(alg, obj)
    assert homology(alg, cpx) == obj


def test_chain_map_cone_matches_direct_cone():
    alg = A4
    x = DObj([parse_shifted("[2,3]@0")])
    y = DObj([parse_shifted("[3,4]@0")])
    f = dgen(alg, x, y, 0, 0)
    cx, cy, comps = chain_map_of(alg, f)
    assert homology(alg, cx) == x and homology(alg, cy) == y
    assert homology(alg, mapping_cone(alg, cx, cy, comps)) == cone(alg, f)


# --- window ---------------------------------------------------------------------------

def test_window_validation_and_trust():
    w = Window(-9, 11, 8)
    assert w.trust_min == -1 and w.trust_max == 3
    assert w.in_trust(parse_shifted("[1,1]@0"))
    assert not w.in_trust(parse_shifted("[1,1]@4"))
    assert w.contains(parse_shifted("[1,1]@4"))
    with pytest.raises(ValueError):
        Window(0, 1, 2)
    with pytest.raises(ValueError):
        Window(0, 1, -1)


def test_window_objects_count():
    w = Window(-1, 1, 0)
    assert len(w.objects(A3)) == 3 * 6


def test_grid_cell_injective_on_window():
    w = Window(-2, 2, 0)
    cells = {}
    for si in w.objects(A4):
        cell = grid_cell(4, si)
        assert cell not in cells, f"{si} collides with {cells[cell]}"
        cells[cell] = si
