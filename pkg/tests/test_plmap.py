from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from oracles import fit_breakpoints, grid, interpolate, x0_display, x1_display
from conftest import maps
from thompsonf import plmap
from thompsonf.dyadic import Dyadic, HALF, ONE, ZERO
from thompsonf.plmap import UNIT, Interval
from thompsonf.words import X0_MAP, X1_MAP, eval_word

D = Dyadic.parse
ID = plmap.identity()


def pts(*pairs):
    return tuple((D(x), D(y)) for x, y in pairs)


X0_SQ = pts(("0", "0"), ("1/8", "1/2"), ("1/4", "3/4"), ("1/2", "7/8"), ("1", "1"))


def test_make_identity():
    f = plmap.make(UNIT, [(0, 0), (1, 1)])
    assert f == ID and f.is_identity


def test_make_x0_from_display():
    f = plmap.make(UNIT, [(0, 0), (D("1/4"), HALF), (HALF, D("3/4")), (1, 1)])
    assert f == X0_MAP
    for a in grid(64):
        assert plmap.evaluate(f, Dyadic.from_fraction(a)) == x0_display(a)


def test_x1_matches_display():
    for a in grid(64):
        assert plmap.evaluate(X1_MAP, Dyadic.from_fraction(a)) == x1_display(a)


def test_make_errors():
    with pytest.raises(plmap.SlopeNotPowerOfTwo):
        plmap.make(UNIT, [(0, 0), (D("3/8"), D("1/2")), (1, 1)])
    with pytest.raises(plmap.BadEndpoints):
        plmap.make(UNIT, [(0, D("1/4")), (1, 1)])
    with pytest.raises(plmap.NotMonotone):
        plmap.make(UNIT, [(0, 0), (HALF, HALF), (HALF, D("3/4")), (1, 1)])


def test_make_rejects_slope_three_halves():
    # (0,0),(1/3,1/2),(1,1) is not even dyadic; the same shape on a dyadic grid:
    with pytest.raises(plmap.SlopeNotPowerOfTwo):
        plmap.make(UNIT, [(0, 0), (D("1/4"), D("3/8")), (1, 1)])
    with pytest.raises(ValueError):
        plmap.make(UNIT, [(0, 0), (Q(1, 3), HALF), (1, 1)])


def test_make_drops_collinear_points():
    f = plmap.make(UNIT, [(0, 0), (D("1/8"), D("1/4")), (D("1/4"), HALF), (HALF, D("3/4")), (1, 1)])
    assert f == X0_MAP
    assert len(f.points) == 4


def test_evaluate_examples():
    assert plmap.evaluate(X0_MAP, D("1/4")) == HALF
    assert plmap.evaluate(X1_MAP, D("5/8")) == D("3/4")
    assert plmap.evaluate(ID, D("3/8")) == D("3/8")
    with pytest.raises(plmap.OutOfDomain):
        plmap.evaluate(X0_MAP, D("3/2"))


def test_compose_examples():
    assert plmap.compose(X0_MAP, plmap.inverse(X0_MAP)) == ID
    sq = plmap.compose(X0_MAP, X0_MAP)
    assert sq.points == X0_SQ
    assert plmap.evaluate(sq, HALF) == D("7/8")


def test_compose_x0_squared_against_grid_oracle():
    # double evaluation of the displayed formula on k/64, then corner fitting
    samples = [(a, x0_display(x0_display(a))) for a in grid(64)]
    corners = fit_breakpoints(samples)
    assert [(Q(x.to_fraction()), Q(y.to_fraction())) for x, y in X0_SQ] == corners


def test_inverse_examples():
    assert plmap.inverse(ID) == ID
    inv = plmap.inverse(X0_MAP)
    assert inv.points == pts(("0", "0"), ("1/2", "1/4"), ("3/4", "1/2"), ("1", "1"))
    assert plmap.compose(X0_MAP, inv) == ID
    assert plmap.evaluate(inv, HALF) == D("1/4")


def test_equal_examples():
    assert plmap.equal(X0_MAP, X0_MAP)
    assert not plmap.equal(X0_MAP, X1_MAP)
    assert plmap.equal(plmap.compose(X1_MAP, plmap.inverse(X1_MAP)), ID)
    with pytest.raises(plmap.DomainMismatch):
        plmap.equal(X0_MAP, plmap.identity(Interval(ZERO, HALF)))


def test_support_examples():
    assert plmap.support(ID) == []
    assert plmap.support(eval_word("x1 x2^-1")) == [Interval(HALF, D("7/8"))]
    assert plmap.support(eval_word("a^2 b a^-2")) == [Interval(D("1/32"), D("1/8"))]


def test_support_non_dyadic_endpoint():
    # slope 4 through (5/16, 1/4) meets the diagonal at 1/3
    f = plmap.make(UNIT, [(0, 0), (D("1/4"), D("1/8")), (D("5/16"), D("1/4")), (D("3/8"), HALF), (HALF, D("3/4")), (1, 1)])
    sup = plmap.support(f)
    assert [(iv.lo, iv.hi) for iv in sup] == [(ZERO, Q(1, 3)), (Q(1, 3), ONE)]
    g = plmap.conjugate(f, X0_MAP)
    assert plmap.support(g) == plmap.image_of_support(X0_MAP, sup)


def test_slopes():
    assert plmap.slope_right(X0_MAP, ZERO) == 1
    assert plmap.slope_left(X0_MAP, ONE) == -1
    assert plmap.slope_right(X0_MAP, D("1/4")) == 0
    assert plmap.slope_left(X0_MAP, D("1/4")) == 1
    assert plmap.slope_right(ID, D("3/8")) == 0
    with pytest.raises(plmap.OutOfDomain):
        plmap.slope_right(X0_MAP, ONE)
    with pytest.raises(plmap.OutOfDomain):
        plmap.slope_left(X0_MAP, ZERO)


def test_conjugate_examples():
    b = eval_word("b")
    assert plmap.conjugate(b, ID) == b
    sq = plmap.compose(X0_MAP, X0_MAP)
    assert plmap.support(plmap.conjugate(b, sq)) == [Interval(D("7/8"), D("31/32"))]
    assert plmap.support(plmap.conjugate(X1_MAP, X0_MAP)) == [Interval(D("3/4"), ONE)]


def test_commutes_examples():
    b = eval_word("b")
    assert plmap.commutes(b, b)
    assert plmap.commutes(b, eval_word("a^-1 b a"))
    assert not plmap.commutes(X0_MAP, X1_MAP)
    # independent witness: the two products disagree at 1/2
    assert x1_display(x0_display(Q(1, 2))) != x0_display(x1_display(Q(1, 2)))


def test_restrict_examples():
    J = Interval(D("1/4"), D("3/4"))
    assert plmap.restrict(ID, J) == plmap.identity(J)
    g0 = plmap.restrict(eval_word("b"), Interval(HALF, D("7/8")))
    assert g0.domain == Interval(HALF, D("7/8"))
    assert plmap.slope_right(g0, HALF) == 1
    with pytest.raises(plmap.NotInvariant):
        plmap.restrict(X0_MAP, J)


def test_positivity_predicates():
    assert plmap.is_ge_identity(ID) and not plmap.is_gt_identity_interior(ID)
    assert plmap.is_ge_identity(eval_word("b"))
    assert not plmap.is_gt_identity_interior(eval_word("b"))
    assert plmap.is_gt_identity_interior(X0_MAP)
    assert not plmap.is_ge_identity(plmap.inverse(X0_MAP))


def test_abelianize_examples():
    assert plmap.abelianize(ID) == (0, 0)
    assert plmap.abelianize(eval_word("b")) == (0, 0)
    assert plmap.abelianize(X0_MAP) == (1, -1)
    assert plmap.abelianize(X1_MAP) == (0, -1)


def test_text_and_json_roundtrip():
    f = eval_word("x0 x1^-2 x0")
    assert plmap.PLMap.parse(f.render()) == f
    assert plmap.PLMap.parse(f.render(fraction_style=False)) == f
    assert plmap.PLMap.from_json(f.to_json()) == f
    assert X0_MAP.to_json() == {"domain": ["0", "1"], "points": [["0", "0"], ["1/2^2", "1/2^1"], ["1/2^1", "3/2^2"], ["1", "1"]]}
    assert X0_MAP.to_csv().splitlines() == ["x,y", "0,0", "1/2^2,1/2^1", "1/2^1,3/2^2", "1,1"]


def test_power():
    assert plmap.power(X0_MAP, 2).points == X0_SQ
    assert plmap.power(X0_MAP, -3) == plmap.inverse(plmap.power(X0_MAP, 3))
    assert plmap.power(X1_MAP, 0) == ID


# properties


@given(maps(), maps(), maps())
def test_group_laws(f, g, h):
    assert plmap.compose(plmap.compose(f, g), h) == plmap.compose(f, plmap.compose(g, h))
    assert plmap.compose(f, plmap.inverse(f)) == ID
    assert plmap.inverse(plmap.inverse(f)) == f


@given(maps(), maps())
def test_support_transport(f, g):
    assert plmap.support(plmap.conjugate(g, f)) == plmap.image_of_support(f, plmap.support(g))


@st.composite
def sparse_pairs(draw):
    # powers of a^-k b a^k mostly have disjoint supports
    def c(k, n):
        return eval_word(f"a^{-k} b^{n} a^{k}") if k else eval_word(f"b^{n}")

    k1, k2 = draw(st.integers(-4, 4)), draw(st.integers(-4, 4))
    n1, n2 = draw(st.sampled_from([-2, -1, 1, 2])), draw(st.sampled_from([-2, -1, 1, 2]))
    return c(k1, n1), c(k2, n2)


@given(st.one_of(sparse_pairs(), st.tuples(maps(6), maps(6))))
def test_disjoint_supports_commute(pair):
    f, g = pair
    if plmap.supports_disjoint(f, g):
        assert plmap.commutes(f, g)


@given(maps(), maps())
def test_abelianize_is_homomorphism(f, g):
    a, b = plmap.abelianize(f), plmap.abelianize(g)
    assert plmap.abelianize(plmap.compose(f, g)) == (a[0] + b[0], a[1] + b[1])


@st.composite
def ge_maps(draw):
    gens = [X0_MAP, X1_MAP, eval_word("b"), eval_word("x2"), eval_word("x3")]
    f = ID
    for _ in range(draw(st.integers(0, 4))):
        h = draw(st.sampled_from(gens))
        c = draw(maps(5))
        f = plmap.compose(f, plmap.conjugate(h, c))
    return f


@given(ge_maps(), maps())
def test_ge_closed_under_conjugation(f, g):
    assert plmap.is_ge_identity(f)
    assert plmap.is_ge_identity(plmap.conjugate(f, g))


def _squeeze(h, j):
    # copy of h on [j/16, (j+1)/16], identity elsewhere
    lo = Dyadic(j, 4)
    inner = [(lo + x.scale2(-4), lo + y.scale2(-4)) for x, y in h.points]
    pts = [(ZERO, ZERO)] + inner + [(ONE, ONE)]
    dedup = []
    for p in pts:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    return plmap.make(UNIT, dedup)


@given(maps(8), maps(8))
def test_slope_transport_near_zero(h0, h1):
    g = plmap.compose(_squeeze(h0, 0), _squeeze(h1, 1))
    a_inv = plmap.power(X0_MAP, -2)
    conj = plmap.conjugate(g, a_inv)  # a g a^-1
    eighth = Dyadic(1, 3)
    for x, _ in g.breakpoints():
        if ZERO < x < eighth:
            assert plmap.slope_right(conj, plmap.evaluate(a_inv, x)) == plmap.slope_right(g, x)


@given(maps(), maps(), st.lists(st.integers(0, 1 << 12), min_size=1, max_size=100))
def test_evaluate_compose_consistency(f, g, nums):
    fg = plmap.compose(f, g)
    for n in nums:
        a = Dyadic(n, 12)
        assert plmap.evaluate(fg, a) == plmap.evaluate(g, plmap.evaluate(f, a))


@given(maps())
def test_compose_matches_interpolation_oracle(f):
    g = X1_MAP
    fg = plmap.compose(f, g)
    for a in grid(256):
        assert interpolate(fg.points, a) == x1_display(interpolate(f.points, a))


@given(maps())
def test_canonical_invariants(f):
    xs, ys = f.xs, f.ys
    assert f.points[0] == (ZERO, ZERO) and f.points[-1] == (ONE, ONE)
    assert all(a < b for a, b in zip(xs, xs[1:]))
    assert all(a < b for a, b in zip(ys, ys[1:]))
    assert all(s != t for s, t in zip(f.slopes, f.slopes[1:]))
