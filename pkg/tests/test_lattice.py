import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import brute
from traceideal import lattice as lat
from traceideal.lattice import Lattice, LatticeError
from traceideal.local_ring import semigroup_ring
from traceideal.scalars import make_field
from traceideal.series import PrecisionError, Series, parse_series, parse_series_list

F2 = make_field("F2")
F8 = make_field("F8/F2")

RINGS = {g: semigroup_ring(F2, g) for g in [(2, 3), (3, 4, 5), (3, 5), (4, 5, 6), (2, 5), (3, 4)]}


def test_canonical_form_is_unique():
    a = lat.lattice_from_generators(F2, parse_series_list("t4,t5,t6", F2), closure="ring")
    b = lat.lattice_from_generators(F2, parse_series_list("t4+t5,t5,t6+t9", F2), closure="ring")
    assert a == b and hash(a) == hash(b)
    assert a.lo == 0 and a.cond == 8
    assert a.values() == {0, 4, 5, 6}


def test_conductor_normalized_down():
    # rows t2, t3 with tail t^4 already span everything from t^2
    L = Lattice.from_vectors(F2, 0, 4, [[0, 0, 1, 0], [0, 0, 0, 1]], True)
    assert (L.lo, L.cond, L.rank) == (2, 2, 0)
    assert L == lat.tail(F2, 2)


def test_describe():
    R = RINGS[(4, 5, 6)].lattice
    assert R.describe() == "1, t4, t5, t6, t^8K[[t]]"
    assert lat.power_series_ring(F2).describe() == "K[[t]]"
    assert lat.tail(F2, 1).describe() == "tK[[t]]"


def test_roundtrip_dict():
    R = RINGS[(3, 5)].lattice
    assert Lattice.from_dict(R.to_dict()) == R
    M = lat.lattice_from_generators(F8, [Series.monomial(F8, 1, F8.from_coords([0, 1, 0]))], closure="span")
    assert Lattice.from_dict(M.to_dict()) == M


def test_uncertified_conductor_raises(monkeypatch):
    # k[[t]] inside F8[[t]] has no conductor; the window doubling gives up
    monkeypatch.setattr(lat, "MAX_WINDOW", 64)
    with pytest.raises(LatticeError):
        lat.lattice_from_generators(F8, [Series.monomial(F8, 1)], closure="ring", window=8)


def test_colon_needs_conductor():
    S = lat.span(F2, parse_series_list("t2", F2))
    with pytest.raises(LatticeError):
        lat.lat_colon(S, RINGS[(2, 3)].lattice)


def test_scale_precision():
    R = RINGS[(4, 5, 6)].lattice
    g = Series(F2, {0: 1, 1: 1}, prec=3)
    with pytest.raises(PrecisionError):
        lat.scale(R, g)
    g8 = Series(F2, {0: 1, 1: 1}, prec=9)
    U = lat.scale(R, g8)
    # a unit multiplier keeps the values but moves the lattice
    assert U.values() == R.values() and U != R
    assert lat.scale(U, Series(F2, {0: 1, 1: 1}, prec=9).inverse(precision=12)) == R


def test_refine_precision_is_identity_on_exact_data():
    R = RINGS[(4, 5, 6)].lattice
    I = R * lat.span(F2, parse_series_list("t4+t5,t6", F2))
    C = lat.lat_colon(R, I)
    C2 = lat.refine_precision(C, 64)
    assert C2 == C and C2.hi >= 64


# -- oracle-backed properties ---------------------------------------------------------

poly = st.builds(
    lambda v, bits: parse_series("+".join([f"t{v}"] + [f"t{v + 1 + i}" for i in range(6) if bits >> i & 1]), F2),
    st.integers(0, 7),
    st.integers(0, 63),
)


@st.composite
def ideals(draw):
    R = RINGS[draw(st.sampled_from(sorted(RINGS)))]
    gs = draw(st.lists(poly, min_size=1, max_size=3))
    shift = draw(st.integers(-2, 0))
    L = (R.lattice * lat.span(F2, gs)).shift(shift)
    return R, L


@st.composite
def ideal_pairs(draw):
    R, X = draw(ideals())
    gs = draw(st.lists(poly, min_size=1, max_size=2))
    Y = (R.lattice * lat.span(F2, gs)).shift(draw(st.integers(-1, 1)))
    return R, X, Y


@settings(max_examples=60, deadline=None)
@given(ideal_pairs())
def test_colon_matches_brute_force(data):
    _, X, Y = data
    lo, hi = X.lo - Y.lo, X.cond - Y.lo
    assume(hi - lo <= 12)
    C = lat.lat_colon(X, Y)
    expected = brute.colon_elements(X, Y, lo, hi)
    got = {brute.trunc(p, hi) for p in brute.elements(C, max(hi, C.cond))}
    assert got == expected


@settings(max_examples=60, deadline=None)
@given(ideal_pairs())
def test_intersection_sum_colength_match_brute_force(data):
    _, X, Y = data
    n = max(X.cond, Y.cond)
    assume(n - min(X.lo, Y.lo) <= 14)
    ex, ey = brute.elements(X, n), brute.elements(Y, n)
    assert brute.elements(lat.lat_intersection(X, Y), n) == ex & ey
    S = X + Y
    assert brute.elements(S, n) == brute.span(ex | ey)
    # 2^colength counts cosets
    assert len(brute.elements(S, n)) == len(ex) * 2 ** lat.colength(S, X)
    assert lat.colength(S, Y) == lat.colength(X, lat.lat_intersection(X, Y))


@settings(max_examples=60, deadline=None)
@given(ideal_pairs(), st.data())
def test_product_colon_adjunction(data, more):
    R, X, Y = data
    Z = X * Y
    assert lat.is_subset(X, lat.lat_colon(Z, Y))
    assert lat.is_subset(lat.lat_colon(X, Y) * Y, X)
    ox = brute.Oracle(Z)
    for a in brute.gens(X):
        for b in brute.gens(Y):
            assert brute.mul(a, b) in ox


@settings(max_examples=40, deadline=None)
@given(ideals())
def test_ring_closure_is_a_ring(data):
    R, X = data
    U = lat.ring_closure(lat.lat_colon(X, X) + R.lattice)
    assert U * U == U
    assert lat.lat_colon(X, X) == lat.ring_closure(lat.lat_colon(X, X))


@settings(max_examples=40, deadline=None)
@given(ideal_pairs())
def test_refine_commutes_with_operations(data):
    _, X, Y = data
    h = 2 * max(X.hi, Y.hi)
    for op in (lat.lat_colon, lat.lat_product, lat.lat_intersection, lat.lat_sum):
        L = op(X, Y)
        assert lat.refine_precision(L, h) == L
