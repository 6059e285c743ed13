import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import brute
from traceideal import ideals as idl
from traceideal import lattice as lat
from traceideal.local_ring import FracIdeal, parse_ring, semigroup_ring
from traceideal.scalars import make_field
from traceideal.series import Series, parse_series, parse_series_list

F2 = make_field("F2")
RINGS = [semigroup_ring(F2, g) for g in [(2, 3), (3, 4, 5), (3, 5), (4, 5, 6), (3, 4)]]
RINGS.append(parse_ring("gens:t2+t3,t5", "F2"))


def series_of(mask: int) -> Series:
    return Series(F2, {e - brute.OFF: 1 for e in range(mask.bit_length()) if mask >> e & 1})


poly = st.builds(
    lambda v, bits: parse_series("+".join([f"t{v}"] + [f"t{v + 1 + i}" for i in range(5) if bits >> i & 1]), F2),
    st.integers(1, 8),
    st.integers(0, 31),
)


@st.composite
def fractional_ideals(draw):
    R = draw(st.sampled_from(RINGS))
    return R.ideal(draw(st.lists(poly, min_size=1, max_size=3)))


@st.composite
def integral_ideals(draw):
    I = draw(fractional_ideals())
    return FracIdeal(I.ring, lat.lat_intersection(I.lattice, I.ring.maximal_ideal))


def brute_stable(I: FracIdeal) -> bool:
    """Search all least-valuation ``a`` in ``I`` for ``I^2 = aI``.

    Changing ``a`` by anything in ``t^cond`` leaves ``aI`` unchanged, so the
    search runs modulo ``t^cond`` (widened to reach degree ``lo``).
    """
    L = I.lattice
    sq = L * L
    for p in brute.elements(L, max(L.cond, L.lo + 1)):
        if brute.val(p) == L.lo and lat.scale(L, series_of(p)) == sq:
            return True
    return False


@settings(max_examples=80, deadline=None)
@given(integral_ideals())
def test_trace_matches_colon_characterization(I):
    R = I.ring.lattice
    assert idl.is_trace(I) == (lat.lat_colon(R, I.lattice) == lat.lat_colon(I.lattice, I.lattice))
    T = idl.trace_closure(I)
    assert idl.is_trace(T) and lat.is_subset(T.lattice, R)
    assert idl.trace_closure(T) == T


@settings(max_examples=80, deadline=None)
@given(integral_ideals())
def test_stable_witness_matches_brute_force(I):
    ok, a = idl.is_stable(I)
    assert ok == brute_stable(I)
    if ok:
        assert I.lattice * I.lattice == lat.scale(I.lattice, a)
        assert lat.member(a, I.lattice)


@settings(max_examples=80, deadline=None)
@given(integral_ideals())
def test_good_equals_trace_and_stable(I):
    assert idl.is_good(I) == idl.is_good_by_definition(I)
    assert idl.is_good(I) == (idl.is_trace(I) and idl.is_stable(I)[0])


@settings(max_examples=80, deadline=None)
@given(fractional_ideals())
def test_bidual_and_stable_endomorphisms(I):
    R = I.ring.lattice
    D = lat.lat_colon(R, I.lattice)
    assert lat.lat_colon(R, lat.lat_colon(R, D)) == D
    assert idl.bidual(idl.bidual(I)) == idl.bidual(I)
    ok, a = idl.is_stable(I)
    if ok:
        inv = a.inverse(precision=I.lattice.cond + 2 * a.valuation + 4)
        assert lat.lat_colon(I.lattice, I.lattice) == lat.scale(I.lattice, inv)


@settings(max_examples=60, deadline=None)
@given(integral_ideals())
def test_descend_and_ascend(I):
    T = idl.trace_closure(I)
    J = idl.descend_stable(T)
    assert lat.is_subset(J.lattice, T.lattice) and idl.is_stable(J)[0]
    if idl.is_stable(I)[0]:
        K = idl.ascend_stable(I)
        assert idl.is_trace(K) and lat.is_subset(I.lattice, K.lattice)


def test_descend_rejects_non_trace():
    R = semigroup_ring(F2, [4, 5, 6])
    with pytest.raises(idl.IdealError):
        idl.descend_stable(R.ideal(parse_series_list("t4,t5", F2)))


def test_classify_examples():
    R = semigroup_ring(F2, [4, 5, 6])
    m = idl.classify(FracIdeal(R, R.maximal_ideal))
    # 11 is a value of m^2 but not of t^4 m
    assert m.is_trace and not m.is_stable and not m.is_principal
    T = semigroup_ring(F2, [3, 4, 5])
    mt = idl.classify(FracIdeal(T, T.maximal_ideal))
    assert mt.is_good and mt.stability_witness == "t3"
    c = idl.classify(R.ideal(parse_series_list("t4+t5,t6", F2))).to_dict()
    assert c["is_good"] is True and c["generators"] == ["t4+t5", "t6"]
    # 12 is a value of I^2 but not of t^5 I
    c = idl.classify(R.ideal(parse_series_list("t5,t6,t8", F2))).to_dict()
    assert c["is_trace"] is True and c["is_good"] is False
    c = idl.classify(R.ideal(parse_series_list("t4,t5", F2))).to_dict()
    assert c["is_trace"] is False and c["strongly_antistable_witness"] is None


def test_eta_rho_on_known_pair():
    R = semigroup_ring(F2, [4, 5, 6])
    I = FracIdeal(R, R.conductor)
    assert idl.rho(I).lattice == R.V
    assert idl.eta(R.V, R) == I


def test_strongly_antistable():
    R = semigroup_ring(F2, [2, 3])
    for I in idl.ideals_of_small_colength(R, 4):
        ok, a = idl.strongly_antistable_test(I, paranoid=True)
        assert ok and a is not None
    R = semigroup_ring(F2, [4, 5, 6])
    ok, _ = idl.strongly_antistable_test(R.ideal(parse_series_list("t4,t5", F2)), paranoid=True)
    assert not ok


def test_small_colength_ideal_counts():
    # every ideal of k[[t]] is t^n k[[t]]: one per colength
    V = semigroup_ring(F2, [1])
    assert len(idl.ideals_of_small_colength(V, 5)) == 6
    # ideals of k[[t^2,t^3]] over F2 by colength: 1, 1, 3, 3, ...
    R = semigroup_ring(F2, [2, 3])
    cols = [lat.colength(R.lattice, I.lattice) for I in idl.ideals_of_small_colength(R, 3)]
    assert [cols.count(n) for n in range(4)] == [1, 1, 3, 3]
