import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from traceideal.semigroup import (
    NumericalSemigroup,
    SemigroupError,
    SemigroupIdeal,
    ideals_above_conductor,
    oversemigroups,
    semigroups_by_genus,
)


def brute_members(gens, bound):
    """Sums of generators below ``bound``, by dynamic programming."""
    ok = [False] * bound
    ok[0] = True
    for x in range(1, bound):
        ok[x] = any(x >= g and ok[x - g] for g in gens)
    return {x for x in range(bound) if ok[x]}


def test_basic_data():
    S = NumericalSemigroup([4, 5, 6])
    assert S.gaps == (1, 2, 3, 7) and S.frobenius == 7 and S.conductor == 8
    assert S.apery() == (0, 5, 6, 11)
    assert S.pseudo_frobenius == (7,) and S.type == 1 and S.is_symmetric
    N = NumericalSemigroup([1])
    assert N.gaps == () and N.frobenius == -1 and N.type == 1
    T = NumericalSemigroup([3, 4, 5])
    assert T.gaps == (1, 2) and T.pseudo_frobenius == (1, 2) and T.type == 2
    assert T.is_almost_symmetric and not T.is_symmetric
    assert NumericalSemigroup([4, 6, 7]).conductor == 10


def test_gcd_rejected():
    with pytest.raises(SemigroupError):
        NumericalSemigroup([4, 6])


def test_oversemigroups_examples():
    names = [list(T.minimal_generators) for T in oversemigroups(NumericalSemigroup([4, 5, 6]))]
    assert sorted(names) == sorted([[4, 5, 6], [4, 5, 6, 7], [3, 4, 5], [2, 5], [2, 3], [1]])
    assert [list(T.minimal_generators) for T in oversemigroups(NumericalSemigroup([3, 4, 5]))] == [[3, 4, 5], [2, 3], [1]]
    assert oversemigroups(NumericalSemigroup([1])) == [NumericalSemigroup([1])]


def brute_oversemigroups(S):
    gaps = S.gaps
    out = set()
    for r in range(len(gaps) + 1):
        for extra in itertools.combinations(gaps, r):
            members = set(S.small_elements) | set(extra)
            c = S.conductor
            if all(a + b >= c or a + b in members for a in members for b in members):
                out.add(NumericalSemigroup.from_elements(members, c) if c else S)
    return out


def test_genus_counts():
    counts = [0] * 9
    for S in semigroups_by_genus(8):
        counts[S.genus] += 1
    assert counts == [1, 1, 2, 4, 7, 12, 23, 39, 67]


# small generators keep the gap count (and the subset brute force) bounded
gens_strategy = st.lists(st.integers(2, 5), min_size=1, max_size=3).map(lambda g: g + [max(g) + 1])


@settings(max_examples=80, deadline=None)
@given(gens_strategy)
def test_against_brute_force(gens):
    S = NumericalSemigroup(gens)
    bound = S.conductor + 10
    assert {x for x in range(bound) if x in S} == brute_members(gens, bound)
    assert S.is_symmetric == (S.type == 1)
    assert set(oversemigroups(S)) == brute_oversemigroups(S)


def test_ideal_arithmetic():
    S = NumericalSemigroup([4, 5, 6])
    R = SemigroupIdeal.of_semigroup(S)
    assert R.colon(SemigroupIdeal.naturals(S)) == SemigroupIdeal(S, [], 8)
    assert 0 in R.colon(R)
    assert SemigroupIdeal.generated(S, [3]) + SemigroupIdeal.generated(S, [4]) == SemigroupIdeal.generated(S, [7])
    E = SemigroupIdeal.generated(S, [4, 5])
    assert E.union(SemigroupIdeal.generated(S, [6])) == SemigroupIdeal.generated(S, [4, 5, 6])


@settings(max_examples=60, deadline=None)
@given(gens_strategy, st.data())
def test_colon_is_largest(gens, data):
    S = NumericalSemigroup(gens)
    ideals = ideals_above_conductor(S)
    E = data.draw(st.sampled_from(ideals))
    F = data.draw(st.sampled_from(ideals))
    Q = E.colon(F)
    lo, hi = E.min - F.tail - 2, E.tail + 2
    for z in range(lo, hi):
        inside = all(z + f in E for f in range(F.min, F.tail + E.tail) if f in F)
        assert (z in Q) == inside
