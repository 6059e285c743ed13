import pytest

from traceideal import lattice as lat
from traceideal.local_ring import (
    RingError,
    normalization_and_conductor,
    parse_ring,
    residue_extension_ring,
    ring_from_generators,
    semigroup_ring,
)
from traceideal.scalars import make_field
from traceideal.semigroup import NumericalSemigroup, semigroups_by_genus
from traceideal.series import parse_series_list

F2 = make_field("F2")


def semigroup_hilbert(S: NumericalSemigroup, length: int) -> list[int]:
    """dim m^n/m^(n+1) from value sets: m^n has the n-fold sums of S \\ {0} as values."""
    top = S.conductor + (length + 2) * S.multiplicity
    M = {x for x in range(1, top) if x in S}
    powers = [M | {0}, M]
    while len(powers) <= length:
        powers.append({a + b for a in powers[-1] for b in M if a + b < top})
    return [len(powers[n] - powers[n + 1]) for n in range(length)]


@pytest.mark.parametrize("S", list(semigroups_by_genus(5)), ids=lambda S: ",".join(map(str, S.minimal_generators)))
def test_monomial_invariants_match_semigroup(S):
    R = semigroup_ring(F2, S.minimal_generators)
    assert R.conductor_exponent == S.conductor
    assert R.multiplicity == S.multiplicity
    assert R.embedding_dimension == len(S.minimal_generators)
    assert R.cm_type == S.type
    assert R.is_gorenstein == S.is_symmetric
    assert R.is_almost_gorenstein == S.is_almost_symmetric
    assert R.value_semigroup() == S
    hf = R.hilbert_function
    assert hf == semigroup_hilbert(S, len(hf))
    assert hf[-1] == R.multiplicity
    assert lat.colength(R.V, R.lattice) == S.genus


def test_dvr_conventions():
    V = semigroup_ring(F2, [1])
    assert V.is_dvr and V.multiplicity == 1 and V.cm_type == 1
    assert V.type_is_convention and V.is_gorenstein
    assert V.residue_degree == 1


def test_residue_extension_ring():
    R = residue_extension_ring("F2", "F8/F2")
    assert R.conductor_exponent == 1 and R.residue_degree == 1
    assert R.multiplicity == 3 and R.cm_type == 2
    assert not R.is_gorenstein and R.is_almost_gorenstein is True
    assert R.endomorphism_ring == R.V
    inv = R.invariants()
    assert inv["m_equals_tB"] and inv["B_is_V"]
    R4 = residue_extension_ring("F2", "F4/F2")
    assert R4.multiplicity == 2 and R4.is_gorenstein


def test_non_monomial_ring():
    F3 = make_field("F3")
    R = ring_from_generators(F3, parse_series_list("t2+t3,t5", F3))
    assert R.value_semigroup() == NumericalSemigroup([2, 5])
    assert not R.is_monomial
    assert R.is_gorenstein and R.multiplicity == 2
    assert R.lattice != semigroup_ring(F3, [2, 5]).lattice


def test_normalization_and_conductor():
    R = semigroup_ring(F2, [3, 5])
    V, C = normalization_and_conductor(R)
    assert V.is_dvr
    assert C.lattice == lat.tail(F2, 8)


def test_minimal_generators_of_ideal():
    R = semigroup_ring(F2, [4, 5, 6])
    I = R.ideal(parse_series_list("t4,t5,t6,t8,t9", F2))
    assert len(I.generators()) == 3
    assert I.lattice == R.maximal_ideal


@pytest.mark.parametrize("text", ["sg:", "sg:4,6", "gens:", "resext:F4", "nonsense"])
def test_parse_errors(text):
    with pytest.raises((RingError, ValueError)):
        parse_ring(text, "F2")


def test_parse_ring_forms():
    assert parse_ring("sg:4,5,6", "F2") == semigroup_ring(F2, [4, 5, 6])
    assert parse_ring("gens:t4,t5,t6", "F2").lattice == semigroup_ring(F2, [4, 5, 6]).lattice
    assert parse_ring("resext:F8/F2").field.degree == 3
