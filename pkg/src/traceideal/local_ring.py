"""Complete local rings between k[[t]]-style subrings and K[[t]], and their invariants."""

from __future__ import annotations

import itertools
import re
from functools import cached_property
from typing import Sequence

from . import lattice as lat
from .lattice import Lattice, LatticeError
from .scalars import Field, FieldError, make_field
from .semigroup import NumericalSemigroup, SemigroupIdeal
from .series import Series, parse_series_list

__all__ = [
    "LocalRing",
    "FracIdeal",
    "RingError",
    "semigroup_ring",
    "ring_from_generators",
    "residue_extension_ring",
    "normalization_and_conductor",
    "parse_ring",
    "monomial_ideal",
    "ideal_from_generators",
]


class RingError(ValueError):
    pass


class LocalRing:
    """A lattice ``R`` with ``1 in R``, ``R*R = R`` and a certified conductor inside ``K[[t]]``.

    Invariants are computed lazily and cached; recomputation always gives the
    same answer, so sharing a ring between threads is harmless.
    """

    def __init__(
        self,
        lattice: Lattice,
        descriptor: str | None = None,
        semigroup: NumericalSemigroup | None = None,
        generators: Sequence[Series] | None = None,
        check: bool = True,
    ):
        if lattice.cond is None or lattice.lo != 0:
            raise RingError("a ring lattice needs valuation 0 and a certified conductor")
        self.lattice = lattice
        self.field = lattice.field
        self.k = lattice.base
        self.semigroup = semigroup
        self.generators = list(generators) if generators is not None else None
        self.descriptor = descriptor or lattice.describe()
        if check:
            one = Series.one(self.field)
            if not lat.member(one, lattice):
                raise RingError("1 is not in the lattice")
            if lat.lat_product(lattice, lattice) != lattice:
                raise RingError("lattice is not multiplicatively closed")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LocalRing) and self.lattice == other.lattice

    def __hash__(self) -> int:
        return hash(self.lattice)

    def __repr__(self) -> str:
        return f"LocalRing({self.descriptor})"

    # -- basic structure ----------------------------------------------------------

    @property
    def conductor_exponent(self) -> int:
        return self.lattice.cond

    @cached_property
    def V(self) -> Lattice:
        return lat.power_series_ring(self.field)

    @cached_property
    def maximal_ideal(self) -> Lattice:
        # Valuation-0 elements are units of R, so the maximal ideal is R meet tV.
        return lat.lat_intersection(self.lattice, lat.tail(self.field, 1))

    @property
    def m(self) -> Lattice:
        return self.maximal_ideal

    @cached_property
    def conductor(self) -> Lattice:
        return lat.lat_colon(self.lattice, self.V)

    @cached_property
    def residue_degree(self) -> int:
        """``dim_k`` of the residue field."""
        if self.lattice.cond == 0:
            return self.field.degree
        return self.lattice.leading_dims().get(0, 0)

    @cached_property
    def residue_field(self) -> list:
        """Raw elements of ``K`` forming the residue field (constant terms of valuation-0 elements)."""
        f = self.field
        if not f.is_finite:
            if self.residue_degree != 1:
                raise RingError("residue field listing needs a finite field")
            return []
        consts = [r[: f.degree] for r, p in zip(self.lattice.rows, self.lattice.pivots) if p < f.degree]
        k = f.base
        out = set()
        for coeffs in itertools.product(list(k.elements()), repeat=len(consts)):
            v = [k.zero] * f.degree
            for c, row in zip(coeffs, consts):
                v = [(a + c * b) % k.p for a, b in zip(v, row)]
            out.add(f.from_coords(v))
        return sorted(out, key=lambda x: f.coords(x))

    @property
    def is_dvr(self) -> bool:
        return self.multiplicity == 1

    @property
    def is_monomial(self) -> bool:
        return self.lattice.is_monomial()

    # -- invariants -----------------------------------------------------------------

    @cached_property
    def _multiplicity_data(self) -> dict:
        """Powers of the maximal ideal until ``m^(n+1) = x m^n`` for a least-valuation ``x``.

        Such an ``x`` generates ``mV`` so it is a reduction of ``m``; the
        equality certifies it, and then ``e = dim_k(R / xR) / f = v(x) [K:k] / f``.
        """
        d, f = self.field.degree, self.residue_degree
        m = self.maximal_ideal
        if m.lo is None:
            raise RingError("zero maximal ideal")
        x = m.min_element()
        vx = int(x.valuation)
        powers = [self.lattice, m]
        hilbert = []
        cap = 2 * (self.conductor_exponent + vx) + 4
        n = 1
        while True:
            nxt = lat.lat_product(powers[-1], m)
            hilbert.append(lat.colength(powers[-1], nxt))
            if nxt == lat.scale(powers[-1], x):
                break
            if n > cap:
                raise RingError(f"no reduction certificate below power {n}")
            powers.append(nxt)
            n += 1
        e_k = vx * d
        if e_k % f:
            raise RingError("multiplicity is not a multiple of the residue degree")  # pragma: no cover
        if hilbert[-1] != e_k:
            raise RingError(f"Hilbert function {hilbert} does not end at v(x)*[K:k] = {e_k}")
        return {"e": e_k // f, "reduction_exponent": n, "hilbert": [1] + [h // f for h in hilbert], "x": x}

    @property
    def multiplicity(self) -> int:
        return self._multiplicity_data["e"]

    @property
    def reduction_exponent(self) -> int:
        """Least ``n`` with ``m^(n+1) = x m^n``."""
        return self._multiplicity_data["reduction_exponent"]

    @property
    def hilbert_function(self) -> list[int]:
        """``dim m^n/m^(n+1)`` over the residue field, up to stabilization."""
        return self._multiplicity_data["hilbert"]

    @cached_property
    def embedding_dimension(self) -> int:
        m = self.maximal_ideal
        return lat.colength(m, lat.lat_product(m, m)) // self.residue_degree

    @cached_property
    def endomorphism_ring(self) -> Lattice:
        """``R:m`` (equal to ``m:m`` unless ``R`` is a DVR)."""
        return lat.lat_colon(self.lattice, self.maximal_ideal)

    @property
    def B(self) -> Lattice:
        return self.endomorphism_ring

    @cached_property
    def cm_type(self) -> int:
        """Cohen-Macaulay type; 1 for a DVR (see :attr:`type_is_convention`)."""
        if self.lattice == self.V:
            return 1
        return lat.colength(self.endomorphism_ring, self.lattice) // self.residue_degree

    @property
    def type_is_convention(self) -> bool:
        """True when :attr:`cm_type` is the DVR convention rather than a computed length."""
        return self.lattice == self.V

    @property
    def is_gorenstein(self) -> bool:
        return self.cm_type == 1

    @cached_property
    def is_almost_gorenstein(self) -> bool | str:
        """True, False or ``"undecided"``.

        Decided for Gorenstein rings, monomial rings with ``K = k`` (almost
        symmetric value semigroup) and rings with ``mV <= R``.
        """
        if self.is_gorenstein:
            return True
        S = self.value_semigroup()
        if S is not None and self.field.degree == 1 and self.is_monomial:
            return S.is_almost_symmetric
        m = self.maximal_ideal
        if self.conductor_exponent <= m.lo:
            return True
        return "undecided"

    def value_semigroup(self) -> NumericalSemigroup | None:
        """The semigroup of valuations when the residue field is ``K``; otherwise ``None``."""
        if self.semigroup is not None:
            return self.semigroup
        if self.residue_degree != self.field.degree:
            return None
        vals = self.lattice.values()
        c = self.conductor_exponent
        if c == 0:
            return NumericalSemigroup([1])
        return NumericalSemigroup.from_elements(vals, c)

    def invariants(self) -> dict:
        return {
            "ring": self.descriptor,
            "field": self.field.descriptor,
            "conductor_exponent": self.conductor_exponent,
            "codimension": lat.colength(self.V, self.lattice),
            "residue_degree": self.residue_degree,
            "multiplicity": self.multiplicity,
            "embedding_dimension": self.embedding_dimension,
            "type": self.cm_type,
            "type_is_convention": self.type_is_convention,
            "gorenstein": self.is_gorenstein,
            "almost_gorenstein": self.is_almost_gorenstein,
            "dvr": self.is_dvr,
            "hilbert_function": self.hilbert_function,
            "maximal_ideal": self.maximal_ideal.describe(),
            "conductor": self.conductor.describe(),
            "endomorphism_ring_of_m": self.endomorphism_ring.describe(),
            "m_equals_tB": self.maximal_ideal == lat.lat_product(lat.span(self.field, [Series.monomial(self.field, 1)]), self.endomorphism_ring),
            "B_is_V": self.endomorphism_ring == self.V,
        }

    # -- ideals -------------------------------------------------------------------

    def ideal(self, gens: Sequence[Series]) -> "FracIdeal":
        return ideal_from_generators(self, gens)

    def ideal_of(self, L: Lattice) -> "FracIdeal":
        return FracIdeal(self, L)

    @property
    def unit_ideal(self) -> "FracIdeal":
        return FracIdeal(self, self.lattice, check=False)


class FracIdeal:
    """A nonzero ``R``-submodule of ``K((t))`` with a conductor."""

    __slots__ = ("ring", "lattice")

    def __init__(self, ring: LocalRing, L: Lattice, check: bool = True):
        if L.is_zero:
            raise RingError("the zero ideal is not regular")
        if L.cond is None:
            raise RingError("fractional ideals need a certified conductor")
        if check and lat.lat_product(ring.lattice, L) != L:
            raise RingError("lattice is not closed under multiplication by the ring")
        self.ring = ring
        self.lattice = L

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FracIdeal) and self.lattice == other.lattice

    def __hash__(self) -> int:
        return hash(self.lattice)

    def __repr__(self) -> str:
        return f"FracIdeal({self.lattice.describe()})"

    @property
    def witness(self) -> Series:
        """An element of least valuation; any nonzero element is regular here."""
        return self.lattice.min_element()

    @property
    def is_integral(self) -> bool:
        return self.lattice <= self.ring.lattice

    def describe(self) -> str:
        return self.lattice.describe()

    def generators(self) -> list[Series]:
        """Minimal generators: lifts of a k-basis of ``I / mI``."""
        from . import linalg

        R, L = self.ring, self.lattice
        mI = lat.lat_product(R.maximal_ideal, L)
        k, f, hi = L.base, L.field, mI.cond
        rows, piv = linalg.rref(k, lat._vectors(mI, L.lo, hi))
        candidates = L.basis() + [Series.monomial(f, j, w) for j in range(L.cond, hi) for w in f.basis]
        chosen: list[Series] = []
        for g in candidates:
            v = lat._series_vector(f, g, L.lo, hi)
            if not linalg.in_span(k, v, rows, piv):
                chosen.append(g)
                rows, piv = linalg.rref(k, list(rows) + [v])
        return chosen


# -- constructors ----------------------------------------------------------------


def semigroup_ring(k: Field | str, gens: Sequence[int]) -> LocalRing:
    """``k[[t^g : g in gens]]``, cross-validated against the semigroup oracle."""
    k = make_field(k)
    S = NumericalSemigroup(gens)
    c = S.conductor
    monos = [Series.monomial(k, s) for s in S.small_elements]
    vecs = [lat._series_vector(k, f, 0, c) for f in monos]
    L = Lattice.from_vectors(k, 0, c, vecs, True)
    closure = lat.lattice_from_generators(k, [Series.monomial(k, g) for g in S.minimal_generators if g > 0], "ring")
    if closure != L:
        raise RingError(f"closure of {list(gens)} disagrees with the semigroup table")  # pragma: no cover
    L._source = closure._source
    desc = "sg:" + ",".join(str(g) for g in S.minimal_generators)
    return LocalRing(L, desc, semigroup=S, check=False)


def ring_from_generators(k: Field | str | None, gens: Sequence[Series], window: int | None = None, descriptor: str | None = None) -> LocalRing:
    """The complete local k-algebra generated by ``gens`` inside ``K[[t]]``."""
    if not gens:
        raise RingError("at least one generator is needed")
    K = gens[0].field
    if k is not None:
        k = make_field(k)
        if K.base != k and K != k:
            raise RingError(f"generators live over {K.descriptor}, not over {k.descriptor}")
    L = lat.lattice_from_generators(K, gens, "ring", window=window)
    desc = descriptor or "gens:" + ",".join(str(g) for g in gens)
    R = LocalRing(L, desc, generators=gens, check=True)
    if L.is_monomial():
        R.semigroup = R.value_semigroup()
    return R


def residue_extension_ring(k: Field | str, K: Field | str) -> LocalRing:
    """``k + t K[[t]]`` inside ``K[[t]]``."""
    k = make_field(k)
    K = make_field(K)
    if K.kind != "ext" or K.base != k:
        raise RingError(f"{K.descriptor} is not a proper extension of {k.descriptor}")
    gens = [Series.monomial(K, 1, w) for w in K.basis]
    L = lat.lattice_from_generators(K, gens, "ring")
    if L.cond != 1 or L.rank != 1:
        raise RingError("unexpected shape for k + tK[[t]]")  # pragma: no cover
    return LocalRing(L, f"resext:{K.descriptor}", generators=gens, check=False)


def normalization_and_conductor(R: LocalRing) -> tuple[LocalRing, "FracIdeal"]:
    V = LocalRing(R.V, "V", semigroup=NumericalSemigroup([1]) if R.field.degree == 1 else None, check=False)
    return V, FracIdeal(R, R.conductor, check=False)


def overring(R: LocalRing, L: Lattice, descriptor: str | None = None) -> LocalRing:
    """Wrap a ring lattice between ``R`` and ``V`` as a ring in its own right."""
    A = LocalRing(L, descriptor or L.describe(), check=False)
    if L.is_monomial():
        A.semigroup = A.value_semigroup()
    return A


def ideal_from_generators(R: LocalRing, gens: Sequence[Series]) -> FracIdeal:
    """The ``R``-module generated by exact Laurent polynomials."""
    if not gens or all(not g.coeffs for g in gens):
        raise RingError("the zero ideal is not regular")
    L = lat.lat_product(R.lattice, lat.span(R.field, gens))
    return FracIdeal(R, L, check=False)


def monomial_ideal(R: LocalRing, E: SemigroupIdeal) -> FracIdeal:
    """Lattice of the monomial ideal with value set ``E``."""
    f = R.field
    lo, hi = E.min, E.tail
    vecs = [lat._series_vector(f, Series.monomial(f, x), lo, hi) for x in E.members]
    L = Lattice.from_vectors(f, lo, hi, vecs, True)
    src = [Series.monomial(f, x) for x in sorted(E.members)] + [Series.monomial(f, E.tail)]
    L._source = lambda h: lat.lat_product(lat.refine_precision(R.lattice, h), lat.span(f, src))
    return FracIdeal(R, L, check=False)


_SG = re.compile(r"sg:([\d,\s]+)")


def parse_ring(text: str, field: Field | str | None = None, modulus: Sequence[int] | None = None, window: int | None = None) -> LocalRing:
    """Parse ``sg:4,5,6``, ``gens:t2+t3,t5`` or ``resext:F8/F2``."""
    text = text.strip()
    try:
        if text.startswith("sg:"):
            gens = [int(x) for x in text[3:].split(",") if x.strip()]
            return semigroup_ring(make_field(field or "Q", modulus), gens)
        if text.startswith("gens:"):
            K = make_field(field or "Q", modulus)
            return ring_from_generators(None, parse_series_list(text[5:], K), window=window)
        if text.startswith("resext:"):
            desc = text[7:]
            K = Field.parse(desc, modulus)
            return residue_extension_ring(K.base, K)
    except (FieldError, ValueError) as exc:
        raise RingError(str(exc)) from exc
    raise RingError(f"cannot parse ring descriptor {text!r} (expected sg:, gens: or resext:)")
