"""Decision procedures on regular fractional ideals.

Trace ideals are recognized by ``I:I == R:I``; stability by ``I*I == a*I``
for an element ``a`` of least valuation.  The latter choice is complete:
units of ``I:I`` are exactly its valuation-0 elements, so if ``I*I = bI``
for some ``b`` then ``b`` and any least-valuation ``a`` differ by such a
unit and ``aI = bI``.  The same argument shows that ``R:I`` is cyclic over
``I:I`` iff it is generated by any of its least-valuation elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from . import lattice as lat
from . import linalg
from .lattice import Lattice
from .local_ring import FracIdeal, LocalRing, RingError, overring
from .series import Series

__all__ = [
    "IdealError",
    "IdealClassification",
    "trace_closure",
    "is_trace",
    "is_stable",
    "is_good",
    "is_good_by_definition",
    "is_reflexive",
    "is_principal",
    "xi",
    "eta",
    "rho",
    "bidual",
    "colon_in_ring",
    "descend_stable",
    "ascend_stable",
    "strongly_antistable_test",
    "antistable_ring_check",
    "classify",
    "ideals_of_small_colength",
]

PARANOID_LIMIT = 1 << 14


class IdealError(ValueError):
    """An operation was applied outside its domain."""


def _R(I: FracIdeal) -> Lattice:
    return I.ring.lattice


def trace_closure(I: FracIdeal) -> FracIdeal:
    """``(R:I) I``, the trace of ``I`` in ``R``."""
    return FracIdeal(I.ring, lat.lat_product(lat.lat_colon(_R(I), I.lattice), I.lattice), check=False)


def is_trace(I: FracIdeal) -> bool:
    L = I.lattice
    return lat.lat_colon(L, L) == lat.lat_colon(_R(I), L)


def is_stable(I: FracIdeal, paranoid: bool = False) -> tuple[bool, Series | None]:
    """Whether ``I^2 = aI`` for some ``a``; returns ``(verdict, a)``."""
    L = I.lattice
    a = I.witness
    sq = lat.lat_product(L, L)
    aI = lat.scale(L, a)
    ok = sq == aI
    # aI <= I^2 always, so equality is also a colength statement
    if ok != (lat.colength(sq, aI) == 0):
        raise IdealError("stability verdict disagrees with its colength check")  # pragma: no cover
    if paranoid and not ok:
        for b in _least_valuation_elements(L):
            if lat.scale(L, b) == sq:
                raise IdealError(f"least-valuation witness missed stability certified by {b}")
    return ok, (a if ok else None)


def is_good(I: FracIdeal) -> bool:
    return is_trace(I) and is_stable(I)[0]


def colon_in_ring(J: Lattice, I: Lattice, R: Lattice) -> Lattice:
    """``J :_R I = (J:I) meet R``."""
    return lat.lat_intersection(lat.lat_colon(J, I), R)


def is_good_by_definition(I: FracIdeal) -> bool:
    """``I^2 = aI`` and ``I = (a):_R I``, checked literally."""
    ok, a = is_stable(I)
    if not ok:
        return False
    R = _R(I)
    aR = lat.scale(R, a)
    return colon_in_ring(aR, I.lattice, R) == I.lattice


def is_reflexive(I: FracIdeal) -> bool:
    return bidual(I) == I


def is_principal(I: FracIdeal) -> bool:
    return lat.scale(_R(I), I.witness) == I.lattice


def bidual(I: FracIdeal) -> FracIdeal:
    R = _R(I)
    return FracIdeal(I.ring, lat.lat_colon(R, lat.lat_colon(R, I.lattice)), check=False)


def _endomorphisms(I: FracIdeal) -> LocalRing:
    A = lat.lat_colon(I.lattice, I.lattice)
    if lat.lat_product(A, A) != A or not lat.is_subset(_R(I), A):
        raise IdealError("I:I failed the ring check")  # pragma: no cover
    return overring(I.ring, A)


def xi(I: FracIdeal) -> LocalRing:
    """``I:I`` for a stable ideal."""
    if not is_stable(I)[0]:
        raise IdealError("xi is defined on stable ideals only")
    return _endomorphisms(I)


def rho(I: FracIdeal) -> LocalRing:
    """``I:I`` for a trace ideal."""
    if not is_trace(I):
        raise IdealError("rho is defined on trace ideals only")
    return _endomorphisms(I)


def eta(A: LocalRing | Lattice, R: LocalRing) -> FracIdeal:
    """``R:A`` for a ring ``A`` between ``R`` and its normalization; always a trace ideal."""
    L = A.lattice if isinstance(A, LocalRing) else A
    if not (lat.is_subset(R.lattice, L) and lat.is_subset(L, R.V)):
        raise IdealError("eta needs a ring between R and K[[t]]")
    if lat.lat_product(L, L) != L:
        raise IdealError("eta needs a ring, got a non-closed lattice")
    J = FracIdeal(R, lat.lat_colon(R.lattice, L), check=False)
    if not is_trace(J):
        raise IdealError("R:A is not a trace ideal")  # pragma: no cover
    return J


def _least_valuation_elements(L: Lattice) -> Iterator[Series]:
    """All elements of least valuation modulo ``t^cond`` (finite base fields only)."""
    k = L.base
    if not k.is_finite:
        raise IdealError("brute-force search needs a finite base field")
    basis = L.basis()
    if not basis:
        basis = [Series.monomial(L.field, L.lo, w) for w in L.field.basis] + [
            Series.monomial(L.field, j, w) for j in range(L.lo + 1, L.cond + 1) for w in L.field.basis
        ]
    lead = [b for b in basis if b.valuation == L.lo]
    rest = [b for b in basis if b.valuation > L.lo]
    elems = list(k.elements())
    if len(elems) ** len(basis) > PARANOID_LIMIT:
        raise IdealError("brute-force search space too large")
    f = L.field
    for cl in itertools.product(elems, repeat=len(lead)):
        if not any(cl):
            continue
        head = Series.zero(f)
        for c, b in zip(cl, lead):
            head = head + b.scale(f.embed_base(c))
        for cr in itertools.product(elems, repeat=len(rest)):
            g = head
            for c, b in zip(cr, rest):
                if c:
                    g = g + b.scale(f.embed_base(c))
            yield g


def descend_stable(I: FracIdeal, a: Series | None = None) -> FracIdeal:
    """For a trace ideal ``I``: ``J = (a):_R I`` lies in ``I`` and satisfies ``J^2 = aJ``."""
    if not is_trace(I):
        raise IdealError("descent needs a trace ideal")
    a = a if a is not None else I.witness
    if not lat.member(a, I.lattice):
        raise IdealError("a must lie in I")
    R = _R(I)
    J = colon_in_ring(lat.scale(R, a), I.lattice, R)
    if not lat.is_subset(J, I.lattice):
        raise IdealError("descent postcondition J <= I failed")
    if lat.lat_product(J, J) != lat.scale(J, a):
        raise IdealError("descent postcondition J^2 = aJ failed")
    return FracIdeal(I.ring, J, check=False)


def ascend_stable(I: FracIdeal, a: Series | None = None) -> FracIdeal:
    """For a stable ideal with ``I^2 = aI``: ``J = (a):_R I`` contains ``I`` and is a trace ideal."""
    ok, w = is_stable(I)
    if not ok:
        raise IdealError("ascent needs a stable ideal")
    a = a if a is not None else w
    L = I.lattice
    if lat.lat_product(L, L) != lat.scale(L, a):
        raise IdealError("I^2 != aI for the given a")
    R = _R(I)
    J = FracIdeal(I.ring, colon_in_ring(lat.scale(R, a), L, R), check=False)
    if not lat.is_subset(L, J.lattice):
        raise IdealError("ascent postcondition I <= J failed")
    if not is_trace(J):
        raise IdealError("ascent postcondition J trace failed")
    return J


def strongly_antistable_test(I: FracIdeal, paranoid: bool = False) -> tuple[bool, Series | None]:
    """Whether ``R:I = a (I:I)`` for some unit ``a`` of ``K((t))``; returns ``(verdict, a)``."""
    R, L = _R(I), I.lattice
    A = lat.lat_colon(L, L)
    D = lat.lat_colon(R, L)
    a = D.min_element()
    aA = lat.scale(A, a)
    if not lat.is_subset(aA, D):
        raise IdealError("a(I:I) is not inside R:I")  # pragma: no cover
    ok = lat.colength(D, aA) == 0
    if paranoid and not ok:
        for b in _least_valuation_elements(D):
            if lat.scale(A, b) == D:
                raise IdealError(f"least-valuation witness missed cyclic generator {b}")
    return ok, (a if ok else None)


def _hyperplane_children(R: LocalRing, I: Lattice) -> list[Lattice]:
    """Maximal proper ``R``-submodules of ``I``."""
    m = R.maximal_ideal
    mI = lat.lat_product(m, I)
    k, f = I.base, I.field
    hi = mI.cond
    lo = I.lo
    mrows, mpiv = linalg.rref(k, lat._vectors(mI, lo, hi))
    full, _ = linalg.rref(k, lat._vectors(I, lo, hi))
    # complement of mI inside I
    comp = []
    rows, piv = mrows, mpiv
    for v in full:
        if not linalg.in_span(k, v, rows, piv):
            comp.append(v)
            rows, piv = linalg.rref(k, list(rows) + [list(v)])
    n = len(comp)
    out: dict = {}
    fdeg = R.residue_degree
    for normal in linalg.projective_points(k, n):
        # hyperplane {sum c_i comp_i : sum normal_i c_i = 0}
        hyper = linalg.kernel(k, [[x] for x in normal])
        vecs = [linalg.combine(k, h, comp, len(comp[0])) for h in hyper] + list(mrows)
        J = Lattice.from_vectors(f, lo, hi, vecs, True)
        J = lat.lat_product(R.lattice, J)
        if lat.colength(I, J) == fdeg:
            out[J.key()] = J
    return list(out.values())


def ideals_of_small_colength(R: LocalRing, bound: int) -> list[FracIdeal]:
    """Every ideal ``I <= R`` with ``dim_k(R/I) <= bound`` (finite base field)."""
    if not R.k.is_finite:
        raise IdealError("exhaustive ideal search needs a finite base field")
    level = {R.lattice.key(): R.lattice}
    out = [R.lattice]
    for _ in range(bound // R.residue_degree):
        nxt: dict = {}
        for I in level.values():
            for J in _hyperplane_children(R, I):
                nxt.setdefault(J.key(), J)
        level = nxt
        out.extend(level.values())
    out.sort(key=lambda L: (lat.colength(R.lattice, L), L.sort_key()))
    return [FracIdeal(R, L, check=False) for L in out]


def antistable_ring_check(R: LocalRing, colength_bound: int = 6, paranoid: bool = False) -> dict:
    """Compare ``e(R) <= 2`` with a per-ideal check of ``R:I = a(I:I)``.

    A failing ideal when ``e <= 2`` is an engine inconsistency and raises.
    """
    e = R.multiplicity
    verdict = e <= 2
    report = {"multiplicity": e, "antistable": verdict, "colength_bound": colength_bound, "ideals_checked": 0, "failing_ideal": None}
    if not R.k.is_finite:
        report["exhaustive"] = False
        return report
    report["exhaustive"] = True
    for I in ideals_of_small_colength(R, colength_bound):
        report["ideals_checked"] += 1
        ok, _ = strongly_antistable_test(I, paranoid=paranoid)
        if not ok:
            if verdict:
                raise IdealError(f"e(R) = {e} <= 2 but {I.describe()} is not strongly anti-stable")
            if report["failing_ideal"] is None:
                report["failing_ideal"] = I.describe()
    report["consistent"] = verdict or report["failing_ideal"] is not None
    return report


@dataclass
class IdealClassification:
    ideal: str
    generators: list[str]
    is_trace: bool
    is_stable: bool
    stability_witness: str | None
    is_good: bool
    is_reflexive: bool
    is_principal: bool
    strongly_antistable_witness: str | None
    endomorphism_ring: str
    rho: str | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d.update(d.pop("extra"))
        return d


def classify(I: FracIdeal, paranoid: bool = False) -> IdealClassification:
    tr = is_trace(I)
    st, a = is_stable(I, paranoid=paranoid)
    good = tr and st
    if good != is_good_by_definition(I) and I.is_integral:
        raise IdealError("good-ideal verdicts disagree")  # pragma: no cover
    pr = is_principal(I)
    if pr and not st:
        raise IdealError("principal ideal reported unstable")  # pragma: no cover
    sa, w = strongly_antistable_test(I, paranoid=paranoid)
    A = lat.lat_colon(I.lattice, I.lattice)
    return IdealClassification(
        ideal=I.describe(),
        generators=[str(g) for g in I.generators()],
        is_trace=tr,
        is_stable=st,
        stability_witness=None if a is None else str(a),
        is_good=good,
        is_reflexive=is_reflexive(I),
        is_principal=pr,
        strongly_antistable_witness=None if w is None else str(w),
        endomorphism_ring=A.describe(),
        rho=A.describe() if tr else None,
    )
