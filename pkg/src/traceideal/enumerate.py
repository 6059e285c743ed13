"""Exhaustive enumeration of overrings, trace ideals and stable classes, and ring-level reports.

Search spaces are finite because everything lives between the conductor and
``K[[t]]``:

* every overring ``A`` satisfies ``R <= A <= V``;
* every regular trace ideal contains the conductor ``C``: if ``v`` is the
  least valuation of ``I`` then ``R:I`` contains ``t^-v C`` and so
  ``I = (R:I) I`` contains ``t^-v C * f = C`` for ``f`` of valuation ``v``;
* a proper trace ideal is a module over ``B = R:m`` because
  ``I:I = R:I`` contains ``R:m``.

The default walk grows a lattice one socle element at a time: if ``A' > A``
then ``A'/A`` has a nonzero element killed by the maximal ideal, so every
target is reached through such steps.  The ``subspaces`` method instead scans
every subspace of the quotient and reports the Galois number as a
completeness certificate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from . import ideals as idl
from . import lattice as lat
from . import linalg
from .lattice import Lattice
from .local_ring import FracIdeal, LocalRing, overring
from .series import Series

__all__ = [
    "EnumerationError",
    "CapExceeded",
    "EnumerationReport",
    "enumerate_overrings",
    "enumerate_trace_ideals",
    "stable_class_reps",
    "verify_ring",
    "DEFAULT_MAX_DIM",
]

DEFAULT_MAX_DIM = {2: 10, 3: 6}


class EnumerationError(RuntimeError):
    """An internal consistency check failed."""


class CapExceeded(ValueError):
    """The requested search is above the configured size cap."""


def _require_finite(R: LocalRing) -> None:
    if not R.k.is_finite:
        raise EnumerationError(
            f"exhaustive enumeration needs a finite base field, got {R.k.descriptor}; use monomial-only mode"
        )


def _check_cap(R: LocalRing, n: int, max_dim: int | None) -> None:
    q = R.k.order
    cap = max_dim if max_dim is not None else DEFAULT_MAX_DIM.get(q, 4)
    if n > cap:
        raise CapExceeded(f"quotient dimension {n} over F{q} exceeds the cap {cap}")


def _socle_candidates(big: Lattice, small: Lattice, lo: int) -> tuple[list[list], int]:
    """Vectors spanning ``big / small`` on ``[lo, top)``, as a reduced complement."""
    k = small.base
    top = max(big.top, small.top)
    srows, spiv = linalg.rref(k, lat._vectors(small, lo, top))
    brows, _ = linalg.rref(k, lat._vectors(big, lo, top))
    comp = []
    rows, piv = srows, spiv
    for v in brows:
        r = linalg.reduce(k, v, rows, piv)
        if any(r):
            comp.append(r)
            rows, piv = linalg.rref(k, list(rows) + [r])
    return comp, top


def _points(k, comp: list[list]):
    n = len(comp)
    if n == 0:
        return
    width = len(comp[0])
    for c in linalg.projective_points(k, n):
        yield linalg.combine(k, c, comp, width)


# -- overrings ---------------------------------------------------------------------


def _overrings_bfs(R: LocalRing) -> list[Lattice]:
    f = R.field
    V = R.V
    seen = {R.lattice.key(): R.lattice}
    queue = deque([R.lattice])
    while queue:
        A = queue.popleft()
        if A == V:
            continue
        mA = lat.lat_intersection(A, lat.tail(f, 1))
        soc = lat.lat_intersection(lat.lat_colon(A, mA), V) if not mA.is_zero else V
        comp, top = _socle_candidates(soc, A, 0)
        for v in _points(R.k, comp):
            x = Lattice.from_vectors(f, 0, top, [v], False)
            B = lat.ring_closure(lat.lat_sum(A, x))
            if B.key() not in seen:
                seen[B.key()] = B
                queue.append(B)
    return list(seen.values())


def _overrings_subspaces(R: LocalRing, max_dim: int | None) -> tuple[list[Lattice], int]:
    f, k = R.field, R.k
    c = R.conductor_exponent
    comp, top = _socle_candidates(R.V, R.lattice, 0)
    n = len(comp)
    _check_cap(R, n, max_dim)
    base_vecs = lat._vectors(R.lattice, 0, c)
    out = []
    scanned = 0
    for U in linalg.iter_subspaces(k, n):
        scanned += 1
        vecs = base_vecs + [linalg.combine(k, u, comp, len(comp[0]) if comp else 0) for u in U]
        A = Lattice.from_vectors(f, 0, c, vecs, True)
        if lat.lat_product(A, A) == A:
            out.append(A)
    if scanned != linalg.galois_number(n, k.order):
        raise EnumerationError("subspace scan count differs from the Galois number")  # pragma: no cover
    return out, scanned


def enumerate_overrings(R: LocalRing, method: str = "bfs", max_dim: int | None = None, monomial_only: bool = False) -> list[Lattice]:
    """All rings between ``R`` and ``K[[t]]``, sorted canonically.

    ``monomial_only`` lists the monomial overrings of a monomial ring from
    its oversemigroups; this is the only mode available over ``Q``.
    """
    if monomial_only:
        from .local_ring import semigroup_ring
        from .semigroup import oversemigroups

        if R.semigroup is None or not R.is_monomial:
            raise EnumerationError("monomial-only mode needs a monomial ring")
        out = [semigroup_ring(R.field, T.minimal_generators).lattice for T in oversemigroups(R.semigroup)]
        return sorted(out, key=Lattice.sort_key)
    _require_finite(R)
    if method == "bfs":
        out = _overrings_bfs(R)
    elif method == "subspaces":
        out, _ = _overrings_subspaces(R, max_dim)
    else:
        raise ValueError(f"unknown method {method!r}")
    return sorted(out, key=Lattice.sort_key)


# -- trace ideals --------------------------------------------------------------------


def _modules_between(R: LocalRing, Bring: Lattice, bottom: Lattice, top: Lattice) -> list[Lattice]:
    """Every ``Bring``-submodule ``I`` with ``bottom <= I <= top``."""
    f = R.field
    m = R.maximal_ideal
    seen = {bottom.key(): bottom}
    queue = deque([bottom])
    while queue:
        I = queue.popleft()
        if I == top:
            continue
        soc = lat.lat_intersection(lat.lat_colon(I, m), top)
        comp, hi = _socle_candidates(soc, I, min(I.lo, soc.lo))
        lo = min(I.lo, soc.lo)
        for v in _points(R.k, comp):
            x = Lattice.from_vectors(f, lo, hi, [v], False)
            J = lat.lat_sum(I, lat.lat_product(Bring, x))
            if J.key() not in seen:
                seen[J.key()] = J
                queue.append(J)
    return list(seen.values())


def enumerate_trace_ideals(R: LocalRing, method: str = "bfs", max_dim: int | None = None) -> list[Lattice]:
    """All trace ideals of ``R`` (regular, inside ``R``), sorted canonically."""
    _require_finite(R)
    if R.lattice == R.V:
        return [R.lattice]
    C = R.conductor
    m = R.maximal_ideal
    if method == "bfs":
        cands = _modules_between(R, R.endomorphism_ring, C, m)
    elif method == "subspaces":
        comp, top = _socle_candidates(m, C, m.lo)
        _check_cap(R, len(comp), max_dim)
        cands = []
        base = lat._vectors(C, m.lo, top)
        for U in linalg.iter_subspaces(R.k, len(comp)):
            vecs = base + [linalg.combine(R.k, u, comp, len(comp[0]) if comp else 0) for u in U]
            I = Lattice.from_vectors(R.field, m.lo, top, vecs, True)
            if lat.lat_product(R.lattice, I) == I:
                cands.append(I)
    else:
        raise ValueError(f"unknown method {method!r}")
    out = [I for I in cands if idl.is_trace(FracIdeal(R, I, check=False))]
    out.append(R.lattice)
    for I in out:
        if not lat.is_subset(C, I):
            raise EnumerationError("a trace ideal misses the conductor")  # pragma: no cover
    return sorted(out, key=Lattice.sort_key)


def stable_class_reps(R: LocalRing, overrings: list[Lattice] | None = None) -> list[Lattice]:
    """One stable ideal ``t^c A`` per overring ``A``, with ``c`` the conductor exponent of ``R``.

    Each representative lies in ``t^c K[[t]] <= R`` and has ``I:I = A``.
    """
    Y = overrings if overrings is not None else enumerate_overrings(R)
    c = R.conductor_exponent
    tc = Series.monomial(R.field, c)
    reps = []
    for A in Y:
        I = lat.scale(A, tc)
        J = FracIdeal(R, I)
        ok, _ = idl.is_stable(J)
        if not ok or lat.lat_colon(I, I) != A or not lat.is_subset(I, R.lattice):
            raise EnumerationError(f"representative of {A.describe()} failed its checks")
        reps.append(I)
    return reps


# -- ring report ----------------------------------------------------------------------


def _no_intermediate(n: int) -> bool:
    from .scalars import is_prime

    return n == 1 or is_prime(n)


@dataclass
class EnumerationReport:
    ring: str
    field: str
    invariants: dict
    X: list[Lattice]
    Y: list[Lattice]
    Z_reps: list[Lattice]
    rho: list[int]
    eta: list[int]
    xi: list[int]
    verdicts: dict
    checks: dict = field(default_factory=dict)

    def to_dict(self, bases: bool = True) -> dict:
        def item(L: Lattice) -> dict:
            d = {"lattice": L.describe()}
            if bases:
                d["basis"] = L.to_dict()
            return d

        return {
            "schema": 1,
            "ring": self.ring,
            "field": self.field,
            "invariants": self.invariants,
            "counts": {"X": len(self.X), "Y": len(self.Y), "Z_classes": len(self.Z_reps)},
            "X": [item(L) for L in self.X],
            "Y": [item(L) for L in self.Y],
            "Z_reps": [item(L) for L in self.Z_reps],
            "rho": self.rho,
            "eta": self.eta,
            "xi": self.xi,
            "verdicts": self.verdicts,
            "checks": self.checks,
        }


def _index(table: dict, L: Lattice, what: str) -> int:
    try:
        return table[L.key()]
    except KeyError:
        raise EnumerationError(f"{what} {L.describe()} is missing from the enumeration") from None


def verify_ring(R: LocalRing, method: str = "bfs", max_dim: int | None = None, paranoid: bool = False) -> EnumerationReport:
    """Enumerate and cross-check every correspondence on ``R``.

    Any failed identity raises :class:`EnumerationError`.
    """

    def need(cond: bool, msg: str) -> None:
        if not cond:
            raise EnumerationError(f"{R.descriptor}: {msg}")

    Y = enumerate_overrings(R, method=method, max_dim=max_dim)
    X = enumerate_trace_ideals(R, method=method, max_dim=max_dim)
    Z = stable_class_reps(R, Y)
    yi = {A.key(): i for i, A in enumerate(Y)}
    xi_ = {I.key(): i for i, I in enumerate(X)}
    Rl = R.lattice

    rho_t = [_index(yi, lat.lat_colon(I, I), "rho image") for I in X]
    eta_t = [_index(xi_, lat.lat_colon(Rl, A), "eta image") for A in Y]
    xi_t = [_index(yi, lat.lat_colon(I, I), "xi image") for I in Z]
    need(len(Z) == len(Y) and sorted(xi_t) == list(range(len(Y))), "stable classes do not match overrings")

    ideals_X = [FracIdeal(R, I, check=False) for I in X]
    reflexive_Y = [lat.lat_colon(Rl, lat.lat_colon(Rl, A)) == A for A in Y]
    rho_surjective = sorted(set(rho_t)) == list(range(len(Y)))
    rho_injective = len(set(rho_t)) == len(X)
    eta_injective = len(set(eta_t)) == len(Y)
    all_reflexive = all(reflexive_Y)
    need(rho_surjective == eta_injective == all_reflexive, "the three surjectivity conditions disagree")

    # image descriptions of rho and eta
    need(set(rho_t) == {i for i, r in enumerate(reflexive_Y) if r}, "rho image is not the reflexive overrings")
    reflexive_X = [idl.is_reflexive(J) for J in ideals_X]
    need(set(eta_t) == {i for i, r in enumerate(reflexive_X) if r}, "eta image is not the reflexive trace ideals")

    # good ideals: trace and stable, also by definition
    stable_X = [idl.is_stable(J, paranoid=paranoid)[0] for J in ideals_X]
    good = [i for i, s in enumerate(stable_X) if s]
    for i in good:
        need(idl.is_good_by_definition(ideals_X[i]), "trace+stable ideal fails the good definition")
    for i, J in enumerate(ideals_X):
        if i not in good:
            need(not idl.is_good_by_definition(J), "good by definition but not trace+stable")
    X_equals_G = len(good) == len(X)
    # good ideals correspond to overrings with R:A cyclic over A
    cyclic_Y = set()
    for i, A in enumerate(Y):
        D = lat.lat_colon(Rl, A)
        if lat.scale(A, D.min_element()) == D:
            cyclic_Y.add(i)
    need({rho_t[i] for i in good} == cyclic_Y, "good ideals do not match overrings with cyclic dual")
    need(len(good) == len(cyclic_Y), "good ideals are not in bijection with cyclic-dual overrings")

    # descent and ascent on every trace ideal and every stable representative
    for J in ideals_X:
        idl.descend_stable(J)
    for I in Z:
        idl.ascend_stable(FracIdeal(R, I, check=False))

    gor = R.is_gorenstein
    e = R.multiplicity
    overring_gor = [overring(R, A).is_gorenstein for A in Y]
    all_gor = all(overring_gor)
    if gor:
        need(all_gor == X_equals_G == (e <= 2), "Gorenstein equivalence of e <= 2 failed")
        need(all(eta_t[rho_t[i]] == i for i in range(len(X))), "eta(rho(I)) != I on a Gorenstein ring")
        need(all(rho_t[eta_t[j]] == j for j in range(len(Y))), "rho(eta(A)) != A on a Gorenstein ring")
    if e <= 2:
        need(all(eta_t[j] in good for j in range(len(Y))), "R:A is not good although e <= 2")

    # trichotomy for surjectivity
    B = R.endomorphism_ring
    V = R.V
    d, fdeg = R.field.degree, R.residue_degree
    t_lat = lat.span(R.field, [Series.monomial(R.field, 1)])
    m = R.maximal_ideal
    special = (not gor) and B == V and m == lat.lat_product(t_lat, V) and _no_intermediate(d // fdeg)
    case = "gorenstein" if gor else ("special" if special else "rho_not_surjective")
    need((case != "rho_not_surjective") == rho_surjective, f"surjectivity {rho_surjective} contradicts case {case}")
    if special:
        need(d // fdeg == R.cm_type + 1 and d // fdeg >= 3, "residue degree of B is not type + 1 >= 3")

    # rings with mV inside R have only m and R as trace ideals
    mV_in_R = Rl != V and R.conductor_exponent <= m.lo
    if mV_in_R:
        need(sorted(k.key() for k in X) == sorted([m.key(), Rl.key()]), "X_R is not {m, R} although mV <= R")
    if R.semigroup is not None and R.is_monomial and d == 1:
        need(rho_surjective == gor, "monomial ring: surjectivity differs from Gorenstein")

    verdicts = {
        "rho_surjective": rho_surjective,
        "rho_injective": rho_injective,
        "rho_bijective": rho_surjective and rho_injective,
        "eta_injective": eta_injective,
        "all_overrings_reflexive": all_reflexive,
        "X_equals_G": X_equals_G,
        "all_overrings_gorenstein": all_gor,
        "surjectivity_case": case,
        "gorenstein": gor,
        "multiplicity_at_most_2": e <= 2,
    }
    checks = {
        "good_count": len(good),
        "reflexive_overrings": sum(reflexive_Y),
        "overring_gorenstein": overring_gor,
        "mV_in_R": mV_in_R,
        "method": method,
    }
    return EnumerationReport(
        ring=R.descriptor,
        field=R.field.descriptor,
        invariants=R.invariants(),
        X=X,
        Y=Y,
        Z_reps=Z,
        rho=rho_t,
        eta=eta_t,
        xi=xi_t,
        verdicts=verdicts,
        checks=checks,
    )
