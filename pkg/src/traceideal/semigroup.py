"""Numerical semigroups and their ideals.

This is plain integer combinatorics, kept independent of the lattice engine
so that it can serve as an oracle for monomial rings.
"""

from __future__ import annotations

import math
from functools import cached_property, reduce
from typing import Iterable, Iterator

__all__ = [
    "NumericalSemigroup",
    "SemigroupIdeal",
    "SemigroupError",
    "oversemigroups",
    "semigroups_by_genus",
    "monomial_cross_check",
    "ideals_above_conductor",
]


class SemigroupError(ValueError):
    pass


class NumericalSemigroup:
    """A cofinite submonoid of the non-negative integers given by generators.

    >>> S = NumericalSemigroup([4, 5, 6])
    >>> S.gaps, S.frobenius
    ((1, 2, 3, 7), 7)
    """

    def __init__(self, gens: Iterable[int]):
        gens = sorted({int(g) for g in gens if int(g) != 0})
        if not gens or any(g < 0 for g in gens):
            raise SemigroupError("generators must be positive integers")
        if reduce(math.gcd, gens) != 1:
            raise SemigroupError(f"gcd of {gens} is not 1; the semigroup is not cofinite")
        self._input = tuple(gens)

    @classmethod
    def from_elements(cls, members: Iterable[int], bound: int) -> "NumericalSemigroup":
        """Semigroup made of ``members`` below ``bound`` and every integer from ``bound`` on."""
        small = {x for x in members if 0 < x < bound}
        S = cls(sorted(small) + list(range(bound, 2 * bound + 1)) if bound > 0 else [1])
        if {x for x in range(1, bound) if x in S} != small:
            raise SemigroupError("element set is not closed under addition")
        return S

    # -- membership table ----------------------------------------------------

    @cached_property
    def _table(self) -> tuple[int, tuple[bool, ...]]:
        gens = self._input
        m = gens[0]
        # Apery set w.r.t. the least generator by a shortest-path relaxation.
        INF = math.inf
        ap = [INF] * m
        ap[0] = 0
        changed = True
        while changed:
            changed = False
            for r in range(m):
                if ap[r] == INF:
                    continue
                for g in gens[1:]:
                    s = ap[r] + g
                    if s < ap[s % m]:
                        ap[s % m] = s
                        changed = True
        frob = max(ap) - m
        c = frob + 1
        table = tuple(x >= ap[x % m] for x in range(c))
        return c, table

    @property
    def conductor(self) -> int:
        return self._table[0]

    @property
    def frobenius(self) -> int:
        return self.conductor - 1

    def __contains__(self, x: int) -> bool:
        if x < 0:
            return False
        c, table = self._table
        return x >= c or table[x]

    @cached_property
    def small_elements(self) -> tuple[int, ...]:
        """Elements below the conductor, including 0."""
        c, table = self._table
        return tuple(x for x in range(c) if table[x])

    @cached_property
    def gaps(self) -> tuple[int, ...]:
        c, table = self._table
        return tuple(x for x in range(c) if not table[x])

    @property
    def genus(self) -> int:
        return len(self.gaps)

    @cached_property
    def multiplicity(self) -> int:
        return next(x for x in range(1, self.conductor + 2) if x in self)

    @cached_property
    def minimal_generators(self) -> tuple[int, ...]:
        out = []
        for x in range(1, self.conductor + self.multiplicity + 1):
            if x in self and not any(x - y in self for y in range(1, x) if y in self):
                out.append(x)
        return tuple(out)

    def apery(self, n: int | None = None) -> tuple[int, ...]:
        """Least element in each residue class modulo ``n`` (default: the multiplicity)."""
        n = n or self.multiplicity
        if n not in self:
            raise SemigroupError(f"{n} is not in the semigroup")
        out = []
        for r in range(n):
            x = r
            while x not in self:
                x += n
            out.append(x)
        return tuple(out)

    @cached_property
    def pseudo_frobenius(self) -> tuple[int, ...]:
        gens = self.minimal_generators
        return tuple(x for x in self.gaps if all(x + g in self for g in gens))

    @property
    def type(self) -> int:
        if self.conductor == 0:
            return 1
        return len(self.pseudo_frobenius)

    @property
    def is_symmetric(self) -> bool:
        F = self.frobenius
        return all((x in self) != (F - x in self) for x in range(F + 1))

    @property
    def is_almost_symmetric(self) -> bool:
        """Every pseudo-Frobenius number f other than F has F - f pseudo-Frobenius too."""
        pf = set(self.pseudo_frobenius)
        F = self.frobenius
        return all(F - f in pf for f in pf if f != F)

    # -- comparison -------------------------------------------------------------

    def key(self) -> tuple:
        return (self.conductor, self.small_elements)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NumericalSemigroup) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __le__(self, other: "NumericalSemigroup") -> bool:
        top = max(self.conductor, other.conductor)
        return all(x in other for x in range(top + 1) if x in self)

    def __repr__(self) -> str:
        return f"NumericalSemigroup({list(self.minimal_generators)})"

    def __str__(self) -> str:
        return "<" + ",".join(map(str, self.minimal_generators)) + ">"

    # -- tree structure -------------------------------------------------------

    def children(self) -> list["NumericalSemigroup"]:
        """Semigroups obtained by removing a minimal generator larger than the Frobenius number."""
        out = []
        F = self.frobenius
        for g in self.minimal_generators:
            if g > F:
                members = [x for x in range(1, g + 1) if x in self and x != g]
                out.append(NumericalSemigroup.from_elements(members, g + 1))
        return out

    def info(self) -> dict:
        return {
            "generators": list(self.minimal_generators),
            "multiplicity": self.multiplicity,
            "genus": self.genus,
            "frobenius": self.frobenius,
            "conductor": self.conductor,
            "gaps": list(self.gaps),
            "apery": list(self.apery()),
            "pseudo_frobenius": list(self.pseudo_frobenius),
            "type": self.type,
            "symmetric": self.is_symmetric,
            "almost_symmetric": self.is_almost_symmetric,
        }


def oversemigroups(S: NumericalSemigroup) -> list[NumericalSemigroup]:
    """Every numerical semigroup containing ``S``, largest genus first.

    Depth-first over the gaps in increasing order.  Adding a gap ``g`` forces
    every ``g + a`` below the conductor, so a branch that would have to
    exclude a forced gap is never entered; leaves are closed by construction.
    """
    gaps = S.gaps
    c = S.conductor
    found: list[NumericalSemigroup] = []

    def dfs(i: int, members: frozenset, forced: frozenset) -> None:
        if i == len(gaps):
            found.append(NumericalSemigroup.from_elements(members, c) if c else S)
            return
        g = gaps[i]
        new = members | {g}
        dfs(i + 1, new, forced | {g + a for a in new if g + a < c})
        if g not in forced:
            dfs(i + 1, members, forced)

    dfs(0, frozenset(S.small_elements), frozenset())
    found = list(dict.fromkeys(found))
    found.sort(key=lambda T: (-T.genus, T.small_elements))
    return found


def semigroups_by_genus(max_genus: int, max_multiplicity: int | None = None) -> Iterator[NumericalSemigroup]:
    """All numerical semigroups of genus at most ``max_genus``, walking the genus tree."""
    level = [NumericalSemigroup([1])]
    for g in range(max_genus + 1):
        for S in level:
            if max_multiplicity is None or S.multiplicity <= max_multiplicity:
                yield S
        if g == max_genus:
            break
        level = [T for S in level for T in S.children()]


class SemigroupIdeal:
    """A relative ideal ``E`` of a numerical semigroup: ``E + S`` lies in ``E``.

    Stored as the finite set of members below ``tail`` plus every integer
    from ``tail`` on; ``tail`` is kept minimal.
    """

    __slots__ = ("S", "tail", "members")

    def __init__(self, S: NumericalSemigroup, members: Iterable[int], tail: int):
        mem = {x for x in members if x < tail}
        while tail - 1 in mem:
            tail -= 1
            mem.discard(tail)
        self.S = S
        self.tail = tail
        self.members = frozenset(mem)

    @classmethod
    def generated(cls, S: NumericalSemigroup, gens: Iterable[int]) -> "SemigroupIdeal":
        gens = list(gens)
        if not gens:
            raise SemigroupError("ideal needs at least one generator")
        tail = min(gens) + S.conductor
        mem = {g + s for g in gens for s in range(tail) if s in S and g + s < tail}
        return cls(S, mem, tail)

    @property
    def min(self) -> int:
        return min(self.members) if self.members else self.tail

    def __contains__(self, x: int) -> bool:
        return x >= self.tail or x in self.members

    def elements_below(self, n: int) -> list[int]:
        return [x for x in range(self.min, n) if x in self]

    def key(self) -> tuple:
        return (self.tail, tuple(sorted(self.members)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SemigroupIdeal) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"SemigroupIdeal({sorted(self.members)}, tail={self.tail})"

    def __le__(self, other: "SemigroupIdeal") -> bool:
        return self.tail >= other.tail and all(x in other for x in self.members)

    def shift(self, n: int) -> "SemigroupIdeal":
        return SemigroupIdeal(self.S, [x + n for x in self.members], self.tail + n)

    def union(self, other: "SemigroupIdeal") -> "SemigroupIdeal":
        tail = min(self.tail, other.tail)
        return SemigroupIdeal(self.S, self.members | other.members, tail)

    def __add__(self, other: "SemigroupIdeal") -> "SemigroupIdeal":
        """Set-sum ``{e + f}``, the value set of a product of monomial ideals."""
        tail = min(self.tail + other.min, other.tail + self.min)
        a = self.elements_below(tail)
        b = other.elements_below(tail)
        return SemigroupIdeal(self.S, {x + y for x in a for y in b if x + y < tail}, tail)

    def colon(self, other: "SemigroupIdeal") -> "SemigroupIdeal":
        """``{z : z + other <= self}``."""
        lo = self.min - other.min
        tail = self.tail - other.min
        fs = other.elements_below(other.tail)
        mem = [
            z
            for z in range(lo, tail)
            if all(z + f in self for f in fs) and all(x in self for x in range(z + other.tail, self.tail))
        ]
        return SemigroupIdeal(self.S, mem, tail)

    @classmethod
    def of_semigroup(cls, S: NumericalSemigroup) -> "SemigroupIdeal":
        return cls(S, S.small_elements, S.conductor)

    @classmethod
    def naturals(cls, S: NumericalSemigroup, start: int = 0) -> "SemigroupIdeal":
        return cls(S, (), start)


def ideals_above_conductor(S: NumericalSemigroup) -> list[SemigroupIdeal]:
    """Semigroup ideals ``E`` with ``[c, inf) <= E <= S``."""
    c = S.conductor
    small = S.small_elements
    out = []
    for mask in range(1 << len(small)):
        chosen = {x for i, x in enumerate(small) if mask >> i & 1}
        if all(x + s >= c or x + s in chosen for x in chosen for s in small):
            out.append(SemigroupIdeal(S, chosen, c))
    return out


def monomial_cross_check(ring) -> dict:
    """Compare lattice verdicts with set arithmetic on every monomial ideal between the conductor and the ring."""
    from .ideals import is_good, is_stable, is_trace
    from .local_ring import monomial_ideal

    S = ring.semigroup
    if S is None:
        raise SemigroupError("cross-check needs a monomial ring")
    R_E = SemigroupIdeal.of_semigroup(S)
    mismatches = []
    checked = 0
    for E in ideals_above_conductor(S):
        I = monomial_ideal(ring, E)
        trace_set = E.colon(E) == R_E.colon(E)
        a = E.min
        stable_set = (E + E) == E.shift(a)
        good_set = trace_set and stable_set
        lat = (is_trace(I), is_stable(I)[0], is_good(I))
        sets = (trace_set, stable_set, good_set)
        checked += 1
        if lat != sets:
            mismatches.append({"values": E.elements_below(S.conductor + 1), "lattice": lat, "semigroup": sets})
    inv_lat = (ring.multiplicity, ring.cm_type, ring.is_gorenstein)
    inv_set = (S.multiplicity, S.type, S.is_symmetric)
    return {
        "semigroup": str(S),
        "ideals_checked": checked,
        "mismatches": mismatches,
        "invariants_lattice": inv_lat,
        "invariants_semigroup": inv_set,
        "agree": not mismatches and inv_lat == inv_set,
    }
