"""Brute-force F2 oracle: polynomials as bitmasks, lattices as explicit element sets.

Bit ``i`` of a mask is the coefficient of ``t^(i - OFF)``, so negative
exponents down to ``-OFF`` are representable.
"""

from traceideal.series import Series

OFF = 32


def mask(f: Series) -> int:
    out = 0
    for e, c in f.coeffs.items():
        if c % 2:
            out |= 1 << (e + OFF)
    return out


def mono(e: int) -> int:
    return 1 << (e + OFF)


def val(p: int) -> float:
    return (p & -p).bit_length() - 1 - OFF if p else float("inf")


def mul(a: int, b: int) -> int:
    out = 0
    while b:
        low = b & -b
        out ^= a * low
        b ^= low
    return out >> OFF


def trunc(p: int, n: int) -> int:
    return p & ((1 << (n + OFF)) - 1)


def span(vectors) -> set[int]:
    out = {0}
    for v in vectors:
        if v not in out:
            out |= {x ^ v for x in out}
    return out


def gens(L) -> list[int]:
    """Rows of ``L``; with a conductor these are polynomials below it."""
    return [mask(f) for f in L.basis()]


def elements(L, n: int) -> set[int]:
    """All elements of ``L`` truncated below ``t^n`` (n at least the conductor)."""
    extra = [mono(j) for j in range(L.cond, n)] if L.cond is not None else []
    return span([trunc(g, n) for g in gens(L)] + extra)


class Oracle:
    """Membership in a lattice with a conductor, by set lookup."""

    def __init__(self, L):
        self.L = L
        self.cond = L.cond
        self.lo = L.lo
        self.set = elements(L, L.cond)

    def __contains__(self, p: int) -> bool:
        if p == 0:
            return True
        if val(p) < self.lo:
            return False
        return trunc(p, self.cond) in self.set


def colon_elements(X, Y, lo: int, hi: int) -> set[int]:
    """Polynomials ``z`` supported on ``[lo, hi)`` with ``z Y <= X``."""
    ox = Oracle(X)
    ys = gens(Y)
    out = set()
    for bits in range(1 << (hi - lo)):
        z = bits << (lo + OFF)
        if z == 0:
            out.add(0)
            continue
        tests = list(ys) + [mono(j) for j in range(Y.cond, max(Y.cond, X.cond - int(val(z))))]
        if all(mul(z, y) in ox for y in tests):
            out.add(z)
    return out
