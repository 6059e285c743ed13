"""Row reduction over Q or F_p on plain tuples.

Every routine takes the base field first and works on raw values (see
:mod:`traceideal.scalars`).  Matrices are sequences of equal-length rows.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

from .scalars import Field

Vector = tuple
Echelon = tuple  # (rows, pivots)


def _is_prime_field(k: Field) -> bool:
    if k.kind == "ext":
        raise ValueError("linear algebra runs over the base field only")
    return k.kind == "prime"


def rref(k: Field, rows: Iterable[Sequence]) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Reduced row echelon form; zero rows dropped.

    Returns ``(rows, pivots)`` with ``pivots[i]`` the leading column of ``rows[i]``.
    """
    mat = [list(r) for r in rows]
    if not mat:
        return (), ()
    ncols = len(mat[0])
    prime = _is_prime_field(k)
    p = k.p
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        row = mat[r]
        lead = row[c]
        if prime:
            if lead != 1:
                inv = pow(lead, p - 2, p)
                for j in range(c, ncols):
                    row[j] = row[j] * inv % p
            for i in range(len(mat)):
                if i != r:
                    f = mat[i][c]
                    if f:
                        other = mat[i]
                        for j in range(c, ncols):
                            if row[j]:
                                other[j] = (other[j] - f * row[j]) % p
        else:
            if lead != 1:
                for j in range(c, ncols):
                    row[j] = row[j] / lead
            for i in range(len(mat)):
                if i != r:
                    f = mat[i][c]
                    if f:
                        other = mat[i]
                        for j in range(c, ncols):
                            if row[j]:
                                other[j] = other[j] - f * row[j]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat[:r]), tuple(pivots)


def reduce(k: Field, vec: Sequence, rows: Sequence[Sequence], pivots: Sequence[int]) -> list:
    """Residue of ``vec`` after clearing every pivot column of an RREF basis."""
    v = list(vec)
    if k.kind == "prime":
        p = k.p
        for row, c in zip(rows, pivots):
            f = v[c]
            if f:
                for j in range(c, len(v)):
                    if row[j]:
                        v[j] = (v[j] - f * row[j]) % p
    else:
        for row, c in zip(rows, pivots):
            f = v[c]
            if f:
                for j in range(c, len(v)):
                    if row[j]:
                        v[j] = v[j] - f * row[j]
    return v


def in_span(k: Field, vec: Sequence, rows: Sequence[Sequence], pivots: Sequence[int]) -> bool:
    return not any(reduce(k, vec, rows, pivots))


def kernel(k: Field, images: Sequence[Sequence]) -> list[Vector]:
    """Basis of ``{c : sum_i c_i * images[i] == 0}`` in RREF."""
    n = len(images)
    if n == 0:
        return []
    m = len(images[0])
    zero, one = k.zero, k.one
    aug = []
    for i, img in enumerate(images):
        tag = [zero] * n
        tag[i] = one
        aug.append(list(img) + tag)
    red, piv = rref(k, aug)
    kern = [row[m:] for row, c in zip(red, piv) if c >= m]
    kr, _ = rref(k, kern)
    return list(kr)


def intersect(k: Field, a: Sequence[Sequence], b: Sequence[Sequence]) -> list[Vector]:
    """Basis of ``span(a) & span(b)`` by the Zassenhaus trick."""
    if not a or not b:
        return []
    n = len(a[0])
    zero = k.zero
    rows = [list(r) + list(r) for r in a] + [list(r) + [zero] * n for r in b]
    red, piv = rref(k, rows)
    inter = [row[n:] for row, c in zip(red, piv) if c >= n]
    out, _ = rref(k, inter)
    return list(out)


def scale(k: Field, vec: Sequence, c) -> list:
    if k.kind == "prime":
        return [x * c % k.p for x in vec]
    return [x * c for x in vec]


def axpy(k: Field, c, x: Sequence, y: Sequence) -> list:
    """``c*x + y``."""
    if k.kind == "prime":
        p = k.p
        return [(c * a + b) % p for a, b in zip(x, y)]
    return [c * a + b for a, b in zip(x, y)]


def combine(k: Field, coeffs: Sequence, vecs: Sequence[Sequence], length: int) -> list:
    out = [k.zero] * length
    for c, v in zip(coeffs, vecs):
        if c:
            out = axpy(k, c, v, out)
    return out


def galois_number(n: int, q: int) -> int:
    """Number of subspaces of F_q^n."""
    return sum(gaussian_binomial(n, r, q) for r in range(n + 1))


def gaussian_binomial(n: int, r: int, q: int) -> int:
    if r < 0 or r > n:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def iter_subspaces(k: Field, n: int, dims: Iterable[int] | None = None) -> Iterator[tuple[Vector, ...]]:
    """Every subspace of ``k^n`` exactly once, as its RREF basis.

    Echelon matrices are generated directly: choose pivot columns, then fill
    each free slot (right of its row's pivot, outside pivot columns) with every
    field element.
    """
    if not k.is_finite or k.kind == "ext":
        raise ValueError("subspace enumeration needs a finite prime field")
    elems = list(k.elements())
    for r in dims if dims is not None else range(n + 1):
        for pivots in itertools.combinations(range(n), r):
            pivset = set(pivots)
            slots = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, n) if j not in pivset]
            for fill in itertools.product(elems, repeat=len(slots)):
                rows = [[0] * n for _ in range(r)]
                for i, c in enumerate(pivots):
                    rows[i][c] = 1
                for (i, j), v in zip(slots, fill):
                    rows[i][j] = v
                yield tuple(tuple(row) for row in rows)


def projective_points(k: Field, n: int) -> Iterator[list]:
    """Nonzero vectors of ``k^n`` up to scalars (first nonzero entry equal to one)."""
    if not k.is_finite:
        raise ValueError("projective point enumeration needs a finite field")
    elems = list(k.elements())
    for lead in range(n):
        for tail in itertools.product(elems, repeat=n - lead - 1):
            yield [0] * lead + [1] + list(tail)
