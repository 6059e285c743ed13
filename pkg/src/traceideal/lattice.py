"""k-lattices inside K((t)): the uniform representation of rings and ideals.

A :class:`Lattice` with a conductor is the k-subspace

    span(rows) + t^cond K[[t]]

where ``rows`` is the reduced row echelon basis of its image in
``t^lo K[[t]] / t^cond K[[t]]``.  Each t-degree contributes ``d = [K:k]``
coordinates over the base field k, so all row reduction happens over k.
``lo`` is the least valuation present and ``cond`` the least ``c`` with
``t^c K[[t]]`` inside the lattice; both are normalized on construction, which
makes ``(lo, cond, rows)`` a canonical key.

A lattice without conductor (``cond is None``) is the finite k-span of exact
Laurent polynomials supported in ``[lo, hi)``.

Everything is exact: product and colon windows come from the conductor
sandwich, e.g. ``t^(cX - vY) K[[t]] <= X:Y <= t^(vX - vY) K[[t]]``.
"""

from __future__ import annotations

import math
from typing import Any, Callable, Iterable, Sequence

from . import linalg
from .scalars import Field
from .series import PrecisionError, Series

__all__ = [
    "Lattice",
    "LatticeError",
    "GUARD",
    "lattice_from_generators",
    "member",
    "lat_sum",
    "lat_product",
    "lat_colon",
    "lat_intersection",
    "colength",
    "lat_equal",
    "refine_precision",
    "power_series_ring",
    "tail",
    "ring_closure",
    "span",
    "scale",
    "is_subset",
]

GUARD = 4
MAX_WINDOW = 512


class LatticeError(ValueError):
    """Uncertified conductor, ambient mismatch or failed closure."""


class Lattice:
    __slots__ = ("field", "lo", "cond", "hi", "rows", "pivots", "_polys", "_key", "_source")

    def __init__(
        self,
        field: Field,
        lo: int | None,
        cond: int | None,
        hi: int | None,
        rows: tuple,
        pivots: tuple,
        source: Callable[[int], "Lattice"] | None = None,
    ):
        # Use the factory helpers; this constructor trusts its arguments.
        self.field = field
        self.lo = lo
        self.cond = cond
        self.hi = hi
        self.rows = rows
        self.pivots = pivots
        self._polys = None
        self._key = None
        self._source = source

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, field: Field) -> "Lattice":
        return cls(field, None, None, None, (), ())

    @classmethod
    def from_vectors(
        cls,
        field: Field,
        lo: int,
        hi: int,
        vectors: Iterable[Sequence],
        has_tail: bool,
        window: int | None = None,
        source: Callable[[int], "Lattice"] | None = None,
    ) -> "Lattice":
        """Normalize a spanning set given in coordinates on ``[lo, hi)``.

        With ``has_tail`` the lattice also contains ``t^hi K[[t]]``.
        """
        k = field.base
        d = field.degree
        rows, pivots = linalg.rref(k, vectors)
        if has_tail:
            # Lower the conductor while whole degree blocks lie in the span.
            c = hi
            pivset = set(pivots)
            while c > lo:
                block = range((c - 1 - lo) * d, (c - lo) * d)
                if not all(col in pivset for col in block):
                    break
                if not all(_is_unit_row(rows[pivots.index(col)], col) for col in block):
                    break
                c -= 1
            keep = [(r, p) for r, p in zip(rows, pivots) if p < (c - lo) * d]
            if keep:
                new_lo = lo + keep[0][1] // d
            else:
                new_lo = c
            a, b = (new_lo - lo) * d, (c - lo) * d
            trimmed = tuple(tuple(r[a:b]) for r, _ in keep)
            tpiv = tuple(p - a for _, p in keep)
            win = max(c + GUARD, window or 0)
            return cls(field, new_lo, c, win, trimmed, tpiv, source)
        if not rows:
            return cls.zero(field)
        new_lo = lo + pivots[0] // d
        last = max(max(j for j, x in enumerate(r) if x) for r in rows)
        new_hi = lo + last // d + 1
        a, b = (new_lo - lo) * d, (new_hi - lo) * d
        trimmed = tuple(tuple(r[a:b]) for r in rows)
        return cls(field, new_lo, None, new_hi, trimmed, tuple(p - a for p in pivots), source)

    @classmethod
    def from_polys(cls, field: Field, polys: Sequence[Series], source=None) -> "Lattice":
        """Finite k-span of exact Laurent polynomials."""
        polys = [f for f in polys if f.coeffs or not f.is_exact]
        for f in polys:
            if not f.is_exact:
                raise PrecisionError("a finite k-span needs exact polynomials")
            if f.field != field:
                raise LatticeError("ambient mismatch")
        if not polys:
            return cls.zero(field)
        lo = min(min(f.coeffs) for f in polys)
        hi = max(max(f.coeffs) for f in polys) + 1
        vecs = [_series_vector(field, f, lo, hi) for f in polys]
        return cls.from_vectors(field, lo, hi, vecs, False, source=source)

    # -- basic properties ------------------------------------------------------

    @property
    def d(self) -> int:
        return self.field.degree

    @property
    def base(self) -> Field:
        return self.field.base

    @property
    def is_zero(self) -> bool:
        return self.lo is None

    @property
    def has_conductor(self) -> bool:
        return self.cond is not None

    @property
    def vmin(self) -> float:
        return math.inf if self.lo is None else self.lo

    @property
    def top(self) -> int:
        """Upper end of the stored coordinate window."""
        return self.cond if self.cond is not None else self.hi

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.field.descriptor, self.lo, self.cond, None if self.cond is not None else self.hi, self.rows)
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.field == other.field and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def sort_key(self) -> tuple:
        """Deterministic ordering: by valuation, conductor, then coordinates."""
        lo = -math.inf if self.lo is None else self.lo
        cond = math.inf if self.cond is None else self.cond
        return (lo, cond, len(self.rows), tuple(tuple(str(x) for x in r) for r in self.rows))

    def __repr__(self) -> str:
        return f"Lattice({self.describe()})"

    @property
    def rank(self) -> int:
        """Dimension of ``span(rows)``, i.e. of the lattice modulo its tail."""
        return len(self.rows)

    def polys(self) -> list[tuple[int, list]]:
        """Basis rows as ``(start_degree, K-coefficients)`` pairs."""
        if self._polys is None:
            f, d, lo = self.field, self.d, self.lo
            out = []
            for r, piv in zip(self.rows, self.pivots):
                start = piv // d
                coeffs = [f.from_coords(r[j * d:(j + 1) * d]) for j in range(start, len(r) // d)]
                while coeffs and f.is_zero(coeffs[-1]):
                    coeffs.pop()
                out.append((lo + start, coeffs))
            self._polys = out
        return self._polys

    def basis(self) -> list[Series]:
        """Basis rows as exact series; every one is a genuine element of the lattice."""
        return [Series(self.field, {s + i: c for i, c in enumerate(cs)}) for s, cs in self.polys()]

    def min_element(self) -> Series:
        """An element of least valuation."""
        if self.is_zero:
            raise LatticeError("the zero lattice has no elements of finite valuation")
        if self.rows:
            return self.basis()[0]
        return Series.monomial(self.field, self.lo)

    def describe(self) -> str:
        if self.is_zero:
            return "0"
        parts = [str(s) for s in self.basis()]
        if self.cond is not None:
            parts.append({0: "K[[t]]", 1: "tK[[t]]"}.get(self.cond, f"t^{self.cond}K[[t]]"))
        return ", ".join(parts)

    def is_monomial(self) -> bool:
        return self.d == 1 and all(sum(1 for x in r if x) == 1 for r in self.rows)

    def values(self) -> set[int]:
        """Valuations attained below the conductor (pivot degrees)."""
        return {self.lo + p // self.d for p in self.pivots}

    def leading_dims(self) -> dict[int, int]:
        """For each degree below the conductor, the k-dimension of its leading-term space."""
        out: dict[int, int] = {}
        for p in self.pivots:
            deg = self.lo + p // self.d
            out[deg] = out.get(deg, 0) + 1
        return out

    # -- operators ----------------------------------------------------------

    def __add__(self, other: "Lattice") -> "Lattice":
        return lat_sum(self, other)

    def __mul__(self, other: "Lattice | Series") -> "Lattice":
        if isinstance(other, Series):
            return scale(self, other)
        return lat_product(self, other)

    __rmul__ = __mul__

    def __contains__(self, f: Series) -> bool:
        return member(f, self)

    def __le__(self, other: "Lattice") -> bool:
        return is_subset(self, other)

    def __ge__(self, other: "Lattice") -> bool:
        return is_subset(other, self)

    def __lt__(self, other: "Lattice") -> bool:
        return is_subset(self, other) and self != other

    def colon(self, other: "Lattice") -> "Lattice":
        return lat_colon(self, other)

    def shift(self, n: int) -> "Lattice":
        """Multiply by ``t^n``."""
        if self.is_zero or n == 0:
            return self
        return Lattice(
            self.field,
            self.lo + n,
            None if self.cond is None else self.cond + n,
            self.hi + n,
            self.rows,
            self.pivots,
            None if self._source is None else (lambda h, src=self._source: src(h - n).shift(n)),
        )

    # -- serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        f = self.field
        rows = []
        for s, cs in self.polys():
            rows.append({str(s + i): [str(x) for x in f.coords(c)] for i, c in enumerate(cs) if not f.is_zero(c)})
        return {
            "field": f.descriptor,
            "modulus": list(f.modulus) if f.modulus else None,
            "window": [self.lo, self.top if self.cond is None else self.hi],
            "vmin": self.lo,
            "cond": self.cond,
            "rows": rows,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Lattice":
        from .scalars import make_field

        f = make_field(data["field"], data.get("modulus"))
        k = f.base
        if data.get("vmin") is None:
            return cls.zero(f)
        polys = []
        for row in data["rows"]:
            coeffs = {}
            for deg, cs in row.items():
                coeffs[int(deg)] = f.from_coords([k.parse_element(x) for x in cs])
            polys.append(Series(f, coeffs))
        cond = data.get("cond")
        if cond is None:
            return cls.from_polys(f, polys)
        lo = data["vmin"]
        vecs = [_series_vector(f, p, lo, cond) for p in polys]
        window = data.get("window", [lo, cond + GUARD])[1]
        return cls.from_vectors(f, lo, cond, vecs, True, window=window)


# -- helpers -----------------------------------------------------------------


def _is_unit_row(row: Sequence, col: int) -> bool:
    return all((not x) if j != col else True for j, x in enumerate(row))


def _series_vector(field: Field, f: Series, lo: int, hi: int) -> list:
    d = field.degree
    vec = [field.base.zero] * ((hi - lo) * d)
    for deg, c in f.coeffs.items():
        if lo <= deg < hi:
            vec[(deg - lo) * d:(deg - lo + 1) * d] = field.coords(c)
        elif deg < lo:
            raise LatticeError(f"term t^{deg} below the window start {lo}")
    return vec


def _poly_vector(field: Field, start: int, coeffs: Sequence, lo: int, hi: int) -> list:
    d = field.degree
    vec = [field.base.zero] * ((hi - lo) * d)
    if d == 1:
        for i, c in enumerate(coeffs):
            deg = start + i
            if deg >= hi:
                break
            if deg >= lo:
                vec[deg - lo] = c
        return vec
    for i, c in enumerate(coeffs):
        deg = start + i
        if deg >= hi:
            break
        if deg >= lo:
            vec[(deg - lo) * d:(deg - lo + 1) * d] = c
    return vec


def _vectors(L: Lattice, lo: int, hi: int) -> list[list]:
    """Spanning vectors of ``(L + t^hi K[[t]]) / t^hi K[[t]]`` on ``[lo, hi)``."""
    if L.is_zero:
        return []
    if L.lo < lo:
        raise LatticeError("window starts above the lattice valuation")
    d, k = L.d, L.base
    width = (hi - lo) * d
    out = []
    off = (L.lo - lo) * d
    for r in L.rows:
        v = [k.zero] * width
        n = min(len(r), width - off)
        if n > 0:
            v[off:off + n] = r[:n]
        out.append(v)
    if L.cond is not None:
        for deg in range(max(L.cond, lo), hi):
            for s in range(d):
                v = [k.zero] * width
                v[(deg - lo) * d + s] = k.one
                out.append(v)
    return out


def _mul_polys(field: Field, a: Sequence, b: Sequence, limit: int) -> list:
    """Product of coefficient lists, truncated to ``limit`` terms."""
    n = min(len(a) + len(b) - 1, limit)
    if n <= 0:
        return []
    if field.kind == "prime":
        p = field.p
        out = [0] * n
        for i, x in enumerate(a):
            if x and i < n:
                for j in range(min(len(b), n - i)):
                    y = b[j]
                    if y:
                        out[i + j] += x * y
        return [c % p for c in out]
    if field.kind == "Q":
        out = [0] * n
        for i, x in enumerate(a):
            if x and i < n:
                for j in range(min(len(b), n - i)):
                    y = b[j]
                    if y:
                        out[i + j] += x * y
        return out
    zero = field.zero
    out = [zero] * n
    for i, x in enumerate(a):
        if x != zero and i < n:
            for j in range(min(len(b), n - i)):
                y = b[j]
                if y != zero:
                    out[i + j] = field.add(out[i + j], field.mul(x, y))
    return out


def _check_ambient(*ls: Lattice) -> Field:
    f = ls[0].field
    for L in ls[1:]:
        if L.field != f:
            raise LatticeError(f"ambient mismatch: {f.descriptor} vs {L.field.descriptor}")
    return f


def _derived(fn: Callable[..., Lattice], *inputs: Lattice) -> Callable[[int], Lattice] | None:
    if any(L._source is None for L in inputs):
        return None

    def rebuild(h: int) -> Lattice:
        return fn(*(refine_precision(L, h) for L in inputs))

    return rebuild


# -- public operations ------------------------------------------------------


def ring_closure(U: Lattice) -> Lattice:
    """Smallest lattice containing ``U`` and closed under multiplication (``U`` must contain 1)."""
    while True:
        W = lat_sum(U, lat_product(U, U))
        if W == U:
            return U
        U = W


def tail(field: Field, c: int) -> Lattice:
    """The lattice ``t^c K[[t]]``."""
    return Lattice(field, c, c, c + GUARD, (), (), lambda h: tail(field, c))


def power_series_ring(field: Field) -> Lattice:
    """``K[[t]]`` itself."""
    return tail(field, 0)


def span(field: Field, gens: Sequence[Series]) -> Lattice:
    """Finite k-span of exact Laurent polynomials."""
    gens = list(gens)
    return Lattice.from_polys(field, gens, source=lambda h: Lattice.from_polys(field, gens))


def member(f: Series, L: Lattice) -> bool:
    """Whether ``f`` lies in ``L``."""
    if f.field != L.field:
        raise LatticeError("ambient mismatch")
    if L.is_zero:
        if f.is_exact:
            return not f.coeffs
        raise PrecisionError("cannot certify a truncated series is zero")
    if f.coeffs and min(f.coeffs) < L.lo:
        return False
    if L.cond is not None:
        if f.hi < L.cond:
            raise PrecisionError(f"series known below t^{f.prec} but the lattice conductor is {L.cond}")
        top = L.cond
    else:
        if not f.is_exact:
            raise PrecisionError("membership in a finite span needs an exact series")
        if f.coeffs and max(f.coeffs) >= L.hi:
            return False
        top = L.hi
    if not f.coeffs:
        return True
    v = _series_vector(L.field, f.truncate(top), L.lo, top)
    return linalg.in_span(L.base, v, L.rows, L.pivots)


def is_subset(X: Lattice, Y: Lattice) -> bool:
    _check_ambient(X, Y)
    if X.is_zero:
        return True
    if Y.is_zero:
        return False
    if X.cond is not None:
        if Y.cond is None or X.cond < Y.cond:
            return False
    return all(member(f, Y) for f in X.basis())


def lat_equal(X: Lattice, Y: Lattice) -> bool:
    _check_ambient(X, Y)
    return X.key() == Y.key()


def lat_sum(X: Lattice, Y: Lattice) -> Lattice:
    f = _check_ambient(X, Y)
    if X.is_zero:
        return Y
    if Y.is_zero:
        return X
    lo = min(X.lo, Y.lo)
    conds = [L.cond for L in (X, Y) if L.cond is not None]
    if conds:
        hi = min(conds)
        has_tail = True
    else:
        hi = max(X.hi, Y.hi)
        has_tail = False
    hi = max(hi, lo)
    vecs = _vectors(X, lo, hi) + _vectors(Y, lo, hi)
    win = max(X.hi or 0, Y.hi or 0)
    return Lattice.from_vectors(f, lo, hi, vecs, has_tail, window=win, source=_derived(lat_sum, X, Y))


def lat_product(X: Lattice, Y: Lattice) -> Lattice:
    """k-span of all products ``x*y``, with the certified tail."""
    f = _check_ambient(X, Y)
    if X.is_zero or Y.is_zero:
        return Lattice.zero(f)
    lo = X.lo + Y.lo
    tails = []
    if X.cond is not None:
        tails.append(X.cond + Y.lo)
    if Y.cond is not None:
        tails.append(Y.cond + X.lo)
    if tails:
        hi, has_tail = min(tails), True
    else:
        hi, has_tail = X.hi + Y.hi - 1, False
    vecs = []
    for sx, cx in X.polys():
        for sy, cy in Y.polys():
            s = sx + sy
            if s >= hi:
                continue
            prod = _mul_polys(f, cx, cy, hi - s)
            vecs.append(_poly_vector(f, s, prod, lo, hi))
    win = max(X.hi or 0, Y.hi or 0)
    return Lattice.from_vectors(f, lo, hi, vecs, has_tail, window=win, source=_derived(lat_product, X, Y))


def scale(L: Lattice, g: Series) -> Lattice:
    """``g * L`` for a nonzero series ``g`` (truncated series allowed when precise enough)."""
    f = _check_ambient(L, L)
    if g.field != f:
        raise LatticeError("ambient mismatch")
    if L.is_zero:
        return L
    w = g.valuation
    if w == math.inf:
        return Lattice.zero(f)
    w = int(w)
    if L.cond is None:
        if not g.is_exact:
            raise PrecisionError("scaling a finite span needs an exact multiplier")
        return lat_product(L, span(f, [g]))
    hi = L.cond + w
    need = L.cond - L.lo + w
    if g.hi < need:
        raise PrecisionError(f"multiplier known below t^{g.prec}, need t^{need}")
    gc = [g.coeffs.get(w + i, f.zero) for i in range(hi - L.lo - w)]
    vecs = []
    for s, cs in L.polys():
        prod = _mul_polys(f, cs, gc, hi - s - w)
        vecs.append(_poly_vector(f, s + w, prod, L.lo + w, hi))
    return Lattice.from_vectors(f, L.lo + w, hi, vecs, True, window=L.hi + w)


def lat_colon(X: Lattice, Y: Lattice) -> Lattice:
    """``X : Y = {f : f*Y <= X}``.

    Solved as a kernel over k: the unknown ``f`` lives in
    ``t^(vX - vY) K[[t]] / t^(cX - vY) K[[t]]`` and must send every basis
    element of ``Y`` (and every ``w t^j`` of its tail that can still matter)
    into ``X``.
    """
    f = _check_ambient(X, Y)
    if X.cond is None:
        raise LatticeError("colon needs a certified conductor on the numerator")
    if Y.is_zero:
        raise LatticeError("colon by the zero lattice is not defined here")
    k, d = f.base, f.degree
    lo_f = X.lo - Y.lo
    hi_f = X.cond - Y.lo
    src = _derived(lat_colon, X, Y)
    if hi_f <= lo_f:
        return Lattice.from_vectors(f, hi_f, hi_f, [], True, window=X.hi, source=src)
    tests: list[tuple[int, list]] = list(Y.polys())
    if Y.cond is not None:
        for j in range(Y.cond, X.cond - lo_f):
            for w in f.basis:
                tests.append((j, [w]))
    xlo, xc = X.lo, X.cond
    # Pre-multiply each test element by each basis element of K over k.
    scaled = []
    for s, cs in tests:
        for w in f.basis:
            scaled.append((s, [f.mul(w, c) for c in cs] if d > 1 else cs))
    images = []
    for j in range(lo_f, hi_f):
        for wi in range(d):
            img: list = []
            for ti in range(len(tests)):
                s, cs = scaled[ti * d + wi]
                start = s + j
                v = _poly_vector(f, start, cs, xlo, xc) if start < xc else [k.zero] * ((xc - xlo) * d)
                img.extend(linalg.reduce(k, v, X.rows, X.pivots))
            images.append(img)
    kern = linalg.kernel(k, images) if images and images[0] else [
        [k.one if i == j else k.zero for i in range(len(images))] for j in range(len(images))
    ]
    return Lattice.from_vectors(f, lo_f, hi_f, kern, True, window=X.hi, source=src)


def lat_intersection(X: Lattice, Y: Lattice) -> Lattice:
    f = _check_ambient(X, Y)
    if X.is_zero or Y.is_zero:
        return Lattice.zero(f)
    lo = min(X.lo, Y.lo)
    hi = max(X.top, Y.top)
    has_tail = X.cond is not None and Y.cond is not None
    inter = linalg.intersect(f.base, _vectors(X, lo, hi), _vectors(Y, lo, hi))
    return Lattice.from_vectors(f, lo, hi, inter, has_tail, window=max(X.hi, Y.hi), source=_derived(lat_intersection, X, Y))


def colength(X: Lattice, Y: Lattice) -> int:
    """``dim_k(X / Y)`` for ``Y <= X``."""
    _check_ambient(X, Y)
    if not is_subset(Y, X):
        raise LatticeError("colength needs Y inside X")
    if Y.is_zero:
        if X.cond is not None:
            raise LatticeError("infinite colength")
        return X.rank
    if X.cond is None:
        return X.rank - Y.rank
    if Y.cond is None:
        raise LatticeError("infinite colength")
    lo = min(X.lo, Y.lo)
    hi = max(X.cond, Y.cond)
    return len(linalg.rref(X.base, _vectors(X, lo, hi))[0]) - len(linalg.rref(X.base, _vectors(Y, lo, hi))[0])


def refine_precision(L: Lattice, new_hi: int) -> Lattice:
    """Recompute ``L`` from its retained generators on a wider window.

    The canonical data must not change; a change is an exactness failure.
    """
    if L.is_zero:
        return L
    if L._source is None:
        raise LatticeError("lattice was built opaquely; its generators are lost")
    out = L._source(new_hi)
    if out.key() != L.key():
        raise LatticeError(f"refining to window {new_hi} changed the lattice: {L.describe()} -> {out.describe()}")
    if out.cond is not None:
        out.hi = max(out.hi, new_hi)
    return out


def _closure_once(field: Field, gens: Sequence[Series], H: int) -> tuple[list, tuple]:
    """Span of the k-algebra generated by ``gens`` modulo ``t^H`` (RREF on ``[0, H)``)."""
    k = field.base
    vecs = [_series_vector(field, Series.one(field), 0, H)]
    for g in gens:
        if g.coeffs and min(g.coeffs) < 0:
            raise LatticeError("ring generators must lie in K[[t]]")
        if g.hi < H:
            raise PrecisionError(f"generator {g} known only below t^{g.prec}; window needs t^{H}")
        vecs.append(_series_vector(field, g.truncate(H), 0, H))
    rows, piv = linalg.rref(k, vecs)
    while True:
        L = Lattice(field, 0, None, H, rows, piv)
        polys = L.polys()
        prods = list(rows)
        for i, (s1, c1) in enumerate(polys):
            for s2, c2 in polys[i:]:
                s = s1 + s2
                if s < H:
                    prods.append(_poly_vector(field, s, _mul_polys(field, c1, c2, H - s), 0, H))
        new_rows, new_piv = linalg.rref(k, prods)
        if len(new_rows) == len(rows):
            return list(new_rows), new_piv
        rows, piv = new_rows, new_piv


def lattice_from_generators(
    field: Field,
    gens: Sequence[Series],
    closure: str = "span",
    over: Lattice | None = None,
    window: int | None = None,
    guard: int = GUARD,
) -> Lattice:
    """Lattice generated by ``gens``.

    ``closure`` is ``"span"`` (finite k-span), ``"ring"`` (complete k-algebra
    generated inside ``K[[t]]``) or ``"module"`` (module over the ring lattice
    ``over``).  For ``"ring"`` the conductor is certified from the leading-term
    spaces: if every degree in ``[c, H)`` carries all of ``K`` as leading
    coefficients and ``H - c`` is at least the least positive valuation, then
    ``t^c K[[t]]`` lies in the ring.  The window is doubled until this holds.
    """
    gens = list(gens)
    if closure == "span":
        return span(field, gens)
    if closure == "module":
        if over is None:
            raise LatticeError("module closure needs the ring it is taken over")
        return lat_product(over, span(field, gens))
    if closure != "ring":
        raise LatticeError(f"unknown closure {closure!r}")
    adjusted = []
    for g in gens:
        if g.coeffs and min(g.coeffs) == 0:
            c0 = g.coeffs[0]
            if not field.in_base(c0):
                raise LatticeError(f"generator {g} has a constant term outside the base field")
            g = g - Series(field, {0: c0})
        if g.coeffs:
            adjusted.append(g)
    H = window or max([g.degree + 1 for g in adjusted] + [1]) * 2 + guard
    d = field.degree
    while True:
        rows, piv = _closure_once(field, adjusted, H)
        lead = {}
        for p in piv:
            lead[p // d] = lead.get(p // d, 0) + 1
        c = H
        while c > 0 and lead.get(c - 1, 0) == d:
            c -= 1
        positive = [deg for deg in lead if deg > 0]
        e = min(positive) if positive else None
        if e is not None and c < H and H - c >= max(guard, e):
            break
        if H >= MAX_WINDOW:
            raise LatticeError(
                f"closure did not certify a conductor below t^{H} (offending degree {c - 1}); "
                "the generated ring may have infinite codimension"
            )
        H *= 2
    L = Lattice.from_vectors(field, 0, H, rows, True, window=H, source=None)
    if L.cond != c and not (L.cond is not None and L.cond <= c):
        raise LatticeError("conductor certificate inconsistent")  # pragma: no cover

    def rebuild(h: int) -> Lattice:
        return lattice_from_generators(field, gens, "ring", window=max(h, H), guard=guard)

    L._source = rebuild
    return L
