"""Exact coefficient fields: the rationals, prime fields F_p and extensions F_{p^n}.

A :class:`Field` works on *raw* values so that the lattice engine can run
tight loops without wrapper objects:

* ``Q``      -- :class:`fractions.Fraction`
* ``F_p``    -- ``int`` in ``range(p)``
* ``F_{p^n}``-- ``tuple`` of ``n`` ints, the coefficients of a polynomial of
  degree ``< n`` in the power basis ``1, x, ..., x^(n-1)``

:class:`FieldElem` is the user-facing wrapper with operator overloads.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterator, Sequence

__all__ = [
    "Field",
    "FieldElem",
    "FieldError",
    "make_field",
    "is_prime",
    "is_irreducible",
    "least_irreducible",
]

MAX_SEARCH_DEGREE = 8


class FieldError(ValueError):
    """Bad field descriptor, composite characteristic or reducible modulus."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` by ``m`` over F_p (coefficient lists, low degree first)."""
    a = _poly_trim([c % p for c in a])
    m = _poly_trim([c % p for c in m])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _poly_trim(a)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive irreducibility test over F_p by trial division.

    ``modulus`` is the coefficient list ``c0, c1, ..., cn``.
    """
    n = len(modulus) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    for deg in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _poly_mod(modulus, list(low) + [1], p):
                return False
    return True


def least_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree ``n`` over F_p.

    Coefficients are compared from ``x^(n-1)`` down to the constant term, so
    over F_2 the cubic found is ``x^3 + x + 1``.
    """
    if n > MAX_SEARCH_DEGREE:
        raise FieldError(f"refusing irreducible search for degree {n} > {MAX_SEARCH_DEGREE}")
    for code in range(p**n):
        low = [(code // p**i) % p for i in range(n)]
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")  # pragma: no cover


class Field:
    """An exact field, optionally presented as a finite extension of its prime field.

    Use :func:`make_field` or :meth:`Field.parse` rather than the constructor.
    """

    def __init__(self, kind: str, p: int = 0, n: int = 1, modulus: tuple[int, ...] | None = None):
        if kind not in ("Q", "prime", "ext"):
            raise FieldError(f"unknown field kind {kind!r}")
        if kind != "Q" and not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if kind == "ext":
            if n < 2:
                raise FieldError("extension degree must be at least 2")
            if modulus is None:
                modulus = least_irreducible(p, n)
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise FieldError(f"modulus must be monic of degree {n}")
            if not is_irreducible(modulus, p):
                raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.kind = kind
        self.p = p
        self.n = n if kind == "ext" else 1
        self.modulus = modulus

    # -- identity -------------------------------------------------------

    def __repr__(self) -> str:
        return f"Field({self.descriptor!r})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Field)
            and (self.kind, self.p, self.n, self.modulus) == (other.kind, other.p, other.n, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.p, self.n, self.modulus))

    @property
    def descriptor(self) -> str:
        if self.kind == "Q":
            return "Q"
        if self.kind == "prime":
            return f"F{self.p}"
        return f"F{self.p ** self.n}/F{self.p}"

    @classmethod
    def parse(cls, text: str, modulus: Sequence[int] | None = None) -> "Field":
        """Parse ``Q``, ``F2``, ``F8/F2``, ``F9/F3`` (optionally with a modulus)."""
        text = text.strip()
        if text.upper() in ("Q", "QQ"):
            return cls("Q")
        m = re.fullmatch(r"F(\d+)(?:/F(\d+))?", text)
        if not m:
            raise FieldError(f"cannot parse field descriptor {text!r}")
        q = int(m.group(1))
        if m.group(2) is None:
            if not is_prime(q):
                raise FieldError(f"F{q} needs an explicit base: write F{q}/F<p>")
            return cls("prime", q)
        p = int(m.group(2))
        if not is_prime(p):
            raise FieldError(f"base F{p} is not a prime field")
        n, r = 0, q
        while r % p == 0:
            r //= p
            n += 1
        if r != 1 or n < 1:
            raise FieldError(f"{q} is not a power of {p}")
        if n == 1:
            return cls("prime", p)
        return cls("ext", p, n, tuple(modulus) if modulus is not None else None)

    # -- structure ------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind != "Q"

    @property
    def order(self) -> int | None:
        return None if self.kind == "Q" else self.p**self.n

    @property
    def degree(self) -> int:
        """Degree over the base (prime) field."""
        return self.n

    @cached_property
    def base(self) -> "Field":
        return Field("prime", self.p) if self.kind == "ext" else self

    @property
    def no_intermediate_field(self) -> bool:
        """True when no field lies strictly between the base and this field."""
        return self.n == 1 or is_prime(self.n)

    def is_extension_of(self, k: "Field") -> bool:
        return self.base == k

    # -- raw element arithmetic ----------------------------------------

    @cached_property
    def zero(self) -> Any:
        if self.kind == "Q":
            return Fraction(0)
        if self.kind == "prime":
            return 0
        return (0,) * self.n

    @cached_property
    def one(self) -> Any:
        if self.kind == "Q":
            return Fraction(1)
        if self.kind == "prime":
            return 1
        return (1,) + (0,) * (self.n - 1)

    def from_int(self, a: int) -> Any:
        if self.kind == "Q":
            return Fraction(a)
        if self.kind == "prime":
            return a % self.p
        return (a % self.p,) + (0,) * (self.n - 1)

    def normalize(self, a: Any) -> Any:
        """Canonical form of a loosely given raw value."""
        if self.kind == "Q":
            return Fraction(a)
        if self.kind == "prime":
            if isinstance(a, Fraction):
                return a.numerator * pow(a.denominator, -1, self.p) % self.p
            return int(a) % self.p
        if isinstance(a, int):
            return self.from_int(a)
        coeffs = list(a)
        if len(coeffs) > self.n:
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        coeffs = [c % self.p for c in coeffs] + [0] * (self.n - len(coeffs))
        return tuple(coeffs)

    def is_zero(self, a: Any) -> bool:
        return a == self.zero

    def add(self, a: Any, b: Any) -> Any:
        if self.kind == "Q":
            return a + b
        if self.kind == "prime":
            return (a + b) % self.p
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: Any, b: Any) -> Any:
        if self.kind == "Q":
            return a - b
        if self.kind == "prime":
            return (a - b) % self.p
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: Any) -> Any:
        if self.kind == "Q":
            return -a
        if self.kind == "prime":
            return -a % self.p
        return tuple(-x % self.p for x in a)

    def mul(self, a: Any, b: Any) -> Any:
        if self.kind == "Q":
            return a * b
        if self.kind == "prime":
            return a * b % self.p
        return self._ext_mul(a, b)

    def _ext_mul(self, a: tuple, b: tuple) -> tuple:
        p, n, mod = self.p, self.n, self.modulus
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        # x^n = -(c0 + ... + c_{n-1} x^{n-1})
        for deg in range(2 * n - 2, n - 1, -1):
            c = prod[deg] % p
            if c:
                prod[deg] = 0
                for i in range(n):
                    prod[deg - n + i] -= c * mod[i]
        return tuple(c % p for c in prod[:n])

    def inv(self, a: Any) -> Any:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero field element")
        if self.kind == "Q":
            return 1 / a
        if self.kind == "prime":
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.p**self.n - 2)

    def div(self, a: Any, b: Any) -> Any:
        return self.mul(a, self.inv(b))

    def pow(self, a: Any, e: int) -> Any:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def elements(self) -> Iterator[Any]:
        """All elements of a finite field, zero first, in a fixed order."""
        if self.kind == "Q":
            raise FieldError("Q is infinite")
        if self.kind == "prime":
            yield from range(self.p)
            return
        for coeffs in itertools.product(range(self.p), repeat=self.n):
            yield tuple(reversed(coeffs))

    # -- k-linear view ---------------------------------------------------

    def coords(self, a: Any) -> tuple:
        """Coordinates over the base field in the power basis ``1, x, ..., x^(n-1)``."""
        if self.kind == "ext":
            return a
        return (a,)

    def from_coords(self, coords: Sequence[Any]) -> Any:
        if self.kind == "ext":
            return tuple(coords)
        (a,) = coords
        return a

    @cached_property
    def basis(self) -> tuple:
        """The power basis of this field over its base, as raw elements."""
        if self.kind != "ext":
            return (self.one,)
        return tuple(tuple(1 if i == j else 0 for i in range(self.n)) for j in range(self.n))

    def in_base(self, a: Any) -> bool:
        """Whether ``a`` lies in the base field."""
        return self.kind != "ext" or all(c == 0 for c in a[1:])

    def embed_base(self, c: Any) -> Any:
        """Image of a base-field element."""
        if self.kind != "ext":
            return c
        return (c,) + (0,) * (self.n - 1)

    # -- formatting -------------------------------------------------------

    def format(self, a: Any) -> str:
        if self.kind == "Q":
            return str(a)
        if self.kind == "prime":
            return str(a)
        terms = []
        for i, c in enumerate(a):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    def parse_element(self, text: str) -> Any:
        """Parse ``3``, ``-1/2`` or, in an extension, a polynomial in ``x`` like ``x^2+x+1``."""
        text = text.replace(" ", "")
        if self.kind == "Q":
            return Fraction(text)
        if self.kind == "prime":
            if "/" in text:
                return self.normalize(Fraction(text))
            return int(text) % self.p
        coeffs = [0] * self.n
        for sign, term in re.findall(r"([+-]?)([^+-]+)", text):
            s = -1 if sign == "-" else 1
            m = re.fullmatch(r"(\d*)(?:\*?x(?:\^(\d+))?)?", term)
            if not m or term == "":
                raise FieldError(f"cannot parse {text!r} in {self.descriptor}")
            has_x = "x" in term
            c = int(m.group(1)) if m.group(1) else 1
            e = (int(m.group(2)) if m.group(2) else 1) if has_x else 0
            while e >= len(coeffs):
                coeffs.append(0)
            coeffs[e] += s * c
        return self.normalize(coeffs)

    def __call__(self, value: Any) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, str):
            return FieldElem(self, self.parse_element(value))
        return FieldElem(self, self.normalize(value))


def make_field(desc: str | Field, modulus: Sequence[int] | None = None) -> Field:
    """Build a field from a descriptor string (``Q``, ``F5``, ``F8/F2`` ...)."""
    if isinstance(desc, Field):
        return desc
    return Field.parse(desc, modulus)


@dataclass(frozen=True)
class FieldElem:
    """An element of a :class:`Field` in canonical form."""

    field: Field
    value: Any

    def _coerce(self, other: Any) -> Any:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldError("context mismatch between field elements")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.normalize(other)
        return NotImplemented

    def __add__(self, other: Any) -> "FieldElem":
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "FieldElem":
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other: Any) -> "FieldElem":
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.sub(b, self.value))

    def __mul__(self, other: Any) -> "FieldElem":
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "FieldElem":
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other: Any) -> "FieldElem":
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.div(b, self.value))

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int) -> "FieldElem":
        return FieldElem(self.field, self.field.pow(self.value, e))

    def __bool__(self) -> bool:
        return not self.field.is_zero(self.value)

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.value))

    def coords_over_base(self) -> tuple:
        if self.field.kind == "Q":
            raise FieldError("Q carries no base-field coordinates here")
        return self.field.coords(self.value)

    def __str__(self) -> str:
        return self.field.format(self.value)
