"""Truncated Laurent series over a finite-degree coefficient field."""

from __future__ import annotations

import math
import re
from typing import Any, Iterable, Mapping

from .scalars import Field

__all__ = ["Series", "PrecisionError", "parse_series", "parse_series_list"]


class PrecisionError(ArithmeticError):
    """A result would depend on coefficients that are not known."""


def _min_prec(a: float, b: float) -> float:
    return a if a < b else b


class Series:
    """A Laurent series ``sum c_i t^i`` known exactly below ``prec``.

    ``prec=None`` marks an exact Laurent polynomial.  Coefficients are raw
    values of ``field`` (see :class:`~traceideal.scalars.Field`); zero
    coefficients are never stored.
    """

    __slots__ = ("field", "coeffs", "prec")

    def __init__(self, field: Field, coeffs: Mapping[int, Any] | None = None, prec: int | None = None):
        self.field = field
        clean = {}
        for d, c in (coeffs or {}).items():
            if prec is not None and d >= prec:
                continue
            c = field.normalize(c)
            if not field.is_zero(c):
                clean[d] = c
        self.coeffs = clean
        self.prec = prec

    # -- constructors ------------------------------------------------------

    @classmethod
    def monomial(cls, field: Field, degree: int, coeff: Any = None) -> "Series":
        return cls(field, {degree: field.one if coeff is None else coeff})

    @classmethod
    def zero(cls, field: Field) -> "Series":
        return cls(field)

    @classmethod
    def one(cls, field: Field) -> "Series":
        return cls(field, {0: field.one})

    # -- basic data --------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.prec is None

    @property
    def hi(self) -> float:
        return math.inf if self.prec is None else self.prec

    @property
    def valuation(self) -> float:
        if self.coeffs:
            return min(self.coeffs)
        if self.prec is None:
            return math.inf
        raise PrecisionError(f"series vanishes to its known precision {self.prec}; valuation unknown")

    @property
    def degree(self) -> int:
        """Largest degree carrying a nonzero coefficient (exact polynomials only)."""
        if not self.coeffs:
            return -1
        return max(self.coeffs)

    def __getitem__(self, d: int) -> Any:
        if self.prec is not None and d >= self.prec:
            raise PrecisionError(f"coefficient of t^{d} unknown (precision {self.prec})")
        return self.coeffs.get(d, self.field.zero)

    def leading_coefficient(self) -> Any:
        return self.coeffs[self.valuation]

    def is_zero(self) -> bool:
        return not self.coeffs and self.prec is None

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Series") -> None:
        if other.field != self.field:
            raise ValueError("series over different fields")

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        f = self.field
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = f.add(out[d], c) if d in out else c
        return Series(f, out, _prec(_min_prec(self.hi, other.hi)))

    def __neg__(self) -> "Series":
        f = self.field
        return Series(f, {d: f.neg(c) for d, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other: "Series | int") -> "Series":
        if isinstance(other, int):
            return self.scale(self.field.from_int(other))
        self._check(other)
        f = self.field
        if self.is_exact and other.is_exact:
            h = math.inf
        else:
            v1 = self.valuation if self.coeffs or self.is_exact else self.prec
            v2 = other.valuation if other.coeffs or other.is_exact else other.prec
            h = _min_prec(v1 + other.hi, v2 + self.hi)
        out: dict[int, Any] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                if d >= h:
                    continue
                p = f.mul(c1, c2)
                out[d] = f.add(out[d], p) if d in out else p
        return Series(f, out, _prec(h))

    __rmul__ = __mul__

    def scale(self, c: Any) -> "Series":
        """Multiply by a raw field constant."""
        f = self.field
        return Series(f, {d: f.mul(c, x) for d, x in self.coeffs.items()}, self.prec)

    def shift(self, n: int) -> "Series":
        """Multiply by ``t^n``."""
        return Series(self.field, {d + n: c for d, c in self.coeffs.items()}, None if self.prec is None else self.prec + n)

    def truncate(self, h: int) -> "Series":
        prec = h if self.prec is None else min(h, self.prec)
        return Series(self.field, self.coeffs, prec)

    def __pow__(self, e: int) -> "Series":
        if e < 0:
            raise ValueError("use inverse() for negative powers")
        result = Series.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self, precision: int | None = None) -> "Series":
        """Reciprocal.

        For an exact monomial the result is exact.  Otherwise the result is
        known up to ``precision`` (absolute degree), which defaults to what the
        input precision supports.
        """
        f = self.field
        v = self.valuation
        if v == math.inf:
            raise ZeroDivisionError("inverse of the zero series")
        lead_inv = f.inv(self.coeffs[v])
        if self.is_exact and len(self.coeffs) == 1:
            return Series(f, {-v: lead_inv})
        rel = math.inf if self.is_exact else self.prec - v
        if precision is not None:
            rel = min(rel, precision + v)
        if rel == math.inf:
            raise PrecisionError("inverse of a non-monomial needs an explicit precision")
        rel = int(rel)
        u = [self.coeffs.get(v + i, f.zero) for i in range(rel)]
        inv = [f.zero] * rel
        if rel:
            inv[0] = lead_inv
        for i in range(1, rel):
            acc = f.zero
            for j in range(1, i + 1):
                if not f.is_zero(u[j]):
                    acc = f.add(acc, f.mul(u[j], inv[i - j]))
            inv[i] = f.neg(f.mul(lead_inv, acc))
        return Series(f, {i - v: c for i, c in enumerate(inv)}, rel - v)

    # -- comparison / display --------------------------------------------------

    def agrees_with(self, other: "Series") -> bool:
        """Equality of coefficients on the common known window."""
        h = _min_prec(self.hi, other.hi)
        keys = set(self.coeffs) | set(other.coeffs)
        z = self.field.zero
        return all(self.coeffs.get(d, z) == other.coeffs.get(d, z) for d in keys if d < h)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.field == other.field and self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.prec, tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        return f"Series({self})"

    def __str__(self) -> str:
        f = self.field
        parts = []
        for d in sorted(self.coeffs):
            c = self.coeffs[d]
            mono = "" if d == 0 else ("t" if d == 1 else f"t{d}" if d > 0 else f"t^{d}")
            if c == f.one and mono:
                s = mono
            elif f.kind == "ext" and sum(1 for x in c if x) > 1:
                s = f"({f.format(c)}){mono}"
            else:
                s = f"{f.format(c)}{mono}"
            parts.append(s)
        body = "+".join(parts).replace("+-", "-") if parts else "0"
        if self.prec is not None:
            body += f"+O(t{self.prec})"
        return body


def _prec(h: float) -> int | None:
    return None if h == math.inf else int(h)


_TERM = re.compile(r"\s*([+-])?\s*(\([^)]*\)|[0-9/]*)\s*\*?\s*(t(?:\^?(-?\d+))?)?\s*")


def parse_series(text: str, field: Field) -> Series:
    """Parse an exact Laurent polynomial such as ``t4-1t5``, ``t2+t3`` or ``(x+1)t^3``.

    A bare integer before ``t`` is a coefficient, so ``2t3`` is ``2*t^3``.
    Symbolic parameters are not accepted.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty series")
    coeffs: dict[int, Any] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse series {text!r} at {s[pos:]!r}")
        sign, coef, tpart, exp = m.groups()
        if not coef and not tpart:
            raise ValueError(f"cannot parse series {text!r} at {s[pos:]!r}")
        if coef.startswith("("):
            c = field.parse_element(coef[1:-1])
        elif coef:
            c = field.parse_element(coef)
        else:
            c = field.one
        if sign == "-":
            c = field.neg(c)
        d = 0 if not tpart else (int(exp) if exp is not None else 1)
        coeffs[d] = field.add(coeffs[d], c) if d in coeffs else c
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ValueError(f"cannot parse series {text!r} at {s[pos:]!r}")
    return Series(field, coeffs)


def parse_series_list(text: str | Iterable[str], field: Field) -> list[Series]:
    if isinstance(text, str):
        items = [x for x in text.split(",") if x.strip()]
    else:
        items = list(text)
    return [parse_series(x, field) for x in items]
