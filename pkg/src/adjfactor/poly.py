"""Immutable univariate polynomial values."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import dense as D
from .errors import FieldMismatch, NotInvertible
from .fields import Field


@dataclass(frozen=True, eq=False)
class UniPoly:
    """Dense polynomial in one variable over ``field``.

    ``coeffs`` is lowest degree first with trailing zeros stripped; the zero
    polynomial has degree ``-1``.  ``var`` is only used for printing.
    """

    field: Field
    coeffs: tuple
    var: str = dc_field(default="y")

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(D.dup_strip(self.field, self.coeffs)))

    @classmethod
    def from_list(cls, K, coeffs, var="y"):
        return cls(K, tuple(K(c) if not isinstance(c, tuple) else c for c in coeffs), var)

    @classmethod
    def monomial(cls, K, n, c=None, var="y"):
        c = K.one if c is None else c
        return cls(K, (K.zero,) * n + (c,), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _check(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly(self.field, (self.field(other),), self.var)
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def _new(self, coeffs):
        return UniPoly(self.field, tuple(coeffs), self.var)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        o = self._check(other)
        return self._new(D.dup_add(self.field, list(self.coeffs), list(o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return self._new(D.dup_neg(self.field, self.coeffs))

    def __sub__(self, other):
        o = self._check(other)
        return self._new(D.dup_sub(self.field, list(self.coeffs), list(o.coeffs)))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        return self._new(D.dup_mul(self.field, list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return self._new(D.dup_pow(self.field, list(self.coeffs), n))

    def __divmod__(self, other):
        o = self._check(other)
        q, r = D.dup_divmod(self.field, list(self.coeffs), list(o.coeffs))
        return self._new(q), self._new(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, a):
        return D.dup_eval(self.field, self.coeffs, a)

    def monic(self) -> "UniPoly":
        return self._new(D.dup_monic(self.field, list(self.coeffs)))

    def diff(self) -> "UniPoly":
        return self._new(D.dup_diff(self.field, list(self.coeffs)))

    def __repr__(self):
        return f"UniPoly({D.dup_fmt(self.field, list(self.coeffs), self.var)} over {self.field!r})"

    def __str__(self):
        from .parse import format_unipoly
        return format_unipoly(self)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    return a._new(D.dup_gcd(a.field, list(a.coeffs), list(b.coeffs)))


def inverse_mod(a: UniPoly, m: UniPoly) -> UniPoly:
    """``b`` with ``a*b = 1 mod m`` and ``deg b < deg m``.

    Raises :class:`NotInvertible` carrying the nontrivial gcd as a UniPoly.
    """
    if a.field != m.field:
        raise FieldMismatch(f"{a.field!r} vs {m.field!r}")
    if m.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    try:
        return a._new(D.dup_invmod(a.field, list(a.coeffs), list(m.coeffs)))
    except NotInvertible as exc:
        g = UniPoly(a.field, tuple(exc.gcd), a.var)
        raise NotInvertible(f"not invertible: gcd = {g}", gcd=g) from None
