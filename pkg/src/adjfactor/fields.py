"""Exact base fields: the rationals, prime fields, and simple extensions.

Field objects carry the arithmetic; elements are plain Python values
(``Fraction`` for QQ, ``int`` in ``[0, p)`` for GF(p), fixed-length tuples of
base elements for extensions).  Every element has a unique canonical form, so
``==`` is mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import AlgebraError, FieldMismatch

__all__ = [
    "Field",
    "RationalField",
    "PrimeField",
    "ExtField",
    "QQ",
    "GF",
    "is_probable_prime",
    "parse_field",
]


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Common surface shared by all fields.

    ``bottom`` is the field of constants the whole tower is built on (QQ or a
    prime field); ``abs_degree`` is the dimension over it.
    """

    characteristic: int
    size: int | None
    abs_degree: int
    is_prime_field = False
    is_rational = False

    @property
    def bottom(self) -> "Field":
        return self

    def is_zero(self, a) -> bool:
        return a == self.zero

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return r

    def from_int(self, n: int):
        raise NotImplementedError

    def flatten(self, a) -> list:
        """Coordinates of ``a`` over ``bottom``."""
        return [a]

    def unflatten(self, coords):
        (a,) = coords
        return a

    def embed(self, a, src: "Field"):
        """Map an element of the subfield ``src`` into this field."""
        if src is self:
            return a
        raise FieldMismatch(f"{src} is not a subfield of {self}")

    def contains_subfield(self, other: "Field") -> bool:
        return other is self


class RationalField(Field):
    characteristic = 0
    size = None
    abs_degree = 1
    is_rational = True
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __call__(self, v):
        if isinstance(v, Fraction):
            return v
        return Fraction(v)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / a

    def div(self, a, b):
        return a / b

    def random(self, rng: random.Random, bound: int = 100):
        return Fraction(rng.randint(-bound, bound))

    def fmt(self, a) -> str:
        return str(a)

    def to_fraction(self, a) -> Fraction:
        return a


class PrimeField(Field):
    is_prime_field = True
    abs_degree = 1

    def __init__(self, p: int):
        if not is_probable_prime(p):
            raise AlgebraError(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p
        self.size = p
        self.zero = 0
        self.one = 1 % p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __call__(self, v):
        if isinstance(v, Fraction):
            return v.numerator * pow(v.denominator, -1, self.p) % self.p
        return v % self.p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.p})")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        return pow(a, n, self.p)

    def random(self, rng: random.Random, bound: int | None = None):
        return rng.randrange(self.p)

    def fmt(self, a) -> str:
        return str(a)

    def to_fraction(self, a) -> Fraction:
        return Fraction(a)


_GEN_NAMES = ("u", "v", "w", "r", "s")


class ExtField(Field):
    """``base[z]/(modulus)`` for a monic irreducible ``modulus`` over ``base``.

    ``modulus`` is a dense coefficient list, lowest degree first.  Elements
    are tuples of ``n = deg modulus`` base elements.  Irreducibility is the
    caller's responsibility (it is certified by :mod:`adjfactor.unifactor`
    wherever extensions are built inside the package).
    """

    def __init__(self, base: Field, modulus, name: str | None = None):
        modulus = [base(c) for c in modulus]
        while modulus and base.is_zero(modulus[-1]):
            modulus.pop()
        n = len(modulus) - 1
        if n < 1:
            raise AlgebraError("extension modulus must have degree >= 1")
        if modulus[-1] != base.one:
            raise AlgebraError("extension modulus must be monic")
        self.base = base
        self.modulus = tuple(modulus)
        self.n = n
        self.characteristic = base.characteristic
        self.abs_degree = base.abs_degree * n
        self.size = None if base.size is None else base.size ** n
        self.level = getattr(base, "level", 0) + 1
        self.name = name or _GEN_NAMES[(self.level - 1) % len(_GEN_NAMES)] + (
            "" if self.level <= len(_GEN_NAMES) else str(self.level))
        bz = base.zero
        self.zero = (bz,) * n
        self.one = (base.one,) + (bz,) * (n - 1)
        self._fast = base.is_prime_field
        self._p = base.p if self._fast else None
        # negated tail of the modulus, used for reduction x^n = -sum m_k x^k
        self._negtail = tuple(base.neg(c) for c in self.modulus[:n])

    # identity --------------------------------------------------------
    def __repr__(self):
        return f"{self.base!r}[{self.name}]/({self._fmt_modulus()})"

    def _fmt_modulus(self) -> str:
        from .dense import dup_fmt
        return dup_fmt(self.base, list(self.modulus), self.name)

    def __eq__(self, other):
        return (isinstance(other, ExtField) and other.base == self.base
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("Ext", self.base, self.modulus))

    @property
    def bottom(self) -> Field:
        return self.base.bottom

    @property
    def gen(self):
        if self.n == 1:
            return (self.base.neg(self.modulus[0]),)
        return (self.base.zero, self.base.one) + (self.base.zero,) * (self.n - 2)

    def contains_subfield(self, other: Field) -> bool:
        return other == self or self.base.contains_subfield(other)

    def embed(self, a, src: Field):
        if src == self:
            return a
        b = self.base.embed(a, src)
        return (b,) + (self.base.zero,) * (self.n - 1)

    def __call__(self, v):
        if isinstance(v, tuple) and len(v) == self.n:
            return tuple(self.base(c) for c in v)
        return self.embed(self.bottom(v), self.bottom)

    def from_int(self, n):
        return (self.base.from_int(n),) + (self.base.zero,) * (self.n - 1)

    def from_coeffs(self, coeffs):
        """Element ``sum coeffs[i] * gen^i`` reduced modulo the modulus."""
        from .dense import dup_rem
        r = dup_rem(self.base, list(coeffs), list(self.modulus))
        return tuple(r) + (self.base.zero,) * (self.n - len(r))

    def to_coeffs(self, a) -> list:
        from .dense import dup_strip
        return dup_strip(self.base, list(a))

    # arithmetic --------------------------------------------------------
    def add(self, a, b):
        if self._fast:
            p = self._p
            return tuple((x + y) % p for x, y in zip(a, b))
        add = self.base.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self._fast:
            p = self._p
            return tuple((x - y) % p for x, y in zip(a, b))
        sub = self.base.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self._fast:
            p = self._p
            return tuple(-x % p for x in a)
        neg = self.base.neg
        return tuple(neg(x) for x in a)

    def scale(self, c, a):
        """Multiply by an element ``c`` of the base field."""
        if self._fast:
            p = self._p
            return tuple(c * x % p for x in a)
        mul = self.base.mul
        return tuple(mul(c, x) for x in a)

    def mul(self, a, b):
        n = self.n
        if self._fast:
            p = self._p
            prod = [0] * (2 * n - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        prod[i + j] += ai * bj
            tail = self._negtail
            for k in range(2 * n - 2, n - 1, -1):
                c = prod[k] % p
                if c:
                    off = k - n
                    for j in range(n):
                        prod[off + j] += c * tail[j]
            return tuple(x % p for x in prod[:n])
        B = self.base
        badd, bmul, bzero = B.add, B.mul, B.zero
        isz = B.is_zero
        prod = [bzero] * (2 * n - 1)
        for i, ai in enumerate(a):
            if isz(ai):
                continue
            for j, bj in enumerate(b):
                if not isz(bj):
                    prod[i + j] = badd(prod[i + j], bmul(ai, bj))
        tail = self._negtail
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if not isz(c):
                off = k - n
                for j in range(n):
                    prod[off + j] = badd(prod[off + j], bmul(c, tail[j]))
        return tuple(prod[:n])

    def inv(self, a):
        from .dense import dup_invmod
        from .errors import NotInvertible
        if a == self.zero:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        try:
            r = dup_invmod(self.base, self.to_coeffs(a), list(self.modulus))
        except NotInvertible as exc:  # modulus was reducible
            raise AlgebraError(f"zero divisor in {self!r}: {exc}") from exc
        return tuple(r) + (self.base.zero,) * (self.n - len(r))

    def random(self, rng: random.Random, bound: int = 100):
        return tuple(self.base.random(rng, bound) for _ in range(self.n))

    # coordinates -----------------------------------------------------
    def flatten(self, a) -> list:
        out = []
        for c in a:
            out.extend(self.base.flatten(c))
        return out

    def unflatten(self, coords):
        k = self.base.abs_degree
        return tuple(self.base.unflatten(coords[i * k:(i + 1) * k])
                     for i in range(self.n))

    def fmt(self, a) -> str:
        from .dense import dup_fmt
        return dup_fmt(self.base, self.to_coeffs(a), self.name)

    def trace(self, a):
        """Trace down to ``base``."""
        from .dense import power_sums
        ps = power_sums(self.base, list(self.modulus), self.n)
        add, mul = self.base.add, self.base.mul
        r = self.base.zero
        for c, s in zip(a, ps):
            r = add(r, mul(c, s))
        return r

    def abs_trace(self, a):
        """Trace down to ``bottom``."""
        t = self.trace(a)
        return self.base.abs_trace(t) if isinstance(self.base, ExtField) else t


def _bottom_abs_trace(self, a):
    return a


RationalField.abs_trace = _bottom_abs_trace
PrimeField.abs_trace = _bottom_abs_trace

QQ = RationalField()

_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


def parse_field(spec: str) -> Field:
    """``"q"`` for the rationals, ``"fp:P"`` for GF(P)."""
    s = spec.strip().lower()
    if s in ("q", "qq"):
        return QQ
    if s.startswith("fp:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise AlgebraError(f"bad field descriptor {spec!r}") from None
        return GF(p)
    raise AlgebraError(f"bad field descriptor {spec!r} (expected 'q' or 'fp:P')")
