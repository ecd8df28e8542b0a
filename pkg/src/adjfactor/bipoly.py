"""Bivariate polynomials, truncated power-series polynomials, and resultants."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import dense as D
from .errors import FieldMismatch, PrecisionMismatch
from .fields import Field
from .poly import UniPoly


def _strip_rows(K, rows):
    rows = [tuple(D.dup_strip(K, r)) for r in rows]
    while rows and not rows[-1]:
        rows.pop()
    return tuple(rows)


@dataclass(frozen=True, eq=False)
class BiPoly:
    """Dense polynomial in ``(x, y)``.

    ``rows[j]`` holds the coefficients (lowest ``x``-degree first) of ``y^j``,
    so the coefficient of ``x^i y^j`` is ``rows[j][i]``.
    """

    field: Field
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", _strip_rows(self.field, self.rows))

    # construction ------------------------------------------------------
    @classmethod
    def from_terms(cls, K, terms: dict) -> "BiPoly":
        """``terms`` maps ``(i, j)`` (exponents of x and y) to coefficients."""
        if not terms:
            return cls(K, ())
        dy = max(j for (_, j) in terms)
        rows = [[] for _ in range(dy + 1)]
        for (i, j), c in terms.items():
            r = rows[j]
            if len(r) <= i:
                r.extend([K.zero] * (i + 1 - len(r)))
            r[i] = K.add(r[i], c)
        return cls(K, tuple(tuple(r) for r in rows))

    @classmethod
    def from_y_poly(cls, K, coeffs) -> "BiPoly":
        return cls(K, tuple((c,) for c in coeffs))

    @classmethod
    def constant(cls, K, c) -> "BiPoly":
        return cls(K, ((c,),))

    # inspection --------------------------------------------------------
    def terms(self) -> dict:
        z = self.field.zero
        return {(i, j): c for j, r in enumerate(self.rows) for i, c in enumerate(r) if c != z}

    def coeff(self, i, j):
        if j < len(self.rows) and i < len(self.rows[j]):
            return self.rows[j][i]
        return self.field.zero

    def is_zero(self) -> bool:
        return not self.rows

    @property
    def deg_y(self) -> int:
        return len(self.rows) - 1

    @property
    def deg_x(self) -> int:
        return max((len(r) - 1 for r in self.rows), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + j for (i, j) in self.terms()), default=-1)

    def lc_y(self) -> UniPoly:
        """Leading coefficient in ``y`` as a polynomial in ``x``."""
        return UniPoly(self.field, self.rows[-1] if self.rows else (), "x")

    def y_row(self, j) -> list:
        return list(self.rows[j]) if j < len(self.rows) else []

    # arithmetic --------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, BiPoly):
            return BiPoly.constant(self.field, self.field(other))
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        o = self._check(other)
        K = self.field
        n = max(len(self.rows), len(o.rows))
        rows = [D.dup_add(K, list(self.rows[j]) if j < len(self.rows) else [],
                          list(o.rows[j]) if j < len(o.rows) else []) for j in range(n)]
        return BiPoly(K, tuple(tuple(r) for r in rows))

    __radd__ = __add__

    def __neg__(self):
        K = self.field
        return BiPoly(K, tuple(tuple(D.dup_neg(K, r)) for r in self.rows))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        K = self.field
        if not self.rows or not o.rows:
            return BiPoly(K, ())
        out = [[] for _ in range(len(self.rows) + len(o.rows) - 1)]
        for j1, r1 in enumerate(self.rows):
            if not r1:
                continue
            for j2, r2 in enumerate(o.rows):
                if r2:
                    out[j1 + j2] = D.dup_add(K, out[j1 + j2], D.dup_mul(K, list(r1), list(r2)))
        return BiPoly(K, tuple(tuple(r) for r in out))

    __rmul__ = __mul__

    def __pow__(self, n):
        r = BiPoly.constant(self.field, self.field.one)
        b = self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b * b
        return r

    def scale(self, c) -> "BiPoly":
        K = self.field
        return BiPoly(K, tuple(tuple(D.dup_scale(K, list(r), c)) for r in self.rows))

    def diff_y(self) -> "BiPoly":
        K = self.field
        return BiPoly(K, tuple(tuple(D.dup_scale(K, list(self.rows[j]), K.from_int(j)))
                               for j in range(1, len(self.rows))))

    def diff_x(self) -> "BiPoly":
        K = self.field
        return BiPoly(K, tuple(tuple(D.dup_diff(K, list(r))) for r in self.rows))

    def hasse(self, a: int, b: int) -> "BiPoly":
        """Hasse derivative: coefficient of ``X^a Y^b`` in ``F(x+X, y+Y)``."""
        K = self.field
        terms = {}
        for (i, j), c in self.terms().items():
            if i >= a and j >= b:
                m = comb(i, a) * comb(j, b)
                terms[(i - a, j - b)] = K.mul(K.from_int(m), c)
        return BiPoly.from_terms(K, terms)

    def monic_y(self) -> tuple:
        """Return ``(unit, G)`` with ``self = unit * G`` and ``G`` monic in y.

        Requires the y-leading coefficient to be a nonzero constant.
        """
        lc = self.rows[-1]
        if len(lc) != 1:
            raise ValueError("y-leading coefficient is not constant")
        u = lc[0]
        return u, self.scale(self.field.inv(u))

    def map_field(self, L: Field) -> "BiPoly":
        """Coefficients embedded into the extension ``L``."""
        K = self.field
        if L == K:
            return self
        return BiPoly(L, tuple(tuple(L.embed(c, K) for c in r) for r in self.rows))

    # evaluation --------------------------------------------------------
    def at_x0(self) -> UniPoly:
        """``F(0, y)``."""
        K = self.field
        return UniPoly(K, tuple(r[0] if r else K.zero for r in self.rows), "y")

    def at_x(self, a, L: Field | None = None) -> list:
        """Coefficient list of ``F(a, y)`` over ``L`` (``a`` in ``L``)."""
        K = self.field
        L = L or K
        pw = _powers(L, a, self.deg_x)
        return D.dup_strip(L, [_lincomb(L, K, r, pw) for r in self.rows])

    def eval(self, a, b, L: Field | None = None):
        L = L or self.field
        return D.dup_eval(L, self.at_x(a, L), b)

    def homogeneous_part(self, k: int) -> dict:
        return {m: c for m, c in self.terms().items() if m[0] + m[1] == k}

    def taylor_shift(self, a, b, L: Field | None = None) -> "BiPoly":
        """``F(a + X, b + Y)`` over ``L``."""
        K = self.field
        L = L or K
        rows = [D.dup_taylor_shift(L, D.dup_embed(L, K, list(r)), a) for r in self.rows]
        nx = max((len(r) for r in rows), default=0)
        cols = []
        for i in range(nx):
            col = [r[i] if i < len(r) else L.zero for r in rows]
            cols.append(D.dup_taylor_shift(L, D.dup_strip(L, col), b))
        ny = max((len(c) for c in cols), default=0)
        out = [[c[j] if j < len(c) else L.zero for c in cols] for j in range(ny)]
        return BiPoly(L, tuple(tuple(r) for r in out))

    def chart_at_infinity(self, degree: int | None = None) -> "BiPoly":
        """Local equation ``F^h(1, y, z)`` in the chart ``x = 1``.

        The result is returned as a BiPoly whose first variable slot holds
        ``z`` (so ``coeff(i, j)`` is the coefficient of ``z^i y^j``).
        ``degree`` is the homogenisation degree (total degree by default).
        """
        d = self.total_degree if degree is None else degree
        terms = {(d - i - j, j): c for (i, j), c in self.terms().items()}
        return BiPoly.from_terms(self.field, terms)

    def __repr__(self):
        from .parse import format_bipoly
        return f"BiPoly({format_bipoly(self)} over {self.field!r})"

    def __str__(self):
        from .parse import format_bipoly
        return format_bipoly(self)


def _powers(L, a, n):
    pw = [L.one]
    for _ in range(n):
        pw.append(L.mul(pw[-1], a))
    return pw


def _lincomb(L, K, coeffs, powers):
    """``sum coeffs[i] * powers[i]`` with coeffs in subfield ``K`` of ``L``."""
    add = L.add
    r = L.zero
    if L == K:
        mul = L.mul
        for c, w in zip(coeffs, powers):
            if c != K.zero:
                r = add(r, mul(c, w))
        return r
    if getattr(L, "base", None) == K:
        sc = L.scale
        for c, w in zip(coeffs, powers):
            if c != K.zero:
                r = add(r, sc(c, w))
        return r
    mul, emb = L.mul, L.embed
    for c, w in zip(coeffs, powers):
        if c != K.zero:
            r = add(r, mul(emb(c, K), w))
    return r


# ----------------------------------------------------------------------
# Resultants
# ----------------------------------------------------------------------

class PolyRingOps:
    """Ring operations on ``K[x]`` (dense lists) as needed by the PRS."""

    def __init__(self, K):
        self.K = K
        self.zero = []
        self.one = [K.one]

    def add(self, a, b):
        return D.dup_add(self.K, a, b)

    def sub(self, a, b):
        return D.dup_sub(self.K, a, b)

    def neg(self, a):
        return D.dup_neg(self.K, a)

    def mul(self, a, b):
        return D.dup_mul(self.K, a, b)

    def exquo(self, a, b):
        return D.dup_exquo(self.K, a, b)

    def is_zero(self, a):
        return not a

    def pow(self, a, n):
        return D.dup_pow(self.K, a, n)


def _prem(R, f, g):
    """Pseudo-remainder of ``f`` by ``g`` (lists of ring elements)."""
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return list(f)
    lc = g[-1]
    r = list(f)
    for _ in range(df - dg + 1):
        if len(r) - 1 < dg:
            # remaining multiplications by lc
            r = [R.mul(lc, c) for c in r]
            continue
        c = r[-1]
        shift = len(r) - 1 - dg
        r = [R.mul(lc, x) for x in r]
        for j in range(dg + 1):
            r[shift + j] = R.sub(r[shift + j], R.mul(c, g[j]))
        while r and R.is_zero(r[-1]):
            r.pop()
    return r


def subresultant_resultant(R, f, g):
    """Resultant of ``f, g`` (lists over the domain ``R``) by the subresultant PRS.

    The sign is that of the Sylvester determinant with ``f``'s rows first.
    """
    if not f or not g:
        return R.zero
    A, B = list(f), list(g)
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -s
    if len(B) == 1:
        r = R.pow(B[0], len(A) - 1)
        return R.neg(r) if s < 0 else r
    gg, h = R.one, R.one
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        Rm = _prem(R, A, B)
        if not Rm:
            return R.zero
        A = B
        div = R.mul(gg, R.pow(h, delta))
        B = [R.exquo(c, div) for c in Rm]
        gg = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = gg
        else:
            h = R.exquo(R.pow(gg, delta), R.pow(h, delta - 1))
        if len(B) == 1:
            break
    da = len(A) - 1
    if da == 0:
        res = R.one
    elif da == 1:
        res = B[0]
    else:
        res = R.exquo(R.pow(B[0], da), R.pow(h, da - 1))
    return R.neg(res) if s < 0 else res


def dup_resultant(K, f, g):
    """Resultant of two univariate polynomials over a field (Euclidean)."""
    if not f or not g:
        return K.zero
    n, m = len(f) - 1, len(g) - 1
    res = K.one
    while m > 0:
        r = D.dup_rem(K, f, g)
        if not r:
            return K.zero
        k = len(r) - 1
        c = K.pow(g[-1], n - k)
        if (n * m) % 2 == 1:
            c = K.neg(c)
        res = K.mul(res, c)
        f, g = g, r
        n, m = m, k
    return K.mul(res, K.pow(g[0], n))


def dup_interpolate(K, xs, ys):
    """Newton interpolation through the points ``(xs[i], ys[i])``."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = K.div(K.sub(coef[i], coef[i - 1]), K.sub(xs[i], xs[i - j]))
    r = []
    for i in range(n - 1, -1, -1):
        r = D.dup_add(K, D.dup_mul(K, r, [K.neg(xs[i]), K.one]), [coef[i]] if coef[i] != K.zero else [])
    return r


def resultant_y(a: BiPoly, b: BiPoly) -> UniPoly:
    """``Res_y(a, b)`` as a polynomial in ``x`` (Sylvester-determinant sign).

    Over prime fields with enough elements, and when one input has a
    constant y-leading coefficient, evaluation/interpolation is used; otherwise
    the subresultant PRS over ``K[x]``.
    """
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    K = a.field
    if a.is_zero() or b.is_zero():
        return UniPoly(K, (), "x")
    n, m = a.deg_y, b.deg_y
    bound = a.deg_x * m + b.deg_x * n
    lca_const = len(a.rows[-1]) == 1
    lcb_const = len(b.rows[-1]) == 1
    if K.is_prime_field and K.p > bound + 1 and (lca_const or lcb_const):
        xs, ys = [], []
        for t in range(bound + 1):
            fa = a.at_x(t)
            fb = b.at_x(t)
            if lca_const:
                r = dup_resultant(K, fa, fb)
                if fb:
                    r = K.mul(r, K.pow(a.rows[-1][0], m - (len(fb) - 1)))
                else:
                    r = K.zero
            else:
                r = dup_resultant(K, fb, fa)
                if fa:
                    r = K.mul(r, K.pow(b.rows[-1][0], n - (len(fa) - 1)))
                else:
                    r = K.zero
                if (n * m) % 2 == 1:
                    r = K.neg(r)
            xs.append(t)
            ys.append(r)
        return UniPoly(K, tuple(dup_interpolate(K, xs, ys)), "x")
    R = PolyRingOps(K)
    res = subresultant_resultant(R, [list(r) for r in a.rows], [list(r) for r in b.rows])
    return UniPoly(K, tuple(res), "x")


# ----------------------------------------------------------------------
# Truncated series polynomials  K[[x]]/(x^N) [y]
# ----------------------------------------------------------------------

class SeriesPoly:
    """Polynomial in ``y`` with coefficients in ``K[x]/(x^N)``.

    ``coeffs[j]`` is a list of length ``N`` (x-coefficients of ``y^j``).
    """

    __slots__ = ("field", "prec", "coeffs")

    def __init__(self, K, prec, coeffs):
        self.field = K
        self.prec = prec
        z = K.zero
        out = []
        for c in coeffs:
            c = list(c[:prec])
            c.extend([z] * (prec - len(c)))
            out.append(c)
        while out and all(v == z for v in out[-1]):
            out.pop()
        self.coeffs = out

    @classmethod
    def from_bipoly(cls, F: BiPoly, prec: int) -> "SeriesPoly":
        return cls(F.field, prec, [list(r) for r in F.rows])

    @classmethod
    def from_y_poly(cls, K, prec, f) -> "SeriesPoly":
        return cls(K, prec, [[c] for c in f])

    def to_bipoly(self) -> BiPoly:
        return BiPoly(self.field, tuple(tuple(c) for c in self.coeffs))

    @property
    def deg_y(self):
        return len(self.coeffs) - 1

    def _check(self, other):
        if other.prec != self.prec:
            raise PrecisionMismatch(f"precision {self.prec} vs {other.prec}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __eq__(self, other):
        return (isinstance(other, SeriesPoly) and self.prec == other.prec
                and self.field == other.field and self.coeffs == other.coeffs)

    def __add__(self, other):
        self._check(other)
        K = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        zero = [K.zero] * self.prec
        out = []
        for j in range(n):
            a = self.coeffs[j] if j < len(self.coeffs) else zero
            b = other.coeffs[j] if j < len(other.coeffs) else zero
            out.append([K.add(u, v) for u, v in zip(a, b)])
        return SeriesPoly(K, self.prec, out)

    def __neg__(self):
        K = self.field
        return SeriesPoly(K, self.prec, [[K.neg(u) for u in c] for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        K, N = self.field, self.prec
        if not self.coeffs or not other.coeffs:
            return SeriesPoly(K, N, [])
        out = [[K.zero] * N for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        if K.is_prime_field:
            p = K.p
            out = [[0] * N for _ in out]
            for j1, a in enumerate(self.coeffs):
                nza = [(i, u) for i, u in enumerate(a) if u]
                if not nza:
                    continue
                for j2, b in enumerate(other.coeffs):
                    o = out[j1 + j2]
                    for i, u in nza:
                        for k in range(N - i):
                            v = b[k]
                            if v:
                                o[i + k] += u * v
            return SeriesPoly(K, N, [[v % p for v in o] for o in out])
        add, mul, z = K.add, K.mul, K.zero
        for j1, a in enumerate(self.coeffs):
            nza = [(i, u) for i, u in enumerate(a) if u != z]
            if not nza:
                continue
            for j2, b in enumerate(other.coeffs):
                o = out[j1 + j2]
                for i, u in nza:
                    for k in range(N - i):
                        v = b[k]
                        if v != z:
                            o[i + k] = add(o[i + k], mul(u, v))
        return SeriesPoly(K, N, out)

    def with_precision(self, M: int) -> "SeriesPoly":
        """Truncate to (``M <= prec``) or zero-extend to (``M > prec``) ``x^M``."""
        return SeriesPoly(self.field, M, self.coeffs)

    def divmod_monic(self, g: "SeriesPoly"):
        """Division by ``g`` monic in ``y`` (exact coefficientwise in K[[x]])."""
        self._check(g)
        K, N = self.field, self.prec
        dg = g.deg_y
        lcg = g.coeffs[-1]
        if lcg[0] != K.one or any(v != K.zero for v in lcg[1:]):
            raise ValueError("divisor must be monic in y")
        r = [list(c) for c in self.coeffs]
        if len(r) - 1 < dg:
            return SeriesPoly(K, N, []), SeriesPoly(K, N, r)
        q = [[K.zero] * N for _ in range(len(r) - dg)]
        for k in range(len(r) - 1, dg - 1, -1):
            c = r[k]
            if all(v == K.zero for v in c):
                continue
            q[k - dg] = c
            off = k - dg
            for j in range(dg):
                gj = g.coeffs[j]
                prod = _series_mul(K, c, gj, N)
                r[off + j] = [K.sub(u, v) for u, v in zip(r[off + j], prod)]
            r[k] = [K.zero] * N
        return SeriesPoly(K, N, q), SeriesPoly(K, N, r[:dg])

    def rem_monic(self, g):
        return self.divmod_monic(g)[1]

    def __repr__(self):
        return f"SeriesPoly({self.to_bipoly()} mod x^{self.prec})"


def _series_mul(K, a, b, N):
    out = [K.zero] * N
    add, mul, z = K.add, K.mul, K.zero
    for i, u in enumerate(a):
        if u == z:
            continue
        for k in range(N - i):
            v = b[k]
            if v != z:
                out[i + k] = add(out[i + k], mul(u, v))
    return out
