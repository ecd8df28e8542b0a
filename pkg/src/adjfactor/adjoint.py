"""Adjoint polynomials of bounded degree and the space ``A`` of their restrictions to ``x = 0``.

A polynomial ``H`` of degree ``<= m`` is adjoint when, for every branch
``gamma`` of the projective curve (``H`` homogenised to degree ``m`` in the
chart at infinity), ``ord_T H(gamma(T)) >= c_gamma`` where
``c_gamma = ord_T F_y(gamma(T)) - (e - 1)`` is the conductor exponent.  At an
ordinary ``r``-fold point this is just vanishing to order ``r - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import dense as D
from . import linalg
from .bipoly import BiPoly
from .branches import _smul, branches_at, singular_points
from .errors import AlgebraError, ParseError
from .fields import Field
from .parse import format_unipoly, parse_unipoly
from .poly import UniPoly


def monomials(m: int) -> list:
    """Exponents ``(a, b)`` of ``x^a y^b`` with ``a + b <= m`` in decreasing (b, a) order."""
    mons = [(a, b) for b in range(m + 1) for a in range(m + 1 - b)]
    return sorted(mons, key=lambda ab: (ab[1], ab[0]), reverse=True)


@dataclass
class AdjointBasis:
    field: Field
    degree: int
    monomials: list
    rows: list

    @property
    def dim(self) -> int:
        return len(self.rows)

    def polys(self) -> list:
        K = self.field
        return [BiPoly.from_terms(K, {ab: c for ab, c in zip(self.monomials, r) if c != K.zero})
                for r in self.rows]

    def dump(self) -> str:
        return "\n".join(str(p) for p in self.polys())


@dataclass
class ASpace:
    """Row-reduced basis of ``A``, a subspace of polynomials in ``y`` of degree ``<= d - 2``."""

    field: Field
    d: int
    rows: list  # coefficient vectors, highest power of y first

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def sbar(self) -> int:
        return self.d - self.dim

    def polys(self) -> list:
        K = self.field
        return [UniPoly(K, tuple(reversed(r))) for r in self.rows]

    @classmethod
    def from_polys(cls, K, d, polys) -> "ASpace":
        n = d - 1
        vecs = []
        for p in polys:
            if p.degree > d - 2:
                raise AlgebraError(f"{p} has degree > d-2 = {d - 2}")
            c = list(p.coeffs) + [K.zero] * (n - len(p.coeffs))
            vecs.append(list(reversed(c)))
        return cls(K, d, linalg.row_space(K, vecs, n))

    def __eq__(self, other):
        return (isinstance(other, ASpace) and self.field == other.field
                and self.d == other.d and self.rows == other.rows)

    def dumps(self) -> str:
        return "".join(format_unipoly(p) + "\n" for p in self.polys())


def read_aspace(text: str, K: Field, d: int) -> ASpace:
    """Parse the one-polynomial-per-line format (``#`` comments, blank lines ignored)."""
    polys = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.split("#", 1)[0].strip()
        if not s:
            continue
        try:
            polys.append(parse_unipoly(s, K, "y"))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return ASpace.from_polys(K, d, polys)


# ----------------------------------------------------------------------
# local data

@dataclass
class LocalData:
    """Singular points of ``F`` with their branches (``None`` at ordinary points)."""

    F: BiPoly
    points: list
    branches: list

    @classmethod
    def compute(cls, F: BiPoly, seed=0, trunc=None) -> "LocalData":
        pts = singular_points(F, seed)
        brs = [None if p.ordinary else branches_at(F, p, trunc, seed) for p in pts]
        return cls(F, pts, brs)

    @property
    def delta(self) -> int:
        """Total delta invariant over k-bar (half the conductor degree)."""
        tot = 0
        for p, brs in zip(self.points, self.branches):
            if brs is None:
                r = p.multiplicity
                tot += p.degree * r * (r - 1) // 2
            else:
                tot += sum(b.conductor * b.field.abs_degree for b in brs) // 2
        return tot


def _chart_exponents(ab, m, at_infinity):
    a, b = ab
    return (m - a - b, b) if at_infinity else (a, b)


def _flatten_rows(K, values_per_mon, nmon):
    """Turn one K-linear condition (a value per unknown) into abs_degree k-rows."""
    n = K.abs_degree
    rows = [[None] * nmon for _ in range(n)]
    for j, v in enumerate(values_per_mon):
        coords = K.flatten(v)
        for i in range(n):
            rows[i][j] = coords[i]
    return rows


def _ordinary_conditions(p, mons, m):
    K = p.field
    r = p.multiplicity
    out = []
    for order in range(r - 1):
        for alpha in range(order + 1):
            beta = order - alpha
            vals = []
            for ab in mons:
                eu, ev = _chart_exponents(ab, m, p.at_infinity)
                if eu < alpha or ev < beta:
                    vals.append(K.zero)
                    continue
                c = K.from_int(comb(eu, alpha) * comb(ev, beta))
                vals.append(K.mul(c, K.mul(K.pow(p.x0, eu - alpha), K.pow(p.y0, ev - beta))))
            out.extend(_flatten_rows(K, vals, len(mons)))
    return out


def _branch_conditions(br, mons, m):
    p = br.center
    L = br.field
    c = br.conductor
    if c <= 0:
        return []
    u0 = L.embed(p.x0, p.field)
    v0 = L.embed(p.y0, p.field)
    us = D.dup_strip(L, [u0] + [L.zero] * (br.ram_index - 1) + [br.lam])
    vs = D.dup_add(L, [v0], br.y_series)
    upows, vpows = [[L.one]], [[L.one]]
    for _ in range(m):
        upows.append(_smul(L, upows[-1], us, c))
        vpows.append(_smul(L, vpows[-1], vs, c))
    series = []
    for ab in mons:
        eu, ev = _chart_exponents(ab, m, p.at_infinity)
        s = _smul(L, upows[eu], vpows[ev], c)
        series.append(s + [L.zero] * (c - len(s)))
    out = []
    for k in range(c):
        out.extend(_flatten_rows(L, [s[k] for s in series], len(mons)))
    return out


def adjoint_conditions(local: LocalData, m: int) -> list:
    """Rows over k whose null space is ``Adj(m)`` (unknowns ordered by :func:`monomials`)."""
    mons = monomials(m)
    rows = []
    for p, brs in zip(local.points, local.branches):
        if brs is None:
            rows.extend(_ordinary_conditions(p, mons, m))
        else:
            for br in brs:
                rows.extend(_branch_conditions(br, mons, m))
    return rows


def adjoint_basis(F: BiPoly, m: int, local: LocalData | None = None, seed=0) -> AdjointBasis:
    K = F.field
    if m < 0:
        return AdjointBasis(K, m, [], [])
    local = local or LocalData.compute(F, seed)
    mons = monomials(m)
    rows = adjoint_conditions(local, m)
    basis = linalg.nullspace(K, rows, len(mons))
    return AdjointBasis(K, m, mons, basis)


def restrict_to_A(adj: AdjointBasis, d: int) -> ASpace:
    """Row space of the restrictions ``H(0, y)`` of a basis of ``Adj(d-2)``."""
    K = adj.field
    n = d - 1
    vecs = []
    for r in adj.rows:
        v = [K.zero] * n
        for (a, b), c in zip(adj.monomials, r):
            if a == 0 and c != K.zero:
                v[n - 1 - b] = c
        vecs.append(v)
    return ASpace(K, d, linalg.row_space(K, vecs, n))


def compute_A(F: BiPoly, seed=0, local: LocalData | None = None) -> ASpace:
    d = F.total_degree
    adj = adjoint_basis(F, d - 2, local, seed)
    return restrict_to_A(adj, d)


def verify_adjoint(local: LocalData, H: BiPoly, m: int) -> bool:
    """Re-check a single polynomial against every local condition."""
    K = H.field
    mons = monomials(m)
    vec = [H.coeff(a, b) for (a, b) in mons]
    for row in adjoint_conditions(local, m):
        acc = K.zero
        for x, y in zip(row, vec):
            acc = K.add(acc, K.mul(x, y))
        if acc != K.zero:
            return False
    return True
