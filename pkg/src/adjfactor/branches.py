"""Singular points of the projective curve ``F = 0`` and its local branches.

A point is stored as a closed point over the ground field ``k``: a residue
field ``K`` (a tower over ``k``) together with coordinates in ``K``.  All the
conjugates of a point are handled at once this way.

Branches come from rational Newton-Puiseux expansions: every branch is
``u = u0 + lam*T^e``, ``v = v0 + Y(T)`` with coefficients in an extension of
the point's residue field; ``[K_branch : K]`` conjugate places hide behind one
expansion.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb, gcd

from . import dense as D
from .bipoly import BiPoly, resultant_y
from .errors import (CharacteristicTooSmall, HypothesisError, NonSquarefree,
                     TruncationInsufficient)
from .fields import ExtField, Field
from .poly import UniPoly
from .unifactor import factor_univariate


@dataclass
class SingPoint:
    """A closed point of the curve (possibly smooth, possibly at infinity).

    ``x0, y0`` live in ``field``.  At infinity the point is ``(1 : y0 : 0)``
    and ``x0`` holds the chart coordinate ``z = 0``.
    """

    field: Field
    x0: object
    y0: object
    multiplicity: int
    at_infinity: bool = False
    ordinary: bool = False
    cone: tuple = dc_field(default=(), repr=False)

    @property
    def degree(self) -> int:
        return self.field.abs_degree

    def chart(self, F: BiPoly) -> BiPoly:
        """Local equation whose first slot is ``x`` (affine) or ``z`` (infinity)."""
        return F.chart_at_infinity() if self.at_infinity else F

    def describe(self) -> str:
        K = self.field
        xs, ys = K.fmt(self.x0), K.fmt(self.y0)
        where = f"(1:{ys}:0)" if self.at_infinity else f"({xs},{ys})"
        ext = "" if not isinstance(K, ExtField) else f" over {K!r}"
        return f"{where}{ext} mult={self.multiplicity}"


@dataclass
class PuiseuxBranch:
    """One rational Puiseux expansion at ``center``.

    ``u = u0 + lam*T^e`` and ``v = v0 + y_series(T) mod T^trunc`` in the chart
    of the center.  ``fy_valuation`` is ``ord_T`` of the derivative of the
    chart equation in the second slot along the branch, ``xprime_valuation``
    is ``e - 1``.
    """

    center: SingPoint
    field: Field
    ram_index: int
    lam: object
    y_series: list
    trunc: int
    fy_valuation: int = -1

    @property
    def xprime_valuation(self) -> int:
        return self.ram_index - 1

    @property
    def conductor(self) -> int:
        return self.fy_valuation - self.xprime_valuation

    @property
    def places(self) -> int:
        """Number of conjugate places over the center's residue field."""
        return self.field.abs_degree // self.center.field.abs_degree

    @property
    def multiplicity(self) -> int:
        """Multiplicity of the branch (order of the parametrization)."""
        vy = next((i for i, c in enumerate(self.y_series) if c != self.field.zero), None)
        return self.ram_index if vy is None else min(self.ram_index, vy)

    def x_series(self) -> list:
        K = self.field
        out = [K.zero] * (self.ram_index + 1)
        out[self.ram_index] = self.lam
        return out

    def dump(self) -> str:
        K = self.field
        ext = K._fmt_modulus() if isinstance(K, ExtField) else "-"
        ys = _series_fmt(K, self.y_series, self.trunc)
        return f"{self.center.describe()}; {ext}; {self.ram_index}; {ys}"


def _series_fmt(K, s, N):
    parts = []
    for i, c in enumerate(s):
        if c == K.zero:
            continue
        cs = K.fmt(c)
        if isinstance(K, ExtField) and K.n > 1:
            cs = f"({cs})"
        mon = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
        parts.append(cs if not mon else (mon if cs == "1" else f"{cs}*{mon}"))
    body = "+".join(parts).replace("+-", "-") if parts else "0"
    return f"{body}+O(T^{N})"


# ----------------------------------------------------------------------
# point location

def _sqfree_part(K, f):
    return D.dup_exquo(K, f, D.dup_gcd(K, f, D.dup_diff(K, f))) if len(f) > 1 else f


def _residue_field(K, h, var):
    """``(L, root)`` for a monic irreducible ``h`` over ``K``."""
    if len(h) == 2:
        return K, K.neg(h[0])
    L = ExtField(K, h)
    return L, L.gen


def taylor_form(G: BiPoly, K: Field, u0, v0, order: int) -> dict:
    """Coefficients ``{(a, b): c}`` (``a + b = order``) of ``G`` at ``(u0, v0)``."""
    out = {}
    for a in range(order + 1):
        b = order - a
        h = G.hasse(a, b)
        out[(a, b)] = h.eval(u0, v0, K) if not h.is_zero() else K.zero
    return out


def _multiplicity(G, K, u0, v0):
    d = G.total_degree
    for t in range(d + 1):
        form = taylor_form(G, K, u0, v0, t)
        if any(c != K.zero for c in form.values()):
            return t, form
    raise HypothesisError("point lies on a multiple component")


def _is_ordinary(K, m, form):
    # binary form sum c_{a,b} U^a V^b is squarefree iff it has m distinct roots
    f = D.dup_strip(K, [form[(a, m - a)] for a in range(m + 1)])
    if m - (len(f) - 1) > 1:
        return False
    if len(f) <= 2:
        return True
    g = D.dup_gcd(K, f, D.dup_diff(K, f))
    return len(g) == 1


def make_point(F: BiPoly, K: Field, x0, y0, at_infinity=False) -> SingPoint:
    G = F.chart_at_infinity() if at_infinity else F
    m, form = _multiplicity(G, K, x0, y0)
    ordinary = m >= 2 and _is_ordinary(K, m, form)
    return SingPoint(K, x0, y0, m, at_infinity, ordinary, tuple(sorted(form.items())))


def affine_singular_points(F: BiPoly, seed=0) -> list:
    k = F.field
    Fy, Fx = F.diff_y(), F.diff_x()
    if Fy.is_zero():
        raise NonSquarefree("derivative in y vanishes identically")
    R = resultant_y(F, Fy)
    if R.is_zero():
        raise NonSquarefree("F and its y-derivative share a factor")
    c = D.dup_gcd(k, list(R.coeffs), D.dup_diff(k, list(R.coeffs)))
    if not Fx.is_zero():
        R2 = resultant_y(F, Fx)
        if not R2.is_zero():
            c = D.dup_gcd(k, c, list(R2.coeffs))
    if len(c) <= 1:
        return []
    c = _sqfree_part(k, c)
    pts = []
    for r in factor_univariate(UniPoly(k, tuple(c), "x"), seed=seed).polys():
        K1, a = _residue_field(k, list(r.coeffs), "x")
        fs = [D.dup_strip(K1, G.at_x(a, K1)) for G in (F, Fy, Fx)]
        g = D.dup_gcd(K1, fs[0], fs[1])
        g = D.dup_gcd(K1, g, fs[2]) if fs[2] else g
        if len(g) <= 1:
            continue
        for h in factor_univariate(UniPoly(K1, tuple(g)), seed=seed).polys():
            K2, b = _residue_field(K1, list(h.coeffs), "y")
            pts.append(make_point(F, K2, K2.embed(a, K1), b))
    return pts


def singular_points_at_infinity(F: BiPoly, seed=0) -> list:
    k = F.field
    d = F.total_degree
    top = F.homogeneous_part(d)
    sub = F.homogeneous_part(d - 1)
    Fd = D.dup_strip(k, [top.get((d - j, j), k.zero) for j in range(d + 1)])
    Fd1 = D.dup_strip(k, [sub.get((d - 1 - j, j), k.zero) for j in range(d)])
    g = D.dup_gcd(k, Fd, D.dup_diff(k, Fd))
    g = D.dup_gcd(k, g, Fd1) if Fd1 else g
    if len(g) <= 1:
        return []
    pts = []
    for h in factor_univariate(UniPoly(k, tuple(g)), seed=seed).polys():
        K, b = _residue_field(k, list(h.coeffs), "y")
        pts.append(make_point(F, K, K.zero, b, at_infinity=True))
    return pts


def singular_points(F: BiPoly, seed=0) -> list:
    """All singular points of the projective closure, affine ones first.

    Requires the coefficient of ``y^d`` to be a nonzero constant, so that
    ``(0:1:0)`` is not on the curve.
    """
    pts = affine_singular_points(F, seed) + singular_points_at_infinity(F, seed)
    return [p for p in pts if p.multiplicity >= 2]


def points_over_x0(F: BiPoly, seed=0) -> list:
    """The closed points of the affine curve on the line ``x = 0``.

    Returned as ``(point, multiplicity of the root of F(0,y))`` pairs.
    """
    k = F.field
    out = []
    fac = factor_univariate(F.at_x0(), seed=seed)
    for h, mu in fac.factors:
        K, b = _residue_field(k, list(h.coeffs), "y")
        out.append((make_point(F, K, K.zero, b), mu))
    return out


# ----------------------------------------------------------------------
# truncated series over a field

def _smul(K, a, b, N):
    if not a or not b:
        return []
    n = min(N, len(a) + len(b) - 1)
    out = [K.zero] * n
    add, mul, z = K.add, K.mul, K.zero
    for i, u in enumerate(a[:n]):
        if u == z:
            continue
        for j in range(min(len(b), n - i)):
            v = b[j]
            if v != z:
                out[i + j] = add(out[i + j], mul(u, v))
    return D.dup_strip(K, out)


def _sinv(K, a, N):
    """Inverse of a series with invertible constant term."""
    inv0 = K.inv(a[0])
    out = [inv0]
    for k in range(1, N):
        acc = K.zero
        for j in range(1, min(k, len(a) - 1) + 1):
            acc = K.add(acc, K.mul(a[j], out[k - j]))
        out.append(K.neg(K.mul(acc, inv0)))
    return D.dup_strip(K, out)


def eval_series(G: BiPoly, L: Field, xs, ys, N):
    """``G(xs(T), ys(T)) mod T^N`` with ``G``'s coefficients embedded in ``L``."""
    K = G.field
    xpows = [[L.one]]
    for _ in range(max(G.deg_x, 0)):
        xpows.append(_smul(L, xpows[-1], xs, N))
    acc = []
    for j in range(G.deg_y, -1, -1):
        acc = _smul(L, acc, ys, N)
        row = G.rows[j]
        for i, c in enumerate(row):
            if c != K.zero:
                cc = L.embed(c, K) if L != K else c
                acc = D.dup_add(L, acc, D.dup_scale(L, xpows[i], cc))
    return D.dup_strip(L, acc[:N])


def _valuation(K, s):
    return next((i for i, c in enumerate(s) if c != K.zero), None)


# ----------------------------------------------------------------------
# Newton-Puiseux

def _lower_hull(G: BiPoly, m0: int):
    """Edges of the Newton polygon from ``(0, m0)`` down to ``j = 0``.

    Points are ``(i, j)`` = (exponent of the first slot, of the second).
    """
    pts = {}
    for (i, j) in G.terms():
        if j not in pts or i < pts[j]:
            pts[j] = i
    edges = []
    ci, cj = 0, m0
    while cj > 0:
        best = None
        for j, i in pts.items():
            if j >= cj:
                continue
            # slope (j - cj)/(i - ci) < 0, compare as fractions; prefer farther on ties
            num, den = j - cj, i - ci
            if best is None:
                best = (num, den, i, j)
                continue
            bn, bd, bi, bj = best
            lhs, rhs = num * bd, bn * den
            if lhs < rhs or (lhs == rhs and i > bi):
                best = (num, den, i, j)
        _, _, ni, nj = best
        edges.append((ci, cj, ni, nj))
        ci, cj = ni, nj
    return edges


def _bezout_uv(q, m):
    """Nonnegative ``(u, v)`` with ``v*m - u*q = 1``."""
    if q == 1:
        return m - 1, 1
    v = pow(m, -1, q)
    return (v * m - 1) // q, v


def _substitute(G: BiPoly, L: Field, gamma, beta, q, m, l, N):
    """``G(gamma X^q, X^m (beta + Y)) / X^l`` truncated below ``X^N``."""
    K = G.field
    terms = {}
    truncated = False
    bpows = [L.one]
    for _ in range(G.deg_y):
        bpows.append(L.mul(bpows[-1], beta))
    gpows = [L.one]
    for _ in range(max(G.deg_x, 0)):
        gpows.append(L.mul(gpows[-1], gamma))
    for (i, j), a in G.terms().items():
        ex = q * i + m * j - l
        if ex >= N:
            truncated = True
            continue
        c = L.mul(L.embed(a, K) if L != K else a, gpows[i])
        for t in range(j + 1):
            v = L.mul(c, L.mul(L.from_int(comb(j, t)), bpows[j - t]))
            key = (ex, t)
            terms[key] = L.add(terms.get(key, L.zero), v)
    return BiPoly.from_terms(L, terms), truncated


def _regular_series(G: BiPoly, K: Field, M: int):
    """Power series ``s`` with ``s(0) = 0`` and ``G(X, s(X)) = 0 mod X^M``."""
    if M <= 1:
        return []
    Gy = G.diff_y()
    X = [K.zero, K.one]
    s = []
    prec = 1
    while prec < M:
        prec = min(2 * prec, M)
        val = eval_series(G, K, X, s, prec)
        der = eval_series(Gy, K, X, s, prec)
        corr = _smul(K, val, _sinv(K, der, prec), prec)
        s = D.dup_sub(K, s, corr)
    return s


class _State:
    __slots__ = ("K", "lam", "e", "P", "c", "h")

    def __init__(self, K, lam, e, P, c, h):
        self.K, self.lam, self.e, self.P, self.c, self.h = K, lam, e, P, c, h

    def lift(self, L, gamma, beta, q, m, N):
        K = self.K
        emb = (lambda a: L.embed(a, K)) if L != K else (lambda a: a)
        lam = L.mul(emb(self.lam), L.pow(gamma, self.e))
        c = L.mul(emb(self.c), L.pow(gamma, self.h))
        h = q * self.h + m
        # P(gamma S^q) + c * beta * S^h
        P = [L.zero] * min(N, max(len(self.P) * q, h + 1))
        gp = L.one
        for i, a in enumerate(self.P):
            if i * q < N and a != K.zero:
                P[i * q] = L.add(P[i * q], L.mul(emb(a), gp))
            gp = L.mul(gp, gamma)
        if h < N:
            P[h] = L.add(P[h], L.mul(c, beta))
        return _State(L, lam, self.e * q, D.dup_strip(L, P), c, h)

    def finish(self, tail, N):
        """``P(T) + c T^h tail(T)`` truncated at ``T^N``."""
        K = self.K
        y = list(self.P[:N]) + [K.zero] * max(0, N - len(self.P))
        for i, a in enumerate(tail):
            if self.h + i < N:
                y[self.h + i] = K.add(y[self.h + i], K.mul(self.c, a))
        return D.dup_strip(K, y)


def _expand(G: BiPoly, st: _State, N: int, truncated: bool, out: list, seed):
    K = st.K
    col0 = [G.coeff(0, j) for j in range(G.deg_y + 1)]
    m0 = next((j for j, c in enumerate(col0) if c != K.zero), None)
    if m0 is None:
        raise HypothesisError("the curve contains a component parallel to the fibre")
    if m0 == 0:
        return
    jmin = min(j for (_, j) in G.terms())
    if jmin >= 1:
        if truncated:
            raise TruncationInsufficient("Newton polygon cut by the truncation")
        if jmin > 1:
            raise NonSquarefree("repeated branch")
        out.append((st, []))
        G = BiPoly(K, G.rows[1:])
        m0 -= 1
        if m0 == 0:
            return
    for (ia, ja, ib, jb) in _lower_hull(G, m0):
        # slope -q/m: along the edge Y ~ X^(m/q), i.e. X = T^q, Y ~ T^m
        g = gcd(ib - ia, ja - jb)
        m, q = (ib - ia) // g, (ja - jb) // g
        phi = [G.coeff(ia + k * m, ja - k * q) for k in range(g + 1)]
        l = q * ia + m * ja
        u, v = _bezout_uv(q, m)
        fac = factor_univariate(UniPoly(K, tuple(phi), "z"), seed=seed)
        for psi, r in fac.factors:
            pc = list(psi.coeffs)
            if len(pc) == 2:
                L, xi = K, K.neg(pc[0])
            else:
                L = ExtField(K, pc)
                xi = L.gen
            gamma, beta = L.pow(xi, v), L.pow(xi, u)
            Gn, tr = _substitute(G, L, gamma, beta, q, m, l, N)
            nst = st.lift(L, gamma, beta, q, m, N)
            if r == 1:
                tail = _regular_series(Gn, L, max(N - nst.h, 0))
                out.append((nst, tail))
            else:
                _expand(Gn, nst, N, truncated or tr, out, seed)


def default_truncation(F: BiPoly) -> int:
    d = F.total_degree
    return 2 * d * d + 2


def puiseux_branches(F: BiPoly, pt: SingPoint, trunc: int | None = None, seed=0) -> list:
    """Rational Puiseux expansions of ``F`` at ``pt`` up to ``T^trunc``.

    Raises :class:`TruncationInsufficient` when ``trunc`` is too small to
    certify the valuations; :func:`branches_at` retries with doubling.
    """
    k = F.field
    d = F.total_degree
    p = k.characteristic
    if p and p <= d:
        raise CharacteristicTooSmall(f"characteristic {p} <= degree {d}: expansions unavailable")
    N = trunc or default_truncation(F)
    K = pt.field
    G = pt.chart(F)
    G1 = G.taylor_shift(pt.x0, pt.y0, K)
    if G1.coeff(0, 0) != K.zero:
        raise ValueError("point is not on the curve")
    raw = []
    st = _State(K, K.one, 1, [], K.one, 0)
    _expand(G1, st, N, False, raw, seed)
    G1y = G1.diff_y()
    out = []
    for st, tail in raw:
        L = st.K
        ys = st.finish(tail, N)
        xs = [L.zero] * st.e + [st.lam]
        val = _valuation(L, eval_series(G1y, L, xs, ys, N))
        if val is None:
            raise TruncationInsufficient(f"valuation not certified below T^{N}")
        out.append(PuiseuxBranch(pt, L, st.e, st.lam, ys, N, val))
    return out


def branches_at(F: BiPoly, pt: SingPoint, trunc: int | None = None, seed=0, max_doublings=4) -> list:
    N = trunc or default_truncation(F)
    for _ in range(max_doublings + 1):
        try:
            return puiseux_branches(F, pt, N, seed)
        except TruncationInsufficient:
            N *= 2
    raise TruncationInsufficient(f"branches at {pt.describe()} not separated at T^{N // 2}")


def place_count(branches) -> int:
    return sum(b.places for b in branches)


def locally_irreducible(F: BiPoly, pt: SingPoint, trunc: int | None = None, seed=0) -> bool:
    """Exactly one analytic branch through ``pt``; smooth points short-circuit."""
    if pt.multiplicity <= 1:
        return True
    return place_count(branches_at(F, pt, trunc, seed)) == 1


def dump_branches(branches) -> str:
    return "\n".join(b.dump() for b in branches)
