"""Random instances, irreducibility certificates and sympy bridges for the tests."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy

from adjfactor import GF, BiPoly, UniPoly
from adjfactor.fields import ExtField
from adjfactor.unifactor import factor_univariate, is_separable

X, Y, T = sympy.symbols("x y t")
SEVEN = "y^5+y^4-x*y^3-y^3-2*x*y^2-y^2+x^2+x*y+x"


def random_component(K, deg, rng):
    """Dense random polynomial of total degree ``deg`` with y-leading coefficient 1."""
    terms = {(a, b): K.random(rng) for b in range(deg) for a in range(deg + 1 - b)}
    terms[(0, deg)] = K.one
    return BiPoly.from_terms(K, {k: v for k, v in terms.items() if v != K.zero})


def _irreducible_univariate(K, coeffs) -> bool:
    fac = factor_univariate(UniPoly(K, tuple(coeffs)))
    return len(fac.factors) == 1 and fac.factors[0][1] == 1


def rationally_irreducible(G, rng, tries=40) -> bool:
    """Some specialization ``G(x0, y)`` of full degree is irreducible, so ``G`` is."""
    K = G.field
    if G.total_degree == 1:
        return True
    for _ in range(tries):
        g = G.at_x(K.random(rng))
        if len(g) - 1 == G.deg_y and _irreducible_univariate(K, g):
            return True
    return False


def smooth_rational_point(G, rng, tries=60) -> bool:
    """A nonsingular k-point on ``G = 0`` (with ``G`` irreducible over k, absolutely irreducible)."""
    K = G.field
    Gx, Gy = G.diff_x(), G.diff_y()
    for _ in range(tries):
        x0 = K.random(rng)
        g = G.at_x(x0)
        if len(g) < 2:
            continue
        for f, _ in factor_univariate(UniPoly(K, tuple(g))).factors:
            if f.degree == 1:
                y0 = K.neg(f.coeffs[0])
                if Gx.eval(x0, y0) != K.zero or Gy.eval(x0, y0) != K.zero:
                    return True
    return False


def absolutely_irreducible(G, rng) -> bool:
    return G.total_degree == 1 or (rationally_irreducible(G, rng) and smooth_rational_point(G, rng))


def random_degrees(rng, r, dmax):
    while True:
        degs = [rng.randint(1, dmax - r + 1) for _ in range(r)]
        if sum(degs) <= dmax:
            return sorted(degs)


def product(polys):
    out = polys[0]
    for p in polys[1:]:
        out = out * p
    return out


def suite3(count=100, seed=2024, p=10007, dmax=10):
    """Products of 2-4 distinct certified absolutely irreducible components, filtered by (H)."""
    K = GF(p)
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        r = rng.randint(2, 4)
        degs = random_degrees(rng, r, dmax)
        comps = [random_component(K, d, rng) for d in degs]
        if len({str(c) for c in comps}) < r:
            continue
        if not all(absolutely_irreducible(c, rng) for c in comps):
            continue
        F = product(comps)
        if not is_separable(F.at_x0()):
            continue
        out.append((comps, F))
    return out


# ----------------------------------------------------------------------
# sympy bridges

def _scalar(K, c, t=T):
    if isinstance(K, ExtField):
        return sum(_scalar(K.base, b) * t ** i for i, b in enumerate(c))
    if isinstance(c, Fraction):
        return sympy.Rational(c.numerator, c.denominator)
    return sympy.Integer(c)


def to_sympy(G) -> sympy.Expr:
    K = G.field
    return sympy.expand(sum(_scalar(K, c) * X ** i * Y ** j for (i, j), c in G.terms().items()))


def uni_to_sympy(f, var=Y) -> sympy.Expr:
    return sum(_scalar(f.field, c) * var ** i for i, c in enumerate(f.coeffs))


def from_sympy(expr, K) -> BiPoly:
    P = sympy.Poly(sympy.expand(expr), X, Y)
    terms = {}
    for (i, j), c in P.terms():
        c = sympy.Rational(c)
        terms[(i, j)] = K(Fraction(int(c.p), int(c.q))) if K.characteristic == 0 \
            else K.mul(K(int(c.p)), K.inv(K(int(c.q))))
    return BiPoly.from_terms(K, {k: v for k, v in terms.items() if v != K.zero})


def smooth_general_position(comps, p) -> bool:
    """Each component smooth (squarefree full-degree discriminant, distinct points at
    infinity) and components meeting transversally at distinct affine x."""
    exprs = [to_sympy(c) for c in comps]
    for c, e in zip(comps, exprs):
        d = c.total_degree
        top = sympy.Poly(sum(co * Y ** j for (i, j), co in sympy.Poly(e, X, Y).terms() if i + j == d),
                         Y, modulus=p)
        if top.degree() != d or sympy.gcd(top, top.diff(Y)).degree() > 0:
            return False
        if d >= 2:
            disc = sympy.Poly(sympy.discriminant(sympy.Poly(e, Y, X, modulus=p), Y).as_expr(), X, modulus=p)
            if disc.degree() != d * (d - 1) or sympy.gcd(disc, disc.diff(X)).degree() > 0:
                return False
    res_all = sympy.Poly(1, X, modulus=p)
    for i in range(len(exprs)):
        for j in range(i + 1, len(exprs)):
            r = sympy.Poly(sympy.resultant(sympy.Poly(exprs[i], Y, X, modulus=p),
                                           sympy.Poly(exprs[j], Y, X, modulus=p)).as_expr(), X, modulus=p)
            if r.degree() != comps[i].total_degree * comps[j].total_degree:
                return False
            res_all = res_all * r
    return res_all.degree() == 0 or sympy.gcd(res_all, res_all.diff(X)).degree() == 0
