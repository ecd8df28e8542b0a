"""Multifactor Hensel lifting in ``K[[x]][y]`` and subset products."""

from __future__ import annotations

from . import dense as D
from .bipoly import BiPoly, SeriesPoly
from .errors import LiftMismatch, NotCoprime
from .poly import UniPoly


def product_tree(K, polys):
    """Balanced product of coefficient lists."""
    polys = [list(p) for p in polys]
    if not polys:
        return [K.one]
    while len(polys) > 1:
        nxt = [D.dup_mul(K, polys[i], polys[i + 1]) for i in range(0, len(polys) - 1, 2)]
        if len(polys) % 2:
            nxt.append(polys[-1])
        polys = nxt
    return polys[0]


def subset_product(factors, indicator) -> UniPoly:
    if len(factors) != len(indicator):
        raise ValueError("indicator length differs from factor count")
    if not factors:
        raise ValueError("empty factor list")
    K = factors[0].field
    chosen = [f.coeffs for f, b in zip(factors, indicator) if b]
    return UniPoly(K, tuple(product_tree(K, chosen)), factors[0].var)


def _prod(polys, prec, K):
    acc = SeriesPoly(K, prec, [[K.one]])
    for p in polys:
        acc = acc * p
    return acc


def _cofactors(Gs, prec, K):
    """``[prod_{j != i} G_j for i]`` via prefix and suffix products."""
    n = len(Gs)
    one = SeriesPoly(K, prec, [[K.one]])
    pre = [one]
    for g in Gs[:-1]:
        pre.append(pre[-1] * g)
    suf = [one] * n
    for i in range(n - 2, -1, -1):
        suf[i] = suf[i + 1] * Gs[i + 1]
    return [pre[i] * suf[i] for i in range(n)]


def multifactor_hensel(F: BiPoly, g0, N: int | None = None, hook=None, exact=True) -> list:
    """Lift ``F(0, y) = prod g0`` (pairwise coprime, monic) to ``F = prod G_i mod x^N``.

    ``F`` must have a nonzero constant leading coefficient in ``y``; it is
    made monic first.  ``hook(prec, factors, cofactors)`` is called after
    every doubling with the current :class:`SeriesPoly` factors and Bezout
    cofactors.  With ``exact=True`` the truncated product must equal ``F``
    (after normalisation) or :class:`LiftMismatch` is raised.
    """
    K = F.field
    N = N or F.total_degree + 1
    _, F = F.monic_y()
    gs = [list(g.monic().coeffs) for g in g0]
    for i in range(len(gs)):
        for j in range(i + 1, len(gs)):
            if len(D.dup_gcd(K, gs[i], gs[j])) > 1:
                raise NotCoprime(f"factors {i} and {j} share a root modulo x", (i, j))
    F0 = list(F.at_x0().coeffs)
    if product_tree(K, gs) != F0:
        raise LiftMismatch("the modular factors do not multiply to F(0,y)")
    if len(gs) == 1:
        Gs = [SeriesPoly.from_bipoly(F, N)]
        if hook:
            hook(N, Gs, [SeriesPoly(K, N, [[K.one]])])
        return [F if exact else Gs[0].to_bipoly()]
    prec = 1
    Gs = [SeriesPoly.from_y_poly(K, 1, g) for g in gs]
    sig = []
    for i, g in enumerate(gs):
        others = product_tree(K, gs[:i] + gs[i + 1:])
        sig.append(SeriesPoly.from_y_poly(K, 1, D.dup_invmod(K, others, g)))
    if hook:
        hook(prec, Gs, sig)
    while prec < N:
        n = min(2 * prec, N)
        Gs = [g.with_precision(n) for g in Gs]
        sig = [s.with_precision(n) for s in sig]
        E = SeriesPoly.from_bipoly(F, n) - _prod(Gs, n, K)
        Gs = [g + (s * E).rem_monic(g) for g, s in zip(Gs, sig)]
        hats = _cofactors(Gs, n, K)
        tot = SeriesPoly(K, n, [])
        for s, h in zip(sig, hats):
            tot = tot + s * h
        two = SeriesPoly(K, n, [[K.from_int(2)]])
        corr = two - tot
        sig = [(s * corr).rem_monic(g) for s, g in zip(sig, Gs)]
        prec = n
        if hook:
            hook(prec, Gs, sig)
    out = [g.to_bipoly() for g in Gs]
    if exact:
        prod = out[0]
        for g in out[1:]:
            prod = prod * g
        if prod != F:
            raise LiftMismatch("lifted factors do not multiply to F: wrong recombination")
    return out
