"""Absolute factorization from the locally constant functions ``B^-1(L)``.

A separating section ``mu`` takes one value per absolute component.  Its
minimal polynomial ``q`` is factored over ``k``; over each ``k[t]/(q_i)`` the
fiber ``F(0, y)`` splits off ``gcd(F(0, y), mu(y) - t)``, which Hensel lifting
turns into the component ``Q_i``.  Every result is checked by taking norms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import dense as D
from . import linalg
from .bipoly import BiPoly
from .errors import (AlgebraError, CharacteristicTooSmall, LiftMismatch, NotCoprime,
                     NotSeparating, RetryExhausted, VerificationFailed)
from .fields import ExtField, Field
from .lifting import multifactor_hensel
from .parse import format_bipoly, format_unipoly
from .poly import UniPoly
from .recombine import AbsoluteSystem
from .unifactor import factor_univariate

MAX_DRAWS = 8


@dataclass
class AbsoluteFactorization:
    field: Field
    unit: object
    pairs: list  # (q over k in t, Q over k[t]/(q) or over k when deg q = 1)

    @property
    def sbar(self) -> int:
        return sum(q.degree for q, _ in self.pairs)

    def lines(self) -> list:
        out = [f"unit: {self.field.fmt(self.unit)}"]
        for q, Q in self.pairs:
            out.append(f"q: {format_unipoly(q)}")
            out.append(f"Q: {format_bipoly(Q)}")
        return out


def check_characteristic(K: Field, d: int):
    p = K.characteristic
    if p and p <= d * (d - 1):
        raise CharacteristicTooSmall(
            f"absolute factorization needs characteristic 0 or > d(d-1) = {d * (d - 1)}, got {p}")


def generic_section(sys: AbsoluteSystem, c) -> UniPoly:
    K = sys.field
    d = len(sys.B)
    acc = [K.zero] * d
    for cj, w in zip(c, sys.ImAlpha_basis):
        if cj != K.zero:
            acc = [K.add(a, K.mul(cj, b)) for a, b in zip(acc, w)]
    return UniPoly(K, tuple(D.dup_strip(K, acc)))


def minimal_polynomial(mu: UniPoly, P: UniPoly) -> UniPoly:
    """Minimal polynomial (variable ``t``) of ``mu`` in ``k[y]/(P)``."""
    K = P.field
    Pl = list(P.monic().coeffs)
    d = len(Pl) - 1
    m = D.dup_rem(K, list(mu.coeffs), Pl)
    powers = [[K.one]]
    while True:
        cols = [p + [K.zero] * (d - len(p)) for p in powers]
        nxt = D.dup_mulmod(K, powers[-1], m, Pl)
        target = nxt + [K.zero] * (d - len(nxt))
        # solve sum a_i mu^i = mu^k
        sol = linalg.solve(K, linalg.transpose(cols), target)
        if sol is not None:
            q = [K.neg(a) for a in sol] + [K.one]
            return UniPoly(K, tuple(q), "t")
        powers.append(nxt)
        if len(powers) > d:
            raise AlgebraError("no dependency among powers (modulus not squarefree?)")


def _berkowitz_det(M, zero, one):
    """Division-free determinant of a square matrix over a commutative ring."""
    n = len(M)
    if n == 0:
        return one
    c = [one, zero - M[0][0]]
    for r in range(1, n):
        R = M[r][:r]
        S = [M[i][r] for i in range(r)]
        t = [one, zero - M[r][r]]
        v = S
        for _ in range(r):
            acc = zero
            for a, b in zip(R, v):
                acc = acc + a * b
            t.append(zero - acc)
            nv = []
            for i in range(r):
                acc = zero
                for j in range(r):
                    acc = acc + M[i][j] * v[j]
                nv.append(acc)
            v = nv
        new = []
        for i in range(r + 2):
            acc = zero
            for j in range(min(i, len(c) - 1) + 1):
                acc = acc + t[i - j] * c[j]
            new.append(acc)
        c = new
    return c[n] if n % 2 == 0 else zero - c[n]


def norm_down(Q: BiPoly, L: ExtField) -> BiPoly:
    """``N_{L/k}(Q)``, the determinant of multiplication by ``Q`` on ``L[x, y]`` over ``k[x, y]``."""
    k = L.base
    n = L.n
    gpow = [L.one]
    for _ in range(n - 1):
        gpow.append(L.mul(gpow[-1], L.gen))
    terms = Q.terms()
    M = []
    for r in range(n):
        M.append([None] * n)
    for col in range(n):
        entries = [dict() for _ in range(n)]
        for (i, j), c in terms.items():
            coords = L.mul(c, gpow[col])
            for r in range(n):
                if coords[r] != k.zero:
                    entries[r][(i, j)] = coords[r]
        for r in range(n):
            M[r][col] = BiPoly.from_terms(k, entries[r])
    return _berkowitz_det(M, BiPoly.constant(k, k.zero), BiPoly.constant(k, k.one))


def absolute_split(F: BiPoly, mu: UniPoly, q: UniPoly, sbar: int | None = None, seed=0) -> AbsoluteFactorization:
    K = F.field
    if sbar is not None and q.degree < sbar:
        raise NotSeparating(f"minimal polynomial has degree {q.degree} < sbar = {sbar}")
    unit, Fm = F.monic_y()
    d = Fm.deg_y
    F0 = list(Fm.at_x0().coeffs)
    pairs = []
    for qi, _ in factor_univariate(q, seed=seed).factors:
        if qi.degree == 1:
            L, root = K, K.neg(qi.coeffs[0])
        else:
            L = ExtField(K, list(qi.coeffs), name="t")
            root = L.gen
        P = D.dup_embed(L, K, F0)
        m = D.dup_sub(L, D.dup_embed(L, K, list(mu.coeffs)), [root])
        g = D.dup_monic(L, D.dup_gcd(L, P, m))
        if len(g) < 2:
            raise VerificationFailed(f"section takes no root of {format_unipoly(qi)} on the fiber")
        FL = Fm.map_field(L)
        if len(g) - 1 == d:
            Q = FL
        else:
            h = D.dup_quo(L, P, g)
            try:
                Q = multifactor_hensel(FL, [UniPoly(L, tuple(g)), UniPoly(L, tuple(h))], d + 1,
                                       exact=False)[0]
            except (NotCoprime, LiftMismatch) as exc:
                raise VerificationFailed(str(exc)) from exc
        pairs.append((UniPoly(K, qi.coeffs, "t"), Q))
    _verify(Fm, pairs)
    return AbsoluteFactorization(K, unit, pairs)


def _verify(Fm: BiPoly, pairs):
    K = Fm.field
    tot = sum(q.degree * Q.deg_y for q, Q in pairs)
    if tot != Fm.deg_y:
        raise VerificationFailed(f"degrees add up to {tot}, expected {Fm.deg_y}")
    prod = BiPoly.constant(K, K.one)
    for q, Q in pairs:
        if Q.field == K:
            prod = prod * Q
        else:
            prod = prod * norm_down(Q, Q.field)
    if prod != Fm:
        raise VerificationFailed("product of the norms differs from F")


def draw_sections(sys: AbsoluteSystem, seed=0, draws: int = MAX_DRAWS):
    """Coefficient vectors ``c`` from the seeded stream."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    K = sys.field
    n = len(sys.ImAlpha_basis)
    # a small deterministic combination first, for readable output
    yield [K.from_int(j) for j in range(n)] if n > 1 else [K.one]
    for _ in range(draws - 1):
        yield [K.random(rng) for _ in range(n)]


def split_with_retries(F: BiPoly, sys: AbsoluteSystem, seed=0, draws: int = MAX_DRAWS):
    last = None
    for c in draw_sections(sys, seed, draws):
        mu = generic_section(sys, c)
        q = minimal_polynomial(mu, sys.F0)
        try:
            return absolute_split(F, mu, q, sys.sbar, seed)
        except (NotSeparating, VerificationFailed) as exc:
            last = exc
    raise RetryExhausted(f"no separating section after {draws} draws: {last}")
