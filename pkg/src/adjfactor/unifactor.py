"""Univariate squarefree and irreducible factorization.

* finite fields and towers over them: squarefree decomposition with p-th
  roots, distinct-degree factorization through the Frobenius matrix, and
  Cantor-Zassenhaus equal-degree splitting;
* the rationals: modular factorization, Hensel lifting over the integers and
  exhaustive subset recombination (comfortable up to degree about 30);
* number-field towers: Trager's norm method on top of the above.

All randomness comes from an explicit ``random.Random``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt, lcm

from . import dense as D
from .bipoly import PolyRingOps, subresultant_resultant
from .fields import GF, ExtField, Field, is_probable_prime
from .poly import UniPoly


@dataclass(frozen=True)
class UniFactorization:
    unit: object
    factors: tuple  # ((UniPoly monic irreducible, multiplicity), ...)

    def expand(self) -> UniPoly:
        K = self.field
        r = [self.unit]
        for f, m in self.factors:
            r = D.dup_mul(K, r, D.dup_pow(K, list(f.coeffs), m))
        return UniPoly(K, tuple(r), self.var)

    @property
    def field(self):
        return self.factors[0][0].field if self.factors else self._field

    @property
    def var(self):
        return self.factors[0][0].var if self.factors else "y"

    def polys(self):
        return [f for f, _ in self.factors]


def _make(K, unit, factors, var):
    fs = sorted(((UniPoly(K, tuple(f), var), m) for f, m in factors),
                key=lambda fm: (fm[0].degree, fm[0].coeffs, fm[1]))
    out = UniFactorization(unit, tuple(fs))
    object.__setattr__(out, "_field", K)
    return out


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


# ----------------------------------------------------------------------
# separability and squarefree decomposition

def is_separable(f: UniPoly) -> bool:
    """``gcd(f, f') = 1``; constants are separable."""
    if f.is_zero():
        raise ValueError("is_separable needs a nonzero polynomial")
    if f.degree < 1:
        return True
    K = f.field
    return len(D.dup_gcd(K, list(f.coeffs), D.dup_diff(K, list(f.coeffs)))) == 1


def _pth_root_elem(K, a):
    # a^(q/p) in a finite field of size q
    if K.is_prime_field:
        return a
    return K.pow(a, K.size // K.characteristic)


def _pth_root(K, f):
    p = K.characteristic
    return [_pth_root_elem(K, f[i]) for i in range(0, len(f), p)]


def _sqf_finite(K, f):
    """Musser's algorithm for monic ``f`` over a finite field."""
    out = []
    if len(f) <= 1:
        return out
    p = K.characteristic
    fp = D.dup_diff(K, f)
    if not fp:
        return [(g, m * p) for g, m in _sqf_finite(K, _pth_root(K, f))]
    c = D.dup_gcd(K, f, fp)
    w = D.dup_exquo(K, f, c)
    i = 1
    while len(w) > 1:
        y = D.dup_gcd(K, w, c)
        z = D.dup_exquo(K, w, y)
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = D.dup_exquo(K, c, y)
    if len(c) > 1:
        out.extend((g, m * p) for g, m in _sqf_finite(K, _pth_root(K, c)))
    return out


def _sqf_char0(K, f):
    """Yun's algorithm for monic ``f`` in characteristic zero."""
    out = []
    if len(f) <= 1:
        return out
    fp = D.dup_diff(K, f)
    a = D.dup_gcd(K, f, fp)
    b = D.dup_exquo(K, f, a)
    c = D.dup_exquo(K, fp, a)
    d = D.dup_sub(K, c, D.dup_diff(K, b))
    i = 1
    while len(b) > 1:
        a = D.dup_gcd(K, b, d)
        b = D.dup_exquo(K, b, a)
        c = D.dup_exquo(K, d, a)
        d = D.dup_sub(K, c, D.dup_diff(K, b))
        if len(a) > 1:
            out.append((a, i))
        i += 1
    return out


def squarefree_decomposition(f: UniPoly):
    """``(unit, [(g, m), ...])`` with ``g`` monic squarefree, pairwise coprime."""
    K = f.field
    if f.is_zero():
        raise ValueError("squarefree decomposition of zero")
    unit = f.lc
    g = D.dup_monic(K, list(f.coeffs))
    parts = _sqf_finite(K, g) if K.characteristic else _sqf_char0(K, g)
    return unit, [(UniPoly(K, tuple(h), f.var), m) for h, m in parts]


# ----------------------------------------------------------------------
# finite fields

class _Frobenius:
    """The map ``g -> g^q mod f`` as a matrix (rows ``y^{iq} mod f``)."""

    def __init__(self, K, f):
        self.K = K
        self.f = f
        n = len(f) - 1
        X = D.dup_powmod(K, [K.zero, K.one], K.size, f)
        rows = [[K.one]]
        for _ in range(1, n):
            rows.append(D.dup_mulmod(K, rows[-1], X, f))
        self.rows = rows

    def __call__(self, g, mod=None):
        K = self.K
        acc = []
        for c, row in zip(g, self.rows):
            if c != K.zero:
                acc = D.dup_add(K, acc, D.dup_scale(K, row, c))
        if mod is not None and mod is not self.f:
            acc = D.dup_rem(K, acc, mod)
        return acc


def _ddf(K, f):
    """Distinct-degree factorization of monic squarefree ``f``."""
    out = []
    frob = _Frobenius(K, f)
    y = [K.zero, K.one]
    h = y
    g = list(f)
    i = 1
    while len(g) - 1 >= 2 * i:
        h = frob(D.dup_rem(K, h, f), g)
        gi = D.dup_gcd(K, g, D.dup_sub(K, h, y))
        if len(gi) > 1:
            out.append((gi, i))
            g = D.dup_exquo(K, g, gi)
            h = D.dup_rem(K, h, g)
        i += 1
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out, frob


def _random_poly(K, n, rng):
    return D.dup_strip(K, [K.random(rng) for _ in range(n)])


def _edf(K, f, k, rng, frob):
    """Split monic squarefree ``f`` whose irreducible factors all have degree ``k``."""
    n = len(f) - 1
    if n == k:
        return [f]
    q = K.size
    p = K.characteristic
    m_abs = K.abs_degree
    while True:
        a = _random_poly(K, n, rng)
        if len(a) < 2:
            continue
        g = D.dup_gcd(K, a, f)
        if 1 < len(g) < len(f):
            break
        if p == 2:
            # absolute trace to GF(2)
            t = D.dup_rem(K, a, f)
            s = t
            for _ in range(m_abs * k - 1):
                t = D.dup_mulmod(K, t, t, f)
                s = D.dup_add(K, s, t)
            g = D.dup_gcd(K, s, f)
        else:
            # norm to the ground field, then the quadratic character
            t = D.dup_rem(K, a, f)
            ak = t
            for _ in range(k - 1):
                ak = frob(ak, f)
                t = D.dup_mulmod(K, t, ak, f)
            b = D.dup_powmod(K, t, (q - 1) // 2, f)
            g = D.dup_gcd(K, D.dup_sub(K, b, [K.one]), f)
        if 1 < len(g) < len(f):
            break
    h = D.dup_exquo(K, f, g)
    return _edf(K, g, k, rng, frob) + _edf(K, h, k, rng, frob)


def _factor_sqf_finite(K, f, rng):
    out = []
    if len(f) == 2:
        return [f]
    parts, frob = _ddf(K, f)
    for g, k in parts:
        out.extend(_edf(K, g, k, rng, frob))
    return out


def distinct_degree_certificate(f: UniPoly) -> bool:
    """True iff monic ``f`` over a finite field is irreducible (Rabin-style)."""
    K = f.field
    g = list(f.monic().coeffs)
    n = len(g) - 1
    if n <= 0:
        return False
    parts, _ = _ddf(K, g)
    return len(parts) == 1 and parts[0][1] == n and parts[0][0] == g


# ----------------------------------------------------------------------
# integers

def _zz_strip(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _zz_mul(f, g):
    if not f or not g:
        return []
    r = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                r[i + j] += a * b
    return _zz_strip(r)


def _zz_sub(f, g):
    n = max(len(f), len(g))
    return _zz_strip([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)])


def _zz_add(f, g):
    n = max(len(f), len(g))
    return _zz_strip([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def _mod(f, m):
    return _zz_strip([c % m for c in f])


def _smod(f, m):
    h = m // 2
    return _zz_strip([(c % m) - m if c % m > h else c % m for c in f])


def _divmod_monic_mod(f, h, m):
    """Division by monic ``h`` with coefficients reduced mod ``m``."""
    r = [c % m for c in f]
    dh = len(h) - 1
    if len(r) - 1 < dh:
        return [], _zz_strip(r)
    q = [0] * (len(r) - dh)
    for k in range(len(r) - 1, dh - 1, -1):
        c = r[k] % m
        if c:
            q[k - dh] = c
            for j in range(dh + 1):
                r[k - dh + j] -= c * h[j]
    return _mod(q, m), _mod(r[:dh], m)


def _hensel_step(m, f, g, h, s, t):
    """Lift ``f = g h`` and ``s g + t h = 1`` from mod ``m`` to mod ``m^2``."""
    M = m * m
    e = _mod(_zz_sub(f, _zz_mul(g, h)), M)
    q, r = _divmod_monic_mod(_zz_mul(s, e), h, M)
    g2 = _mod(_zz_add(g, _zz_add(_zz_mul(t, e), _zz_mul(q, g))), M)
    h2 = _mod(_zz_add(h, r), M)
    b = _mod(_zz_sub(_zz_add(_zz_mul(s, g2), _zz_mul(t, h2)), [1]), M)
    c, d = _divmod_monic_mod(_zz_mul(s, b), h2, M)
    s2 = _mod(_zz_sub(s, d), M)
    t2 = _mod(_zz_sub(t, _zz_add(_zz_mul(t, b), _zz_mul(c, g2))), M)
    return g2, h2, s2, t2


def _zz_hensel_lift(p, f, fl, steps):
    """Lift monic modular factors ``fl`` of ``f`` to modulus ``p^(2^steps)``."""
    r = len(fl)
    M = p ** (2 ** steps)
    lc = f[-1]
    if r == 1:
        return [_mod([c * pow(lc, -1, M) for c in f], M)]
    k = r // 2
    Kp = GF(p)
    g = [lc % p]
    for u in fl[:k]:
        g = D.dup_mul(Kp, g, u)
    h = [1]
    for u in fl[k:]:
        h = D.dup_mul(Kp, h, u)
    _, s, t = D.dup_xgcd(Kp, g, h)
    m = p
    for _ in range(steps):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return _zz_hensel_lift(p, g, fl[:k], steps) + _zz_hensel_lift(p, h, fl[k:], steps)


def _zz_content(f):
    c = 0
    for a in f:
        c = gcd(c, a)
    return c


def _zz_primitive(f):
    c = _zz_content(f)
    if c == 0:
        return f
    if f[-1] < 0:
        c = -c
    return [a // c for a in f]


def _zz_divides(g, f):
    """Exact quotient ``f / g`` over Z or ``None``."""
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return None
    q = [0] * (len(r) - dg)
    lg = g[-1]
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c == 0:
            continue
        if c % lg:
            return None
        c //= lg
        q[k - dg] = c
        for j in range(dg + 1):
            r[k - dg + j] -= c * g[j]
    if any(r[:dg]):
        return None
    return q


_SMALL_PRIMES = [p for p in range(3, 2000) if is_probable_prime(p)]


def _zz_factor_sqf(f, rng):
    """Irreducible factors over Z of a primitive squarefree ``f`` (lc > 0)."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    lc = f[-1]
    best = None
    tried = 0
    for p in _SMALL_PRIMES:
        if lc % p == 0:
            continue
        Kp = GF(p)
        fp = D.dup_monic(Kp, [c % p for c in f])
        if len(fp) - 1 != n or len(D.dup_gcd(Kp, fp, D.dup_diff(Kp, fp))) != 1:
            continue
        facs = _factor_sqf_finite(Kp, fp, rng)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        tried += 1
        if len(facs) == 1 or tried >= 5:
            break
    p, facs = best
    if len(facs) == 1:
        return [f]
    # coefficient bound for factors (times lc)
    norm = isqrt(sum(c * c for c in f)) + 1
    B = (2 ** n) * norm * abs(lc)
    steps = 0
    while p ** (2 ** steps) <= 2 * B:
        steps += 1
    M = p ** (2 ** steps)
    lifted = _zz_hensel_lift(p, f, facs, steps)
    return _zassenhaus_recombine(f, lifted, M)


def _zassenhaus_recombine(f, lifted, M):
    result = []
    T = list(range(len(lifted)))
    s = 1
    g = f
    while 2 * s <= len(T):
        for S in combinations(T, s):
            lc = g[-1]
            G = [lc]
            for i in S:
                G = _mod(_zz_mul(G, lifted[i]), M)
            G = _zz_primitive(_smod(G, M))
            if G[0] and g[0] % G[0]:
                continue
            q = _zz_divides(G, g)
            if q is None:
                continue
            result.append(G)
            g = q
            T = [i for i in T if i not in S]
            break
        else:
            s += 1
    result.append(_zz_primitive(g))
    return result


def _qq_factor(K, f, rng):
    """Factor over QQ; returns ``(unit, [(monic factor, mult)])``."""
    unit = f[-1]
    g = D.dup_monic(K, f)
    out = []
    for h, m in _sqf_char0(K, g):
        den = 1
        for c in h:
            den = lcm(den, c.denominator)
        zz = _zz_primitive([int(c * den) for c in h])
        for u in _zz_factor_sqf(zz, rng):
            out.append((D.dup_monic(K, [Fraction(c) for c in u]), m))
    return unit, out


# ----------------------------------------------------------------------
# number-field towers (Trager)

def _norm(L, g):
    """``Res_z(psi(z), g(y, z))`` over the base of ``L = B[z]/(psi)``."""
    B = L.base
    n = L.n
    # write g as a polynomial in z with coefficients in B[y]
    zc = [[g[j][k] for j in range(len(g))] for k in range(n)]
    zc = [D.dup_strip(B, c) for c in zc]
    while zc and not zc[-1]:
        zc.pop()
    psi = [[c] if c != B.zero else [] for c in L.modulus]
    R = PolyRingOps(B)
    return subresultant_resultant(R, psi, zc)


def _factor_sqf_ext0(L, g, rng):
    if len(g) <= 2:
        return [g]
    B = L.base
    z = L.gen
    for s in _shifts():
        a = L.neg(L.mul(L.from_int(s), z))
        gs = D.dup_taylor_shift(L, g, a)
        N = _norm(L, gs)
        if len(D.dup_gcd(B, N, D.dup_diff(B, N))) == 1:
            break
    Nfac = _factor_sqf_any(B, D.dup_monic(B, N), rng)
    if len(Nfac) == 1:
        return [g]
    out = []
    back = L.mul(L.from_int(s), z)
    for Ni in Nfac:
        h = D.dup_gcd(L, D.dup_embed(L, B, Ni), gs)
        if len(h) > 1:
            out.append(D.dup_monic(L, D.dup_taylor_shift(L, h, back)))
    return out


def _shifts():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def _factor_sqf_any(K, f, rng):
    """Monic irreducible factors of monic squarefree ``f`` over any supported field."""
    if len(f) <= 2:
        return [f]
    if K.characteristic:
        return _factor_sqf_finite(K, f, rng)
    if K.is_rational:
        _, fs = _qq_factor(K, f, rng)
        return [h for h, _ in fs]
    return _factor_sqf_ext0(K, f, rng)


# ----------------------------------------------------------------------
# public entry points

def factor_univariate(f: UniPoly, field: Field | None = None, seed=0) -> UniFactorization:
    """Complete factorization ``unit * prod f_i^{m_i}`` over ``f.field``."""
    K = f.field
    if field is not None and field != K:
        from .errors import FieldMismatch
        raise FieldMismatch(f"{field!r} vs {K!r}")
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = _rng(seed)
    coeffs = list(f.coeffs)
    unit = coeffs[-1]
    if len(coeffs) == 1:
        return _make(K, unit, [], f.var)
    if K.is_rational:
        unit, fs = _qq_factor(K, coeffs, rng)
        return _make(K, unit, fs, f.var)
    _, parts = squarefree_decomposition(f)
    out = []
    for h, m in parts:
        for u in _factor_sqf_any(K, list(h.coeffs), rng):
            out.append((u, m))
    return _make(K, unit, out, f.var)


def factor_over_extension(f: UniPoly, seed=0) -> UniFactorization:
    """Factorization over an extension field (finite or number-field tower)."""
    if not isinstance(f.field, ExtField):
        raise TypeError("factor_over_extension expects a polynomial over an ExtField")
    return factor_univariate(f, seed=seed)


def irreducible_factors(f: UniPoly, seed=0) -> list:
    """Distinct monic irreducible factors of ``f``."""
    return [g for g, _ in factor_univariate(f, seed=seed).factors]


def is_irreducible(f: UniPoly, seed=0) -> bool:
    fac = factor_univariate(f, seed=seed)
    return len(fac.factors) == 1 and fac.factors[0][1] == 1
