"""Dense univariate polynomial arithmetic over an arbitrary field ``K``.

Polynomials are Python lists of field elements, lowest degree first, with no
trailing zeros; ``[]`` is the zero polynomial (degree ``-1``).  Every function
takes the coefficient field first, in the style of ``dup_*`` routines.
"""

from __future__ import annotations

from .errors import NotInvertible


def dup_strip(K, f):
    f = list(f)
    z = K.zero
    while f and f[-1] == z:
        f.pop()
    return f


def dup_degree(f) -> int:
    return len(f) - 1


def dup_lc(K, f):
    return f[-1] if f else K.zero


def dup_from_ints(K, coeffs):
    return dup_strip(K, [K.from_int(c) if isinstance(c, int) else K(c) for c in coeffs])


def dup_add(K, f, g):
    if len(f) < len(g):
        f, g = g, f
    add = K.add
    r = [add(a, b) for a, b in zip(f, g)]
    r.extend(f[len(g):])
    return dup_strip(K, r)


def dup_neg(K, f):
    neg = K.neg
    return [neg(a) for a in f]


def dup_sub(K, f, g):
    sub, neg = K.sub, K.neg
    n = max(len(f), len(g))
    r = []
    for i in range(n):
        if i < len(f):
            r.append(sub(f[i], g[i]) if i < len(g) else f[i])
        else:
            r.append(neg(g[i]))
    return dup_strip(K, r)


def dup_scale(K, f, c):
    if c == K.zero:
        return []
    mul = K.mul
    return dup_strip(K, [mul(c, a) for a in f])


def dup_shift_up(K, f, k):
    """Multiply by ``y^k``."""
    if not f:
        return []
    return [K.zero] * k + list(f)


def dup_mul(K, f, g):
    if not f or not g:
        return []
    if K.is_prime_field:
        p = K.p
        r = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    r[i + j] += a * b
        return dup_strip(K, [c % p for c in r])
    add, mul, z = K.add, K.mul, K.zero
    r = [z] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == z:
            continue
        for j, b in enumerate(g):
            if b != z:
                r[i + j] = add(r[i + j], mul(a, b))
    return dup_strip(K, r)


def dup_sqr(K, f):
    return dup_mul(K, f, f)


def dup_pow(K, f, n):
    r = [K.one]
    while n:
        if n & 1:
            r = dup_mul(K, r, f)
        n >>= 1
        if n:
            f = dup_mul(K, f, f)
    return r


def dup_divmod(K, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return [], list(f)
    if K.is_prime_field:
        p = K.p
        r = list(f)
        inv = pow(g[-1], -1, p)
        q = [0] * (len(f) - dg)
        for k in range(len(f) - 1, dg - 1, -1):
            c = r[k] % p
            if c:
                c = c * inv % p
                q[k - dg] = c
                off = k - dg
                for j in range(dg):
                    r[off + j] -= c * g[j]
            r[k] = 0
        return dup_strip(K, q), dup_strip(K, [x % p for x in r[:dg]])
    sub, mul, z = K.sub, K.mul, K.zero
    inv = K.inv(g[-1])
    r = list(f)
    q = [z] * (len(f) - dg)
    for k in range(len(f) - 1, dg - 1, -1):
        c = r[k]
        if c != z:
            c = mul(c, inv)
            q[k - dg] = c
            off = k - dg
            for j in range(dg):
                if g[j] != z:
                    r[off + j] = sub(r[off + j], mul(c, g[j]))
    return dup_strip(K, q), dup_strip(K, r[:dg])


def dup_rem(K, f, g):
    return dup_divmod(K, f, g)[1]


def dup_quo(K, f, g):
    return dup_divmod(K, f, g)[0]


def dup_exquo(K, f, g):
    q, r = dup_divmod(K, f, g)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def dup_monic(K, f):
    if not f:
        return []
    lc = f[-1]
    if lc == K.one:
        return list(f)
    return dup_scale(K, f, K.inv(lc))


def dup_gcd(K, f, g):
    """Monic gcd; ``gcd(0, 0) = 0``."""
    while g:
        f, g = g, dup_rem(K, f, g)
    return dup_monic(K, f)


def dup_xgcd(K, f, g):
    """Return ``(h, s, t)`` with ``h = s*f + t*g`` the monic gcd."""
    r0, r1 = list(f), list(g)
    s0, s1 = [K.one], []
    t0, t1 = [], [K.one]
    while r1:
        q, r = dup_divmod(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, dup_sub(K, s0, dup_mul(K, q, s1))
        t0, t1 = t1, dup_sub(K, t0, dup_mul(K, q, t1))
    if not r0:
        return [], [], []
    c = K.inv(r0[-1])
    return dup_scale(K, r0, c), dup_scale(K, s0, c), dup_scale(K, t0, c)


def dup_invmod(K, a, m):
    """Inverse of ``a`` modulo ``m``; raises :class:`NotInvertible` with the gcd."""
    if len(m) < 2:
        raise ValueError("modulus must have degree >= 1")
    h, s, _ = dup_xgcd(K, dup_rem(K, a, m), m)
    if len(h) != 1:
        raise NotInvertible("element is not invertible modulo m", gcd=h if h else list(m))
    return dup_rem(K, s, m)


def dup_mulmod(K, f, g, m):
    return dup_rem(K, dup_mul(K, f, g), m)


def dup_powmod(K, f, n, m):
    r = [K.one]
    f = dup_rem(K, f, m)
    while n:
        if n & 1:
            r = dup_rem(K, dup_mul(K, r, f), m)
        n >>= 1
        if n:
            f = dup_rem(K, dup_mul(K, f, f), m)
    return dup_rem(K, r, m)


def dup_diff(K, f):
    fi = K.from_int
    mul = K.mul
    return dup_strip(K, [mul(fi(i), f[i]) for i in range(1, len(f))])


def dup_eval(K, f, a):
    add, mul = K.add, K.mul
    r = K.zero
    for c in reversed(f):
        r = add(mul(r, a), c)
    return r


def dup_embed(L, K, f):
    """Coefficients of ``f`` (over subfield ``K``) mapped into ``L``."""
    if L == K:
        return list(f)
    return [L.embed(c, K) for c in f]


def dup_compose(K, f, g):
    """``f(g(y))``."""
    r = []
    for c in reversed(f):
        r = dup_add(K, dup_mul(K, r, g), [c] if c != K.zero else [])
    return r


def dup_compose_mod(K, f, g, m):
    r = []
    for c in reversed(f):
        r = dup_rem(K, dup_add(K, dup_mul(K, r, g), [c] if c != K.zero else []), m)
    return r


def dup_taylor_shift(K, f, a):
    """``f(y + a)``."""
    f = list(f)
    n = len(f)
    add, mul = K.add, K.mul
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            f[k] = add(f[k], mul(a, f[k + 1]))
    return dup_strip(K, f)


def dup_truncate(K, f, n):
    return dup_strip(K, f[:n])


def power_sums(K, f, n):
    """Power sums ``p_0..p_{n-1}`` of the roots of monic ``f`` (Newton identities).

    With ``f = y^d + c_{d-1} y^{d-1} + ... + c_0``:
    ``p_k = -(k c_{d-k} + sum_{i=1}^{k-1} c_{d-i} p_{k-i})`` for ``k <= d`` and
    ``p_k = -sum_{i=1}^{d} c_{d-i} p_{k-i}`` beyond.
    """
    d = len(f) - 1
    if d < 1 or f[-1] != K.one:
        raise ValueError("power_sums needs a monic polynomial of degree >= 1")
    add, mul, neg, fi = K.add, K.mul, K.neg, K.from_int
    ps = [fi(d)]
    for k in range(1, n):
        acc = mul(fi(k), f[d - k]) if k <= d else K.zero
        for i in range(1, min(k, d + 1)):
            if i <= d:
                acc = add(acc, mul(f[d - i], ps[k - i]))
        if k > d:
            acc = K.zero
            for i in range(1, d + 1):
                acc = add(acc, mul(f[d - i], ps[k - i]))
        ps.append(neg(acc))
    return ps


def dup_fmt(K, f, var="y") -> str:
    """Human-readable form, highest degree first (diagnostics only)."""
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == K.zero:
            continue
        cs = K.fmt(c)
        if hasattr(K, "n") and K.n > 1 and i > 0:
            cs = f"({cs})"
        if i == 0:
            term = cs
        else:
            mon = var if i == 1 else f"{var}^{i}"
            term = mon if cs == "1" else (f"-{mon}" if cs == "-1" else f"{cs}*{mon}")
        parts.append(term)
    s = parts[0]
    for t in parts[1:]:
        s += t if t.startswith("-") else "+" + t
    return s
