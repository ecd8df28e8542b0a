"""Text grammar for polynomials in ``x, y, t`` and the canonical printer.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := unary (('*' | '/' | <juxtaposition>) unary)*
    unary  := ('+'|'-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | 'x' | 'y' | 't' | '(' expr ')'

Division is only allowed by a nonzero constant.  Canonical output lists terms
by decreasing exponent tuple ``(deg_y, deg_x, deg_t)``, writes every product
with ``*`` and every power with ``^``, and omits unit coefficients.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .fields import ExtField, Field

VARS = ("y", "x", "t")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            name = m.group(2)
            if name not in VARS:
                raise ParseError(f"unknown variable {name!r}", text, start)
            out.append(("var", name, start))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, n))
    return out


# sparse polynomials: dict {(ey, ex, et): Fraction}

def _padd(a, b, sign=1):
    r = dict(a)
    for k, v in b.items():
        c = r.get(k, 0) + sign * v
        if c:
            r[k] = c
        else:
            r.pop(k, None)
    return r


def _pmul(a, b):
    r = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
            c = r.get(k, 0) + va * vb
            if c:
                r[k] = c
            else:
                r.pop(k)
    return r


def _const(c):
    return {(0, 0, 0): Fraction(c)} if c else {}


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty input")
        e = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return e

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = {k: -v for k, v in acc.items()}
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                acc = _padd(acc, self.term(), -1 if tok[1] == "-" else 1)
            else:
                return acc

    def term(self):
        acc = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                acc = _pmul(acc, self.unary())
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                dtok = self.peek()
                den = self.unary()
                if not den or set(den) != {(0, 0, 0)}:
                    self.error("division only by a nonzero constant", dtok)
                inv = 1 / den[(0, 0, 0)]
                acc = {k: v * inv for k, v in acc.items()}
            elif tok[0] in ("var", "num") or (tok[0] == "op" and tok[1] == "("):
                acc = _pmul(acc, self.unary())
            else:
                return acc

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            v = self.unary()
            return {k: -c for k, c in v.items()} if tok[1] == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                self.error("exponent must be a nonnegative integer", e)
            r = _const(1)
            for _ in range(e[1]):
                r = _pmul(r, base)
            return r
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "num":
            return _const(tok[1])
        if tok[0] == "var":
            k = [0, 0, 0]
            k[VARS.index(tok[1])] = 1
            return {tuple(k): Fraction(1)}
        if tok[0] == "op" and tok[1] == "(":
            e = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                self.error("expected ')'", close)
            return e
        self.error("expected a number, variable or '('", tok)


def parse_terms(text: str) -> dict:
    """Parse to a sparse dict ``{(ey, ex, et): Fraction}``."""
    return _Parser(text).parse()


def _coerce(K: Field, c: Fraction, text):
    try:
        return K(c)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"coefficient {c} is not defined over {K!r}") from None


def parse_bipoly(text: str, K: Field):
    """Polynomial in ``x, y`` over ``K``; ``t`` is rejected."""
    from .bipoly import BiPoly
    terms = parse_terms(text)
    if any(k[2] for k in terms):
        pos = text.find("t")
        raise ParseError("variable 't' not allowed here", text, max(pos, 0))
    return BiPoly.from_terms(K, {(ex, ey): _coerce(K, c, text) for (ey, ex, _), c in terms.items()})


def parse_unipoly(text: str, K: Field, var: str = "y"):
    from .poly import UniPoly
    terms = parse_terms(text)
    idx = VARS.index(var)
    coeffs = {}
    for k, c in terms.items():
        if any(k[j] for j in range(3) if j != idx):
            other = next(VARS[j] for j in range(3) if j != idx and k[j])
            raise ParseError(f"variable {other!r} not allowed here", text, max(text.find(other), 0))
        coeffs[k[idx]] = _coerce(K, c, text)
    n = max(coeffs, default=-1) + 1
    return UniPoly(K, tuple(coeffs.get(i, K.zero) for i in range(n)), var)


def parse_ext_bipoly(text: str, L: ExtField):
    """Polynomial in ``x, y, t`` read over ``L = K[t]/(q)``."""
    from .bipoly import BiPoly
    K = L.base
    terms = parse_terms(text)
    acc = {}
    for (ey, ex, et), c in terms.items():
        acc.setdefault((ex, ey), {})[et] = _coerce(K, c, text)
    out = {}
    for key, tc in acc.items():
        n = max(tc) + 1
        out[key] = L.from_coeffs([tc.get(i, K.zero) for i in range(n)])
    return BiPoly.from_terms(L, out)


# ----------------------------------------------------------------------
# printing

def _coeff_terms(K, c, base_key):
    """Expand a coefficient into ``(key, scalar)`` pairs over the bottom field.

    Extension elements over a prime field or QQ are written as polynomials
    in ``t``.
    """
    if isinstance(K, ExtField) and not isinstance(K.base, ExtField):
        out = []
        for i, a in enumerate(c):
            if a != K.base.zero:
                out.append(((base_key[0], base_key[1], base_key[2] + i), a))
        return out
    return [(base_key, c)]


def format_terms(K: Field, terms) -> str:
    """``terms``: iterable of ``((ey, ex, et), scalar)`` over ``K``'s bottom field.

    Deeper towers fall back to a parenthesised generator notation.
    """
    items = sorted(((k, c) for k, c in terms), key=lambda kc: kc[0], reverse=True)
    if not items:
        return "0"
    B = K.bottom if isinstance(K, ExtField) and not isinstance(K.base, ExtField) else K
    parts = []
    for k, c in items:
        mon = "*".join(
            (v if e == 1 else f"{v}^{e}") for v, e in zip(VARS, k) if e)
        if isinstance(B, ExtField):
            cs = f"({B.fmt(c)})"
            neg = False
        else:
            cs = str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
        if not mon:
            body = cs
        elif cs == "1":
            body = mon
        else:
            body = f"{cs}*{mon}"
        parts.append(("-" if neg else "+") + body)
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def bipoly_terms(F):
    K = F.field
    out = []
    for (i, j), c in F.terms().items():
        out.extend(_coeff_terms(K, c, (j, i, 0)))
    return out


def format_bipoly(F) -> str:
    return format_terms(F.field, bipoly_terms(F))


def format_unipoly(f) -> str:
    K = f.field
    idx = VARS.index(f.var) if f.var in VARS else 0
    out = []
    for e, c in enumerate(f.coeffs):
        if c == K.zero:
            continue
        key = [0, 0, 0]
        key[idx] = e
        out.extend(_coeff_terms(K, c, tuple(key)))
    return format_terms(K, out)
