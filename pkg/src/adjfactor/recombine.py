"""Recombination systems built from residues and traces.

Rows of ``M`` are indexed by the points over ``x = 0`` (one per irreducible
factor of ``F(0, y)``), columns by a basis of ``A``.  Recombination vectors
form the left kernel of ``M``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import dense as D
from . import linalg
from .errors import HprimeViolated, RootMismatch, SingularTraceForm
from .fields import ExtField, Field
from .poly import UniPoly
from .unifactor import UniFactorization, factor_univariate


@dataclass
class RecombSystem:
    field: Field
    M: list
    row_labels: list
    col_labels: list
    left_kernel: list

    @property
    def nrows(self):
        return len(self.row_labels)

    def dump(self) -> str:
        K = self.field
        lines = ["M: rows=" + ",".join(str(r) for r in self.row_labels)
                 + " cols=" + ",".join(str(c) for c in self.col_labels)]
        for lab, row in zip(self.row_labels, self.M):
            lines.append(f"  [{lab}] " + " ".join(K.fmt(v) for v in row))
        lines.append("kernel:")
        for v in self.left_kernel:
            lines.append("  (" + ",".join(K.fmt(c) for c in v) + ")")
        return "\n".join(lines)


@dataclass
class AbsoluteSystem:
    field: Field
    F0: UniPoly
    N: list
    L_basis: list
    B: list
    ImAlpha_basis: list
    sbar: int


def trace_powers(f: UniPoly, n: int | None = None) -> list:
    """Power sums ``p_0, ..., p_{n-1}`` (default ``n = deg f``) of the roots of monic ``f``."""
    return D.power_sums(f.field, list(f.coeffs), n or f.degree)


def trace_of(b: UniPoly, f: UniPoly, ps=None):
    """Trace of multiplication by ``b`` on ``k[y]/(f)`` for monic ``f``."""
    K = f.field
    ps = ps or trace_powers(f)
    r = D.dup_rem(K, list(b.coeffs), list(f.coeffs))
    acc = K.zero
    for a, p in zip(r, ps):
        acc = K.add(acc, K.mul(a, p))
    return acc


def kernel_reduced_echelon(K, M, nrows, ncols) -> list:
    """Reduced echelon basis of ``{v : v M = 0}``."""
    return linalg.left_nullspace(K, M, nrows, ncols)


def _label(f: UniPoly, mu: int = 1):
    if mu == 1:
        return str(f)
    s = str(f)
    return f"{s}^{mu}" if s.isalnum() else f"({s})^{mu}"


def build_T_separable(A, fac: UniFactorization, dFy0: UniPoly) -> RecombSystem:
    """``M[i][j] = Tr_{k[y]/(f_i)}(H_j / dFy0)``."""
    K = dFy0.field
    Hs = A.polys()
    M = []
    for f, mu in fac.factors:
        if mu != 1:
            raise ValueError("build_T_separable needs a squarefree factorization")
        fl = list(f.coeffs)
        inv = D.dup_invmod(K, list(dFy0.coeffs), fl)
        ps = D.power_sums(K, fl, len(fl) - 1)
        row = []
        for H in Hs:
            r = D.dup_mulmod(K, list(H.coeffs), inv, fl)
            row.append(_dot(K, r, ps))
        M.append(row)
    n = len(fac.factors)
    ker = kernel_reduced_echelon(K, M, n, len(Hs))
    return RecombSystem(K, M, [_label(f) for f, _ in fac.factors], [str(h) for h in Hs], ker)


def _dot(K, a, b):
    acc = K.zero
    for x, y in zip(a, b):
        acc = K.add(acc, K.mul(x, y))
    return acc


def laurent_residue(H: UniPoly, P: UniPoly, root, L: Field | None = None, mu: int | None = None):
    """Coefficient of ``(y - root)^-1`` in ``H/P`` (``root`` in ``L``)."""
    K = P.field
    L = L or K
    Pl = D.dup_embed(L, K, list(P.coeffs))
    Hl = D.dup_embed(L, K, list(H.coeffs))
    Ps = D.dup_taylor_shift(L, Pl, root)
    k = next((i for i, c in enumerate(Ps) if c != L.zero), None)
    if k is None or k == 0:
        raise RootMismatch(f"{L.fmt(root)} is not a root of {P}")
    if mu is not None and mu != k:
        raise RootMismatch(f"root has multiplicity {k}, not {mu}")
    Q = Ps[k:]
    Hs = D.dup_taylor_shift(L, Hl, root)
    # coefficient of s^(k-1) in Hs/Q
    inv = [L.inv(Q[0])]
    for n in range(1, k):
        acc = L.zero
        for j in range(1, min(n, len(Q) - 1) + 1):
            acc = L.add(acc, L.mul(Q[j], inv[n - j]))
        inv.append(L.neg(L.mul(acc, inv[0])))
    acc = L.zero
    for i in range(k):
        if i < len(Hs):
            acc = L.add(acc, L.mul(Hs[i], inv[k - 1 - i]))
    return acc


def root_clusters(F0: UniPoly, seed=0) -> list:
    """``(factor, multiplicity, L, root)`` for each irreducible factor of ``F0``."""
    K = F0.field
    out = []
    for f, mu in factor_univariate(F0, seed=seed).factors:
        if f.degree == 1:
            out.append((f, mu, K, K.neg(f.coeffs[0])))
        else:
            L = ExtField(K, list(f.coeffs))
            out.append((f, mu, L, L.gen))
    return out


def build_T_nonseparable(A, F0: UniPoly, F=None, seed=0) -> RecombSystem:
    """Traced residues ``Tr(res_root(H_j dy / F0))`` at every root cluster.

    When ``F`` is given, every multiple root is first checked to carry a
    single analytic branch of ``F = 0``.
    """
    K = F0.field
    clusters = root_clusters(F0, seed)
    if F is not None:
        bad = failing_hprime_points(F, seed)
        if bad:
            raise HprimeViolated("curve not analytically irreducible over x=0", bad)
    Hs = A.polys()
    M = []
    for f, mu, L, root in clusters:
        row = []
        for H in Hs:
            r = laurent_residue(H, F0, root, L, mu)
            row.append(L.abs_trace(r) if L != K else r)
        M.append(row)
    ker = kernel_reduced_echelon(K, M, len(clusters), len(Hs))
    return RecombSystem(K, M, [_label(f, mu) for f, mu, _, _ in clusters], [str(h) for h in Hs], ker)


def failing_hprime_points(F, seed=0) -> list:
    """Descriptions of points over ``x = 0`` with more than one branch."""
    from .branches import locally_irreducible, points_over_x0
    bad = []
    for pt, mu in points_over_x0(F, seed):
        if mu > 1 and not locally_irreducible(F, pt, seed=seed):
            bad.append(pt.describe())
    return bad


def trace_matrix(P: UniPoly) -> list:
    """``B[i][j] = Tr(y^(i+j))`` on ``k[y]/(P)``: the Hankel matrix of power sums."""
    K = P.field
    Pl = list(P.monic().coeffs)
    d = len(Pl) - 1
    ps = D.power_sums(K, Pl, 2 * d - 1)
    return [[ps[i + j] for j in range(d)] for i in range(d)]


def build_absolute_system(A, F0: UniPoly, dFy0: UniPoly) -> AbsoluteSystem:
    """The space ``L``, the Hankel trace matrix ``B`` and ``B^-1 L``."""
    K = F0.field
    P = list(F0.monic().coeffs)
    d = len(P) - 1
    try:
        inv = D.dup_invmod(K, list(dFy0.coeffs), P)
    except Exception:
        raise SingularTraceForm("F(0,y) is not separable") from None
    N = []
    for H in A.polys():
        r = D.dup_mulmod(K, list(H.coeffs), inv, P)
        N.append(r + [K.zero] * (d - len(r)))
    Lb = linalg.nullspace(K, N, d)
    B = trace_matrix(F0)
    try:
        Binv = linalg.inverse(K, B)
    except ZeroDivisionError:
        raise SingularTraceForm("trace form is degenerate") from None
    W = [linalg.vecmat(K, l, Binv, d) for l in Lb]  # B is symmetric
    # reduced echelon with the highest power of y as leftmost column, so the
    # constant function (pivot on y^0) ends up as a basis vector; move it first
    Wr = linalg.rref(K, [list(reversed(w)) for w in W], d)[0]
    W = [list(reversed(w)) for w in Wr]
    const = [w for w in W if all(c == K.zero for c in w[1:])]
    W = const + [w for w in W if w not in const]
    return AbsoluteSystem(K, F0, N, Lb, B, W, len(Lb))


def alpha_image_contains_one(sys: AbsoluteSystem) -> bool:
    K = sys.field
    e0 = [K.one] + [K.zero] * (len(sys.B) - 1)
    rows = sys.ImAlpha_basis
    n = len(e0)
    return linalg.rank(K, rows + [e0], n) == linalg.rank(K, rows, n)
