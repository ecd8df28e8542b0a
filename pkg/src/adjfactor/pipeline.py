"""End-to-end drivers: hypothesis check, rational and absolute factorization, analysis."""

from __future__ import annotations

from dataclasses import dataclass, field

from .absolute import AbsoluteFactorization, check_characteristic, split_with_retries
from .adjoint import ASpace, LocalData, adjoint_basis, restrict_to_A
from .bipoly import BiPoly
from .errors import (AlgebraError, HypothesisError, LiftMismatch, NotCoprime,
                     VerificationFailed)
from .lifting import multifactor_hensel, product_tree
from .poly import UniPoly
from .recombine import (build_absolute_system, build_T_nonseparable, build_T_separable,
                        failing_hprime_points)
from .unifactor import factor_univariate, is_separable

SEPARABLE = "SEPARABLE"
HPRIME = "HPRIME"
UNSUPPORTED = "UNSUPPORTED"


@dataclass
class HypothesisReport:
    kind: str
    reason: str = ""
    points: list = field(default_factory=list)

    def require(self, *allowed):
        if self.kind not in allowed:
            raise HypothesisError(self.reason or f"classification {self.kind}", self.points)


def check_hypothesis(F: BiPoly, seed=0) -> HypothesisReport:
    if not F.rows:
        return HypothesisReport(UNSUPPORTED, "zero polynomial")
    d = F.total_degree
    if d < 1:
        return HypothesisReport(UNSUPPORTED, "constant polynomial")
    F0 = F.at_x0()
    if F0.degree != d:
        return HypothesisReport(
            UNSUPPORTED, f"deg F(0,y) = {F0.degree} < d = {d}: the line x=0 meets the curve at (0:1:0)",
            ["(0:1:0)"])
    if is_separable(F0):
        return HypothesisReport(SEPARABLE)
    bad = failing_hprime_points(F, seed)
    if bad:
        return HypothesisReport(
            UNSUPPORTED, "F(0,y) is not separable and the curve has several branches at "
            + ", ".join(bad), bad)
    return HypothesisReport(HPRIME)


def _normalized(F: BiPoly):
    unit, Fm = F.monic_y()
    return unit, Fm


def kernel_partition(K, ker, n) -> list | None:
    """Supports of the kernel vectors if they form a 0/1 partition of ``range(n)``, else None."""
    covered = []
    groups = []
    for v in ker:
        idx = [i for i, c in enumerate(v) if c != K.zero]
        if any(v[i] != K.one for i in idx):
            return None
        groups.append(idx)
        covered.extend(idx)
    if sorted(covered) != list(range(n)):
        return None
    return groups


def validate_aspace(A: ASpace, system) -> None:
    """An externally supplied ``A`` must satisfy the residue theorem (all-ones in the left kernel)."""
    K = A.field
    for j in range(len(system.col_labels)):
        acc = K.zero
        for row in system.M:
            acc = K.add(acc, row[j])
        if acc != K.zero:
            raise AlgebraError(f"supplied basis element {system.col_labels[j]} has nonzero residue sum")


def rational_system(F: BiPoly, A: ASpace | None = None, seed=0, report=None, local=None, trunc=None):
    """Modular factors, their multiplicities and the recombination system."""
    report = report or check_hypothesis(F, seed)
    report.require(SEPARABLE, HPRIME)
    _, Fm = _normalized(F)
    F0 = Fm.at_x0()
    external = A is not None
    if A is None:
        local = local or LocalData.compute(Fm, seed, trunc)
        A = restrict_to_A(adjoint_basis(Fm, Fm.total_degree - 2, local), Fm.total_degree)
    fac = factor_univariate(F0, seed=seed)
    if report.kind == SEPARABLE:
        system = build_T_separable(A, fac, F0.diff())
    else:
        system = build_T_nonseparable(A, F0, Fm, seed)
    if external:
        validate_aspace(A, system)
    return fac, A, system


def factor_rational(F: BiPoly, A: ASpace | None = None, seed=0, trunc=None):
    """Irreducible factorization over the base field: ``(unit, factors)``."""
    report = check_hypothesis(F, seed)
    report.require(SEPARABLE, HPRIME)
    unit, Fm = _normalized(F)
    d = Fm.total_degree
    F0 = Fm.at_x0()
    fac = factor_univariate(F0, seed=seed)
    n = len(fac.factors)
    if n == 1:
        return unit, [Fm]
    fac, A, system = rational_system(F, A, seed, report, trunc=trunc)
    K = Fm.field
    if A.dim == d - 1:
        return unit, [Fm]
    groups = kernel_partition(K, system.left_kernel, n)
    if groups is None:
        raise VerificationFailed("recombination kernel is not a 0/1 partition")
    if len(groups) == 1:
        return unit, [Fm]
    g0 = [UniPoly(K, tuple(product_tree(K, [(f ** mu).coeffs for i, (f, mu) in enumerate(fac.factors)
                                             if i in grp])))
          for grp in groups]
    try:
        factors = multifactor_hensel(Fm, g0, d + 1)
    except (LiftMismatch, NotCoprime) as exc:
        raise VerificationFailed(f"lifting failed: {exc}") from exc
    return unit, sorted(factors, key=_factor_key)


def _factor_key(G: BiPoly):
    return (G.total_degree, G.deg_y, str(G))


def factor_absolute(F: BiPoly, A: ASpace | None = None, seed=0, trunc=None) -> AbsoluteFactorization:
    report = check_hypothesis(F, seed)
    if report.kind == HPRIME:
        raise HypothesisError("absolute factorization needs F(0,y) separable", report.points)
    report.require(SEPARABLE)
    _, Fm = _normalized(F)
    d = Fm.total_degree
    check_characteristic(Fm.field, d)
    F0 = Fm.at_x0()
    if A is None:
        A = restrict_to_A(adjoint_basis(Fm, d - 2, LocalData.compute(Fm, seed, trunc)), d)
    else:
        fac = factor_univariate(F0, seed=seed)
        validate_aspace(A, build_T_separable(A, fac, F0.diff()))
    system = build_absolute_system(A, F0, F0.diff())
    return split_with_retries(F, system, seed)


@dataclass
class CurveAnalysis:
    d: int
    n: int
    s: int
    sbar: int
    dimA: int
    genus_report: int
    hypothesis: str
    A: ASpace | None = None

    def line(self) -> str:
        return (f"d={self.d} n={self.n}(clusters) s={self.s} sbar={self.sbar} "
                f"dimA={self.dimA} genus_report={self.genus_report} hypothesis={self.hypothesis}")


def analyze(F: BiPoly, A: ASpace | None = None, seed=0, trunc=None) -> CurveAnalysis:
    """Counts of modular, rational and absolute factors plus ``dim Adj(d-3)``.

    ``genus_report`` is ``dim Adj(d-3)``: the sum of the geometric genera of
    the absolute components, given that the local data resolves every
    singularity.
    """
    report = check_hypothesis(F, seed)
    report.require(SEPARABLE, HPRIME)
    _, Fm = _normalized(F)
    d = Fm.total_degree
    local = LocalData.compute(Fm, seed, trunc)
    fac, A, system = rational_system(Fm, A, seed, report, local)
    n = len(fac.factors)
    s = len(system.left_kernel) if n > 1 else 1
    genus = adjoint_basis(Fm, d - 3, local).dim
    return CurveAnalysis(d, n, s, d - A.dim, A.dim, genus, report.kind, A)
