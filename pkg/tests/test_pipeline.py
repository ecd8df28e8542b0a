import random
from functools import lru_cache

import pytest

from gen import SEVEN, absolutely_irreducible, product, random_component

from adjfactor import GF, QQ, BiPoly, ExtField, UniPoly, parse_bipoly
from adjfactor.absolute import norm_down
from adjfactor.adjoint import read_aspace
from adjfactor.errors import AlgebraError, HypothesisError, VerificationFailed
from adjfactor.parse import parse_ext_bipoly
from adjfactor.pipeline import (HPRIME, SEPARABLE, UNSUPPORTED, analyze, check_hypothesis, factor_absolute,
                                factor_rational, kernel_partition)
from adjfactor.unifactor import is_irreducible, is_separable


def P(s, K=QQ):
    return parse_bipoly(s, K)


@pytest.mark.parametrize("s,kind", [
    (SEVEN, HPRIME),
    ("(y^2+y+x)*(y-1+x)", SEPARABLE),
    ("y^2-x^3", UNSUPPORTED),
    ("y^3-x", HPRIME),
    ("(y-x)*(y+x)*(y-1)", UNSUPPORTED),
    ("0", UNSUPPORTED),
    ("7", UNSUPPORTED),
])
def test_classification(s, kind):
    assert check_hypothesis(P(s)).kind == kind


def test_unsupported_names_points():
    rep = check_hypothesis(P("y^2-x^3"))
    assert rep.points == ["(0:1:0)"]
    rep = check_hypothesis(P("(y-x)*(y+x)*(y-1)"))
    assert rep.points == ["(0,0) mult=2"]
    with pytest.raises(HypothesisError) as exc:
        factor_rational(P("(y-x)*(y+x)*(y-1)"))
    assert exc.value.points == ["(0,0) mult=2"]


def test_rational_examples():
    unit, fs = factor_rational(P(SEVEN))
    assert unit == 1 and [str(f) for f in fs] == ["y^2-x", "y^3+y^2-y-x-1"]
    unit, fs = factor_rational(P("(y^2+y+x)*(y-1+x)"))
    assert fs == [P("y+x-1"), P("y^2+y+x")]
    F = P("y^3-x^2+1")
    assert factor_rational(F) == (1, [F])


def test_unit_is_split_off():
    unit, fs = factor_rational(P("3*(y^2-x)*(y-x-2)"))
    assert unit == 3 and fs == [P("y-x-2"), P("y^2-x")]


def test_kernel_partition():
    K = QQ
    assert kernel_partition(K, [[1, 0, 1], [0, 1, 0]], 3) == [[0, 2], [1]]
    assert kernel_partition(K, [[1, 2, 0]], 3) is None
    assert kernel_partition(K, [[1, 1, 0]], 3) is None


def test_absolute_examples():
    res = factor_absolute(P("y^2-2*(x+1)^2"))
    assert [str(q) for q, _ in res.pairs] == ["t^2-2"]
    F = P("y^3-x^2+1")
    res = factor_absolute(F)
    assert len(res.pairs) == 1 and res.pairs[0][1] == F


def test_absolute_cube_root_norm_form():
    L = ExtField(QQ, [-2, 0, 0, 1], name="t")
    F = norm_down(parse_ext_bipoly("y-t*x-t^2", L), L)
    res = factor_absolute(F)
    ((q, Q),) = res.pairs
    assert q.degree == 3
    assert norm_down(Q, Q.field) == F


@pytest.mark.parametrize("s,line", [
    (SEVEN, "d=5 n=3(clusters) s=2 sbar=2 dimA=3 genus_report=0 hypothesis=HPRIME"),
    ("y^4+x^4+x*y+1", "d=4 n=1(clusters) s=1 sbar=1 dimA=3 genus_report=3 hypothesis=SEPARABLE"),
    ("(y-x)*(y-2*x-1)*(y+x-2)*(y+3*x+3)",
     "d=4 n=4(clusters) s=4 sbar=4 dimA=0 genus_report=0 hypothesis=SEPARABLE"),
])
def test_analyze_lines(s, line):
    an = analyze(P(s))
    assert an.line() == line
    assert an.dimA == an.d - an.sbar


def test_external_aspace():
    F = P(SEVEN)
    good = read_aspace("y+1\ny^2\ny^3\n", QQ, 5)
    assert [str(f) for f in factor_rational(F, good)[1]] == ["y^2-x", "y^3+y^2-y-x-1"]
    assert analyze(F, good).sbar == 2
    G = P("(y^2+y+x)*(y-1+x)")
    assert factor_rational(G, read_aspace("y-1\n", QQ, 3))[1] == [P("y+x-1"), P("y^2+y+x")]
    with pytest.raises(AlgebraError):
        factor_rational(G, read_aspace("y^2\n", QQ, 3))
    # a well-formed basis that groups the fiber wrongly cannot be lifted
    with pytest.raises(VerificationFailed):
        factor_rational(P("(y^2-x-4)*(y-x-3)"), read_aspace("y-1\n", QQ, 3))


def test_absolute_refuses_hprime():
    with pytest.raises(HypothesisError):
        factor_absolute(P(SEVEN))


def quadratic_norm(K, rng):
    """Norm of a line whose slope generates a quadratic extension: k-irreducible, two absolute components."""
    while True:
        m = UniPoly(K, (K.random(rng), K.random(rng), K.one), "t")
        if is_irreducible(m):
            break
    L = ExtField(K, list(m.coeffs), name="t")
    a = L((K.random(rng), K.one + K.random(rng) % (K.p - 1)))
    b = L((K.random(rng), K.random(rng)))
    Q = parse_ext_bipoly("y", L) - BiPoly.constant(L, a) * parse_ext_bipoly("x", L) - BiPoly.constant(L, b)
    return norm_down(Q, L)


@lru_cache(maxsize=None)
def mixed_instances(count, seed=5, p=10007):
    K = GF(p)
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        norms = [quadratic_norm(K, rng) for _ in range(rng.randint(0, 2))]
        comps = [random_component(K, rng.randint(1, 3), rng) for _ in range(rng.randint(1, 2))]
        if len(norms + comps) < 2 or not all(absolutely_irreducible(c, rng) for c in comps):
            continue
        F = product(norms + comps)
        if F.total_degree > 8 or not is_separable(F.at_x0()):
            continue
        out.append((norms + comps, F))
    return out


@pytest.mark.parametrize("idx", range(10))
def test_rational_and_absolute_agree(idx):
    comps, F = mixed_instances(10)[idx]
    _, rat = factor_rational(F)
    assert sorted(map(str, rat)) == sorted(map(str, comps))
    res = factor_absolute(F, seed=idx)
    norms = [Q if q.degree == 1 else norm_down(Q, Q.field) for q, Q in res.pairs]
    assert sorted(map(str, norms)) == sorted(map(str, rat))
    for G in rat:
        assert analyze(G).s == 1
