import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import Y, uni_to_sympy

from adjfactor import GF, QQ, ExtField, UniPoly, parse_unipoly
from adjfactor.unifactor import (distinct_degree_certificate, factor_over_extension, factor_univariate,
                                 is_irreducible, is_separable, squarefree_decomposition)


def U(s, K=QQ):
    return parse_unipoly(s, K)


def test_is_separable_examples():
    assert is_separable(U("y^3-y"))
    assert not is_separable(U("y^2*(y+1)^2*(y-1)"))
    assert is_separable(U("1"))
    assert not is_separable(U("y^7-3", GF(7)))


def test_factor_examples():
    fac = factor_univariate(U("y^3-y"))
    assert fac.unit == QQ.one
    assert fac.factors == ((U("y-1"), 1), (U("y"), 1), (U("y+1"), 1))
    fac = factor_univariate(U("y^5+y^4-y^3-y^2"))
    assert sorted((str(f), m) for f, m in fac.factors) == [("y", 2), ("y+1", 2), ("y-1", 1)]
    assert is_irreducible(U("y^2+1"))
    fac = factor_univariate(U("3"))
    assert fac.factors == () and fac.unit == QQ(3)


def test_factor_rational_content_and_unit():
    fac = factor_univariate(U("6*y^2-3/2"))
    assert fac.unit == QQ(6)
    assert fac.expand() == U("6*y^2-3/2")
    assert [f for f, _ in fac.factors] == [U("y-1/2"), U("y+1/2")]


def test_factor_over_extension_examples():
    L = ExtField(QQ, [-2, 0, 1], name="t")
    f = UniPoly(L, (L((-2, 0)), L.zero, L.one))
    fac = factor_over_extension(f)
    assert {g.coeffs for g in fac.polys()} == {(L.neg(L.gen), L.one), (L.gen, L.one)}
    # 3 is not a square mod 7, so y^2 - t is irreducible iff t is a non-square in GF(49)
    M = ExtField(GF(7), [-3, 0, 1], name="t")
    g = UniPoly(M, (M.neg(M.gen), M.zero, M.one))
    fac = factor_over_extension(g)
    assert fac.expand() == g
    roots = [a for a in (M((i, j)) for i in range(7) for j in range(7)) if M.mul(a, a) == M.gen]
    assert (len(fac.factors) == 2) == bool(roots)
    lin = UniPoly(M, (M.gen, M.one))
    assert factor_over_extension(lin).factors == ((lin, 1),)
    with pytest.raises(TypeError):
        factor_over_extension(U("y^2+1"))


def random_unipoly(K, deg, rng):
    c = [K.random(rng) for _ in range(deg)] + [K.one if rng.random() < 0.5 else K.random(rng)]
    if c[-1] == K.zero:
        c[-1] = K.one
    # sprinkle repeated factors now and then
    f = UniPoly(K, tuple(c))
    if rng.random() < 0.3 and deg <= 20:
        g = UniPoly(K, tuple(K.random(rng) for _ in range(rng.randint(1, 4))) + (K.one,))
        f = f * g * g
    return f


@pytest.mark.parametrize("p", [101, 10007])
def test_roundtrip_250_each(p):
    K = GF(p)
    rng = random.Random(p)
    for _ in range(250):
        f = random_unipoly(K, rng.randint(1, 40), rng)
        fac = factor_univariate(f, seed=rng.randint(0, 10 ** 6))
        assert fac.expand() == f
        assert len({g.coeffs for g in fac.polys()}) == len(fac.factors)
        for g in fac.polys():
            assert g.coeffs[-1] == K.one
            assert distinct_degree_certificate(g)


def test_certificate_rejects_reducible():
    K = GF(101)
    assert not distinct_degree_certificate(U("y^2-1", K))
    assert not distinct_degree_certificate(U("(y^2+2)^2", K))
    assert not distinct_degree_certificate(U("1", K))
    assert distinct_degree_certificate(U("y^2-2", K))  # 2 is a non-residue mod 101


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 100), min_size=2, max_size=15))
def test_separable_iff_all_multiplicities_one(c):
    f = UniPoly(GF(101), tuple(c))
    if f.is_zero() or f.degree < 1:
        return
    fac = factor_univariate(f)
    assert is_separable(f) == all(m == 1 for _, m in fac.factors)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=9))
def test_rational_against_sympy(c):
    f = UniPoly(QQ, tuple(QQ(x) for x in c))
    if f.is_zero() or f.degree < 1:
        return
    fac = factor_univariate(f)
    _, want = sympy.factor_list(uni_to_sympy(f), Y)
    got = sorted((f.degree, m) for f, m in fac.factors)
    assert got == sorted((sympy.degree(g, Y), m) for g, m in want)
    assert fac.expand() == f


def test_squarefree_decomposition_pth_power():
    K = GF(7)
    f = U("(y^7+2)*(y+1)^2", K)
    _, parts = squarefree_decomposition(f)
    prod = U("1", K)
    for h, m in parts:
        prod = prod * h ** m
    assert prod == f.monic()
    fac = factor_univariate(f)
    assert fac.expand() == f
    mults = {str(g): m for g, m in fac.factors}
    assert mults["y+1"] == 2 and mults["y+2"] == 7


def test_seed_determinism():
    K = GF(10007)
    f = U("y^12+3*y^7-5*y^2+11", K)
    assert factor_univariate(f, seed=5) == factor_univariate(f, seed=5)
    assert factor_univariate(f, seed=5).factors == factor_univariate(f, seed=6).factors
