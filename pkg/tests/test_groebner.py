import random

import pytest
import sympy

from conftest import from_sympy, random_poly, symbols, to_sympy
from hautus.groebner import (
    IdealBasis,
    SubmoduleBasis,
    VectorPoly,
    buchberger,
    colon_against_unit_vector,
    contains_one,
    ideal_membership,
    krull_dimension,
    maximal_independent_set,
    module_buchberger,
    module_membership,
    normal_form,
    syzygies,
)
from hautus.polymatrix import PolyMatrix, minors, parse_matrix
from hautus.polyring import DEGREVLEX, LEX, Poly, gcd_list, parse_poly


def I(*texts, n=3):
    return IdealBasis([parse_poly(t, n) for t in texts], n)


def V(*texts, n=3):
    return VectorPoly([parse_poly(t, n) for t in texts], n)


def rowmod(text):
    m = parse_matrix(text)
    return SubmoduleBasis.from_rows(m.entries, m.nvars)


P2 = "vars: 3\n0; -d3; d2\nd3; 0; -d1\n-d1*d2; d1^2; 0\n"


def test_buchberger_examples():
    assert set(buchberger(I("d1", "d2", n=2)).elements) == {parse_poly("d1", 2),
                                                             parse_poly("d2", 2)}
    assert buchberger(I("1 + d1", "d1", n=2)).elements == (Poly.one(2),)
    with pytest.raises(ValueError):
        buchberger(IdealBasis([], 2))


def test_zero_generators_dropped():
    assert IdealBasis([Poly.zero(2), parse_poly("d1", 2)]).generators == (parse_poly("d1", 2),)


def test_normal_form_examples():
    g = parse_poly("d1^2*d2 - d3", 3)
    G = buchberger(IdealBasis([g, parse_poly("d2^2 + d1", 3)]))
    assert normal_form(g, G).is_zero()
    assert normal_form(Poly.one(2), buchberger(I("d1", "d2", n=2))) == Poly.one(2)
    G1 = buchberger(I("d1 - 1", n=1))
    assert normal_form(parse_poly("d1^2", 1), G1) == Poly.one(1)
    with pytest.raises(ValueError):
        normal_form(Poly.one(1), G1, LEX if G1.order != LEX else DEGREVLEX)


def test_contains_one_examples():
    assert contains_one(I("d1", "1 - d1"))
    assert not contains_one(I("d1", "d2"))
    m = parse_matrix("vars: 1\n1; d1\n")
    assert contains_one(IdealBasis(minors(m, 1).nonzero()))


def test_krull_dimension_examples():
    fit1 = I("d1^2", "d2^2", "d3^2", "d1*d2", "d1*d3", "d2*d3")
    fit2 = I("d1^3", "d3^2", "d1*d3", "d2*d3", "d1*d2^2", "d1^2*d2")
    assert krull_dimension(fit1) == 0
    assert krull_dimension(fit2) == 1
    assert krull_dimension(I("1")) == -1
    assert krull_dimension(IdealBasis([], 3)) == 3
    assert krull_dimension(I("d1*d2")) == 2
    assert len(maximal_independent_set(fit2)) == 1


def test_gb_matches_sympy():
    rng = random.Random(17)
    for _ in range(40):
        n = rng.choice([2, 3])
        gens = [random_poly(rng, n, max_degree=2, terms=3, coeff=4) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        mine = set(buchberger(IdealBasis(gens, n)).elements)
        oracle = sympy.groebner([to_sympy(g).as_expr() for g in gens], *symbols(n),
                                order="grevlex")
        theirs = {from_sympy(e, n).monic() for e in oracle.exprs}
        assert mine == theirs


def test_gb_idempotent_and_generators_reduce_to_zero():
    rng = random.Random(23)
    for _ in range(20):
        gens = [random_poly(rng, 3, max_degree=2, terms=3) for _ in range(3)]
        ideal = IdealBasis(gens, 3)
        if ideal.is_zero():
            continue
        G = buchberger(ideal)
        assert buchberger(IdealBasis(G.elements, 3)) == G
        for g in ideal.generators:
            assert normal_form(g, G).is_zero()
            assert ideal_membership(g * parse_poly("d1 + 2", 3), ideal)
        assert (krull_dimension(ideal) == -1) == contains_one(ideal)


def test_dimension_gcd_duality_random_2x3():
    rng = random.Random(31)
    seen = {True: 0, False: 0}
    for trial in range(60):
        n = 2 + trial % 2
        rows = [[random_poly(rng, n, max_degree=1, terms=2) for _ in range(3)] for _ in range(2)]
        if trial % 3 == 0:
            h = random_poly(rng, n, max_degree=1, terms=2, const=False)
            rows[0] = [h * e for e in rows[0]]
        nz = minors(PolyMatrix(rows, n), 2).nonzero()
        if not nz:
            continue
        gcd_nonconstant = not gcd_list(nz).is_constant()
        assert (krull_dimension(IdealBasis(nz, n)) == n - 1) == gcd_nonconstant
        seen[gcd_nonconstant] += 1
    assert seen[True] and seen[False]


# --- modules ----------------------------------------------------------------


def test_module_membership_examples():
    M = rowmod(P2)
    for g in M.generators:
        assert module_membership(g, M)
    e1 = VectorPoly.unit(0, 1, 1)
    assert not module_membership(e1, SubmoduleBasis([V("d1", n=1)]))
    assert not module_membership(V("-d2", "d1", "0"), M)
    assert module_membership(V("-d1*d2", "d1^2", "0"), M)
    with pytest.raises(ValueError):
        module_membership(V("d1", "d2"), M)


def test_membership_invariant_under_regeneration():
    rng = random.Random(41)
    M = rowmod(P2)
    gens = list(M.generators)
    combo = gens[0].scale(parse_poly("d2 + 1", 3)) + gens[2].scale(parse_poly("d3", 3))
    M2 = SubmoduleBasis(gens + [combo])
    for _ in range(10):
        v = VectorPoly([random_poly(rng, 3, max_degree=2, terms=2) for _ in range(3)], 3)
        if rng.random() < 0.5:
            v = gens[1].scale(random_poly(rng, 3, max_degree=1, terms=2)) + \
                gens[0].scale(random_poly(rng, 3, max_degree=1, terms=2))
        assert module_membership(v, M) == module_membership(v, M2)


def test_module_gb_reuse():
    M = rowmod(P2)
    G = module_buchberger(M)
    assert module_membership(V("-d1*d2", "d1^2", "0"), G)


def test_syzygies_are_relations():
    vecs = [V("d1", "d2", n=2), V("d2", "0", n=2), V("0", "d1", n=2)]
    syz = syzygies(vecs)
    assert syz
    for s in syz:
        total = VectorPoly([Poly.zero(2)] * 2, 2)
        for coeff, v in zip(s, vecs):
            total = total + v.scale(coeff)
        assert total.is_zero()


def test_colon_examples():
    grad = rowmod("vars: 2\nd1; d2\n")
    assert colon_against_unit_vector(grad, 0).is_zero()
    assert colon_against_unit_vector(grad, 1).is_zero()
    single = SubmoduleBasis([V("d1", n=1)])
    col = colon_against_unit_vector(single, 0)
    assert buchberger(col).elements == (parse_poly("d1", 1),)
    full = rowmod("vars: 2\n1; 0\n0; 1\n")
    for j in (0, 1):
        assert contains_one(colon_against_unit_vector(full, j))
    with pytest.raises(IndexError):
        colon_against_unit_vector(full, 2)
