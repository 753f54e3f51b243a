from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import DESK_PARAMS
from diagrees.generators import L_generators, default_ring
from diagrees.groebner import (BudgetExceeded, EngineStats, MonomialIdeal, buchberger, eliminate,
                               ideal_member, initial_ideal, is_groebner, monomial_colon, normal_form,
                               reduce_basis, s_polynomial)
from diagrees.poly import T, BlockElim, PaperLex, PlainLex, Polynomial, ProblemParams, Ring, VariableId

VARS = tuple(VariableId("x", 1, j) for j in range(1, 4))
LEX = Ring(VARS, PlainLex(VARS))
SYMS = sympy.symbols("a b c")


def P(text, ring=LEX):
    return ring.parse(text)


def _term(c, m):
    return sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * sympy.Mul(
        *(s ** e for s, e in zip(SYMS, LEX.exponents(m))))


def sym(p: Polynomial):
    return sympy.expand(sum((_term(c, m) for m, c in p.terms), sympy.Integer(0)))


monomials = st.lists(st.integers(0, 2), min_size=3, max_size=3)


def _build(ts):
    acc = {}
    for c, e in ts:
        m = LEX.pack_exponents(e)
        acc[m] = acc.get(m, 0) + c
    return Polynomial(LEX, {m: c for m, c in acc.items() if c})


polys = st.lists(st.tuples(st.integers(-3, 3).filter(bool), monomials), min_size=1, max_size=3).map(_build)


@settings(max_examples=40, deadline=None)
@given(st.lists(polys.filter(bool), min_size=1, max_size=3))
def test_reduced_basis_matches_sympy(gens):
    ours = buchberger(gens)
    theirs = sympy.groebner([sym(g) for g in gens], *SYMS, order="lex")
    ours_sym = sorted((sympy.expand(sym(p)) for p in ours), key=sympy.default_sort_key)
    theirs_monic = sorted((sympy.expand(q / sympy.Poly(q, *SYMS).LC(order="lex")) for q in theirs.exprs),
                          key=sympy.default_sort_key)
    assert ours_sym == theirs_monic


@settings(max_examples=40, deadline=None)
@given(st.lists(polys.filter(bool), min_size=1, max_size=3), polys)
def test_normal_form_membership_matches_sympy(gens, p):
    gb = buchberger(gens)
    ours = normal_form(p, gb)
    theirs = sympy.groebner([sym(g) for g in gens], *SYMS, order="lex")
    assert ours.is_zero() == theirs.contains(sym(p))
    assert ideal_member(p, gb) == ours.is_zero()


@settings(max_examples=30, deadline=None)
@given(st.lists(polys.filter(bool), min_size=1, max_size=3))
def test_strategies_agree(gens):
    ref = buchberger(gens).elements
    for strategy in ("fifo", "lex"):
        assert buchberger(gens, strategy=strategy).elements == ref
    assert buchberger(gens, product_criterion=False, chain_criterion=False).elements == ref


@settings(max_examples=30, deadline=None)
@given(st.lists(polys.filter(bool), min_size=1, max_size=3))
def test_output_is_groebner_and_reduced(gens):
    gb = buchberger(gens)
    assert is_groebner(gb.elements)[0]
    assert reduce_basis(gb.elements) == gb.elements
    assert all(ideal_member(g, gb) for g in gens)


def test_s_polynomial_example():
    f, g = P("x[1,1]^2 + x[1,2]"), P("x[1,1]*x[1,2] + 1")
    assert s_polynomial(f, g) == P("x[1,2]^2 - x[1,1]")
    with pytest.raises(ValueError):
        s_polynomial(f, LEX.zero())


def test_normal_form_example():
    gb = buchberger([P("x[1,1] - x[1,2]"), P("x[1,2]^2 - 1")])
    assert [str(p) for p in gb] == ["x[1,1] - x[1,2]", "x[1,2]^2 - 1"]
    assert normal_form(P("x[1,1]^3"), gb) == P("x[1,2]")
    assert normal_form(P("x[1,1]^2 - 1"), gb).is_zero()


def test_unit_ideal():
    gb = buchberger([P("x[1,1]"), P("x[1,1] + 1")])
    assert gb.is_unit() and [str(p) for p in gb] == ["1"]


def test_is_groebner_detects_failure():
    ok, bad = is_groebner([P("x[1,1]^2 + x[1,2]"), P("x[1,1]*x[1,2] + 1")])
    assert not ok and bad[0][:2] == (0, 1)


def test_monomial_ideal_and_colon():
    M = MonomialIdeal.from_monomials(LEX, [{VARS[0]: 2}, {VARS[0]: 1, VARS[1]: 1}, {VARS[0]: 3}])
    assert M.strings() == ["x[1,1]^2", "x[1,1]*x[1,2]"]
    C = monomial_colon(M, VARS[0])
    assert C.strings() == ["x[1,1]", "x[1,2]"]
    assert monomial_colon(C, VARS[2]) == C


def test_eliminate_parametrisation():
    z, x = VariableId("z", 1, 1), VariableId("x", 1, 1)
    ring = Ring([T, z, x], BlockElim({T}, PaperLex()))
    t, zz, xx = ring.gen(T), ring.gen(z), ring.gen(x)
    assert [str(p) for p in eliminate([zz - t * xx, t], {T})] == ["z[1,1]"]
    assert [str(p) for p in eliminate([zz - t * xx, t - 1], {T})] == ["z[1,1] - x[1,1]"]
    assert eliminate([zz - t * xx], {T}) == []
    assert eliminate([], {T}) == []


def test_budget_exceeded():
    params = ProblemParams(3, 4, 3, 4, 2, 4)
    with pytest.raises(BudgetExceeded):
        buchberger(L_generators(params).polynomials, budget_secs=1e-4)


@pytest.mark.parametrize("params", DESK_PARAMS, ids=str)
def test_L_strategies_give_one_basis(params):
    ring = default_ring(params)
    gens = L_generators(params, ring).polynomials
    a = buchberger(gens, strategy="normal")
    b = buchberger(gens, strategy="fifo")
    assert a.elements == b.elements
    assert initial_ideal(a) == initial_ideal(b)


def test_stats_are_counted():
    stats = EngineStats()
    buchberger(L_generators(ProblemParams(2, 2, 2, 2, 2, 2)).polynomials, stats=stats)
    d = stats.as_dict()
    assert d["pairs"] > 0 and d["reductions"] > 0 and d["max_degree"] >= 2


def test_mixed_rings_rejected():
    other = Ring(VARS[:2], PlainLex(VARS[:2]))
    with pytest.raises(ValueError):
        normal_form(P("x[1,1]"), [other.parse("x[1,1]")])
