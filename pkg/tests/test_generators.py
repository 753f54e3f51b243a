from itertools import combinations

import pytest

from conftest import gb_L, in_L
from diagrees.detmat import RowSpec, det, maximal_minors, rows
from diagrees.generators import (G_candidate_set, GeneratorSet, H_poly, L_generators, U_poly,
                                 base_families, default_ring, defining_f, f_lk, koszul_g, p_correction,
                                 p_lk, p_recursion, pair_greater)
from diagrees.groebner import buchberger, leading_monomial_ideal, normal_form
from diagrees.poly import ProblemParams, VariableId
from diagrees.rees import NOTFIBER_PARAMS, notfiber_f, notfiber_K

P22 = ProblemParams(2, 2, 2, 2, 2, 2)
P34 = ProblemParams(3, 4, 3, 4, 2, 4)


def test_generator_set_rules():
    ring = default_ring(P22)
    gs = GeneratorSet("T")
    assert not gs.add("zero", ring.zero())
    assert gs.add("a", ring.one())
    with pytest.raises(ValueError):
        gs.add("a", ring.one())
    assert gs.tags == ["a"] and len(gs) == 1
    assert gs.to_text() == "a: 1\n"


def test_koszul_g():
    ring = default_ring(P22)
    assert koszul_g(ring, 1, 1, 1, 1).is_zero()
    assert str(koszul_g(ring, 1, 1, 1, 2)) == "z[1,1]*x[1,2] - z[1,1]*y[1,2] - z[1,2]*x[1,1] + z[1,2]*y[1,1]"
    for i, j, l, k in [(1, 1, 2, 2), (1, 2, 2, 1)]:
        assert koszul_g(ring, i, j, l, k) == -koszul_g(ring, l, k, i, j)
    with pytest.raises(ValueError):
        koszul_g(ring, 3, 1, 1, 1, P22)


def test_pair_order():
    assert pair_greater((1, 1), (1, 2))
    assert pair_greater((1, 4), (2, 1))
    assert not pair_greater((2, 1), (1, 3))


@pytest.mark.parametrize("params,counts", [
    (P22, {"X": 1, "Y": 1, "g": 6, "f": 1}),
    (P34, {"X": 4, "Y": 6, "g": 66, "f": 4}),
    (ProblemParams(3, 3, 3, 3, 2, 2), {"X": 1, "Y": 1, "g": 36}),
])
def test_L_counts(params, counts):
    assert L_generators(params).counts() == counts


def test_f_example_3x4():
    ring = default_ring(P34)
    for cols in combinations(range(1, 5), 3):
        shown = (det(ring, RowSpec("Z", 1), rows("X", 2, 3), cols=cols)
                 + det(ring, RowSpec("Y", 1), RowSpec("Z", 2), RowSpec("X", 3), cols=cols))
        assert defining_f(ring, cols, P34) == shown
        assert p_lk(ring, 1, 1, cols, P34) == shown


def test_notfiber_f_is_a_different_member_of_K():
    # the example's displayed f is not the f of L for that shape, but both lie in K
    ring = default_ring(NOTFIBER_PARAMS)
    ours = defining_f(ring, (1, 2, 3), NOTFIBER_PARAMS)
    shown = notfiber_f(ring)
    assert ours != shown
    gbK = buchberger(notfiber_K().polynomials)
    assert normal_form(ours, gbK).is_zero()
    assert normal_form(shown, gbK).is_zero()


def test_f_lk_bounds():
    ring = default_ring(P34)
    with pytest.raises(ValueError):
        f_lk(ring, 2, 1, (1, 2, 3), P34)
    with pytest.raises(ValueError):
        f_lk(ring, 1, 2, (1, 2, 3), P34)        # needs s1 + k - 1 = 4 columns
    with pytest.raises(ValueError):
        p_lk(ring, 1, 3, (1, 2, 3, 4, 5), P34)
    odd = ProblemParams(3, 4, 2, 4, 3, 4)
    with pytest.raises(ValueError, match="not square"):
        f_lk(default_ring(odd), 1, 1, (1, 2), odd)


def test_p_identities_3x4():
    ring = default_ring(P34)
    for l, k in [(1, 1), (1, 2), (2, 2)]:
        for cols in combinations(range(1, 5), 3 + k - 1):
            p = p_lk(ring, l, k, cols, P34)
            assert p == p_recursion(ring, l, k, cols, P34)
            assert p == f_lk(ring, l, k, cols, P34) + p_correction(ring, l, k, cols, P34)


def test_f_and_p_lie_in_L_3x4():
    ring = default_ring(P34)
    gb = gb_L(P34)
    for l, k in [(1, 1), (1, 2), (2, 2)]:
        for cols in combinations(range(1, 5), 3 + k - 1):
            assert normal_form(f_lk(ring, l, k, cols, P34), gb).is_zero()
            assert normal_form(p_lk(ring, l, k, cols, P34), gb).is_zero()


def test_U_is_z_times_minor_modulo_g():
    ring = default_ring(P22)
    u = U_poly(ring, 1, 1, (1, 2), P22)
    minor = maximal_minors(ring, "X", 2, 2)[0]
    gs = buchberger([p for _, p in L_generators(P22, ring).family("g")])
    assert normal_form(u - ring.gen(VariableId("z", 1, 1)) * minor, gs).is_zero()
    assert normal_form(u, gb_L(P22)).is_zero()


def test_U_full_row_boundary():
    # q1 past every column: the mixed row is a pure x row
    ring = default_ring(P34)
    u = U_poly(ring, 1, 4, (1, 2, 3), P34)
    first = ring.gen(VariableId("z", 1, 4)) * det(ring, rows("X", 1, 1), rows("Y", 2, 3), cols=(1, 2, 3))
    rest = u - first
    assert all(ring.divides(ring.var(VariableId("x", 1, 4)), m) or ring.divides(ring.var(VariableId("y", 1, 4)), m)
               for m, _ in rest.terms)


def test_U_bounds():
    ring = default_ring(P34)
    with pytest.raises(ValueError):
        U_poly(ring, 4, 1, (1, 2, 3), P34)
    with pytest.raises(ValueError):
        U_poly(ring, 1, 1, (3, 2, 1), P34)


def test_H_cancels_row_terms():
    ring = default_ring(P34)
    h = H_poly(ring, 2, 2, 1, (1, 2, 3, 4), P34)
    z11 = ring.var(VariableId("z", 1, 1))
    for c in (2, 3, 4):
        bad = z11 + ring.var(VariableId("x", 1, c))
        assert not any(ring.divides(bad, m) for m, _ in h.terms)
    assert normal_form(h, gb_L(P34)).is_zero()
    with pytest.raises(ValueError):
        H_poly(ring, 1, 1, 1, (1, 2, 3), P34)


def test_G_contains_L():
    ring = default_ring(P22)
    G = G_candidate_set(P22, ring)
    L = L_generators(P22, ring)
    # G carries the f^{l,k} form of f; everything else of L appears verbatim
    assert {p for t, p in L if not t.startswith("f")} <= set(G.polynomials)
    gb = gb_L(P22)
    assert all(normal_form(p, gb).is_zero() for _, p in G.family("f"))
    assert G.counts() == {"X": 1, "Y": 1, "g": 6, "f": 1, "U": 4, "W^0": 1}


def test_G_3x4_members_and_initial_ideal():
    ring = default_ring(P34)
    G = G_candidate_set(P34, ring)
    assert G.counts() == {"X": 4, "Y": 6, "g": 66, "f": 6, "U": 48, "H": 4,
                          "W^0": 8, "I^0": 1, "W^1": 3, "I^1": 1}
    gb = gb_L(P34)
    assert all(normal_form(p, gb).is_zero() for p in G.polynomials)
    assert leading_monomial_ideal(G.polynomials) == in_L(P34)


def test_base_families_skip_f_when_stacks_not_square():
    odd = ProblemParams(3, 4, 2, 4, 3, 4)
    counts = base_families(odd).counts()
    assert "f" not in counts and "H" not in counts and counts["U"] > 0


def test_deterministic_text():
    assert L_generators(P34).to_text() == L_generators(P34).to_text()


def test_U_small_frozen():
    ring = default_ring(P22)
    assert str(U_poly(ring, 1, 1, (1, 2), P22)) == (
        "z[1,1]*x[1,1]*y[2,2] - z[1,1]*y[1,2]*y[2,1] - z[1,2]*x[1,1]*x[2,1] + z[1,2]*x[2,1]*y[1,1]"
        " - z[2,1]*x[1,1]*y[1,2] + z[2,1]*y[1,2]*y[1,1] + z[2,2]*x[1,1]^2 - z[2,2]*x[1,1]*y[1,1]")
