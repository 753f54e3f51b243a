"""Exhaustive checks over index tuples, packaged as verification reports."""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator

from .detmat import IDENTITIES, identity_pair, maximal_minors, topx_sum
from .generators import (G_candidate_set, L_generators, U_poly, default_ring, f_lk, p_correction,
                         p_lk, p_recursion)
from .groebner import initial_ideal, is_groebner, leading_monomial_ideal, normal_form
from .poly import ProblemParams, Ring, VariableId
from .rees import PASS, Deadline, VerificationReport, colon_witness, timed_gb

# ---------------------------------------------------------------------------
# determinant identities


def identity_cases(name: str, m: int, n: int) -> Iterator[dict]:
    """Every index choice for one identity inside an m x n grid."""
    sizes = range(1, min(m, n) + 1)
    if name == "YtoX":
        for s in sizes:
            for cols in combinations(range(1, n + 1), s):
                yield {"n": s, "cols": cols}
    elif name == "xtox_y":
        for s in sizes:
            for cols in combinations(range(1, n + 1), s):
                for i in range(1, s + 1):
                    for j in range(0, s + 1):
                        yield {"i": i, "j": j, "n": s, "cols": cols}
    elif name == "g_ij_expansion":
        for row in range(1, m + 1):
            for cols in combinations(range(1, n + 1), 3):
                yield {"row": row, "cols": cols}
    elif name == "switch_g":
        for r, u in product(range(1, m + 1), repeat=2):
            for cols in combinations(range(1, n + 1), 2):
                yield {"r": r, "u": u, "cols": cols}
    elif name == "xTox_y":
        for s in sizes:
            for cols in combinations(range(1, n + 1), s):
                for r in range(1, s + 1):
                    yield {"r": r, "cols": cols}
    else:
        raise ValueError(f"unknown identity {name!r}")


def identity_ring(m: int, n: int) -> Ring:
    return Ring([VariableId(f, i, j) for f in "xyz" for i in range(1, m + 1) for j in range(1, n + 1)])


def check_identity(name: str, m: int, n: int, deadline: Deadline | None = None) -> tuple[bool, str | None, int]:
    """(all hold, first failing case, number of cases)."""
    ring = identity_ring(m, n)
    count = 0
    for case in identity_cases(name, m, n):
        if deadline is not None:
            deadline.left()
        lhs, rhs = identity_pair(name, ring, **case)
        count += 1
        diff = lhs - rhs
        if diff:
            return False, f"{name}{_fmt(case)}: lhs - rhs = {diff}", count
    return True, None, count


def _fmt(case: dict) -> str:
    return "(" + ", ".join(f"{k}={v}" for k, v in case.items()) + ")"


# ---------------------------------------------------------------------------
# memberships in L


def topx_cases(params: ProblemParams) -> Iterator[tuple[int, tuple]]:
    if params.s2 > params.s1:
        return
    for r in range(1, params.s1 + 1):
        for cols in combinations(range(1, params.n + 1), params.s1 + 1):
            yield r, cols


def topx_ideal(params: ProblemParams, ring: Ring):
    """Maximal minors of the first s2 rows of Y over all columns, and the g's."""
    gs = [p for _, p in L_generators(params, ring).family("g")]
    return maximal_minors(ring, "Y", params.s2, params.n) + gs


def lk_cases(params: ProblemParams) -> Iterator[tuple[int, int, tuple]]:
    if params.s2 > params.s1:
        return
    width = min(params.t1, params.t2)
    for l in range(1, params.s2 + 1):
        for k in range(l, params.s2 + 1):
            for cols in combinations(range(1, width + 1), params.s1 + k - 1):
                yield l, k, cols


def u_cases(params: ProblemParams) -> Iterator[tuple[int, int, tuple]]:
    for p1 in range(1, params.s1 + 1):
        for q1 in range(1, params.n + 1):
            for cols in combinations(range(1, params.t1 + 1), params.s1):
                yield p1, q1, cols


def _first_nonzero(items, reduce_fn) -> str | None:
    for label, poly in items:
        r = reduce_fn(poly)
        if r:
            return f"{label}: {r}"
    return None


def membership_checks(rep: VerificationReport, params: ProblemParams, dl: Deadline) -> None:
    """topx in (Y-minors, g); f, p and U in L; the two p identities."""
    ring = default_ring(params)
    state: dict = {}

    def gb_L():
        if "L" not in state:
            state["L"] = timed_gb(L_generators(params, ring).polynomials, dl, rep.stats)
        return state["L"]

    def topx():
        gb = timed_gb(topx_ideal(params, ring), dl, rep.stats)
        items = ((f"topx(r={r};{list(c)})", topx_sum(ring, r, c, params)) for r, c in topx_cases(params))
        w = _first_nonzero(items, lambda p: normal_form(p, gb))
        return w is None, w

    def fin_l():
        gb = gb_L()
        items = []
        for l, k, cols in lk_cases(params):
            items.append((f"f({l};{k};{list(cols)})", f_lk(ring, l, k, cols, params)))
            items.append((f"p({l};{k};{list(cols)})", p_lk(ring, l, k, cols, params)))
        w = _first_nonzero(items, lambda p: normal_form(p, gb))
        return w is None, w

    def p_identities():
        items = []
        for l, k, cols in lk_cases(params):
            p = p_lk(ring, l, k, cols, params)
            items.append((f"p-recursion({l};{k};{list(cols)})", p - p_recursion(ring, l, k, cols, params)))
            items.append((f"p-correction({l};{k};{list(cols)})",
                          p - f_lk(ring, l, k, cols, params) - p_correction(ring, l, k, cols, params)))
        w = _first_nonzero(items, lambda p: p)
        return w is None, w

    def u_member():
        gb = gb_L()
        items = ((f"U({p1};{q1};{list(c)})", U_poly(ring, p1, q1, c, params)) for p1, q1, c in u_cases(params))
        w = _first_nonzero(items, lambda p: normal_form(p, gb))
        return w is None, w

    rep.run("topx", topx)
    rep.run("finL", fin_l)
    rep.run("p-identities", p_identities)
    rep.run("U", u_member)


def identities_report(params: ProblemParams, budget_secs: float | None = None) -> VerificationReport:
    rep = VerificationReport(params)
    dl = Deadline(budget_secs)
    for name in IDENTITIES:
        rep.run(name, lambda name=name: check_identity(name, params.m, params.n, dl)[:2])
    membership_checks(rep, params, dl)
    return rep


# ---------------------------------------------------------------------------
# the claimed Groebner basis


def gb_report(params: ProblemParams, budget_secs: float | None = None) -> VerificationReport:
    """Members of G lie in L, all S-pairs of G reduce to 0, in(G) = in(L)."""
    rep = VerificationReport(params)
    dl = Deadline(budget_secs)
    ring = default_ring(params)
    state: dict = {}

    def build():
        state["G"] = G_candidate_set(params, ring)
        state["gbL"] = timed_gb(L_generators(params, ring).polynomials, dl, rep.stats)
        return True, None

    if rep.run("build", build).verdict != PASS:
        return rep
    G, gbL = state["G"], state["gbL"]

    def members():
        w = _first_nonzero(G, lambda p: normal_form(p, gbL))
        return w is None, w

    def s_pairs():
        ok, fails = is_groebner(G.polynomials, product_criterion=True, budget_secs=dl.left())
        if ok:
            return True, None
        i, j, r = fails[0]
        return False, f"S({G.tags[i]}, {G.tags[j]}) -> {r} ({len(fails)} pairs fail)"

    def same_initial():
        inG = leading_monomial_ideal(G.polynomials)
        inL = initial_ideal(gbL)
        if inG == inL:
            return True, None
        ring_ = inL.ring
        missing = [g for g in inL.packed if not inG.contains(g)]
        if missing:
            return False, f"{ring_.mono_str(missing[0])} in in(L) but not in in(G)"
        extra = [g for g in inG.packed if not inL.contains(g)]
        return False, f"{ring_.mono_str(extra[0])} in in(G) but not in in(L)"

    rep.run("members-in-L", members)
    rep.run("s-pairs", s_pairs)
    rep.run("in(G)=in(L)", same_initial)
    return rep


# ---------------------------------------------------------------------------
# the 3x4 example

EXAMPLE_3X4 = ProblemParams(3, 4, 3, 4, 2, 4)

# the five monomials written out individually in the example
EXAMPLE_3X4_EXPLICIT = (
    (("z", 1, 1), ("z", 2, 2), ("y", 3, 4), ("y", 3, 3)),
    (("z", 2, 1), ("x", 1, 4), ("y", 1, 3), ("y", 3, 2)),
    (("z", 1, 2), ("z", 2, 1), ("x", 1, 2), ("y", 1, 4), ("y", 3, 3)),
    (("z", 1, 3), ("z", 2, 1), ("x", 1, 3), ("y", 1, 4), ("y", 3, 2)),
    (("z", 3, 1), ("x", 1, 4), ("x", 2, 3), ("y", 3, 2)),
)


def example_3x4_families(ring: Ring) -> dict[str, list[int]]:
    """The indexed monomial families of the example, with their index
    conditions as printed."""
    N = range(1, 5)

    def mono(*vs):
        return sum(ring.var(VariableId(f, i, j)) for f, i, j in vs)

    cells = [(i, j) for i in range(1, 4) for j in N]
    fams = {
        "x1a3*x2a2*x3a1": [mono(("x", 1, c), ("x", 2, b), ("x", 3, a)) for a, b, c in combinations(N, 3)],
        "y1b2*y2b1": [mono(("y", 1, b), ("y", 2, a)) for a, b in combinations(N, 2)],
        "zij*xlk": [mono(("z", i, j), ("x", l, k)) for (i, j), (l, k) in combinations(cells, 2)],
        "z1a1*y2a2*y3a3": [mono(("z", 1, a), ("y", 2, b), ("y", 3, c))
                           for a, b, c in product(N, N, N) if a < c < b],
        "explicit": [mono(*m) for m in EXAMPLE_3X4_EXPLICIT],
        "z2j*x1a3*x2a2*y3a1": [mono(("z", 2, j), ("x", 1, c), ("x", 2, b), ("y", 3, a))
                               for j, a, b, c in product(N, N, N, N)
                               if a < b <= j < c or b <= j < a < c],
        "z2j*x1a3*y2a2*y1a1": [mono(("z", 2, j), ("x", 1, c), ("y", 2, b), ("y", 1, a))
                               for j, a, b, c in product(N, N, N, N) if a < b < c and b < j],
        "z1j*x1a3*y2a2*y3a1": [mono(("z", 1, j), ("x", 1, c), ("y", 2, b), ("y", 3, a))
                               for j, a, b, c in product(N, N, N, N)
                               if a < b < c <= j or a < c <= j < b],
        "z1j*x1a3*y1b1*y2b2*y3b3": [mono(("z", 1, j), ("x", 1, c), ("y", 1, b1), ("y", 2, b2), ("y", 3, b3))
                                    for j, c, b1, b2, b3 in product(N, N, N, N, N) if b2 < b3 < c <= j],
    }
    return {k: list(dict.fromkeys(v)) for k, v in fams.items()}


def example_3x4(budget_secs: float | None = None) -> VerificationReport:
    """Each listed family consists of minimal generators of in(L), and x11
    divides none of them."""
    rep = VerificationReport(EXAMPLE_3X4)
    dl = Deadline(budget_secs)
    ring = default_ring(EXAMPLE_3X4)
    state: dict = {}

    def build():
        state["M"] = initial_ideal(timed_gb(L_generators(EXAMPLE_3X4, ring).polynomials, dl, rep.stats))
        return True, None

    if rep.run("initial-ideal", build).verdict != PASS:
        return rep
    M = state["M"]
    minimal = set(M.packed)
    for name, monos in example_3x4_families(ring).items():
        def fam(monos=monos):
            bad = [m for m in monos if m not in minimal]
            if not bad:
                return True, None
            why = "in in(L) but not minimal" if M.contains(bad[0]) else "not in in(L)"
            return False, f"{ring.mono_str(bad[0])} {why} ({len(bad)} of {len(monos)} off)"
        rep.run(f"family {name}", fam)

    x11 = ring.var(VariableId("x", 1, 1))

    def no_x11():
        hit = [g for g in M.packed if ring.divides(x11, g)]
        return not hit, ring.mono_str(hit[0]) if hit else None

    rep.run("x11-divides-no-generator", no_x11)
    rep.run("nzd-x11", lambda: (lambda w: (w is None, w))(colon_witness(M, VariableId("x", 1, 1))))
    return rep
