"""The Rees ideal K by elimination, and the checks built on it.

K is the kernel of k[X,Y,Z] -> S[t], z[i,j] -> t (x[i,j] - y[i,j]), where S is
k[X,Y] modulo the two minor ideals.  It is computed by eliminating t from
(minors, z - t(x - y)).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

from .detmat import RowSpec, det, entry, maximal_minors, rows
from .generators import GeneratorSet, L_generators, default_ring
from .groebner import (BudgetExceeded, EngineStats, buchberger, eliminate, initial_ideal,
                       monomial_colon, normal_form)
from .poly import T, PaperLex, Polynomial, ProblemParams, Ring, VariableId

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class Check:
    name: str
    verdict: str
    witness: str | None = None
    elapsed_ms: int = 0

    def as_dict(self) -> dict:
        out = {"name": self.name, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        out["elapsed_ms"] = self.elapsed_ms
        return out


@dataclass
class VerificationReport:
    params: ProblemParams | None
    checks: list[Check] = field(default_factory=list)
    stats: EngineStats = field(default_factory=EngineStats)

    @property
    def verdict(self) -> str:
        verdicts = {c.verdict for c in self.checks}
        if FAIL in verdicts:
            return FAIL
        if INCONCLUSIVE in verdicts:
            return INCONCLUSIVE
        return PASS

    def run(self, name: str, fn: Callable[[], tuple[bool, str | None]]) -> Check:
        """Run ``fn`` (returning (ok, witness)) as one named check."""
        start = time.monotonic()
        try:
            ok, witness = fn()
            verdict = PASS if ok else FAIL
            if not ok and witness is None:
                raise AssertionError(f"check {name} failed without a witness")
        except BudgetExceeded as exc:
            verdict, witness = INCONCLUSIVE, f"budget: {exc}"
        chk = Check(name, verdict, witness, int((time.monotonic() - start) * 1000))
        self.checks.append(chk)
        return chk

    def as_dict(self, timings: bool = True) -> dict:
        checks = [c.as_dict() for c in self.checks]
        if not timings:
            for c in checks:
                c["elapsed_ms"] = 0
        return {
            "schema": 1,
            "params": None if self.params is None else list(self.params.as_tuple()),
            "checks": checks,
            "engine": {k: self.stats.as_dict()[k] for k in ("pairs", "reductions", "max_degree")},
        }


class Deadline:
    """Shared wall-clock budget handed out piecewise to engine calls."""

    def __init__(self, budget_secs: float | None):
        self.end = None if budget_secs is None else time.monotonic() + budget_secs

    def left(self) -> float | None:
        if self.end is None:
            return None
        rest = self.end - time.monotonic()
        if rest <= 0:
            raise BudgetExceeded("time budget exhausted")
        return rest


def _merge(into: EngineStats, part: EngineStats) -> None:
    into.pairs_created += part.pairs_created
    into.pairs_product += part.pairs_product
    into.pairs_chain += part.pairs_chain
    into.pairs_reduced += part.pairs_reduced
    into.zero_reductions += part.zero_reductions
    into.basis_insertions += part.basis_insertions
    into.max_degree = max(into.max_degree, part.max_degree)


def timed_gb(polys, deadline: Deadline, stats: EngineStats):
    part = EngineStats()
    try:
        return buchberger(polys, budget_secs=deadline.left(), stats=part)
    finally:
        _merge(stats, part)


# ---------------------------------------------------------------------------
# K


def rees_input(ring: Ring, minors: Sequence[Polynomial], m: int, n: int) -> list[Polynomial]:
    """Minors plus z[i,j] - t (x[i,j] - y[i,j]) over an m x n grid."""
    t = ring.gen(T)
    out = list(minors)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            out.append(ring.gen(VariableId("z", i, j)) - t * entry(ring, "XminusY", i, j))
    return out


def _eliminate_t(params: ProblemParams, minor_fn, budget_secs, stats) -> GeneratorSet:
    rt = default_ring(params, with_t=True)
    ring = default_ring(params)
    part = EngineStats()
    try:
        kept = eliminate(rees_input(rt, minor_fn(rt), params.m, params.n), {T},
                         budget_secs=budget_secs, stats=part)
    finally:
        if stats is not None:
            _merge(stats, part)
    return GeneratorSet("K", [(f"K({i})", ring.convert(p)) for i, p in enumerate(kept, start=1)])


def corner_minors(params: ProblemParams) -> Callable[[Ring], list[Polynomial]]:
    return lambda r: (maximal_minors(r, "X", params.s1, params.t1)
                      + maximal_minors(r, "Y", params.s2, params.t2))


def rees_ideal(params: ProblemParams, budget_secs: float | None = None,
               stats: EngineStats | None = None) -> GeneratorSet:
    return _eliminate_t(params, corner_minors(params), budget_secs, stats)


def special_fiber(K: Sequence[Polynomial], budget_secs: float | None = None,
                  stats: EngineStats | None = None) -> list[Polynomial]:
    """K intersected with k[Z]; empty exactly when the join fills the space."""
    K = [p for p in K if p]
    if not K:
        return []
    ring = K[0].ring
    xy = [v for v in ring.ranked if v.family in ("x", "y")]
    part = EngineStats()
    try:
        return eliminate(K, xy, budget_secs=budget_secs, stats=part)
    finally:
        if stats is not None:
            _merge(stats, part)


def substitution_residue(k: Polynomial, params: ProblemParams, minors_gb) -> Polynomial:
    """k with z := x - y, reduced modulo the minors (zero for k in K)."""
    ring = minors_gb.ring
    sub = {VariableId("z", i, j): entry(ring, "XminusY", i, j)
           for i in range(1, params.m + 1) for j in range(1, params.n + 1)}
    return normal_form(ring.convert(k).substitute(sub), minors_gb)


# ---------------------------------------------------------------------------
# reports


def _first_outside(polys, gb) -> str | None:
    for p in polys:
        r = normal_form(p, gb)
        if r:
            return str(r)
    return None


def _containment(polys, gb) -> tuple[bool, str | None]:
    w = _first_outside(polys, gb)
    return w is None, w


def verify_linear_type(params: ProblemParams, budget_secs: float | None = None) -> VerificationReport:
    """L = K by mutual normal-form containment."""
    rep = VerificationReport(params)
    dl = Deadline(budget_secs)
    ring = default_ring(params)
    L = L_generators(params, ring).polynomials
    state: dict = {}

    def build():
        state["K"] = rees_ideal(params, dl.left(), rep.stats).polynomials
        state["gbL"] = timed_gb(L, dl, rep.stats)
        state["gbK"] = timed_gb(state["K"], dl, rep.stats) if state["K"] else None
        return True, None

    if rep.run("compute-K", build).verdict != PASS:
        return rep
    rep.run("L-in-K", lambda: _containment(L, state["gbK"] or []))
    rep.run("K-in-L", lambda: _containment(state["K"], state["gbL"]))
    return rep


def colon_witness(M, v: VariableId) -> str | None:
    C = monomial_colon(M, v)
    extra = [g for g in C.packed if not M.contains(g)]
    return None if not extra else M.ring.mono_str(extra[0])


def nzd_check(gens: Sequence[Polynomial], v: VariableId, budget_secs: float | None = None,
              stats: EngineStats | None = None) -> tuple[bool, str | None]:
    """(in(I) : v) = in(I) in the ring's order; witness is a monomial u with
    u*v in in(I) but u outside it."""
    gb = buchberger(gens, budget_secs=budget_secs, stats=stats)
    w = colon_witness(initial_ideal(gb), v)
    return w is None, w


def nzd_certificate(params: ProblemParams, budget_secs: float | None = None) -> VerificationReport:
    rep = VerificationReport(params)
    dl = Deadline(budget_secs)
    for name, order, var in (("nzd-x11", PaperLex(), VariableId("x", 1, 1)),
                             ("nzd-y11-swapped", PaperLex(swap_xy=True), VariableId("y", 1, 1))):
        ring = default_ring(params, order)
        gens = L_generators(params, ring).polynomials

        def check(gens=gens, var=var):
            part = EngineStats()
            try:
                return nzd_check(gens, var, dl.left(), part)
            finally:
                _merge(rep.stats, part)

        rep.run(name, check)
    return rep


def fiber_report(params: ProblemParams, budget_secs: float | None = None) -> VerificationReport:
    """The fiber ideal K intersected with k[Z] is zero."""
    rep = VerificationReport(params)
    dl = Deadline(budget_secs)

    def empty():
        K = rees_ideal(params, dl.left(), rep.stats).polynomials
        F = special_fiber(K, dl.left(), rep.stats)
        return not F, str(F[0]) if F else None

    rep.run("fiber-empty", empty)
    return rep


# ---------------------------------------------------------------------------
# the 3x3 example where D is not of linear type

NOTFIBER_PARAMS = ProblemParams(3, 3, 3, 3, 2, 3)
_C3 = (1, 2, 3)


def _all_2x2(ring: Ring, fam: str) -> list[Polynomial]:
    return [det(ring, *(RowSpec(fam, r) for r in rr), cols=cc)
            for rr in combinations(range(1, 4), 2) for cc in combinations(range(1, 4), 2)]


def notfiber_minors(ring: Ring) -> list[Polynomial]:
    """I_3(X) and every 2x2 minor of the full 3x3 Y."""
    return [det(ring, rows("X", 1, 3), cols=_C3)] + _all_2x2(ring, "Y")


def notfiber_f(ring: Ring) -> Polynomial:
    return (det(ring, RowSpec("X", 1), RowSpec("Z", 2), RowSpec("Y", 3), cols=_C3)
            + det(ring, rows("X", 1, 2), RowSpec("Z", 3), cols=_C3))


def notfiber_h(ring: Ring) -> Polynomial:
    return (det(ring, rows("Z", 1, 2), RowSpec("Y", 3), cols=_C3)
            + det(ring, RowSpec("Z", 1), RowSpec("Y", 2), RowSpec("Z", 3), cols=_C3)
            + det(ring, RowSpec("X", 1), rows("Z", 2, 3), cols=_C3))


def notfiber_J(ring: Ring) -> list[Polynomial]:
    gs = [p for _, p in L_generators(NOTFIBER_PARAMS, ring).family("g")]
    return notfiber_minors(ring) + gs + [notfiber_f(ring)]


def notfiber_K(budget_secs: float | None = None, stats: EngineStats | None = None) -> GeneratorSet:
    return _eliminate_t(NOTFIBER_PARAMS, notfiber_minors, budget_secs, stats)


def notfiber_case(budget_secs: float | None = None) -> VerificationReport:
    rep = VerificationReport(None)
    dl = Deadline(budget_secs)
    ring = default_ring(NOTFIBER_PARAMS)
    h = notfiber_h(ring)
    state: dict = {}

    def h_not_in_J():
        r = normal_form(h, timed_gb(notfiber_J(ring), dl, rep.stats))
        return not r.is_zero(), str(r) if r else "0"

    def h_in_K():
        state["K"] = notfiber_K(dl.left(), rep.stats).polynomials
        r = normal_form(h, timed_gb(state["K"], dl, rep.stats))
        return r.is_zero(), None if r.is_zero() else str(r)

    def fiber_empty():
        if "K" not in state:
            state["K"] = notfiber_K(dl.left(), rep.stats).polynomials
        F = special_fiber(state["K"], dl.left(), rep.stats)
        return not F, None if not F else str(F[0])

    rep.run("h-not-in-J", h_not_in_J)
    rep.run("h-in-K", h_in_K)
    rep.run("fiber-empty", fiber_empty)
    return rep
