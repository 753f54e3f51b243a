"""Ideal membership by linear algebra, independent of the Groebner engine.

For a homogeneous ideal I = (g_1, ..., g_r), a homogeneous p of degree d lies
in I exactly when p is in the span of the products m * g_i of degree d.  The
span is put in row-echelon form with pivots at the largest monomial of each
row, so the pivots are also the degree-d part of the initial ideal.

An optional grading refines the degree: any map from exponent vectors to
tuples under which every generator is homogeneous.  Working one graded piece
at a time keeps the matrices small.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Sequence

from .poly import Polynomial, Ring

Grading = Callable[[Ring, int], tuple]


def total_degree(ring: Ring, mono: int) -> tuple:
    return (ring.degree(mono),)


def row_col_grading(ring: Ring, mono: int) -> tuple:
    """(z-degree, row multiset, column multiset) ignoring the x/y/z letter."""
    zdeg = 0
    rows: dict[int, int] = {}
    cols: dict[int, int] = {}
    for v, e in zip(ring.ranked, ring.exponents(mono)):
        if not e:
            continue
        if v.family == "z":
            zdeg += e
        if v.family == "t":
            continue
        rows[v.row] = rows.get(v.row, 0) + e
        cols[v.col] = cols.get(v.col, 0) + e
    return (ring.degree(mono), zdeg, tuple(sorted(rows.items())), tuple(sorted(cols.items())))


def _sub(a: tuple, b: tuple) -> tuple | None:
    """Componentwise difference of gradings; None if some part goes negative."""
    out = []
    for x, y in zip(a, b):
        if isinstance(x, tuple):
            dx, dy = dict(x), dict(y)
            diff = {k: dx.get(k, 0) - dy.get(k, 0) for k in set(dx) | set(dy)}
            if any(v < 0 for v in diff.values()):
                return None
            out.append(tuple(sorted((k, v) for k, v in diff.items() if v)))
        else:
            if x < y:
                return None
            out.append(x - y)
    return tuple(out)


def homogeneous_parts(p: Polynomial, grading: Grading = total_degree) -> dict[tuple, Polynomial]:
    parts: dict[tuple, dict] = {}
    for m, c in p.terms:
        parts.setdefault(grading(p.ring, m), {})[m] = c
    return {k: Polynomial(p.ring, v) for k, v in parts.items()}


def _monomials(ring: Ring, degree: int) -> Iterable[int]:
    units = [ring.var(v) for v in ring.ranked]
    for combo in combinations_with_replacement(units, degree):
        yield sum(combo)


def _graded_piece(ring: Ring, target: tuple, grading: Grading, cache: dict) -> list[int]:
    deg = target[0]
    if deg not in cache:
        buckets: dict[tuple, list[int]] = {}
        for m in _monomials(ring, deg):
            buckets.setdefault(grading(ring, m), []).append(m)
        cache[deg] = buckets
    return cache[deg].get(target, [])


class EchelonSpan:
    """Row-echelon basis of a space of polynomials, pivot = leading monomial."""

    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}

    def reduce(self, vec: dict) -> dict:
        vec = dict(vec)
        while vec:
            lead = max(vec)
            row = self.rows.get(lead)
            if row is None:
                return vec
            c = vec[lead]
            for m, a in row.items():
                v = vec.get(m, 0) - c * a
                if v:
                    vec[m] = v
                else:
                    vec.pop(m, None)
        return vec

    def insert(self, vec: dict) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        lead = max(vec)
        inv = Fraction(1) / vec[lead]
        self.rows[lead] = {m: c * inv for m, c in vec.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self._residual(vec)

    def _residual(self, vec: dict) -> dict:
        # full reduction: keep eliminating any pivot monomial, not only the lead
        vec = {m: Fraction(c) for m, c in vec.items() if c}
        changed = True
        while changed:
            changed = False
            for m in sorted(vec, reverse=True):
                row = self.rows.get(m)
                if row is None or m not in vec:
                    continue
                c = vec[m]
                for mm, a in row.items():
                    v = vec.get(mm, 0) - c * a
                    if v:
                        vec[mm] = v
                    else:
                        vec.pop(mm, None)
                changed = True
                break
        return vec

    @property
    def pivots(self) -> set[int]:
        return set(self.rows)


class LinearAlgebraOracle:
    """Brute-force membership and initial-ideal pieces for a homogeneous ideal."""

    def __init__(self, gens: Sequence[Polynomial], grading: Grading = total_degree):
        gens = [g for g in gens if g]
        if not gens:
            raise ValueError("oracle needs at least one nonzero generator")
        self.ring = gens[0].ring
        self.grading = grading
        self.gens = []
        for g in gens:
            parts = homogeneous_parts(g, grading)
            if len(parts) != 1:
                raise ValueError(f"generator is not homogeneous for the grading: {g}")
            ((deg, _),) = parts.items()
            self.gens.append((deg, g))
        self._spans: dict[tuple, EchelonSpan] = {}
        self._mono_cache: dict = {}

    def span(self, target: tuple) -> EchelonSpan:
        if target in self._spans:
            return self._spans[target]
        sp = EchelonSpan()
        for deg, g in self.gens:
            rest = _sub(target, deg)
            if rest is None:
                continue
            for m in _graded_piece(self.ring, rest, self.grading, self._mono_cache):
                sp.insert({k + m: c for k, c in g.terms})
        self._spans[target] = sp
        return sp

    def member(self, p: Polynomial) -> bool:
        return all(self.span(k).contains(part.term_dict()) for k, part in homogeneous_parts(p, self.grading).items())

    def initial_piece(self, target: tuple) -> set[int]:
        """Monomials of the given graded piece lying in the initial ideal."""
        return self.span(target).pivots

    def in_initial(self, mono: int) -> bool:
        return mono in self.initial_piece(self.grading(self.ring, mono))
