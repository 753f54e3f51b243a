"""Buchberger's algorithm over Q on packed monomials.

The reduction kernel works on plain ``dict`` term maps plus a max-heap of
pending monomials; basis elements are kept monic so the common case (leading
coefficient 1, integer tails) never touches ``Fraction``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Iterable, Sequence

from .poly import ExponentOverflow, Monomial, Polynomial, Ring, TermOrder, VariableId


class BudgetExceeded(RuntimeError):
    """Raised when a computation runs past its time budget."""


@dataclass
class EngineStats:
    pairs_created: int = 0
    pairs_product: int = 0
    pairs_chain: int = 0
    pairs_reduced: int = 0
    zero_reductions: int = 0
    basis_insertions: int = 0
    max_degree: int = 0
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return {
            "pairs": self.pairs_created,
            "product_criterion": self.pairs_product,
            "chain_criterion": self.pairs_chain,
            "reductions": self.pairs_reduced,
            "reductions_to_zero": self.zero_reductions,
            "max_degree": self.max_degree,
        }


class _Elem:
    __slots__ = ("lm", "tail", "support", "deg", "idx")

    def __init__(self, terms: dict, ring: Ring, idx: int):
        lm = max(terms)
        lc = terms[lm]
        if lc != 1:
            inv = Fraction(1) / lc
            terms = {m: _norm(c * inv) for m, c in terms.items()}
        self.lm = lm
        self.tail = sorted(((m, c) for m, c in terms.items() if m != lm), reverse=True)
        self.support = ring.support(lm)
        self.deg = ring.degree(lm)
        self.idx = idx

    def poly(self, ring: Ring) -> Polynomial:
        d = dict(self.tail)
        d[self.lm] = 1
        return Polynomial(ring, d)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _reduce(terms: dict, reducers: Sequence[_Elem], guard: int, full: bool = True,
            deadline: float | None = None) -> dict:
    """Reduce the term map in place against ``reducers``; returns remainder.

    Reducer choice is the first element of ``reducers`` whose leading
    monomial divides the current term."""
    heap = [-m for m in terms]
    heapify(heap)
    rem: dict = {}
    lms = [e.lm for e in reducers]
    nred = len(lms)
    steps = 0
    while heap:
        m = -heappop(heap)
        c = terms.pop(m, 0)
        if not c:
            continue
        mg = m | guard
        k = 0
        while k < nred:
            if (mg - lms[k]) & guard == guard:
                break
            k += 1
        if k == nred:
            rem[m] = c
            if not full:
                for mm in heap:
                    cc = terms.pop(-mm, 0)
                    if cc:
                        rem[-mm] = cc
                break
            continue
        e = reducers[k]
        shift = m - e.lm
        get = terms.get
        for tm, tc in e.tail:
            nm = tm + shift
            v = get(nm)
            if v is None:
                if nm & guard:
                    raise ExponentOverflow("exponent field overflow during reduction")
                terms[nm] = -c * tc
                heappush(heap, -nm)
            else:
                v -= c * tc
                if v:
                    terms[nm] = v
                else:
                    del terms[nm]
        steps += 1
        if deadline is not None and not steps & 1023 and time.monotonic() > deadline:
            raise BudgetExceeded("time budget exceeded during reduction")
    return {m: _norm(c) for m, c in rem.items()}


# ---------------------------------------------------------------------------
# public data types


class MonomialIdeal:
    """Monomial ideal kept as minimal generators (no generator divides another)."""

    def __init__(self, ring: Ring, gens: Iterable[int] = ()):
        self.ring = ring
        self._gens: list[int] = []
        for g in sorted(set(gens)):
            self.add(g)

    @classmethod
    def from_monomials(cls, ring: Ring, monos: Iterable) -> "MonomialIdeal":
        return cls(ring, (m if isinstance(m, int) else ring.pack(m) for m in monos))

    def add(self, g: int) -> None:
        div = self.ring.divides
        if any(div(h, g) for h in self._gens):
            return
        self._gens = [h for h in self._gens if not div(g, h)]
        self._gens.append(g)

    @property
    def packed(self) -> list[int]:
        return sorted(self._gens, reverse=True)

    @property
    def generators(self) -> list[Monomial]:
        return [self.ring.unpack(g) for g in self.packed]

    def contains(self, mono) -> bool:
        p = mono if isinstance(mono, int) else self.ring.pack(mono)
        div = self.ring.divides
        return any(div(g, p) for g in self._gens)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.ring == other.ring and set(self._gens) == set(other._gens)

    def __len__(self):
        return len(self._gens)

    def __iter__(self):
        return iter(self.generators)

    def strings(self) -> list[str]:
        return [self.ring.mono_str(g) for g in self.packed]

    def __repr__(self):
        return f"MonomialIdeal({len(self)} generators)"


@dataclass
class GroebnerBasis:
    elements: list[Polynomial]
    order: TermOrder
    reduced: bool = True
    stats: EngineStats = field(default_factory=EngineStats)

    @property
    def ring(self) -> Ring:
        if not self.elements:
            raise ValueError("empty basis has no ring")
        return self.elements[0].ring

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leading_monomials(self) -> list[int]:
        return [p.lm() for p in self.elements]

    def is_unit(self) -> bool:
        return any(p.lm() == 0 for p in self.elements)


# ---------------------------------------------------------------------------
# operations


def _check_ring(polys: Sequence[Polynomial]) -> Ring:
    rings = {p.ring for p in polys}
    if len(rings) != 1:
        raise ValueError("polynomials must share one ring")
    return rings.pop()


def s_polynomial(p: Polynomial, q: Polynomial) -> Polynomial:
    """m_qp * p - m_pq * q for the monic forms of p and q."""
    if p.is_zero() or q.is_zero():
        raise ValueError("S-polynomial of zero")
    ring = _check_ring([p, q])
    lp, lq = p.lm(), q.lm()
    lcm = ring.lcm(lp, lq)
    pm, qm = p.monic(), q.monic()
    return pm.mul_term(1, lcm - lp) - qm.mul_term(1, lcm - lq)


def normal_form(p: Polynomial, basis: Sequence[Polynomial] | GroebnerBasis,
                full: bool = True) -> Polynomial:
    """Remainder of ``p`` on division by ``basis`` (in the given order)."""
    polys = list(basis)
    if p.is_zero():
        return p
    if not polys:
        return p
    ring = _check_ring([p] + polys)
    elems = [_Elem(q.term_dict(), ring, i) for i, q in enumerate(polys) if q]
    return Polynomial(ring, _reduce(p.term_dict(), elems, ring.guard, full))


def _normal_key(ring: Ring, lcm: int, i: int, j: int, counter: int, strategy: str):
    if strategy == "normal":
        return (ring.degree(lcm), lcm, j, i)
    if strategy == "fifo":
        return (counter,)
    if strategy == "lex":
        return (lcm, j, i)
    raise ValueError(f"unknown pair strategy {strategy!r}")


def buchberger(gens: Iterable[Polynomial], *, strategy: str = "normal",
               product_criterion: bool = True, chain_criterion: bool = True,
               budget_secs: float | None = None, reduce_result: bool = True,
               stats: EngineStats | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens`` under the
    ring's order.  Pair bookkeeping follows Gebauer-Moeller."""
    gens = [g for g in gens if g]
    stats = stats or EngineStats()
    start = time.monotonic()
    deadline = start + budget_secs if budget_secs else None
    if not gens:
        return GroebnerBasis([], None, True, stats)
    ring = _check_ring(gens)
    guard = ring.guard

    basis: list[_Elem] = []          # every element ever inserted
    active: list[int] = []           # indices of the current basis G
    pairs: list[tuple] = []          # (key, i, j, lcm)
    counter = 0

    def lcm_of(a: _Elem, b: _Elem) -> int:
        return ring.lcm(a.lm, b.lm)

    def insert(terms: dict) -> None:
        nonlocal pairs, active, counter
        h = _Elem(terms, ring, len(basis))
        basis.append(h)
        stats.basis_insertions += 1
        stats.max_degree = max(stats.max_degree, h.deg)
        hidx = h.idx
        # candidate new pairs (h, g)
        cand = []
        for gi in active:
            g = basis[gi]
            cand.append((gi, lcm_of(h, g), not (h.support & g.support)))
        stats.pairs_created += len(cand)
        div = ring.divides
        # chain criterion among the new pairs (keep coprime ones for now)
        keep = []
        for a, (gi, lcm, coprime) in enumerate(cand):
            if coprime:
                keep.append((gi, lcm, coprime))
                continue
            if not chain_criterion:
                keep.append((gi, lcm, coprime))
                continue
            dominated = False
            for b, (gj, lcm2, _) in enumerate(cand):
                if b == a:
                    continue
                if div(lcm2, lcm) and (lcm2 != lcm or b < a):
                    dominated = True
                    break
            if dominated:
                stats.pairs_chain += 1
            else:
                keep.append((gi, lcm, coprime))
        new_pairs = []
        for gi, lcm, coprime in keep:
            if coprime and product_criterion:
                stats.pairs_product += 1
                continue
            counter += 1
            new_pairs.append((_normal_key(ring, lcm, gi, hidx, counter, strategy), gi, hidx, lcm))
        # old pairs made redundant by h
        if chain_criterion:
            hl = h.lm
            lcm_h = {gi: lcm for gi, lcm, _ in cand}
            survivors = []
            for pr in pairs:
                _, i, j, lcm = pr
                if (div(hl, lcm) and lcm_h.get(i, -1) != lcm and lcm_h.get(j, -1) != lcm
                        and i in lcm_h and j in lcm_h):
                    stats.pairs_chain += 1
                    continue
                survivors.append(pr)
            pairs = survivors
        pairs.extend(new_pairs)
        heapify(pairs)
        active = [gi for gi in active if not div(h.lm, basis[gi].lm)] + [hidx]

    for g in sorted(gens, key=lambda p: (p.lm(), len(p))):
        act = [basis[i] for i in active]
        r = _reduce(g.term_dict(), act, guard, True, deadline)
        if r:
            insert(r)

    while pairs:
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded("time budget exceeded in Buchberger loop")
        _, i, j, lcm = heappop(pairs)
        a, b = basis[i], basis[j]
        stats.pairs_reduced += 1
        # S-polynomial on the tails (leading terms cancel)
        sa, sb = lcm - a.lm, lcm - b.lm
        terms: dict = {}
        for m, c in a.tail:
            terms[m + sa] = c
        for m, c in b.tail:
            k = m + sb
            v = terms.get(k, 0) - c
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        if any(k & guard for k in terms):
            raise ExponentOverflow("exponent field overflow in S-polynomial")
        act = sorted((basis[k] for k in active), key=lambda e: e.lm)
        r = _reduce(terms, act, guard, True, deadline)
        if r:
            insert(r)
        else:
            stats.zero_reductions += 1

    result = [basis[i] for i in active]
    stats.elapsed = time.monotonic() - start
    if reduce_result:
        return GroebnerBasis(_interreduce(result, ring, deadline), ring.order, True, stats)
    return GroebnerBasis([e.poly(ring) for e in result], ring.order, False, stats)


def _interreduce(elems: list[_Elem], ring: Ring, deadline=None) -> list[Polynomial]:
    # minimalise, then tail-reduce each element against the others
    elems = sorted(elems, key=lambda e: e.lm)
    minimal = [e for e in elems
               if not any(f is not e and ring.divides(f.lm, e.lm) and (f.lm != e.lm or f.idx < e.idx)
                          for f in elems)]
    out = []
    for e in minimal:
        others = [f for f in minimal if f is not e]
        terms = dict(e.tail)
        tail = _reduce(terms, others, ring.guard, True, deadline)
        tail[e.lm] = 1
        out.append(Polynomial(ring, tail))
    out.sort(key=lambda p: p.lm(), reverse=True)
    return out


def reduce_basis(polys: Sequence[Polynomial]) -> list[Polynomial]:
    """Reduced form of a set that is already a Groebner basis."""
    if not polys:
        return []
    ring = _check_ring(polys)
    return _interreduce([_Elem(p.term_dict(), ring, i) for i, p in enumerate(polys) if p], ring)


def is_groebner(polys: Sequence[Polynomial], product_criterion: bool = False,
                budget_secs: float | None = None) -> tuple[bool, list]:
    """Buchberger's criterion: every S-polynomial reduces to 0 modulo polys.
    Returns (verdict, list of (i, j, remainder) failures), indices into the
    nonzero members of ``polys``."""
    deadline = time.monotonic() + budget_secs if budget_secs else None
    polys = [p for p in polys if p]
    if not polys:
        return True, []
    ring = _check_ring(polys)
    elems = [_Elem(p.term_dict(), ring, i) for i, p in enumerate(polys)]
    failures = []
    for j in range(len(elems)):
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded("time budget exceeded checking S-pairs")
        for i in range(j):
            a, b = elems[i], elems[j]
            if product_criterion and not (a.support & b.support):
                continue
            lcm = ring.lcm(a.lm, b.lm)
            sa, sb = lcm - a.lm, lcm - b.lm
            terms: dict = {}
            for m, c in a.tail:
                terms[m + sa] = c
            for m, c in b.tail:
                k = m + sb
                v = terms.get(k, 0) - c
                if v:
                    terms[k] = v
                else:
                    terms.pop(k, None)
            r = _reduce(terms, elems, ring.guard, False, deadline)
            if r:
                failures.append((i, j, Polynomial(ring, r)))
    return not failures, failures


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    if not gb.reduced:
        raise ValueError("initial_ideal needs a reduced basis")
    if not gb.elements:
        raise ValueError("initial ideal of the zero ideal has no ring")
    return MonomialIdeal(gb.ring, gb.leading_monomials())


def leading_monomial_ideal(polys: Iterable[Polynomial]) -> MonomialIdeal:
    polys = [p for p in polys if p]
    ring = _check_ring(polys)
    return MonomialIdeal(ring, (p.lm() for p in polys))


def ideal_member(p: Polynomial, gb: GroebnerBasis) -> bool:
    if not gb.reduced:
        raise ValueError("membership needs a reduced basis")
    if p.is_zero():
        return True
    return normal_form(p, gb.elements).is_zero()


def monomial_colon(M: MonomialIdeal, v: VariableId) -> MonomialIdeal:
    """(M : v) = ideal of u with u*v in M."""
    ring = M.ring
    unit = ring.var(v)
    out = []
    for g in M.packed:
        out.append(g - unit if ring.divides(unit, g) else g)
    return MonomialIdeal(ring, out)


def eliminate(gens: Iterable[Polynomial], block: Iterable[VariableId], inner: TermOrder | None = None,
              budget_secs: float | None = None, stats: EngineStats | None = None) -> list[Polynomial]:
    """Generators of the ideal intersected with the subring free of ``block``,
    returned in a ring with order ``inner`` over the same variables."""
    from .poly import BlockElim, PaperLex

    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = _check_ring(gens)
    inner = inner or PaperLex()
    block = frozenset(block)
    elim_ring = Ring(ring.ranked, BlockElim(block, inner))
    gb = buchberger([elim_ring.convert(g) for g in gens], budget_secs=budget_secs, stats=stats)
    out_ring = Ring(ring.ranked, inner)
    kept = [out_ring.convert(p) for p in gb.elements if not (p.variables() & block)]
    return sorted(kept, key=lambda p: p.lm(), reverse=True)
