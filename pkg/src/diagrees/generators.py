"""The ideal L and the polynomial families making up its Groebner basis."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .detmat import (RowSpec, det, g_poly, maximal_minors, minor_tags, mixed,
                     pair_correction, rows)
from .groebner import normal_form, s_polynomial
from .poly import PaperLex, Polynomial, ProblemParams, Ring, TermOrder, VariableId


@dataclass
class GeneratorSet:
    """Named, ordered collection of tagged polynomials.

    Zero polynomials are dropped on insertion; a repeated tag is an error."""

    name: str
    elements: list[tuple[str, Polynomial]] = field(default_factory=list)

    def __post_init__(self):
        items, self.elements, self._tags = self.elements, [], set()
        for tag, p in items:
            self.add(tag, p)

    def add(self, tag: str, p: Polynomial) -> bool:
        if tag in self._tags:
            raise ValueError(f"duplicate tag {tag!r} in {self.name}")
        if p.is_zero():
            return False
        self._tags.add(tag)
        self.elements.append((tag, p))
        return True

    def extend(self, pairs: Iterable[tuple[str, Polynomial]]) -> None:
        for tag, p in pairs:
            self.add(tag, p)

    @property
    def polynomials(self) -> list[Polynomial]:
        return [p for _, p in self.elements]

    @property
    def tags(self) -> list[str]:
        return [t for t, _ in self.elements]

    def family(self, name: str) -> list[tuple[str, Polynomial]]:
        return [(t, p) for t, p in self.elements if t.split("(")[0] == name]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for t in self.tags:
            key = t.split("(")[0]
            out[key] = out.get(key, 0) + 1
        return out

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[tuple[str, Polynomial]]:
        return iter(self.elements)

    def to_text(self) -> str:
        return "".join(f"{t}: {p}\n" for t, p in self.elements)


def _tag(name: str, *idx) -> str:
    flat = []
    for i in idx:
        if isinstance(i, (tuple, list)):
            flat.append("[" + ",".join(map(str, i)) + "]")
        else:
            flat.append(str(i))
    return f"{name}({';'.join(flat)})"


def default_ring(params: ProblemParams, order: TermOrder | None = None, with_t: bool = False) -> Ring:
    return Ring(params.variables(with_t), order or PaperLex())


def _ascending(cols: Sequence[int], size: int, bound: int) -> tuple[int, ...]:
    cols = tuple(cols)
    if len(cols) != size:
        raise ValueError(f"expected {size} columns, got {len(cols)}")
    if any(a >= b for a, b in zip(cols, cols[1:])) or cols[0] < 1 or cols[-1] > bound:
        raise ValueError(f"columns {cols} not strictly ascending within 1..{bound}")
    return cols


def _check_lk(l: int, k: int, params: ProblemParams) -> None:
    if not 1 <= l <= k <= params.s2:
        raise ValueError(f"need 1 <= l <= k <= s2, got l={l}, k={k}")
    if l - 1 > params.s1:
        raise ValueError("l - 1 exceeds s1")
    if params.s2 > params.s1:
        raise ValueError(f"stacks are not square when s2={params.s2} > s1={params.s1}")


# ---------------------------------------------------------------------------
# basic families


def koszul_g(ring: Ring, i: int, j: int, l: int, k: int, params: ProblemParams | None = None) -> Polynomial:
    if params is not None:
        for a, b in ((i, j), (l, k)):
            if not (1 <= a <= params.m and 1 <= b <= params.n):
                raise ValueError(f"index ({a},{b}) outside {params.m}x{params.n}")
    return g_poly(ring, i, j, l, k)


def pair_greater(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """(i,j) > (l,k) in the total order on positions used for the g's:
    earlier row first, and within a row the earlier column."""
    return a[0] < b[0] or (a[0] == b[0] and a[1] < b[1])


def defining_f(ring: Ring, cols: Sequence[int], params: ProblemParams) -> Polynomial:
    """sum_q (-1)^(q+1) |[Z^q; Y^{1,q-1}; X^{q+1,s1}]| on s1 columns."""
    s1, s2 = params.s1, params.s2
    cols = _ascending(cols, s1, min(params.t1, params.t2))
    out = ring.zero()
    for q in range(1, min(s2, s1) + 1):
        term = det(ring, RowSpec("Z", q), rows("Y", 1, q - 1), rows("X", q + 1, s1), cols=cols)
        out = out + term if q % 2 else out - term
    return out


def f_lk(ring: Ring, l: int, k: int, cols: Sequence[int], params: ProblemParams) -> Polynomial:
    """The two stacked-determinant sums defining f^{l,k} on s1+k-1 columns."""
    _check_lk(l, k, params)
    s1, s2 = params.s1, params.s2
    cols = _ascending(cols, s1 + k - 1, min(params.t1, params.t2))
    head = rows("Z", l, k - 1)
    out = ring.zero()
    for r in range(k, s2 + 1):
        sgn = 1 if r % 2 else -1
        out = out + sgn * det(ring, head, RowSpec("Z", r), rows("X", 1, l - 1), rows("Y", 1, r - 1),
                              rows("Y", r + 1, s1), cols=cols)
        for u in range(r + 1, s1 + 1):
            out = out + sgn * det(ring, head, RowSpec("XminusY", r), rows("X", 1, l - 1),
                                  rows("Y", 1, r - 1), rows("Y", r + 1, u - 1), RowSpec("Z", u),
                                  rows("X", u + 1, s1), cols=cols)
    return out


def p_lk(ring: Ring, l: int, k: int, cols: Sequence[int], params: ProblemParams) -> Polynomial:
    """sum_r (-1)^(r+1) |[Z^{l,k-1}; Z^r; X^{1,l-1}; Y^{1,r-1}; X^{r+1,s1}]|."""
    _check_lk(l, k, params)
    s1, s2 = params.s1, params.s2
    cols = _ascending(cols, s1 + k - 1, min(params.t1, params.t2))
    head = rows("Z", l, k - 1)
    out = ring.zero()
    for r in range(k, s2 + 1):
        term = det(ring, head, RowSpec("Z", r), rows("X", 1, l - 1), rows("Y", 1, r - 1),
                   rows("X", r + 1, s1), cols=cols)
        out = out + term if r % 2 else out - term
    return out


def p_recursion(ring: Ring, l: int, k: int, cols: Sequence[int], params: ProblemParams) -> Polynomial:
    """p^{l,k} rebuilt from the level below by expanding along its last
    added row.  Raising k adds the z-row k-1 to the Z head; raising l adds
    the x-row l-1, and then the r = l-1 summand of the lower level (a
    multiple of a maximal minor of X) has to be taken back out."""
    _check_lk(l, k, params)
    s1 = params.s1
    cols = _ascending(cols, s1 + k - 1, min(params.t1, params.t2))
    if l == k == 1:
        return defining_f(ring, cols, params)
    if k > l:
        var, row, pos = "z", k - 1, k - l
        lower = lambda c: p_lk(ring, l, k - 1, c, params)  # noqa: E731
    else:
        var, row, pos = "x", l - 1, l
        lower = lambda c: p_lk(ring, l - 1, l - 1, c, params)  # noqa: E731
    out = ring.zero()
    for i, a in enumerate(cols, start=1):
        rest = cols[:i - 1] + cols[i:]
        term = ring.gen(VariableId(var, row, a)) * lower(rest)
        out = out + term if (i + pos) % 2 == 0 else out - term
    if var == "x":
        r = l - 1
        extra = det(ring, RowSpec("Z", r), rows("X", 1, l - 1), rows("Y", 1, r - 1),
                    rows("X", r + 1, s1), cols=cols)
        out = out - extra if r % 2 else out + extra
    return out


def p_correction(ring: Ring, l: int, k: int, cols: Sequence[int], params: ProblemParams) -> Polynomial:
    """The g-combination with p^{l,k} = f^{l,k} + correction."""
    _check_lk(l, k, params)
    s1, s2 = params.s1, params.s2
    cols = _ascending(cols, s1 + k - 1, min(params.t1, params.t2))
    out = ring.zero()
    for r in range(k, s2 + 1):
        sgn = 1 if r % 2 else -1
        for u in range(r + 1, s1 + 1):
            # Z^r sits right after the Z^{l,k-1} head, (X-Y)^u after the Y^{r+1,u-1} rows
            between = rows("X", 1, l - 1) + rows("Y", 1, r - 1) + rows("Y", r + 1, u - 1)
            out = out + sgn * pair_correction(ring, rows("Z", l, k - 1), r, u, between,
                                              rows("X", u + 1, s1), cols)
    return out


# ---------------------------------------------------------------------------
# the ideal L


def g_pairs(params: ProblemParams) -> list[tuple[int, int, int, int]]:
    """(i, j, l, k) with (i,j) > (l,k), ascending."""
    cells = [(i, j) for i in range(1, params.m + 1) for j in range(1, params.n + 1)]
    return [a + b for a, b in combinations(cells, 2)]


def L_generators(params: ProblemParams, ring: Ring | None = None) -> GeneratorSet:
    ring = ring or default_ring(params)
    out = GeneratorSet("L")
    for tag, p in zip(minor_tags(params.s1, params.t1), maximal_minors(ring, "X", params.s1, params.t1)):
        out.add(_tag("X", tag), p)
    for tag, p in zip(minor_tags(params.s2, params.t2), maximal_minors(ring, "Y", params.s2, params.t2)):
        out.add(_tag("Y", tag), p)
    for i, j, l, k in g_pairs(params):
        out.add(_tag("g", (i, j), (l, k)), g_poly(ring, i, j, l, k))
    for cols in combinations(range(1, min(params.t1, params.t2) + 1), params.s1):
        out.add(_tag("f", cols), defining_f(ring, cols, params))
    return out


# ---------------------------------------------------------------------------
# families coming from S-pairs


def U_poly(ring: Ring, p1: int, q1: int, cols: Sequence[int], params: ProblemParams) -> Polynomial:
    """z[p1,q1] times the minor of X on ``cols`` with row p1 switched to y
    right of column q1 and the rows below switched to Y, plus the (x-y)[p1,q1]
    terms that make it a combination of that X minor and g's."""
    s1 = params.s1
    if not (1 <= p1 <= s1 and 1 <= q1 <= params.n):
        raise ValueError(f"need 1 <= p1 <= s1 and 1 <= q1 <= n, got p1={p1}, q1={q1}")
    cols = _ascending(cols, s1, params.t1)
    top = rows("X", 1, p1 - 1)
    row = mixed(p1, "X", "Y", q1)
    zvar = ring.gen(VariableId("z", p1, q1))
    diff = ring.gen(VariableId("x", p1, q1)) - ring.gen(VariableId("y", p1, q1))
    out = zvar * det(ring, top, row, rows("Y", p1 + 1, s1), cols=cols)
    rest = det(ring, top, mixed(p1, "0", "Z", q1), rows("X", p1 + 1, s1), cols=cols)
    for u in range(p1 + 1, s1 + 1):
        rest = rest + det(ring, top, row, rows("Y", p1 + 1, u - 1), RowSpec("Z", u),
                          rows("X", u + 1, s1), cols=cols)
    return out + diff * rest


def _coefficient(p: Polynomial, v: VariableId) -> Polynomial:
    """Coefficient of v in p, for p of degree at most one in v."""
    ring = p.ring
    unit = ring.var(v)
    out = {}
    for m, c in p.terms:
        if ring.divides(unit, m):
            q = m - unit
            if ring.divides(unit, q):
                raise ValueError(f"{v} occurs squared")
            out[q] = c
    return Polynomial(ring, out)


def H_poly(ring: Ring, l: int, k: int, q: int, cols: Sequence[int], params: ProblemParams) -> Polynomial:
    """z[l-1,q] f^{l,k} with every z[l-1,q] x[l-1,c], c > q, traded for the
    matching g; the x[l-1, c] coefficients of f are its row-(l-1) cofactors."""
    if l < 2:
        raise ValueError("H needs l >= 2")
    if not 1 <= q <= params.n:
        raise ValueError(f"column q={q} outside 1..{params.n}")
    f = f_lk(ring, l, k, cols, params)
    out = ring.gen(VariableId("z", l - 1, q)) * f
    for c in cols:
        if c > q:
            cof = _coefficient(f, VariableId("x", l - 1, c))
            if cof:
                out = out - g_poly(ring, l - 1, q, l - 1, c) * cof
    return out


# ---------------------------------------------------------------------------
# families born from S-pairs with the Y-minors
#
# V, W and I (and their higher levels) are the remainders of S-pairs between
# a member of f, U or H (or of the previous level) and a maximal minor of Y,
# reduced by the base families.  Index bookkeeping is left to the algebra:
# a tuple is admissible when the two leading monomials share a variable and
# the remainder is nonzero.


def base_families(params: ProblemParams, ring: Ring | None = None) -> GeneratorSet:
    """Minors, g's, f^{l,k}, U and H over every admissible index tuple."""
    ring = ring or default_ring(params)
    out = GeneratorSet("G")
    out.extend(L_generators(params, ring).family("X"))
    out.extend(L_generators(params, ring).family("Y"))
    out.extend(L_generators(params, ring).family("g"))
    s1, s2, n = params.s1, params.s2, params.n
    width = min(params.t1, params.t2) if s2 <= s1 else 0
    for l in range(1, s2 + 1):
        for k in range(l, s2 + 1):
            for cols in combinations(range(1, width + 1), s1 + k - 1):
                out.add(_tag("f", l, k, cols), f_lk(ring, l, k, cols, params))
    for p1 in range(1, s1 + 1):
        for q1 in range(1, n + 1):
            for cols in combinations(range(1, params.t1 + 1), s1):
                out.add(_tag("U", p1, q1, cols), U_poly(ring, p1, q1, cols, params))
    for l in range(2, s2 + 1):
        for k in range(l, s2 + 1):
            for q in range(1, n + 1):
                for cols in combinations(range(1, width + 1), s1 + k - 1):
                    out.add(_tag("H", l, k, q, cols), H_poly(ring, l, k, q, cols, params))
    return out


def y_pair(p: Polynomial, ycols: Sequence[int], params: ProblemParams,
           reducers: Sequence[Polynomial]) -> Polynomial | None:
    """Remainder of the S-pair of p with the Y-minor on ``ycols``; None when
    the leading monomials are coprime, when the minor's divides p's, or when
    the remainder vanishes."""
    ring = p.ring
    ycols = _ascending(ycols, params.s2, params.t2)
    y = _y_minor(ring, 1, params.s2, ycols)
    a, b = p.lm(), y.lm()
    if not ring.support(a) & ring.support(b) or ring.divides(b, a):
        return None
    r = normal_form(s_polynomial(p, y), reducers)
    return r or None


def _y_minor(ring: Ring, lo: int, hi: int, cols: Sequence[int]) -> Polynomial:
    return det(ring, rows("Y", lo, hi), cols=cols)


def V_poly(ring: Ring, l: int, k: int, cols: Sequence[int], ycols: Sequence[int],
           params: ProblemParams, reducers: Sequence[Polynomial]) -> Polynomial | None:
    return y_pair(f_lk(ring, l, k, cols, params), ycols, params, reducers)


def W_poly(ring: Ring, p1: int, q1: int, cols: Sequence[int], ycols: Sequence[int],
           params: ProblemParams, reducers: Sequence[Polynomial]) -> Polynomial | None:
    return y_pair(U_poly(ring, p1, q1, cols, params), ycols, params, reducers)


def I_poly(ring: Ring, l: int, k: int, q: int, cols: Sequence[int], ycols: Sequence[int],
           params: ProblemParams, reducers: Sequence[Polynomial]) -> Polynomial | None:
    return y_pair(H_poly(ring, l, k, q, cols, params), ycols, params, reducers)


_LIFTED = {"f": "V", "U": "W", "H": "I"}


def G_candidate_set(params: ProblemParams, ring: Ring | None = None,
                    max_level: int | None = None) -> GeneratorSet:
    """Every family of the claimed Groebner basis of L.

    Level 0 of V, W, I pairs f, U, H with the Y-minors; level v+1 pairs the
    level-v members with the Y-minors again, up to ``max_level`` (default
    s2 - 1) or until nothing new appears."""
    ring = ring or default_ring(params)
    base = base_families(params, ring)
    reducers = base.polynomials
    out = GeneratorSet("G", list(base.elements))
    ytags = minor_tags(params.s2, params.t2)
    frontier = [(tag, p) for tag, p in base.elements if tag[0] in _LIFTED]
    top = params.s2 - 1 if max_level is None else max_level
    for level in range(top + 1):
        nxt = []
        for tag, p in frontier:
            name, _, idx = tag.partition("(")
            fam = _LIFTED.get(name, name.split("^")[0])
            for yc in ytags:
                r = y_pair(p, yc, params, reducers)
                if r is None:
                    continue
                new = f"{fam}^{level}({idx[:-1]};{list(yc)})".replace(" ", "")
                if out.add(new, r):
                    nxt.append((new, r))
        frontier = nxt
        if not frontier:
            break
    return out
