"""Stacked-row symbolic matrices over the generic X, Y, Z matrices.

A row is drawn from one family at one row index; a matrix is a list of rows
sharing one list of column indices.  Rows keep the order they are listed in,
so the sign of a determinant follows the listing, not the row indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .poly import Polynomial, ProblemParams, Ring, VariableId

FAMILIES = ("X", "Y", "Z", "XminusY", "0")


@dataclass(frozen=True)
class RowSpec:
    """One matrix row.  With ``split`` set, columns greater than ``split``
    take their entry from family ``hi`` instead of ``family``."""

    family: str
    row: int
    split: int | None = None
    hi: str | None = None

    def __post_init__(self):
        if self.family not in FAMILIES or (self.hi is not None and self.hi not in FAMILIES):
            raise ValueError(f"unknown row family {self.family!r}/{self.hi!r}")
        if (self.split is None) != (self.hi is None):
            raise ValueError("split and hi go together")

    def family_at(self, col: int) -> str:
        if self.split is not None and col > self.split:
            return self.hi
        return self.family

    def __str__(self):
        if self.split is None:
            return f"{self.family}({self.row})"
        return f"{self.family}/{self.hi}@{self.split}({self.row})"


def rows(family: str, lo: int, hi: int) -> list[RowSpec]:
    """Rows lo..hi of one family (empty when hi < lo)."""
    return [RowSpec(family, r) for r in range(lo, hi + 1)]


def mixed(row: int, lo: str, hi: str, split: int) -> RowSpec:
    return RowSpec(lo, row, split, hi)


@dataclass(frozen=True)
class SymbolicMatrix:
    rows: tuple[RowSpec, ...]
    cols: tuple[int, ...]

    def __init__(self, rows: Iterable[RowSpec], cols: Iterable[int]):
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "cols", tuple(cols))

    @property
    def is_square(self) -> bool:
        return len(self.rows) == len(self.cols)

    def __str__(self):
        return format_matrix(self)


def stack(*blocks: Iterable[RowSpec] | RowSpec, cols: Sequence[int]) -> SymbolicMatrix:
    out: list[RowSpec] = []
    for b in blocks:
        if isinstance(b, RowSpec):
            out.append(b)
        else:
            out.extend(b)
    return SymbolicMatrix(out, cols)


# ---------------------------------------------------------------------------
# text form


def _group(rowlist: Sequence[RowSpec]) -> list[str]:
    parts: list[str] = []
    i = 0
    while i < len(rowlist):
        r = rowlist[i]
        if r.split is not None:
            parts.append(str(r))
            i += 1
            continue
        j = i
        while (j + 1 < len(rowlist) and rowlist[j + 1].split is None
               and rowlist[j + 1].family == r.family and rowlist[j + 1].row == rowlist[j].row + 1):
            j += 1
        if j == i:
            parts.append(str(r))
        else:
            parts.append(f"{r.family}({r.row}..{rowlist[j].row})")
        i = j + 1
    return parts


def format_matrix(mat: SymbolicMatrix) -> str:
    body = "|".join(_group(mat.rows)) if mat.rows else ""
    return f"det[ {body} ; cols {','.join(map(str, mat.cols))} ]"


_ROWTOK = re.compile(r"^(?P<fam>XminusY|X|Y|Z|0)(?:/(?P<hi>XminusY|X|Y|Z|0)@(?P<split>\d+))?"
                     r"\((?P<lo>\d+)(?:\.\.(?P<up>\d+))?\)$")


def parse_matrix(text: str) -> SymbolicMatrix:
    m = re.fullmatch(r"\s*det\[\s*(?P<rows>.*?)\s*;\s*cols\s*(?P<cols>[\d,\s]*)\]\s*", text)
    if not m:
        raise ValueError(f"not a matrix spec: {text!r}")
    out: list[RowSpec] = []
    body = m.group("rows").strip()
    for tok in filter(None, (t.strip() for t in body.split("|"))):
        rm = _ROWTOK.match(tok)
        if not rm:
            raise ValueError(f"bad row token {tok!r}")
        lo = int(rm.group("lo"))
        up = int(rm.group("up")) if rm.group("up") is not None else lo
        if rm.group("hi"):
            if up != lo:
                raise ValueError("mixed rows cannot be ranges")
            out.append(RowSpec(rm.group("fam"), lo, int(rm.group("split")), rm.group("hi")))
        else:
            out.extend(rows(rm.group("fam"), lo, up))
    colstr = m.group("cols").strip()
    cols = [int(c) for c in colstr.split(",") if c.strip()] if colstr else []
    return SymbolicMatrix(out, cols)


# ---------------------------------------------------------------------------
# determinants


def entry(ring: Ring, fam: str, row: int, col: int) -> Polynomial:
    if fam == "0":
        return ring.zero()
    if fam == "XminusY":
        return ring.gen(VariableId("x", row, col)) - ring.gen(VariableId("y", row, col))
    return ring.gen(VariableId(fam.lower(), row, col))


def determinant(mat: SymbolicMatrix, ring: Ring) -> Polynomial:
    """Exact determinant by first-row cofactor expansion, memoised on the set
    of remaining columns.  The 0x0 determinant is 1."""
    if not mat.is_square:
        raise ValueError("determinant of non-square matrix")
    n = len(mat.rows)
    if n == 0:
        return ring.one()
    if len(set(mat.cols)) < n:
        return ring.zero()
    if len(set(mat.rows)) < n:
        return ring.zero()
    grid = [[entry(ring, r.family_at(c), r.row, c) for c in mat.cols] for r in mat.rows]
    memo: dict[int, Polynomial] = {}
    full = (1 << n) - 1

    def det_from(depth: int, mask: int) -> Polynomial:
        # rows depth..n-1 against the columns in mask
        if depth == n:
            return ring.one()
        if mask in memo:
            return memo[mask]
        acc = ring.zero()
        sign = 1
        row = grid[depth]
        for j in range(n):
            if mask >> j & 1:
                e = row[j]
                if e:
                    sub = det_from(depth + 1, mask & ~(1 << j))
                    if sub:
                        acc = acc + e * sub if sign > 0 else acc - e * sub
                sign = -sign
        memo[mask] = acc
        return acc

    return det_from(0, full)


def det(ring: Ring, *blocks, cols: Sequence[int]) -> Polynomial:
    """Shorthand: determinant of a stacked matrix."""
    return determinant(stack(*blocks, cols=cols), ring)


def laplace_sign(row_positions: Iterable[int], col_positions: Iterable[int]) -> int:
    """Sign of a complementary-minor pair, positions 1-based."""
    return -1 if (sum(row_positions) + sum(col_positions)) % 2 else 1


def maximal_minors(ring: Ring, family: str, s: int, t: int) -> list[Polynomial]:
    """The C(t, s) maximal minors on rows 1..s, columns from 1..t, in
    ascending lexicographic column-choice order."""
    if s > t:
        raise ValueError(f"no maximal minors: s={s} > t={t}")
    if family not in ("X", "Y", "Z"):
        raise ValueError(f"minors of family {family!r}")
    return [det(ring, rows(family, 1, s), cols=c) for c in combinations(range(1, t + 1), s)]


def minor_tags(s: int, t: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, t + 1), s))


# ---------------------------------------------------------------------------
# the determinant-expansion identities, as explicit polynomial pairs


def g_poly(ring: Ring, i: int, j: int, l: int, k: int) -> Polynomial:
    """z[i,j](x[l,k]-y[l,k]) - z[l,k](x[i,j]-y[i,j])."""
    return (ring.gen(VariableId("z", i, j)) * entry(ring, "XminusY", l, k)
            - ring.gen(VariableId("z", l, k)) * entry(ring, "XminusY", i, j))


def _omit(seq: Sequence[int], idx: int) -> list[int]:
    return [c for p, c in enumerate(seq) if p != idx]


def ytox_pair(ring: Ring, size: int, cols: Sequence[int] | None = None):
    """|Y| = |X| + sum_{i,j} (-1)^(i+j) |[Y^{1,i-1}; X^{i+1,size}]_{cols minus j}| (y_ij - x_ij)."""
    cols = list(cols) if cols is not None else list(range(1, size + 1))
    if len(cols) != size:
        raise ValueError("need one column per row")
    lhs = det(ring, rows("Y", 1, size), cols=cols)
    rhs = det(ring, rows("X", 1, size), cols=cols)
    for i in range(1, size + 1):
        for jp, c in enumerate(cols, start=1):
            minor = det(ring, rows("Y", 1, i - 1), rows("X", i + 1, size), cols=_omit(cols, jp - 1))
            diff = -entry(ring, "XminusY", i, c)
            rhs = rhs + minor * diff * laplace_sign([i], [jp])
    return lhs, rhs


def xtoxy_pair(ring: Ring, i: int, j: int, size: int, cols: Sequence[int] | None = None):
    """Determinant with rows Y^{1,i-1}, a row of y's on the first j columns
    and x's after, then X^{i+1,size}; written via |Y| and differences."""
    cols = list(cols) if cols is not None else list(range(1, size + 1))
    if not (1 <= i <= size and 0 <= j <= size) or len(cols) != size:
        raise ValueError("index out of range")
    split = cols[j - 1] if j else 0
    lhs = det(ring, rows("Y", 1, i - 1), mixed(i, "Y", "X", split), rows("X", i + 1, size), cols=cols)
    rhs = det(ring, rows("Y", 1, size), cols=cols)
    for kp in range(j + 1, size + 1):
        minor = det(ring, rows("Y", 1, i - 1), rows("X", i + 1, size), cols=_omit(cols, kp - 1))
        rhs = rhs + minor * entry(ring, "XminusY", i, cols[kp - 1]) * laplace_sign([i], [kp])
    for l in range(i + 1, size + 1):
        for kp in range(1, size + 1):
            minor = det(ring, rows("Y", 1, l - 1), rows("X", l + 1, size), cols=_omit(cols, kp - 1))
            rhs = rhs + minor * entry(ring, "XminusY", l, cols[kp - 1]) * laplace_sign([l], [kp])
    return lhs, rhs


def gij_pair(ring: Ring, cols: Sequence[int], row: int = 1):
    a1, a2, a3 = cols
    lhs = det(ring, RowSpec("Z", row), RowSpec("X", row), RowSpec("Y", row), cols=cols)
    Y = lambda c: ring.gen(VariableId("y", row, c))  # noqa: E731
    rhs = (Y(a1) * g_poly(ring, row, a2, row, a3) - Y(a2) * g_poly(ring, row, a1, row, a3)
           + Y(a3) * g_poly(ring, row, a1, row, a2))
    return lhs, rhs


def switchg_pair(ring: Ring, cols: Sequence[int], r: int = 1, u: int = 2):
    a1, a2 = cols
    lhs = det(ring, RowSpec("Z", r), RowSpec("XminusY", u), cols=cols)
    rhs = (g_poly(ring, r, a1, u, a2) - g_poly(ring, r, a2, u, a1)
           + det(ring, RowSpec("XminusY", r), RowSpec("Z", u), cols=cols))
    return lhs, rhs


def pair_correction(ring: Ring, head: Sequence[RowSpec], r: int, u: int,
                    between: Sequence[RowSpec], tail: Sequence[RowSpec],
                    cols: Sequence[int]) -> Polynomial:
    """Sum over column pairs of +-(g_{r c1,u c2} - g_{r c2,u c1}) times the
    complementary minor, for the matrix [head; Z^r; between; (X-Y)^u; tail].
    Signs from the generalised Laplace expansion along the Z^r and (X-Y)^u rows."""
    pr = len(head) + 1
    pu = pr + len(between) + 1
    rest_rows = list(head) + list(between) + list(tail)
    out = ring.zero()
    for i1, i2 in combinations(range(len(cols)), 2):
        c1, c2 = cols[i1], cols[i2]
        rest = [c for p, c in enumerate(cols) if p not in (i1, i2)]
        comp = determinant(SymbolicMatrix(rest_rows, rest), ring)
        if not comp:
            continue
        gg = g_poly(ring, r, c1, u, c2) - g_poly(ring, r, c2, u, c1)
        out = out + gg * comp * laplace_sign([pr, pu], [i1 + 1, i2 + 1])
    return out


def xtoxy_g_pair(ring: Ring, r: int, cols: Sequence[int]):
    """|[Y^{1,r-1}; Z^r; X^{r+1,s}]| written as a Y-tail determinant, a sum
    of (X-Y)^r / Z^u determinants, and a g-correction (s = len(cols))."""
    s = len(cols)
    if not 1 <= r <= s:
        raise ValueError("need 1 <= r <= len(cols)")
    head = rows("Y", 1, r - 1)
    lhs = det(ring, head, RowSpec("Z", r), rows("X", r + 1, s), cols=cols)
    rhs = det(ring, head, RowSpec("Z", r), rows("Y", r + 1, s), cols=cols)
    for u in range(r + 1, s + 1):
        rhs = rhs + det(ring, head, RowSpec("XminusY", r), rows("Y", r + 1, u - 1),
                        RowSpec("Z", u), rows("X", u + 1, s), cols=cols)
        rhs = rhs + pair_correction(ring, head, r, u, rows("Y", r + 1, u - 1), rows("X", u + 1, s), cols)
    return lhs, rhs


IDENTITIES = ("YtoX", "xtox_y", "g_ij_expansion", "switch_g", "xTox_y")


def identity_pair(name: str, ring: Ring, **params):
    """Both sides of one of the determinant identities; lhs - rhs == 0."""
    try:
        if name == "YtoX":
            return ytox_pair(ring, params["n"], params.get("cols"))
        if name == "xtox_y":
            return xtoxy_pair(ring, params["i"], params["j"], params["n"], params.get("cols"))
        if name == "g_ij_expansion":
            return gij_pair(ring, params["cols"], params.get("row", 1))
        if name == "switch_g":
            return switchg_pair(ring, params["cols"], params.get("r", 1), params.get("u", 2))
        if name == "xTox_y":
            return xtoxy_g_pair(ring, params["r"], params["cols"])
    except KeyError as exc:
        raise ValueError(f"{name}: missing index {exc}") from None
    raise ValueError(f"unknown identity {name!r}")


def topx_sum(ring: Ring, r: int, cols: Sequence[int], params: ProblemParams) -> Polynomial:
    """sum_{u=r}^{s2} |[X^r; Y^{1,u-1}; Z^u; X^{u+1,s1}]| on s1+1 columns.

    Needs s2 <= s1; otherwise the summands past u = s1 are not square."""
    s1, s2 = params.s1, params.s2
    cols = list(cols)
    if not 1 <= r <= s1:
        raise ValueError(f"need 1 <= r <= s1, got r={r}")
    if s2 > s1:
        raise ValueError(f"summands are not square when s2={s2} > s1={s1}")
    if len(cols) != s1 + 1 or any(a >= b for a, b in zip(cols, cols[1:])):
        raise ValueError(f"need {s1 + 1} strictly ascending columns, got {cols}")
    if cols[0] < 1 or cols[-1] > params.n:
        raise ValueError("column out of range")
    out = ring.zero()
    for u in range(r, s2 + 1):
        out = out + det(ring, RowSpec("X", r), rows("Y", 1, u - 1), RowSpec("Z", u),
                        rows("X", u + 1, s1), cols=cols)
    return out
