"""Sparse multivariate polynomials over Q with pluggable term orders.

Monomials are packed into a single Python integer, one fixed-width field per
variable, laid out so that integer comparison of two packed monomials is the
term order of the ring.  Multiplication is integer addition and divisibility
is a guarded subtraction.  Optional weight fields above the variable fields
implement block (elimination) orders without changing any of that.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

Coeff = Union[int, Fraction]

FIELD_BITS = 10
_VALUE_MASK = (1 << (FIELD_BITS - 1)) - 1
MAX_EXPONENT = _VALUE_MASK


class ExponentOverflow(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# variables and parameters


class VariableId(NamedTuple):
    family: str  # "x", "y", "z" or "t"
    row: int = 0
    col: int = 0

    def __str__(self) -> str:
        if self.family == "t":
            return "t"
        return f"{self.family}[{self.row},{self.col}]"


T = VariableId("t")


def x(i: int, j: int) -> VariableId:
    return VariableId("x", i, j)


def y(i: int, j: int) -> VariableId:
    return VariableId("y", i, j)


def z(i: int, j: int) -> VariableId:
    return VariableId("z", i, j)


@dataclass(frozen=True)
class ProblemParams:
    """Shape of the problem: m x n generic matrices, an s1 x t1 corner of X
    and an s2 x t2 corner of Y whose maximal minors are taken."""

    m: int
    n: int
    s1: int
    t1: int
    s2: int
    t2: int

    def __post_init__(self):
        m, n, s1, t1, s2, t2 = self.as_tuple()
        if not (2 <= m <= n):
            raise ValueError(f"need 2 <= m <= n, got m={m}, n={n}")
        if not (2 <= s1 <= t1 and 2 <= s2 <= t2):
            raise ValueError(f"need 2 <= s <= t for both corners, got {self.as_tuple()}")
        if s1 > m or s2 > m or t1 > n or t2 > n:
            raise ValueError(f"corner does not fit in a {m}x{n} matrix: {self.as_tuple()}")

    def as_tuple(self) -> tuple[int, ...]:
        return (self.m, self.n, self.s1, self.t1, self.s2, self.t2)

    @classmethod
    def parse(cls, text: str) -> "ProblemParams":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 6:
            raise ValueError(f"expected m,n,s1,t1,s2,t2, got {text!r}")
        return cls(*(int(p) for p in parts))

    def __str__(self) -> str:
        return ",".join(map(str, self.as_tuple()))

    def variables(self, with_t: bool = False) -> tuple[VariableId, ...]:
        out = [VariableId(f, i, j) for f in "xyz"
               for i in range(1, self.m + 1) for j in range(1, self.n + 1)]
        if with_t:
            out.append(T)
        return tuple(out)


# ---------------------------------------------------------------------------
# term orders


def _default_rank(v: VariableId, swap_xy: bool) -> tuple:
    """Sort key, smallest = most significant variable."""
    if v.family == "t":
        return (0,)
    fam = {"z": 1, "x": 2, "y": 3}[v.family]
    if swap_xy and fam > 1:
        fam = 5 - fam
    if v.family == "z":
        # z[i,j] > z[l,k] iff i < l, or i = l and j < k
        return (fam, v.row, v.col)
    # x[i,j] > x[l,k] iff i < l, or i = l and j > k (same rule for y)
    return (fam, v.row, -v.col)


class TermOrder:
    """Base class.  An order is realised on a variable universe as a list of
    weight blocks (compared first, by total degree in the block) followed by
    lex on a ranking of all variables."""

    def rank(self, universe: Sequence[VariableId]) -> list[VariableId]:
        raise NotImplementedError

    def weights(self, universe: Sequence[VariableId]) -> list[frozenset]:
        return []


@dataclass(frozen=True)
class PaperLex(TermOrder):
    """Lex with z > x > y; rows top to bottom; within a row, z left to right
    and x, y right to left.  ``swap_xy`` exchanges the roles of x and y.
    The Rees variable t, when present, is the largest variable."""

    swap_xy: bool = False

    def rank(self, universe):
        return sorted(universe, key=lambda v: _default_rank(v, self.swap_xy))

    def __str__(self):
        return "paperlex-swapped" if self.swap_xy else "paperlex"


@dataclass(frozen=True)
class PlainLex(TermOrder):
    sequence: tuple[VariableId, ...]

    def rank(self, universe):
        pos = {v: i for i, v in enumerate(self.sequence)}
        missing = [v for v in universe if v not in pos]
        if missing:
            raise ValueError(f"variables not ordered by PlainLex: {missing[:3]}")
        return sorted(universe, key=pos.__getitem__)

    def __str__(self):
        return "lex(" + ",".join(map(str, self.sequence)) + ")"


@dataclass(frozen=True)
class BlockElim(TermOrder):
    """Any monomial containing a block variable beats any monomial free of
    them: compare block degree first, then the inner order."""

    block: frozenset
    inner: TermOrder = PaperLex()

    def __init__(self, block: Iterable[VariableId], inner: TermOrder = PaperLex()):
        object.__setattr__(self, "block", frozenset(block))
        object.__setattr__(self, "inner", inner)

    def rank(self, universe):
        return self.inner.rank(universe)

    def weights(self, universe):
        return [frozenset(v for v in universe if v in self.block)] + self.inner.weights(universe)

    def __str__(self):
        names = sorted({v.family for v in self.block})
        return f"elim:{''.join(names)}({self.inner})"


# ---------------------------------------------------------------------------
# rings and monomials


class Monomial(Mapping):
    """Sparse exponent mapping VariableId -> positive int (external form)."""

    __slots__ = ("_exps", "_hash")

    def __init__(self, exps: Mapping[VariableId, int] | None = None):
        clean = {v: int(e) for v, e in (exps or {}).items() if e}
        if any(e < 0 for e in clean.values()):
            raise ValueError("negative exponent")
        self._exps = clean
        self._hash = hash(frozenset(clean.items()))

    def __getitem__(self, v):
        return self._exps[v]

    def __iter__(self):
        return iter(self._exps)

    def __len__(self):
        return len(self._exps)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Monomial):
            return self._exps == other._exps
        return NotImplemented

    def degree(self) -> int:
        return sum(self._exps.values())

    def __mul__(self, other: "Monomial") -> "Monomial":
        out = dict(self._exps)
        for v, e in other.items():
            out[v] = out.get(v, 0) + e
        return Monomial(out)

    def divides(self, other: "Monomial") -> bool:
        return all(other.get(v, 0) >= e for v, e in self._exps.items())

    def __repr__(self):
        if not self._exps:
            return "Monomial(1)"
        return "Monomial(" + "*".join(
            f"{v}^{e}" if e > 1 else str(v) for v, e in sorted(self._exps.items())) + ")"


class Ring:
    """A variable universe together with a term order."""

    def __init__(self, variables: Iterable[VariableId], order: TermOrder = PaperLex()):
        universe = tuple(dict.fromkeys(variables))
        self.order = order
        self.ranked: tuple[VariableId, ...] = tuple(order.rank(universe))
        self.variables = frozenset(self.ranked)
        wblocks = order.weights(self.ranked)
        nvar = len(self.ranked)
        self.nvars = nvar
        self.nfields = nvar + len(wblocks)
        # field 0 is the least significant; the most significant variable
        # sits just below the weight fields
        self._var_shift = {v: FIELD_BITS * (nvar - 1 - i) for i, v in enumerate(self.ranked)}
        self._weight_shift = [FIELD_BITS * (nvar + len(wblocks) - 1 - i) for i in range(len(wblocks))]
        self._weight_blocks = wblocks
        # each variable's packed unit, including its weight contributions
        self._unit = {}
        for v in self.ranked:
            u = 1 << self._var_shift[v]
            for blk, sh in zip(wblocks, self._weight_shift):
                if v in blk:
                    u += 1 << sh
            self._unit[v] = u
        self.guard = sum(1 << (FIELD_BITS * i + FIELD_BITS - 1) for i in range(self.nfields))
        self._key = (self.ranked, tuple(wblocks))

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Ring({len(self.ranked)} vars, {self.order})"

    def with_order(self, order: TermOrder) -> "Ring":
        return Ring(self.ranked, order)

    # -- packed monomials ---------------------------------------------------

    def pack(self, mono: Mapping[VariableId, int]) -> int:
        out = 0
        for v, e in mono.items():
            if e:
                if v not in self._unit:
                    raise KeyError(f"variable {v} not in ring")
                if e > MAX_EXPONENT:
                    raise ExponentOverflow(f"exponent {e} of {v} too large")
                out += e * self._unit[v]
        return out

    def exponents(self, packed: int) -> list[int]:
        """Exponent vector in ranked order (most significant first)."""
        n = self.nvars
        out = [0] * n
        for i in range(n - 1, -1, -1):
            out[i] = packed & _VALUE_MASK
            packed >>= FIELD_BITS
        return out

    def pack_exponents(self, exps: Sequence[int]) -> int:
        return self.pack(dict(zip(self.ranked, exps)))

    def unpack(self, packed: int) -> Monomial:
        return Monomial({v: e for v, e in zip(self.ranked, self.exponents(packed)) if e})

    def var(self, v: VariableId) -> int:
        return self._unit[v]

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def degree(self, packed: int) -> int:
        return sum(self.exponents(packed))

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.exponents(a), self.exponents(b)
        return self.pack_exponents([p if p > q else q for p, q in zip(ea, eb)])

    def gcd(self, a: int, b: int) -> int:
        ea, eb = self.exponents(a), self.exponents(b)
        return self.pack_exponents([p if p < q else q for p, q in zip(ea, eb)])

    def support(self, packed: int) -> int:
        """Bitmask of variables (bit i = ranked variable i) present."""
        mask = 0
        for i, e in enumerate(self.exponents(packed)):
            if e:
                mask |= 1 << i
        return mask

    def mono_str(self, packed: int) -> str:
        parts = []
        for v, e in zip(self.ranked, self.exponents(packed)):
            if e == 1:
                parts.append(str(v))
            elif e:
                parts.append(f"{v}^{e}")
        return "*".join(parts) if parts else "1"

    # -- construction helpers -----------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {0: 1})

    def const(self, c: Coeff) -> "Polynomial":
        return Polynomial(self, {0: c} if c else {})

    def gen(self, v: VariableId) -> "Polynomial":
        return Polynomial(self, {self._unit[v]: 1})

    def monomial(self, mono: Mapping[VariableId, int], coeff: Coeff = 1) -> "Polynomial":
        return Polynomial(self, {self.pack(mono): coeff} if coeff else {})

    def from_terms(self, terms: Iterable[tuple[Coeff, Mapping[VariableId, int]]]) -> "Polynomial":
        acc: dict[int, Coeff] = {}
        for c, mono in terms:
            k = self.pack(mono)
            acc[k] = acc.get(k, 0) + c
        return Polynomial(self, acc)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def convert(self, p: "Polynomial") -> "Polynomial":
        """Re-express ``p`` in this ring (variables must be present)."""
        if p.ring == self:
            return p
        src = p.ring
        return Polynomial(self, {self.pack(src.unpack(m)): c for m, c in p._terms.items()})


# ---------------------------------------------------------------------------
# polynomials


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _as_coeff(c) -> Coeff:
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    raise TypeError(f"unsupported coefficient {c!r}")


class Polynomial:
    """Immutable sparse polynomial; ``terms`` iterates in descending order."""

    __slots__ = ("ring", "_terms", "_sorted", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[int, Coeff]):
        self.ring = ring
        self._terms = {m: _norm(c) for m, c in terms.items() if c}
        self._sorted = None
        self._hash = None

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> list[tuple[int, Coeff]]:
        if self._sorted is None:
            self._sorted = sorted(self._terms.items(), reverse=True)
        return self._sorted

    def items(self) -> Iterator[tuple[Coeff, Monomial]]:
        for m, c in self.terms:
            yield c, self.ring.unpack(m)

    def term_dict(self) -> dict[int, Coeff]:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def leading_term(self) -> tuple[Coeff, Monomial]:
        c, m = self.lt_packed()
        return c, self.ring.unpack(m)

    def lt_packed(self) -> tuple[Coeff, int]:
        if not self._terms:
            raise ValueError("leading term of zero")
        m = max(self._terms)
        return self._terms[m], m

    def lm(self) -> int:
        return self.lt_packed()[1]

    def lc(self) -> Coeff:
        return self.lt_packed()[0]

    def leading_monomial(self) -> Monomial:
        return self.leading_term()[1]

    def degree(self) -> int:
        return max((self.ring.degree(m) for m in self._terms), default=-1)

    def variables(self) -> set[VariableId]:
        out: set[VariableId] = set()
        for m in self._terms:
            out.update(self.ring.unpack(m))
        return out

    def degree_in(self, family: str) -> int:
        """Max total degree in the variables of one family."""
        best = -1
        for m in self._terms:
            d = sum(e for v, e in self.ring.unpack(m).items() if v.family == family)
            best = max(best, d)
        return best

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.const(_as_coeff(other))

    def __add__(self, other):
        other = self._check(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return Polynomial(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _as_coeff(other)
            return Polynomial(self.ring, {m: v * c for m, v in self._terms.items()} if c else {})
        other = self._check(other)
        if len(other) > len(self):
            return other * self
        guard = self.ring.guard
        acc: dict[int, Coeff] = {}
        get = acc.get
        for m2, c2 in other._terms.items():
            for m1, c1 in self._terms.items():
                mm = m1 + m2
                acc[mm] = get(mm, 0) + c1 * c2
        if any(mm & guard for mm in acc):
            raise ExponentOverflow("exponent field overflow in multiplication")
        return Polynomial(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_term(self, coeff: Coeff, mono: int) -> "Polynomial":
        if not coeff:
            return self.ring.zero()
        out = {m + mono: c * coeff for m, c in self._terms.items()}
        if any(m & self.ring.guard for m in out):
            raise ExponentOverflow("exponent field overflow")
        return Polynomial(self.ring, out)

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        lc = self.lc()
        if lc == 1:
            return self
        inv = Fraction(1) / lc
        return Polynomial(self.ring, {m: c * inv for m, c in self._terms.items()})

    def substitute(self, mapping: Mapping[VariableId, "Polynomial"], ring: Ring | None = None) -> "Polynomial":
        """Replace variables by polynomials (all in ``ring``, default own ring)."""
        ring = ring or self.ring
        out = ring.zero()
        cache: dict[tuple[VariableId, int], Polynomial] = {}
        for m, c in self._terms.items():
            term = ring.const(c)
            for v, e in self.ring.unpack(m).items():
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = mapping[v] ** e
                    term = term * cache[key]
                else:
                    term = term * ring.monomial({v: e})
            out = out + term
        return out

    # -- comparison and text ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# ---------------------------------------------------------------------------
# canonical text form


def _coeff_str(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_polynomial(p: Polynomial) -> str:
    if not p._terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(p.terms):
        neg = c < 0
        a = -c if neg else c
        mono = p.ring.mono_str(m)
        if mono == "1":
            body = _coeff_str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_coeff_str(a)}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<var>[xyz]\[\s*\d+\s*,\s*\d+\s*\]|t(?![a-z]))"
                    r"|(?P<num>\d+(?:/\d+)?)|(?P<op>[-+*^()]))")


def parse_variable(text: str) -> VariableId:
    text = text.replace(" ", "")
    if text == "t":
        return T
    m = re.fullmatch(r"([xyz])\[(\d+),(\d+)\]", text)
    if not m:
        raise ValueError(f"not a variable: {text!r}")
    return VariableId(m.group(1), int(m.group(2)), int(m.group(3)))


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse the canonical text form (also accepts parentheses and ^)."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:pos + 20]!r}")
        pos = m.end()
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
    tokens.append(("end", None))
    idx = 0

    def peek():
        return tokens[idx]

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = power()
        while peek() == ("op", "*"):
            take()
            acc = acc * power()
        return acc

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num" or "/" in val:
                raise ValueError("exponent must be a non-negative integer")
            base = base ** int(val)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return ring.const(_norm(Fraction(val)))
        if kind == "var":
            return ring.gen(parse_variable(val))
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        if (kind, val) == ("op", "-"):
            return -atom()
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in polynomial: {peek()[1]!r}")
    return result


def compare_monomials(a: Mapping[VariableId, int], b: Mapping[VariableId, int], ring: Ring) -> int:
    """-1, 0, 1 as a <, =, > b under the ring's order."""
    pa, pb = ring.pack(a), ring.pack(b)
    return (pa > pb) - (pa < pb)


def leading_term(p: Polynomial, order: TermOrder | None = None) -> tuple[Coeff, Monomial]:
    if order is not None and order != p.ring.order:
        p = p.ring.with_order(order).convert(p)
    return p.leading_term()
