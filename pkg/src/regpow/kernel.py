"""Exact coefficients, monomial orders, polynomial rings and a polynomial parser."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import gmpy2
from gmpy2 import mpq

_MPQ = type(mpq(0))

Degree = tuple  # tuple[int, ...], one entry per grading component
Exps = tuple  # tuple[int, ...], one entry per variable

INHOMOGENEOUS = "inhomogeneous"


class ParseError(ValueError):
    """Raised for malformed polynomial text; ``offset`` is the 0-based position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


# ---------------------------------------------------------------------------
# coefficient fields


@dataclass(frozen=True)
class Field:
    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p < 0 or (p and not gmpy2.is_prime(p)):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")
        if p >= 2**31:
            raise ValueError("prime fields are limited to p < 2^31")

    @property
    def kind(self) -> str:
        return "prime-field" if self.characteristic else "rationals"

    def __str__(self):
        return f"GF({self.characteristic})" if self.characteristic else "QQ"

    def __call__(self, value):
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, _MPQ):
            value = Fraction(int(value.numerator), int(value.denominator))
        if p:
            if isinstance(value, int):
                return value % p
            value = Fraction(value)
            num, den = value.numerator, value.denominator
            if den % p == 0:
                raise ZeroDivisionError(f"{value} is not defined in GF({p})")
            return num * pow(den, -1, p) % p
        return mpq(value)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, a):
        p = self.characteristic
        if p:
            return pow(a, -1, p)
        return 1 / a

    def to_fraction(self, a) -> Fraction:
        if self.characteristic:
            return Fraction(int(a))
        return Fraction(int(a.numerator), int(a.denominator))

    def render(self, a) -> str:
        if self.characteristic:
            return str(int(a))
        return str(a)


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------------------
# monomial orders


class Cmp(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


ORDER_KINDS = ("grevlex", "lex", "elim", "bigraded-grevlex")


@dataclass(frozen=True)
class MonomialOrder:
    """A linear monomial order; ``block`` is the front-block size for ``elim``.

    Every order is realised as a linear map ``exps -> tuple`` compared
    lexicographically, so keys of products are sums of keys.
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 0:
            raise ValueError("block size must be nonnegative")

    def key(self, exps: Exps, weights: Sequence[int], second: Sequence[int] = ()) -> tuple:
        n = len(exps)
        if self.kind == "lex":
            return tuple(exps)
        if self.kind == "grevlex":
            return (sum(map(int.__mul__, weights, exps)),) + tuple(-e for e in reversed(exps))
        if self.kind == "bigraded-grevlex":
            d2 = sum(map(int.__mul__, second, exps)) if second else 0
            return (sum(map(int.__mul__, weights, exps)), d2) + tuple(-e for e in reversed(exps))
        k = min(self.block, n)
        front, rest = exps[:k], exps[k:]
        return (
            (sum(map(int.__mul__, weights[:k], front)),)
            + tuple(-e for e in reversed(front))
            + (sum(map(int.__mul__, weights[k:], rest)),)
            + tuple(-e for e in reversed(rest))
        )

    def exp_slots(self, n: int) -> list[tuple[int, int]]:
        """(slot, sign) locating each exponent inside a key."""
        if self.kind == "lex":
            return [(i, 1) for i in range(n)]
        if self.kind == "grevlex":
            return [(n - i, -1) for i in range(n)]
        if self.kind == "bigraded-grevlex":
            return [(n + 1 - i, -1) for i in range(n)]
        k = min(self.block, n)
        slots = [(k - i, -1) for i in range(k)]
        slots += [(k + 1 + (n - i), -1) for i in range(k, n)]
        return slots


GREVLEX = MonomialOrder("grevlex")


# ---------------------------------------------------------------------------
# rings


_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Ring:
    field: Field
    variables: tuple
    grading: tuple  # per variable degree tuple
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")
        for v in self.variables:
            if not _NAME.match(v):
                raise ValueError(f"bad variable name {v!r}")
        if len(self.grading) != len(self.variables):
            raise ValueError("one degree per variable required")
        widths = {len(g) for g in self.grading}
        if len(widths) > 1:
            raise ValueError("all variable degrees must have the same length")
        for g in self.grading:
            if any(c < 0 for c in g) or sum(g) <= 0:
                raise ValueError("variable degrees must be nonnegative with positive total")

    @classmethod
    def polynomial(cls, variables, field: Field = QQ, weights=None, order=GREVLEX) -> "Ring":
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",") if v.strip()]
        variables = tuple(variables)
        weights = weights or [1] * len(variables)
        return cls(field, variables, tuple((int(w),) for w in weights), order)

    @classmethod
    def bigraded(cls, xvars, tvars, d: int, field: Field = QQ, order=GREVLEX) -> "Ring":
        """x-block in degree (1,0), T-block in degree (d,1)."""
        if d < 1:
            raise ValueError("d must be positive")
        xvars, tvars = tuple(xvars), tuple(tvars)
        grading = tuple([(1, 0)] * len(xvars) + [(d, 1)] * len(tvars))
        return cls(field, xvars + tvars, grading, order)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def ngrading(self) -> int:
        return len(self.grading[0]) if self.grading else 1

    @cached_property
    def weights(self) -> tuple:
        """Positive integer weights used by the orders (sum of degree components)."""
        return tuple(sum(g) for g in self.grading)

    @cached_property
    def is_standard(self) -> bool:
        return all(g == (1,) for g in self.grading)

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.variables)}

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.field, self.variables, self.grading, order)

    def degree_of(self, exps: Exps) -> Degree:
        k = self.ngrading
        return tuple(sum(e * g[c] for e, g in zip(exps, self.grading)) for c in range(k))

    def key(self, exps: Exps, order: MonomialOrder | None = None) -> tuple:
        order = order or self.order
        second = [g[1] for g in self.grading] if self.ngrading > 1 else ()
        return order.key(exps, self.weights, second)

    def zero_degree(self) -> Degree:
        return (0,) * self.ngrading

    # element constructors

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        i = self.index[name]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> list:
        return [self.var(v) for v in self.variables]

    def monomial(self, exps: Exps, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def __call__(self, text) -> "Polynomial":
        if isinstance(text, Polynomial):
            return text
        if isinstance(text, (int, Fraction)):
            return self.const(text)
        return parse_polynomial(text, self)

    def __str__(self):
        return f"{self.field}[{','.join(self.variables)}]"


@dataclass(frozen=True)
class Monomial:
    ring: Ring
    exps: Exps

    @property
    def degree(self) -> Degree:
        return self.ring.degree_of(self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.ring, tuple(a + b for a, b in zip(self.exps, other.exps)))


def compare(order: MonomialOrder, a: Monomial, b: Monomial) -> Cmp:
    if a.ring.variables != b.ring.variables:
        raise ValueError("monomials from different rings")
    ka, kb = a.ring.key(a.exps, order), a.ring.key(b.exps, order)
    return Cmp((ka > kb) - (ka < kb))


# ---------------------------------------------------------------------------
# polynomials


def _mul_exps(a, b):
    return tuple(map(int.__add__, a, b))


class Polynomial:
    """Immutable polynomial; terms kept in strictly decreasing ring order."""

    __slots__ = ("ring", "_d", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping):
        self.ring = ring
        self._d = {e: c for e, c in terms.items() if c}
        self._terms = None
        self._hash = None

    @property
    def terms(self) -> tuple:
        if self._terms is None:
            key = self.ring.key
            self._terms = tuple(sorted(self._d.items(), key=lambda t: key(t[0]), reverse=True))
        return self._terms

    def as_dict(self) -> dict:
        return dict(self._d)

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._d)

    @property
    def lead_exps(self) -> Exps:
        return self.terms[0][0]

    @property
    def lead_coeff(self):
        return self.terms[0][1]

    def coefficient(self, exps) -> object:
        return self._d.get(tuple(exps), self.ring.field.zero)

    def degrees(self) -> set:
        return {self.ring.degree_of(e) for e in self._d}

    def degree(self) -> Degree:
        """Degree of a homogeneous polynomial (ValueError otherwise)."""
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("polynomial is zero or inhomogeneous")
        return ds.pop()

    def total_degree(self) -> int:
        return max(sum(e) for e in self._d) if self._d else -1

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        d = dict(self._d)
        for e, c in other._d.items():
            d[e] = self._norm(d.get(e, 0) + c)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        return Polynomial(self.ring, {e: (-c) % p if p else -c for e, c in self._d.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _norm(self, c):
        p = self.ring.field.characteristic
        return c % p if p else c

    def __mul__(self, other):
        other = self._coerce(other)
        p = self.ring.field.characteristic
        d: dict = {}
        for e1, c1 in self._d.items():
            for e2, c2 in other._d.items():
                e = _mul_exps(e1, e2)
                d[e] = d.get(e, 0) + c1 * c2
        if p:
            d = {e: c % p for e, c in d.items()}
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        return Polynomial(self.ring, {e: self._norm(v * c) for e, v in self._d.items()})

    def mul_monomial(self, exps: Exps, c=None) -> "Polynomial":
        if c is None:
            return Polynomial(self.ring, {_mul_exps(e, exps): v for e, v in self._d.items()})
        return Polynomial(self.ring, {_mul_exps(e, exps): self._norm(v * c) for e, v in self._d.items()})

    def monic(self) -> "Polynomial":
        if not self._d:
            return self
        return self.scale(self.ring.field.inv(self.lead_coeff))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def substitute(self, target: Ring, images: Sequence["Polynomial"]) -> "Polynomial":
        """Apply the ring map sending the i-th variable to ``images[i]``."""
        result = target.zero()
        powers: dict = {}
        for e, c in self._d.items():
            term = target.const(self.ring.field.to_fraction(c))
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[i, k] = images[i] ** k
                    term = term * powers[i, k]
            result = result + term
        return result

    def map_to(self, target: Ring, var_map: Sequence[int]) -> "Polynomial":
        """Relabel variables: variable i goes to target variable ``var_map[i]``."""
        n = target.nvars
        d = {}
        for e, c in self._d.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    ne[var_map[i]] += k
            d[tuple(ne)] = c
        return Polynomial(target, d)

    def render(self) -> str:
        if not self._d:
            return "0"
        field = self.ring.field
        names = self.ring.variables
        out = []
        for i, (e, c) in enumerate(self.terms):
            if field.characteristic:
                neg, mag = False, int(c)
            else:
                neg, mag = c < 0, abs(c)
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            cstr = field.render(mag)
            if mono:
                body = mono if cstr == "1" else f"{cstr}*{mono}"
            else:
                body = cstr
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    __str__ = render

    def __repr__(self):
        return f"Polynomial({self.render()!r})"


def bidegree(p: Polynomial):
    """Common bidegree of all terms, or INHOMOGENEOUS."""
    if p.ring.ngrading != 2:
        raise ValueError("ring is not bigraded")
    ds = p.degrees()
    if len(ds) != 1:
        return INHOMOGENEOUS
    return ds.pop()


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.tokens = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            if m.lastindex is None:
                break
            start = m.start(m.lastindex)
            kind = {1: "int", 2: "name", 3: "op"}[m.lastindex]
            self.tokens.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        self.end = len(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", self.end)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty expression", 0)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {val!r}", pos)
        return p

    def expr(self) -> Polynomial:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def uint(self) -> int:
        kind, val, pos = self.take()
        if kind != "int":
            raise ParseError("expected unsigned integer", pos)
        return int(val)

    def factor(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "int":
            num = int(val)
            k2, v2, _ = self.peek()
            den = 1
            if k2 == "op" and v2 == "/":
                self.take()
                den_pos = self.peek()[2]
                den = self.uint()
                if den == 0:
                    raise ParseError("zero denominator", den_pos)
            try:
                return self.ring.const(Fraction(num, den))
            except ZeroDivisionError:
                raise ParseError("coefficient not invertible in the prime field", pos) from None
        if kind == "name":
            if val not in self.ring.index:
                raise ParseError(f"unknown variable {val!r}", pos)
            v = self.ring.var(val)
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "^":
                self.take()
                return v ** self.uint()
            return v
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "^":
                self.take()
                return inner ** self.uint()
            return inner
        if kind == "eof":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    return _Parser(text, ring).parse()


def render(p: Polynomial) -> str:
    return p.render()

