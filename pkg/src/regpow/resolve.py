"""Graded presentations, minimal free resolutions, Ext and local cohomology by duality."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from math import comb
from typing import Iterable, Sequence

from .groebner import (
    Ideal,
    ModuleGB,
    Sparse,
    column_to_sparse,
    minimal_generators,
    minimal_vectors,
    sparse_to_column,
    syzygies,
    syzygy_vectors,
)
from .hilbert import coefficient, combine, numerator_monomial, pole_order, shift
from .kernel import Polynomial, Ring


@total_ordering
class _NegInf:
    """Minus infinity for a-invariants: below every integer, absorbing under +."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "-inf"

    def __str__(self):
        return "-inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("regpow-neg-inf")

    def __lt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self

    def __neg__(self):
        raise ArithmeticError("negating -inf")


NEG_INF = _NegInf()


def xmax(values: Iterable) -> object:
    """max with NEG_INF as identity (empty input gives NEG_INF)."""
    best = NEG_INF
    for v in values:
        if v is not NEG_INF and (best is NEG_INF or v > best):
            best = v
    return best


def is_finite(v) -> bool:
    return v is not NEG_INF and v is not None


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vneg(a):
    return tuple(-x for x in a)


def _w(deg) -> int:
    return sum(deg)


# ---------------------------------------------------------------------------
# presentations


def _norm_degree(ring: Ring, d) -> tuple:
    if isinstance(d, int):
        d = (d,)
    d = tuple(int(x) for x in d)
    if len(d) != ring.ngrading:
        raise ValueError(f"degree {d} has wrong length for {ring}")
    return d


def vector_degree(ring: Ring, degrees: Sequence[tuple], v: Sparse) -> tuple:
    """Degree of a homogeneous vector of a free module with the given generator degrees."""
    out = None
    for (i, e), _ in v.items():
        d = _vadd(degrees[i], ring.degree_of(e))
        if out is None:
            out = d
        elif d != out:
            raise ValueError("relation is not homogeneous")
    if out is None:
        raise ValueError("zero vector has no degree")
    return out


@dataclass(eq=False)
class GradedPresentation:
    """coker( (+) S(-b_j) -> (+) S(-a_i) ): generator degrees a_i and relation columns."""

    ring: Ring
    degrees: tuple
    relations: tuple = ()
    rel_degrees: tuple = field(init=False)
    minimal: bool = field(default=False, repr=False)
    _memo: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self.degrees = tuple(_norm_degree(self.ring, d) for d in self.degrees)
        rels = tuple(dict(v) for v in self.relations if v)
        for v in rels:
            for (i, _e) in v:
                if not 0 <= i < len(self.degrees):
                    raise ValueError("relation refers to a missing generator")
        self.relations = rels
        self.rel_degrees = tuple(vector_degree(self.ring, self.degrees, v) for v in rels)

    # constructors

    @classmethod
    def free(cls, ring: Ring, degrees: Iterable = None) -> "GradedPresentation":
        degrees = [ring.zero_degree()] if degrees is None else list(degrees)
        return cls(ring, tuple(degrees), ())

    @classmethod
    def cokernel(cls, ring: Ring, degrees: Iterable, columns: Iterable[Sequence]) -> "GradedPresentation":
        """Columns are sequences of polynomials (or strings), one entry per generator."""
        degrees = tuple(degrees)
        rels = []
        for col in columns:
            col = [ring(f) for f in col]
            if len(col) != len(degrees):
                raise ValueError("column length does not match the number of generators")
            rels.append(column_to_sparse(col))
        return cls(ring, degrees, tuple(rels))

    @classmethod
    def quotient_ring(cls, ideal: Ideal) -> "GradedPresentation":
        ring = ideal.ring
        return cls(ring, (ring.zero_degree(),), tuple(column_to_sparse([g]) for g in ideal.generators))

    @classmethod
    def ideal_module(cls, ideal: Ideal) -> "GradedPresentation":
        """The ideal itself as a module, presented by the syzygies of its minimal generators."""
        ring = ideal.ring
        gens = minimal_generators(ring, ideal.generators)
        syz = syzygies(gens)
        rels = tuple(column_to_sparse(c) for c in syz.columns)
        return cls(ring, tuple(g.degree() for g in gens), rels, minimal=True)

    # basic data

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def shifts(self) -> list:
        return [_w(d) for d in self.degrees]

    def matrix(self) -> list:
        """Relation columns as tuples of polynomials."""
        return [sparse_to_column(self.ring, v, self.rank) for v in self.relations]

    def shifted(self, delta) -> "GradedPresentation":
        """Add ``delta`` to every degree, i.e. the twist M(-delta)."""
        delta = _norm_degree(self.ring, delta)
        return GradedPresentation(
            self.ring, tuple(_vadd(d, delta) for d in self.degrees), self.relations, minimal=self.minimal
        )

    def is_zero(self) -> bool:
        return minimal_presentation(self).rank == 0

    def __repr__(self):
        return f"GradedPresentation({self.ring}, degrees={list(self.degrees)}, {len(self.relations)} relations)"


def _scaled_sub(field_, w: Sparse, mult: dict, v: Sparse) -> Sparse:
    """w - mult * v where mult is a polynomial dict {exps: coeff}."""
    p = field_.characteristic
    out = dict(w)
    for e, a in mult.items():
        for (i, f), c in v.items():
            k = (i, tuple(x + y for x, y in zip(e, f)))
            nc = out.get(k, 0) - a * c
            if p:
                nc %= p
            if nc:
                out[k] = nc
            else:
                out.pop(k, None)
    return out


def minimal_presentation(M: GradedPresentation) -> GradedPresentation:
    """Same module, minimal generators and minimal relations (no unit entries)."""
    if M.minimal:
        return M
    if "minimal" in M._memo:
        return M._memo["minimal"]
    ring = M.ring
    fld = ring.field
    zero = (0,) * ring.nvars
    degs = list(M.degrees)
    rels = minimal_vectors(ring, [_w(d) for d in degs], [dict(v) for v in M.relations])
    while True:
        pivot = None
        for c, v in enumerate(rels):
            rows = sorted(i for (i, e) in v if e == zero)
            if rows:
                pivot = (c, rows[0])
                break
        if pivot is None:
            break
        c, i = pivot
        v = rels.pop(c)
        inv = fld.inv(v[i, zero])
        nxt = []
        for w in rels:
            mult = {e: a * inv for (r, e), a in w.items() if r == i}
            if mult:
                w = _scaled_sub(fld, w, mult, v)
            nxt.append({(r - (r > i), e): a for (r, e), a in w.items() if r != i})
        degs.pop(i)
        rels = minimal_vectors(ring, [_w(d) for d in degs], nxt)
    out = GradedPresentation(ring, tuple(degs), tuple(rels), minimal=True)
    M._memo["minimal"] = out
    return out


# ---------------------------------------------------------------------------
# resolutions


def _apply(cols: Sequence[Sparse], w: Sparse) -> Sparse:
    out: dict = {}
    for (j, e), c in w.items():
        for (i, f), a in cols[j].items():
            k = (i, tuple(x + y for x, y in zip(e, f)))
            out[k] = out.get(k, 0) + c * a
    return out


@dataclass
class BettiTable:
    entries: dict  # (i, j) -> beta_{i,j}, j the scalar twist

    @classmethod
    def from_resolution(cls, res: "Resolution") -> "BettiTable":
        entries: dict = {}
        for i, degs in enumerate(res.twists):
            for d in degs:
                entries[i, _w(d)] = entries.get((i, _w(d)), 0) + 1
        return cls(entries)

    def regularity(self):
        return xmax(j - i for (i, j) in self.entries)

    @property
    def projective_dimension(self):
        return xmax(i for (i, _) in self.entries)

    def total(self, i: int) -> int:
        return sum(c for (k, _), c in self.entries.items() if k == i)

    def render(self) -> str:
        if not self.entries:
            return "0"
        cols = range(max(i for i, _ in self.entries) + 1)
        rows = sorted({j - i for i, j in self.entries})
        lines = ["      " + " ".join(f"{i:>4}" for i in cols)]
        lines.append("total:" + " ".join(f"{self.total(i):>4}" for i in cols))
        for r in range(rows[0], rows[-1] + 1):
            cells = [self.entries.get((i, i + r), 0) for i in cols]
            lines.append(f"{r:>5}:" + " ".join(f"{c if c else '.':>4}" for c in cells))
        return "\n".join(lines)


@dataclass
class Resolution:
    """maps[k] holds the columns of d_{k+1}: F_{k+1} -> F_k; twists[k] the degrees of F_k."""

    ring: Ring
    twists: list
    maps: list

    @property
    def length(self) -> int:
        return len(self.maps) if self.twists and self.twists[0] else -1

    @property
    def ranks(self) -> list:
        return [len(t) for t in self.twists]

    def betti(self) -> BettiTable:
        return BettiTable.from_resolution(self)

    def composites_vanish(self) -> bool:
        p = self.ring.field.characteristic
        for k in range(1, len(self.maps)):
            for w in self.maps[k]:
                img = _apply(self.maps[k - 1], w)
                if any((c % p if p else c) for c in img.values()):
                    return False
        return True

    def is_minimal(self) -> bool:
        zero = (0,) * self.ring.nvars
        return all(e != zero for cols in self.maps for v in cols for (_, e) in v)


def free_resolution(M: GradedPresentation) -> Resolution:
    if "resolution" in M._memo:
        return M._memo["resolution"]
    P = minimal_presentation(M)
    ring = P.ring
    twists = [list(P.degrees)]
    maps = []
    rows, cols, col_degs = list(P.degrees), list(P.relations), list(P.rel_degrees)
    while cols:
        maps.append(cols)
        twists.append(col_degs)
        if len(maps) > ring.nvars:
            raise AssertionError("resolution longer than the number of variables")
        syz = syzygy_vectors(ring, [_w(d) for d in rows], cols, [_w(d) for d in col_degs])
        syz = minimal_vectors(ring, [_w(d) for d in col_degs], syz)
        rows, cols = col_degs, syz
        col_degs = [vector_degree(ring, rows, v) for v in syz]
    res = Resolution(ring, twists, maps)
    M._memo["resolution"] = res
    return res


def regularity_betti(M: GradedPresentation):
    """max(j - i) over nonzero Betti numbers; NEG_INF for the zero module."""
    if M.ring.ngrading != 1:
        raise ValueError("regularity needs a singly graded ring")
    return free_resolution(M).betti().regularity()


# ---------------------------------------------------------------------------
# Ext and duality


def ext_module(M: GradedPresentation, i: int) -> GradedPresentation:
    """Ext^i(M, S) as cohomology of the dual of a minimal free resolution."""
    ring = M.ring
    n = ring.nvars
    if not 0 <= i <= n:
        raise ValueError(f"Ext index {i} outside 0..{n}")
    memo = M._memo.setdefault("ext", {})
    if i in memo:
        return memo[i]
    res = free_resolution(M)
    if i > res.length:
        out = GradedPresentation(ring, (), minimal=True)
        memo[i] = out
        return out
    Fi = res.twists[i]
    dual = [_vneg(a) for a in Fi]
    # kernel of d_{i+1}^T : F_i^* -> F_{i+1}^*
    if i < len(res.maps):
        nxt = res.twists[i + 1]
        cols: list = [dict() for _ in Fi]
        for k, v in enumerate(res.maps[i]):
            for (j, e), c in v.items():
                cols[j][k, e] = c
        ker = syzygy_vectors(ring, [-_w(b) for b in nxt], cols, [_w(a) for a in dual])
        ker = minimal_vectors(ring, [_w(a) for a in dual], ker)
    else:
        ker = [{(j, (0,) * n): ring.field.one} for j in range(len(Fi))]
    if not ker:
        out = GradedPresentation(ring, (), minimal=True)
        memo[i] = out
        return out
    # image of d_i^T : F_{i-1}^* -> F_i^*
    img = []
    if i >= 1:
        prev = res.twists[i - 1]
        rows: list = [dict() for _ in prev]
        for j, v in enumerate(res.maps[i - 1]):
            for (l, e), c in v.items():
                rows[l][j, e] = c
        img = [r for r in rows if r]
    kdeg = [vector_degree(ring, dual, v) for v in ker]
    ideg = [vector_degree(ring, dual, v) for v in img]
    r = len(ker)
    rel = syzygy_vectors(ring, [_w(a) for a in dual], ker + img, [_w(d) for d in kdeg + ideg])
    proj = []
    for v in rel:
        u = {(j, e): c for (j, e), c in v.items() if j < r}
        if u:
            proj.append(u)
    out = minimal_presentation(GradedPresentation(ring, tuple(kdeg), tuple(proj)))
    memo[i] = out
    return out


def initial_degree(M: GradedPresentation):
    P = minimal_presentation(M)
    return min((_w(d) for d in P.degrees), default=NEG_INF) if P.rank else None


@dataclass
class LocalCohomologyTable:
    """[H^i_m(M)]_n for i = 0..N, with exact a-invariants."""

    window: tuple  # inclusive (lo, hi)
    a: list  # a^i for i = 0..N, ints or NEG_INF
    entries: dict  # (i, n) -> dim
    exts: dict = field(repr=False, default_factory=dict)
    nvars_weight: int = 0

    @property
    def a_star(self):
        return xmax(self.a)

    @property
    def reg(self):
        return xmax(ai + i for i, ai in enumerate(self.a))

    def dim(self, i: int, n: int) -> int:
        if (i, n) in self.entries:
            return self.entries[i, n]
        E = self.exts[i]
        return hilbert_dim(E, -n - self.nvars_weight) if E.rank else 0


def a_invariants(M: GradedPresentation, window: tuple | None = None) -> LocalCohomologyTable:
    """a^i(M) = -indeg Ext^{N-i}(M, S) - (sum of variable degrees)."""
    ring = M.ring
    if ring.ngrading != 1:
        raise ValueError("local duality here needs a singly graded ring")
    memo = M._memo
    n = ring.nvars
    wsum = sum(ring.weights)
    if "a_inv" not in memo:
        a, exts = [], {}
        for i in range(n + 1):
            E = ext_module(M, n - i)
            exts[i] = E
            a.append(-min(_w(d) for d in E.degrees) - wsum if E.rank else NEG_INF)
        memo["a_inv"] = (a, exts)
    a, exts = memo["a_inv"]
    table = LocalCohomologyTable((0, -1), list(a), {}, exts, wsum)
    if window is None:
        top = table.a_star
        hi = top + 1 if is_finite(top) else 0
        window = (hi - 10, hi)
    lo, hi = window
    table.window = (lo, hi)
    for i in range(n + 1):
        for k in range(lo, hi + 1):
            table.entries[i, k] = table.dim(i, k)
    return table


# ---------------------------------------------------------------------------
# Hilbert functions


def hilbert_numerator(M: GradedPresentation) -> dict:
    """Numerator of the (multigraded) Hilbert series of M, via lead terms."""
    if "hnum" in M._memo:
        return M._memo["hnum"]
    ring = M.ring
    vdeg = ring.grading
    parts = []
    if M.rank:
        gb = ModuleGB(ring, M.shifts, [dict(v) for v in M.relations])
        leads: dict = {i: [] for i in range(M.rank)}
        for comp, e in gb.leads():
            leads[comp].append(e)
        for i in range(M.rank):
            parts.append(shift(numerator_monomial(leads[i], vdeg), M.degrees[i]))
    num = combine(*parts)
    M._memo["hnum"] = num
    return num


def hilbert_dim(M: GradedPresentation, degree) -> int:
    deg = (degree,) if isinstance(degree, int) else tuple(degree)
    return coefficient(hilbert_numerator(M), M.ring.grading, deg)


def hilbert_function(M: GradedPresentation, window) -> list:
    """dim M_n for each n in ``window`` (an iterable of degrees, or an inclusive (lo, hi) pair)."""
    if isinstance(window, tuple) and len(window) == 2 and all(isinstance(x, int) for x in window):
        window = range(window[0], window[1] + 1)
    return [hilbert_dim(M, n) for n in window]


def krull_dimension(M: GradedPresentation) -> int:
    """dim M (-1 for the zero module)."""
    return pole_order(hilbert_numerator(M), M.ring.weights)


@dataclass(frozen=True)
class HilbertPolynomial:
    """P(n) = sum_k diffs[k] * C(n - base, k)."""

    base: int
    diffs: tuple

    def __call__(self, n: int) -> int:
        m = n - self.base
        total = 0
        for k, dk in enumerate(self.diffs):
            num = 1
            for r in range(k):
                num *= m - r
            total += dk * num // _fact(k)
        return total

    @property
    def degree(self) -> int:
        nz = [k for k, d in enumerate(self.diffs) if d]
        return nz[-1] if nz else -1


def _fact(k: int) -> int:
    out = 1
    for r in range(2, k + 1):
        out *= r
    return out


def hilbert_polynomial(M: GradedPresentation) -> HilbertPolynomial:
    """Fit from exact values past the regularity, checked on two further degrees."""
    ring = M.ring
    if not ring.is_standard:
        raise ValueError("Hilbert polynomial needs the standard grading")
    reg = regularity_betti(M)
    if reg is NEG_INF:
        return HilbertPolynomial(0, ())
    n = ring.nvars
    base = reg + 1
    values = [hilbert_dim(M, base + k) for k in range(n + 1)]
    diffs, row = [], values
    while row:
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    P = HilbertPolynomial(base, tuple(diffs))
    for k in (n + 1, n + 2):
        if P(base + k) != hilbert_dim(M, base + k):
            raise ArithmeticError("Hilbert polynomial fit failed verification")
    return P


# ---------------------------------------------------------------------------
# depth, Cohen-Macaulayness, canonical modules


class NotCohenMacaulay(ValueError):
    pass


@dataclass(frozen=True)
class DepthReport:
    depth: int
    dim: int
    is_cm: bool
    is_gorenstein: bool

    def __iter__(self):
        return iter((self.depth, self.dim, self.is_cm, self.is_gorenstein))


def depth_and_cm(M: GradedPresentation) -> DepthReport:
    res = free_resolution(M)
    if not res.twists or not res.twists[0]:
        raise ValueError("zero module has no depth")
    n = M.ring.nvars
    pd = res.length
    depth = n - pd
    dim = krull_dimension(M)
    cm = depth == dim
    return DepthReport(depth, dim, cm, cm and res.ranks[-1] == 1)


def canonical_module(M: GradedPresentation) -> GradedPresentation:
    """Ext^c(M, S)(-sum of variable degrees) for a Cohen-Macaulay M of codimension c."""
    rep = depth_and_cm(M)
    if not rep.is_cm:
        raise NotCohenMacaulay("canonical module requested for a non Cohen-Macaulay module")
    ring = M.ring
    c = ring.nvars - rep.dim
    total = tuple(sum(g[k] for g in ring.grading) for k in range(ring.ngrading))
    return ext_module(M, c).shifted(total)
