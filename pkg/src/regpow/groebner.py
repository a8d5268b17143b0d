"""Buchberger's algorithm over graded free modules and the ideal toolbox on top of it.

Internally a term ``c * x^e * e_i`` is stored under an order key: a tuple that is a
linear function of ``(e, i)`` and compares like the monomial order.  Multiplying by
a monomial is then componentwise addition and leading terms are plain ``max``.
"""

from __future__ import annotations

import heapq
import itertools
import time
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from operator import add, le, sub
from typing import Iterable, Sequence

from .hilbert import numerator_monomial, pole_order
from .kernel import GREVLEX, MonomialOrder, Polynomial, Ring

Sparse = dict  # {(component, exps): coeff}


@dataclass(frozen=True)
class Budget:
    max_degree: int = 80
    max_size: int = 20000
    max_seconds: float | None = None


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit one of the configured resource caps."""


_BUDGET: ContextVar[Budget] = ContextVar("regpow_budget", default=Budget())
_CACHE: ContextVar = ContextVar("regpow_gb_cache", default=None)


def active_budget() -> Budget:
    return _BUDGET.get()


@contextmanager
def budget_scope(budget: Budget):
    token = _BUDGET.set(budget)
    try:
        yield budget
    finally:
        _BUDGET.reset(token)


@contextmanager
def cache_scope(cache):
    token = _CACHE.set(cache)
    try:
        yield cache
    finally:
        _CACHE.reset(token)


# ---------------------------------------------------------------------------
# key layout


class _Layout:
    """Order keys for terms of a free module ``(+)_i S(-shift_i)``.

    key = (top_i, <order key of e, with shift_i added to its degree slot>, i)
    ``top`` lets a block of components dominate all others (used for syzygies).
    """

    def __init__(self, ring: Ring, order: MonomialOrder, shifts=(0,), tops=None):
        self.ring = ring
        self.order = order
        self.n = ring.nvars
        self.weights = ring.weights
        self.second = tuple(g[1] for g in ring.grading) if ring.ngrading > 1 else ()
        self.shifts = tuple(shifts)
        self.tops = tuple(tops) if tops is not None else (0,) * len(self.shifts)
        self.slots = [(s + 1, sign) for s, sign in order.exp_slots(self.n)]
        if order.kind in ("grevlex", "bigraded-grevlex"):
            self.shift_slot = 1
        elif order.kind == "elim":
            self.shift_slot = 1 + min(order.block, self.n) + 1
        else:
            self.shift_slot = None
        kind = order.kind
        n = self.n
        if kind == "grevlex":
            self.exps = lambda key: tuple(-key[n + 1 - i] for i in range(n))
        else:
            slots = self.slots
            self.exps = lambda key: tuple(sign * key[s] for s, sign in slots)

    def encode(self, exps, comp: int = 0) -> tuple:
        body = list(self.order.key(exps, self.weights, self.second))
        if self.shift_slot is not None:
            body[self.shift_slot - 1] += self.shifts[comp]
        return (self.tops[comp], *body, comp)

    def mono(self, exps) -> tuple:
        return (0, *self.order.key(exps, self.weights, self.second), 0)

    def degree_of_exps(self, exps, comp: int) -> int:
        return sum(map(int.__mul__, self.weights, exps)) + self.shifts[comp]

    def degree(self, key) -> int:
        return self.degree_of_exps(self.exps(key), key[-1])


class _Elt:
    __slots__ = ("lead", "lexps", "comp", "tail", "deg")

    def __init__(self, lead, lexps, comp, tail, deg):
        self.lead, self.lexps, self.comp, self.tail, self.deg = lead, lexps, comp, tail, deg


def _divides(a, b) -> bool:
    return all(map(le, a, b))


class _Engine:
    """Homogeneous Buchberger with Gebauer-Moeller pair updates.

    Inputs are queued by degree after the S-pairs of the same degree, so an input
    that reduces to zero lies in the span of the others: the surviving inputs form
    a minimal generating set.
    """

    def __init__(self, layout: _Layout, p: int, product_criterion: bool):
        self.L = layout
        self.p = p
        self.product = product_criterion
        self.elts: list[_Elt] = []
        self.active: dict[int, list[int]] = {}
        self.queue: list = []
        self.seq = itertools.count()
        self.live: dict = {}
        self.minimal: list = []

    # arithmetic ---------------------------------------------------------

    def _reducer(self, key, exps):
        for idx in self.active.get(key[-1], ()):
            g = self.elts[idx]
            if _divides(g.lexps, exps):
                return g
        return None

    def reduce(self, v: dict, full: bool = True) -> dict:
        p = self.p
        out = {}
        exps_of = self.L.exps
        while v:
            lt = max(v)
            c = v.pop(lt)
            g = self._reducer(lt, exps_of(lt))
            if g is None:
                out[lt] = c
                if not full:
                    out.update(v)
                    return out
                continue
            m = tuple(map(sub, lt, g.lead))
            get = v.get
            if p:
                for k, a in g.tail:
                    kk = tuple(map(add, k, m))
                    nc = (get(kk, 0) - c * a) % p
                    if nc:
                        v[kk] = nc
                    elif kk in v:
                        del v[kk]
            else:
                for k, a in g.tail:
                    kk = tuple(map(add, k, m))
                    nc = get(kk, 0) - c * a
                    if nc:
                        v[kk] = nc
                    elif kk in v:
                        del v[kk]
        return out

    def _make_elt(self, v: dict) -> _Elt:
        items = sorted(v.items(), reverse=True)
        lead, lc = items[0]
        if lc != 1:
            p = self.p
            inv = pow(lc, -1, p) if p else 1 / lc
            items = [(k, (c * inv) % p if p else c * inv) for k, c in items]
        lexps = self.L.exps(lead)
        comp = lead[-1]
        return _Elt(lead, lexps, comp, items[1:], self.L.degree_of_exps(lexps, comp))

    def _spoly(self, i: int, j: int, lcm) -> dict:
        gi, gj = self.elts[i], self.elts[j]
        lkey = self.L.encode(lcm, gi.comp)
        mi = tuple(map(sub, lkey, gi.lead))
        mj = tuple(map(sub, lkey, gj.lead))
        p = self.p
        v = {}
        for k, a in gi.tail:
            v[tuple(map(add, k, mi))] = a
        get = v.get
        for k, a in gj.tail:
            kk = tuple(map(add, k, mj))
            nc = get(kk, 0) - a
            if p:
                nc %= p
            if nc:
                v[kk] = nc
            elif kk in v:
                del v[kk]
        return v

    # pair management ----------------------------------------------------

    def add_input(self, v: dict, tag) -> None:
        if not v:
            return
        deg = self.L.degree(max(v))
        heapq.heappush(self.queue, (deg, 1, next(self.seq), tag, v))

    def _coprime(self, a, b) -> bool:
        return self.product and not any(x and y for x, y in zip(a, b))

    def _insert(self, v: dict) -> int:
        h = len(self.elts)
        H = self._make_elt(v)
        self.elts.append(H)
        same = self.active.setdefault(H.comp, [])
        lcms = {g: tuple(map(max, H.lexps, self.elts[g].lexps)) for g in same}
        cands = list(same)
        kept = []
        while cands:
            g1 = cands.pop(0)
            l1 = lcms[g1]
            if self._coprime(H.lexps, self.elts[g1].lexps) or not any(
                _divides(lcms[g2], l1) for g2 in itertools.chain(cands, kept)
            ):
                kept.append(g1)
        new_pairs = [g for g in kept if not self._coprime(H.lexps, self.elts[g].lexps)]
        for (i, j), (lij, comp) in list(self.live.items()):
            if comp != H.comp or not _divides(H.lexps, lij):
                continue
            li = tuple(map(max, self.elts[i].lexps, H.lexps))
            lj = tuple(map(max, self.elts[j].lexps, H.lexps))
            if li != lij and lj != lij:
                del self.live[i, j]
        for g in new_pairs:
            lcm = lcms[g]
            self.live[g, h] = (lcm, H.comp)
            deg = self.L.degree_of_exps(lcm, H.comp)
            heapq.heappush(self.queue, (deg, 0, next(self.seq), g, h))
        self.active[H.comp] = [g for g in same if not _divides(H.lexps, self.elts[g].lexps)] + [h]
        return h

    def run(self) -> None:
        budget = active_budget()
        start = time.monotonic()
        while self.queue:
            item = heapq.heappop(self.queue)
            deg, kind = item[0], item[1]
            if kind == 0:
                i, j = item[3], item[4]
                if (i, j) not in self.live:
                    continue
                lcm, _ = self.live.pop((i, j))
                if deg > budget.max_degree:
                    raise BudgetExceeded(f"S-pair degree {deg} exceeds cap {budget.max_degree}")
                v = self._spoly(i, j, lcm)
            else:
                v = dict(item[4])
            if budget.max_seconds is not None and time.monotonic() - start > budget.max_seconds:
                raise BudgetExceeded(f"Groebner computation exceeded {budget.max_seconds} s")
            r = self.reduce(v)
            if r:
                self._insert(r)
                if kind == 1:
                    self.minimal.append(item[3])
                if len(self.elts) > budget.max_size:
                    raise BudgetExceeded(f"basis size exceeds cap {budget.max_size}")

    def reduced_basis(self) -> list[_Elt]:
        idxs = sorted(itertools.chain.from_iterable(self.active.values()))
        out = []
        for idx in idxs:
            g = self.elts[idx]
            tail = self.reduce(dict(g.tail))
            out.append(_Elt(g.lead, g.lexps, g.comp, sorted(tail.items(), reverse=True), g.deg))
        for g in out:
            self.elts.append(g)
        # reduce against the tail-reduced copies from now on
        self.active = {}
        base = len(self.elts) - len(out)
        for k, g in enumerate(out):
            self.active.setdefault(g.comp, []).append(base + k)
        out.sort(key=lambda g: g.lead, reverse=True)
        return out


# ---------------------------------------------------------------------------
# sparse vector conversions


def column_to_sparse(column: Sequence[Polynomial]) -> Sparse:
    out = {}
    for i, f in enumerate(column):
        for e, c in f.as_dict().items():
            out[i, e] = c
    return out


def sparse_to_column(ring: Ring, v: Sparse, rank: int) -> tuple:
    parts: list[dict] = [dict() for _ in range(rank)]
    for (i, e), c in v.items():
        parts[i][e] = c
    return tuple(Polynomial(ring, d) for d in parts)


class ModuleGB:
    """Reduced Groebner basis of a graded submodule of ``(+)_i S(-shift_i)``.

    ``shifts`` are integer weights of the free generators (the sum of the
    components of their degrees).  ``tops`` optionally marks dominating blocks.
    """

    def __init__(
        self,
        ring: Ring,
        shifts: Sequence[int],
        vectors: Iterable[Sparse],
        order: MonomialOrder | None = None,
        tops: Sequence[int] | None = None,
    ):
        self.ring = ring
        self.order = order or ring.order
        self.rank = len(shifts)
        self.layout = _Layout(ring, self.order, shifts, tops)
        p = ring.field.characteristic
        self._engine = _Engine(self.layout, p, product_criterion=self.rank == 1)
        encode = self.layout.encode
        self.inputs = []
        for t, v in enumerate(vectors):
            kv = {encode(e, i): c for (i, e), c in v.items() if c}
            self.inputs.append(kv)
            self._engine.add_input(kv, t)
        self._engine.run()
        self.basis = self._engine.reduced_basis()
        self.minimal_inputs = sorted(self._engine.minimal)

    def __len__(self):
        return len(self.basis)

    def _to_sparse(self, kv: dict) -> Sparse:
        exps = self.layout.exps
        return {(k[-1], exps(k)): c for k, c in kv.items()}

    def elements(self) -> list[Sparse]:
        return [self._to_sparse({g.lead: 1, **dict(g.tail)}) for g in self.basis]

    def leads(self) -> list[tuple[int, tuple]]:
        return [(g.comp, g.lexps) for g in self.basis]

    def reduce(self, v: Sparse) -> Sparse:
        encode = self.layout.encode
        kv = {encode(e, i): c for (i, e), c in v.items() if c}
        return self._to_sparse(self._engine.reduce(kv))

    def contains(self, v: Sparse) -> bool:
        return not self.reduce(v)

    def s_pairs_reduce_to_zero(self) -> bool:
        """Exhaustive Buchberger criterion check over every pair of the reduced basis."""
        eng = self._engine
        basis = self.basis
        for a, b in itertools.combinations(range(len(basis)), 2):
            ga, gb = basis[a], basis[b]
            if ga.comp != gb.comp:
                continue
            lcm = tuple(map(max, ga.lexps, gb.lexps))
            lkey = self.layout.encode(lcm, ga.comp)
            ma = tuple(map(sub, lkey, ga.lead))
            mb = tuple(map(sub, lkey, gb.lead))
            v: dict = {}
            p = eng.p
            for k, c in ga.tail:
                kk = tuple(map(add, k, ma))
                v[kk] = v.get(kk, 0) + c
            for k, c in gb.tail:
                kk = tuple(map(add, k, mb))
                v[kk] = v.get(kk, 0) - c
            v = {k: (c % p if p else c) for k, c in v.items()}
            v = {k: c for k, c in v.items() if c}
            if eng.reduce(v):
                return False
        return True


# ---------------------------------------------------------------------------
# ideals


def _weight(ring: Ring, f: Polynomial) -> int:
    return sum(f.degree())


class GroebnerBasis(tuple):
    """Reduced Groebner basis (a tuple of monic polynomials) with its order."""

    def __new__(cls, ring: Ring, order: MonomialOrder, polys, engine: ModuleGB | None = None):
        obj = super().__new__(cls, polys)
        obj.ring = ring
        obj.order = order
        obj._mgb = engine
        return obj

    @property
    def engine(self) -> ModuleGB:
        if self._mgb is None:
            self._mgb = ModuleGB(self.ring, [0], [column_to_sparse([f]) for f in self], self.order)
        return self._mgb

    def normal_form(self, f: Polynomial) -> Polynomial:
        r = self.engine.reduce(column_to_sparse([f]))
        return sparse_to_column(self.ring, r, 1)[0]

    def lead_exps(self) -> list:
        return [c[1] for c in self.engine.leads()]

    def is_groebner(self) -> bool:
        return self.engine.s_pairs_reduce_to_zero()


class Ideal:
    """Homogeneous ideal of a polynomial ring given by generators."""

    def __init__(self, ring: Ring, generators: Iterable):
        self.ring = ring
        gens = [ring(g) for g in generators]
        self.generators = tuple(g for g in gens if g)
        for g in self.generators:
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
        self._gb: dict = {}

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators))})"

    def __iter__(self):
        return iter(self.generators)

    def groebner(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        return buchberger(self, order)

    def normal_form(self, f) -> Polynomial:
        return normal_form(self.ring(f), self.groebner())

    def contains(self, f) -> bool:
        return not self.normal_form(f)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        gb = self.groebner()
        return any(f.is_constant() for f in gb)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    __hash__ = None

    def minimal_generators(self) -> "Ideal":
        return Ideal(self.ring, minimal_generators(self.ring, self.generators))


def _cache_key_order(order: MonomialOrder) -> str:
    return f"{order.kind}:{order.block}"


def buchberger(ideal: Ideal, order: MonomialOrder | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of a homogeneous ideal."""
    ring = ideal.ring
    order = order or ring.order
    key = _cache_key_order(order)
    if key in ideal._gb:
        return ideal._gb[key]
    cache = _CACHE.get()
    if cache is not None:
        hit = cache.load(ring, order, ideal.generators)
        if hit is not None:
            gb = GroebnerBasis(ring, order, hit)
            ideal._gb[key] = gb
            return gb
    eng = ModuleGB(ring, [0], [column_to_sparse([f]) for f in ideal.generators], order)
    polys = [sparse_to_column(ring, v, 1)[0] for v in eng.elements()]
    gb = GroebnerBasis(ring, order, polys, eng)
    ideal._gb[key] = gb
    if cache is not None:
        cache.store(ring, order, ideal.generators, polys)
    return gb


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(f)


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    ga, gb = a.groebner(), b.groebner()
    return all(not normal_form(f, gb) for f in a.generators) and all(
        not normal_form(f, ga) for f in b.generators
    )


def minimal_generators(ring: Ring, gens: Sequence[Polynomial]) -> list[Polynomial]:
    """A minimal homogeneous generating subset, normalised to be monic."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    # duplicates up to scalars are dropped before the engine sees them
    seen, uniq = set(), []
    for g in gens:
        m = g.monic()
        if m not in seen:
            seen.add(m)
            uniq.append(m)
    eng = ModuleGB(ring, [0], [column_to_sparse([f]) for f in uniq])
    return [uniq[i] for i in eng.minimal_inputs]


def eliminate(ideal: Ideal, front_block: Iterable[str]) -> Ideal:
    """Generators of the intersection of ``ideal`` with the subring on the other variables."""
    ring = ideal.ring
    front = [v for v in ring.variables if v in set(front_block)]
    unknown = set(front_block) - set(ring.variables)
    if unknown:
        raise ValueError(f"unknown variables {sorted(unknown)}")
    if not front:
        return Ideal(ring, ideal.generators)
    rest = [v for v in ring.variables if v not in front]
    perm_vars = front + rest
    elim_ring = Ring(
        ring.field,
        tuple(perm_vars),
        tuple(ring.grading[ring.index[v]] for v in perm_vars),
        MonomialOrder("elim", len(front)),
    )
    to_elim = [perm_vars.index(v) for v in ring.variables]
    back = [ring.index[v] for v in perm_vars]
    gens = [f.map_to(elim_ring, to_elim) for f in ideal.generators]
    gb = buchberger(Ideal(elim_ring, gens))
    k = len(front)
    keep = [g for g in gb if all(not any(e[:k]) for e in g.as_dict())]
    return Ideal(ring, [g.map_to(ring, back) for g in keep])


def syzygy_vectors(
    ring: Ring,
    row_shifts: Sequence[int],
    columns: Sequence[Sparse],
    col_shifts: Sequence[int],
) -> list[Sparse]:
    """Generators (not yet minimal) of the syzygies among ``columns``.

    Uses the augmented module (c_j, e_j) with the row block dominating: basis
    elements with leading term outside the row block are exactly syzygies.
    """
    r, s = len(row_shifts), len(columns)
    if s == 0:
        return []
    shifts = list(row_shifts) + list(col_shifts)
    tops = [1] * r + [0] * s
    vecs = []
    for j, col in enumerate(columns):
        v = dict(col)
        v[r + j, (0,) * ring.nvars] = ring.field.one
        vecs.append(v)
    eng = ModuleGB(ring, shifts, vecs, tops=tops)
    out = []
    for g in eng.basis:
        if g.comp >= r:
            sv = eng._to_sparse({g.lead: 1, **dict(g.tail)})
            out.append({(i - r, e): c for (i, e), c in sv.items()})
    return out


def minimal_vectors(ring: Ring, shifts: Sequence[int], vectors: Sequence[Sparse]) -> list[Sparse]:
    """Minimal generating subset of a homogeneous submodule."""
    vectors = [v for v in vectors if v]
    if not vectors:
        return []
    eng = ModuleGB(ring, shifts, vectors)
    return [vectors[i] for i in eng.minimal_inputs]


@dataclass(frozen=True)
class SyzygyMatrix:
    generators: tuple  # the ordered polynomials related by the columns
    columns: tuple  # each a tuple of polynomials, one per generator
    twists: tuple  # degree of each column

    def check(self) -> bool:
        ring = self.generators[0].ring if self.generators else None
        for col in self.columns:
            total = ring.zero()
            for a, f in zip(col, self.generators):
                total = total + a * f
            if total:
                return False
        return True


def syzygies(gens: Sequence[Polynomial]) -> SyzygyMatrix:
    """Minimal generators of the first syzygy module of an ordered list of forms."""
    gens = list(gens)
    if not gens:
        return SyzygyMatrix((), (), ())
    ring = gens[0].ring
    cols = [column_to_sparse([g]) for g in gens]
    shifts = [sum(g.degree()) for g in gens]
    syz = syzygy_vectors(ring, [0], cols, shifts)
    syz = minimal_vectors(ring, shifts, syz)
    columns, twists = [], []
    for v in syz:
        col = sparse_to_column(ring, v, len(gens))
        columns.append(col)
        (i, e), _ = next(iter(v.items()))
        twists.append(tuple(a + b for a, b in zip(ring.degree_of(e), gens[i].degree())))
    return SyzygyMatrix(tuple(gens), tuple(columns), tuple(twists))


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """Colon ideal I : J."""
    ring = I.ring
    if J.is_zero():
        return Ideal(ring, [ring.one()])
    if I.is_zero():
        return Ideal(ring, [])
    # h in I:J  <=>  (h*g_1, ..., h*g_s) lies in I^s
    Jg = J.generators
    s = len(Jg)
    col0 = {}
    for j, g in enumerate(Jg):
        for e, c in g.as_dict().items():
            col0[j, e] = c
    shifts = [sum(g.degree()) for g in Jg]
    cols = [col0]
    col_shifts = [0]
    for j in range(s):
        for f in I.generators:
            cols.append({(j, e): c for e, c in f.as_dict().items()})
            col_shifts.append(sum(f.degree()) - shifts[j])
    syz = syzygy_vectors(ring, shifts, cols, col_shifts)
    gens = []
    for v in syz:
        d = {e: c for (i, e), c in v.items() if i == 0}
        if d:
            gens.append(Polynomial(ring, d))
    return Ideal(ring, minimal_generators(ring, gens))


def saturate(I: Ideal, J: Ideal, max_steps: int = 200) -> Ideal:
    """I : J^infinity by iterated quotients."""
    current = I
    for _ in range(max_steps):
        nxt = quotient(current, J)
        if ideal_equal(nxt, current):
            return current
        current = nxt
    raise BudgetExceeded("saturation did not stabilise")


def ideal_power(I: Ideal, q: int) -> Ideal:
    """I^q with a minimal generating set; I^0 = (1)."""
    if q < 0:
        raise ValueError("power must be nonnegative")
    ring = I.ring
    if q == 0:
        return Ideal(ring, [ring.one()])
    base = minimal_generators(ring, I.generators)
    current = list(base)
    for _ in range(q - 1):
        current = minimal_generators(ring, [a * b for a in current for b in base])
    return Ideal(ring, current)


def krull_dimension_quotient(I: Ideal) -> int:
    """dim S/I from the Hilbert series of the lead-term ideal (-1 for S/I = 0)."""
    gb = I.groebner()
    ring = I.ring
    if any(f.is_constant() for f in gb):
        return -1
    num = numerator_monomial([f.lead_exps for f in gb], [(w,) for w in ring.weights])
    return pole_order(num, ring.weights)


def is_m_primary(I: Ideal) -> bool:
    """True when S/I is finite dimensional over the field (and I is proper)."""
    gb = I.groebner()
    if any(f.is_constant() for f in gb):
        return False
    n = I.ring.nvars
    pure = set()
    for f in gb:
        e = f.lead_exps
        support = [i for i in range(n) if e[i]]
        if len(support) == 1:
            pure.add(support[0])
    return len(pure) == n
