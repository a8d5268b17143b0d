"""Bigraded Rees algebra presentations and their strands.

The ambient ring is k[x_0..x_n, T_0..T_m] with deg x = (1, 0) and deg T = (d, 1).
A term x^a T^b has paper bidegree (|a|, |b|): R_(p,q) = (I^q)_{p+dq}.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence

from .groebner import Ideal, buchberger, eliminate, minimal_generators
from .kernel import MonomialOrder, Polynomial, Ring
from .resolve import GradedPresentation, hilbert_dim


class NotEquigenerated(ValueError):
    pass


def monomials_of_degree(nvars: int, degree: int) -> list[tuple]:
    """Exponent vectors of total degree ``degree``, in descending lex order."""
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def _fresh_names(prefix: str, count: int, taken: set) -> list[str]:
    while any(f"{prefix}{j}" in taken for j in range(count)):
        prefix += "_"
    return [f"{prefix}{j}" for j in range(count)]


@dataclass(frozen=True, eq=False)
class ReesPresentation:
    base: Ring  # A = k[x]
    ambient: Ring  # bigraded k[x, T]
    J: Ideal
    d: int
    f: tuple  # ordered generators of I

    @property
    def nx(self) -> int:
        return self.base.nvars

    @property
    def nt(self) -> int:
        return len(self.f)

    @property
    def xvars(self) -> tuple:
        return self.ambient.variables[: self.nx]

    @property
    def tvars(self) -> tuple:
        return self.ambient.variables[self.nx :]

    def fiber_ring(self) -> Ring:
        return Ring.polynomial(self.tvars, self.base.field)

    def split_degree(self, g: Polynomial) -> tuple:
        """(x-degree, T-degree) of a bihomogeneous element."""
        first, second = g.degree()
        return first - self.d * second, second

    def substitution_check(self) -> bool:
        """Every generator of J vanishes under T_j -> f_j * t."""
        names = list(self.base.variables)
        tname = _fresh_names("t", 1, set(names))[0]
        At = Ring.polynomial(names + [tname], self.base.field)
        t = At.var(tname)
        lift = [At.var(v) for v in names]
        images = lift + [fj.substitute(At, lift[: self.nx]) * t for fj in self.f]
        return all(not g.substitute(At, images) for g in self.J.generators)

    def quotient(self) -> GradedPresentation:
        return GradedPresentation.quotient_ring(self.J)

    def dim(self, p: int, q: int) -> int:
        """dim_k R_(p,q) from the bigraded Hilbert series of k[x,T]/J."""
        if q < 0:
            return 0
        M = self.__dict__.setdefault("_quot", self.quotient())
        return hilbert_dim(M, (p + self.d * q, q))


def rees_presentation(I: Ideal) -> ReesPresentation:
    """J = ker(k[x,T] -> A[It]) by eliminating t from (T_j - f_j t)."""
    A = I.ring
    if A.ngrading != 1:
        raise ValueError("base ring must be singly graded")
    if not A.is_standard:
        raise ValueError("base ring must have the standard grading")
    gens = minimal_generators(A, I.generators)
    if not gens:
        raise NotEquigenerated("zero ideal")
    degs = {g.total_degree() for g in gens}
    if len(degs) != 1:
        raise NotEquigenerated(f"generators have degrees {sorted(degs)}")
    d = degs.pop()
    if d < 1:
        raise NotEquigenerated("unit ideal")
    xs = list(A.variables)
    ts = _fresh_names("T", len(gens), set(xs))
    tname = _fresh_names("t", 1, set(xs) | set(ts))[0]
    # x:1, T:d+1, t:1 makes every T_j - f_j t homogeneous
    E = Ring(
        A.field,
        tuple([tname] + xs + ts),
        tuple([(1,)] + [(1,)] * len(xs) + [(d + 1,)] * len(ts)),
        MonomialOrder("elim", 1),
    )
    xE = [E.var(v) for v in xs]
    t = E.var(tname)
    rels = [E.var(T) - f.substitute(E, xE) * t for T, f in zip(ts, gens)]
    gb = buchberger(Ideal(E, rels))
    B = Ring.bigraded(xs, ts, d, A.field)
    kept = []
    for g in gb:
        if all(e[0] == 0 for e in g.as_dict()):
            kept.append(_drop_first(g, B))
    J = Ideal(B, minimal_generators(B, kept))
    return ReesPresentation(A, B, J, d, tuple(gens))


def _drop_first(g: Polynomial, target: Ring) -> Polynomial:
    return Polynomial(target, {e[1:]: c for e, c in g.as_dict().items()})


def fiber_ideal(R: ReesPresentation) -> Ideal:
    """J intersected with k[T], as an ideal of the fiber polynomial ring."""
    elim = eliminate(R.J, R.xvars)
    F = R.fiber_ring()
    nx = R.nx
    gens = [Polynomial(F, {e[nx:]: c for e, c in g.as_dict().items()}) for g in elim.generators]
    return Ideal(F, minimal_generators(F, gens))


@dataclass(frozen=True, eq=False)
class StrandModule:
    direction: str  # "x": fixed p over k[T]; "T": fixed q over k[x]
    index: int
    presentation: GradedPresentation
    basis: tuple  # exponent vectors labelling the free generators

    @property
    def ring(self) -> Ring:
        return self.presentation.ring


def strand_x(R: ReesPresentation, p: int) -> StrandModule:
    """R_(p,*) as a graded k[T]-module (zero for p < 0)."""
    F = R.fiber_ring()
    basis = monomials_of_degree(R.nx, p)
    pos = {b: i for i, b in enumerate(basis)}
    nx = R.nx
    rels = []
    for g in R.J.generators:
        a, _b = R.split_degree(g)
        if a > p:
            continue
        for alpha in monomials_of_degree(nx, p - a):
            v = {}
            for e, c in g.as_dict().items():
                xe = tuple(u + w for u, w in zip(e[:nx], alpha))
                v[pos[xe], e[nx:]] = c
            rels.append(v)
    degrees = tuple((0,) for _ in basis)
    return StrandModule("x", p, GradedPresentation(F, degrees, tuple(rels)), tuple(basis))


def strand_T(R: ReesPresentation, q: int) -> StrandModule:
    """R_(*,q) as a graded k[x]-module; its degree p + dq piece is R_(p,q)."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    A = R.base
    nx, nt = R.nx, R.nt
    basis = monomials_of_degree(nt, q)
    pos = {b: i for i, b in enumerate(basis)}
    rels = []
    for g in R.J.generators:
        _a, b = R.split_degree(g)
        if b > q:
            continue
        for beta in monomials_of_degree(nt, q - b):
            v = {}
            for e, c in g.as_dict().items():
                te = tuple(u + w for u, w in zip(e[nx:], beta))
                v[pos[te], e[:nx]] = c
            rels.append(v)
    degrees = tuple((R.d * q,) for _ in basis)
    return StrandModule("T", q, GradedPresentation(A, degrees, tuple(rels)), tuple(basis))


def twist_convert(e: int, c: int, d: int) -> tuple:
    """O(e) tensor pi^* O_X(c)  ->  O(p, q) with (p, q) = (c - d e, e)."""
    return (c - d * e, e)
