"""Hilbert series of monomial ideals, possibly multigraded.

A numerator is a dict ``{degree tuple: coefficient}`` standing for
``sum c * t^a``; the series of ``S/I`` is that numerator over
``prod_i (1 - t^{deg x_i})``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from statistics import median_low
from typing import Iterable, Sequence

Exps = tuple
Numerator = dict


def _deg(e: Exps, vdeg) -> tuple:
    out = [0] * len(vdeg[0])
    for k, d in zip(e, vdeg):
        if k:
            for j, w in enumerate(d):
                out[j] += k * w
    return tuple(out)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mul(p: Numerator, q: Numerator) -> Numerator:
    out: dict = {}
    for a, c in p.items():
        for b, e in q.items():
            k = _add(a, b)
            out[k] = out.get(k, 0) + c * e
    return {k: c for k, c in out.items() if c}


def shift(p: Numerator, a) -> Numerator:
    return {_add(k, a): c for k, c in p.items()}


def combine(*parts: Numerator) -> Numerator:
    out: dict = {}
    for p in parts:
        for k, c in p.items():
            out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def minimalize(gens: Iterable[Exps]) -> tuple:
    gens = sorted(set(map(tuple, gens)), key=lambda e: (sum(e), e))
    kept: list = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in kept):
            kept.append(g)
    return tuple(sorted(kept))


def _coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a, b))


def numerator_monomial(gens: Iterable[Exps], vdeg: Sequence[tuple]) -> Numerator:
    """Numerator of the Hilbert series of S/(monomials)."""
    vdeg = tuple(tuple(d) for d in vdeg)
    return dict(_numerator(minimalize(gens), vdeg))


@lru_cache(maxsize=50000)
def _numerator(gens: tuple, vdeg: tuple) -> tuple:
    zero = (0,) * len(vdeg[0])
    if not gens:
        return ((zero, 1),)
    if any(not any(g) for g in gens):
        return ()
    if all(_coprime(a, b) for a, b in combinations(gens, 2)):
        out = {zero: 1}
        for g in gens:
            out = _mul(out, {zero: 1, _deg(g, vdeg): -1})
        return tuple(sorted(out.items()))
    # pivot on a power of the variable that occurs most often in mixed generators
    mixed = [g for g in gens if sum(1 for x in g if x) > 1]
    counts = [sum(1 for g in mixed if g[j]) for j in range(len(vdeg))]
    j = max(range(len(counts)), key=lambda k: (counts[k], -k))
    e = median_low([g[j] for g in mixed if g[j]])
    pivot = tuple(e if k == j else 0 for k in range(len(vdeg)))
    added = minimalize(gens + (pivot,))
    colon = minimalize(tuple(tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens))
    left = dict(_numerator(added, vdeg))
    right = shift(dict(_numerator(colon, vdeg)), _deg(pivot, vdeg))
    return tuple(sorted(combine(left, right).items()))


@lru_cache(maxsize=200000)
def count_monomials(vdeg: tuple, target: tuple) -> int:
    """Number of monomials of multidegree ``target`` (all variable degrees nonzero and >= 0)."""
    if any(t < 0 for t in target):
        return 0
    if not vdeg:
        return int(not any(target))
    d = vdeg[0]
    total, cur = 0, target
    while all(t >= 0 for t in cur):
        total += count_monomials(vdeg[1:], cur)
        cur = _sub(cur, d)
        if not any(d):
            raise ValueError("variable of degree zero")
    return total


def coefficient(num: Numerator, vdeg: Sequence[tuple], degree) -> int:
    """Coefficient of ``t^degree`` in num / prod(1 - t^deg x_i)."""
    vdeg = tuple(tuple(d) for d in vdeg)
    degree = tuple(degree)
    return sum(c * count_monomials(vdeg, _sub(degree, a)) for a, c in num.items())


def specialize(num: Numerator, weights: Sequence[int] | None = None) -> dict:
    """Collapse a multigraded numerator to a Laurent polynomial in one variable."""
    out: dict = {}
    for a, c in num.items():
        k = sum(a) if weights is None else sum(x * w for x, w in zip(a, weights))
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def order_at_one(poly: dict) -> int:
    """Multiplicity of t = 1 as a root of a Laurent polynomial (dict exponent -> coeff)."""
    if not poly:
        raise ValueError("zero polynomial")
    lo = min(poly)
    hi = max(poly)
    coeffs = [poly.get(k, 0) for k in range(lo, hi + 1)]
    order = 0
    while sum(coeffs) == 0:
        # synthetic division by (t - 1), highest degree first
        rev = coeffs[::-1]
        q, acc = [], 0
        for c in rev[:-1]:
            acc += c
            q.append(acc)
        coeffs = q[::-1]
        order += 1
    return order


def pole_order(num: Numerator, weights: Sequence[int]) -> int:
    """Krull dimension of a module with this series numerator (-1 for zero)."""
    scalar = specialize(num)
    if not scalar:
        return -1
    return len(weights) - order_at_one(scalar)
