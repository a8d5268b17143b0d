"""Sheaf cohomology on projective space from graded modules, and the two Leray routes to X~."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .groebner import Ideal, ideal_power
from .rees import ReesPresentation, strand_T, strand_x
from .resolve import NEG_INF, GradedPresentation, a_invariants, hilbert_dim, xmax


class Uncertified(RuntimeError):
    """The requested route has no certificate for these twists."""


def sheaf_cohomology_proj(M: GradedPresentation, p: int) -> tuple:
    """(h^0, ..., h^n) of M~(p) on P^n, n = #variables - 1."""
    if not M.ring.is_standard:
        raise ValueError("sheaf cohomology needs a standard graded ring")
    n = M.ring.nvars - 1
    lc = a_invariants(M, window=(p, p))
    h0 = hilbert_dim(M, p) - lc.dim(0, p) + lc.dim(1, p)
    return (h0,) + tuple(lc.dim(i + 1, p) for i in range(1, n + 1))


def sheaf_regularity(M: GradedPresentation):
    """max_{j>=2} (a^j(M) + j), NEG_INF when nothing contributes."""
    a = a_invariants(M, window=(0, -1)).a
    return xmax(a[j] + j for j in range(2, len(a)))


def _value(cert):
    return getattr(cert, "value", cert)


def _pad(v: tuple, n: int) -> tuple:
    return tuple(v) + (0,) * (n - len(v))


def pi_side(R: ReesPresentation, p: int, q: int) -> tuple:
    """h^i(P^n, (I^q)~(p + dq))."""
    if q < 0:
        raise Uncertified("pi-side needs q >= 0")
    if q == 0:
        M = GradedPresentation.free(R.base)
    else:
        M = GradedPresentation.ideal_module(ideal_power(Ideal(R.base, R.f), q))
    return sheaf_cohomology_proj(M, p + R.d * q)


def phi_side(R: ReesPresentation, p: int, q: int) -> tuple:
    """h^i(P^m, R_(p,*)~(q))."""
    return sheaf_cohomology_proj(strand_x(R, p).presentation, q)


def cohomology_Xtilde(
    R: ReesPresentation,
    p: int,
    q: int,
    route: str = "both",
    a_star_pi=None,
    a_star_phi=None,
) -> tuple:
    """h^i(X~, O(p, q)) through a certified Leray reduction.

    ``a_star_pi`` is a certificate (or integer) bounding a*_pi from above;
    ``a_star_phi`` is the asymptotic constant.  Routes without a valid
    certificate are refused.
    """
    if route not in ("pi", "phi", "both"):
        raise ValueError(f"unknown route {route!r}")
    pi_ok = a_star_pi is not None and q > _value(a_star_pi) and q >= 0
    phi_ok = a_star_phi is not None and p > a_star_phi
    if route in ("pi", "both") and not pi_ok:
        raise Uncertified(f"no certificate for q = {q} > a*_pi")
    if route in ("phi", "both") and not phi_ok:
        raise Uncertified(f"no certificate for p = {p} > a*_phi")
    width = max(R.nx, R.nt)
    if route == "pi":
        return _pad(pi_side(R, p, q), width)
    if route == "phi":
        return _pad(phi_side(R, p, q), width)
    a, b = _pad(pi_side(R, p, q), width), _pad(phi_side(R, p, q), width)
    if a != b:
        raise ArithmeticError(f"routes disagree at (p, q) = ({p}, {q}): {a} vs {b}")
    return a


@dataclass
class CohomologyTable:
    space: str
    twists: list
    entries: dict = field(default_factory=dict)  # (i, twist) -> dim
    certificate: str = ""

    def vector(self, twist) -> tuple:
        idx = sorted(i for i, t in self.entries if t == twist)
        return tuple(self.entries[i, twist] for i in idx)

    def rows(self) -> list:
        return [{"twist": list(t) if isinstance(t, tuple) else t, "h": list(self.vector(t))} for t in self.twists]


def cohomology_grid(
    R: ReesPresentation,
    ps: Iterable[int],
    qs: Iterable[int],
    route: str = "both",
    a_star_pi=None,
    a_star_phi=None,
) -> CohomologyTable:
    twists = [(p, q) for p in ps for q in qs]
    cert = getattr(a_star_pi, "kind", "") if a_star_pi is not None else ""
    table = CohomologyTable(f"X~ via {route}", twists, certificate=str(cert))
    for p, q in twists:
        h = cohomology_Xtilde(R, p, q, route, a_star_pi, a_star_phi)
        for i, v in enumerate(h):
            table.entries[i, (p, q)] = v
    return table


def x_local_cohomology_pieces(R: ReesPresentation, p: int, q_window: Iterable[int], i: int) -> dict:
    """q -> dim [H^i_(x)(R)]_(p,q), via local duality on the T-strand over k[x]."""
    out = {}
    for q in q_window:
        if q < 0:
            raise ValueError("q must be nonnegative")
        M = strand_T(R, q).presentation
        n = p + R.d * q
        lc = a_invariants(M, window=(n, n))
        out[q] = lc.dim(i, n) if 0 <= i < len(lc.a) else 0
    return out
