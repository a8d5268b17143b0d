"""Acceptance criteria, one check per criterion.

Run under pytest (lines are repeated in the terminal summary) or directly:
``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402

from regpow import Ring  # noqa: E402
from regpow.cohomsheaf import cohomology_Xtilde  # noqa: E402
from regpow.corpus import CORPUS, random_m_primary  # noqa: E402
from regpow.groebner import Ideal, ideal_power, normal_form  # noqa: E402
from regpow.invariants import (  # noqa: E402
    a_star_pi_certificate,
    detect_stabilization,
    gorenstein_nonvanishing,
    power_invariants,
    strand_a_star,
    theorem_bounds,
)
from regpow.rees import fiber_ideal, rees_presentation, strand_T, strand_x  # noqa: E402
from regpow.resolve import (  # noqa: E402
    GradedPresentation,
    a_invariants,
    canonical_module,
    depth_and_cm,
    hilbert_function,
    hilbert_polynomial,
    is_finite,
    regularity_betti,
)

A = Ring.polynomial("x,y")
QUINTIC = ("x^5", "x^4*y", "x*y^4", "y^5")
SEPTIC = ("x^7", "x^6*y", "x^4*y^3", "x^3*y^4", "x*y^6", "y^7")
SEED = 20261017


def record(k: int, ok: bool, detail: str, elapsed: float, limit: float | None = None) -> bool:
    if limit is not None and elapsed >= limit:
        ok = False
        detail += f"; runtime {elapsed:.1f}s over the {limit:.0f}s target"
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail} ({elapsed:.1f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def _ideal_module(I, q):
    return GradedPresentation.free(I.ring) if q == 0 else GradedPresentation.ideal_module(ideal_power(I, q))


def _corpus_ideals():
    return [(e.job.name, e.job.ideal(), e.job) for e in CORPUS]


# shared random modules for criteria 5 and 6


def random_modules(count: int = 50, seed: int = SEED) -> list:
    rng = random.Random(seed)
    rings = {n: Ring.polynomial(",".join("xyzw"[:n])) for n in (2, 3, 4)}
    out = []
    while len(out) < count:
        ring = rings[rng.randint(2, 4)]
        n = ring.nvars
        gens = []
        for _ in range(rng.randint(1, 4)):
            d = rng.randint(1, 3)

            def mono():
                e = [0] * n
                for _ in range(d):
                    e[rng.randrange(n)] += 1
                return tuple(e)

            f = ring.monomial(mono(), 1)
            if rng.random() < 0.5:
                f = f - ring.monomial(mono(), rng.choice([1, 2, -3]))
            if f:
                gens.append(f)
        if not gens:
            continue
        I = Ideal(ring, gens)
        out.append(GradedPresentation.ideal_module(I) if rng.random() < 0.5 else GradedPresentation.quotient_ring(I))
    return out


def corpus_modules() -> list:
    mods = []
    for _name, I, job in _corpus_ideals():
        R = rees_presentation(I)
        for q in range(0, job.qmax + 1):
            mods.append(_ideal_module(I, q))
        for p in range(-1, 3):
            mods.append(strand_x(R, p).presentation)
        for q in range(0, 4):
            mods.append(strand_T(R, q).presentation)
    return mods


# criteria


def criterion_1():
    t0 = time.perf_counter()
    I = Ideal(A, QUINTIC)
    table = power_invariants(I, 5)
    fit = detect_stabilization(table, 3)
    R = rees_presentation(I)
    s0 = strand_a_star(R, 0)
    cert = a_star_pi_certificate(I, R)
    rep = theorem_bounds(I, fit.a_star_phi, R=R, certificate=cert, empirical_stab=fit.stab_a)
    a = [r.a_star for r in table.rows]
    ok = (
        a == [6, 10, 14, 19, 24]
        and fit.a_star_phi == -1
        and fit.stab_a == 3
        and s0 == 2
        and (cert.kind, cert.value) == ("MPrimary", -1)
        and rep.threshold1 == 2
        and rep.threshold1 + 1 == fit.stab_a
    )
    detail = (
        f"(x^5,x^4y,xy^4,y^5) a*={a}, a*_phi={fit.a_star_phi}, stab_a={fit.stab_a}, a*(R_(0,*))={s0}, "
        f"certificate {cert.kind}({cert.value}), threshold(1)={rep.threshold1}"
    )
    return ok, detail, time.perf_counter() - t0, 60


def criterion_2():
    t0 = time.perf_counter()
    I = Ideal(A, SEPTIC)
    table = power_invariants(I, 4)
    fit = detect_stabilization(table, 3)
    R = rees_presentation(I)
    s0 = strand_a_star(R, 0)
    neg_zero = strand_x(R, -1).presentation.is_zero()
    rep = theorem_bounds(I, fit.a_star_phi, reg_phi_star=1, R=R, empirical_stab=fit.stab_a)
    regs = [r.reg for r in table.rows]
    ok = (
        regs == [8, 14, 21, 28]
        and fit.reg_phi == 0
        and fit.a_star_phi == -1
        and fit.stab_a == fit.stab_reg == 2
        and s0 == 1
        and neg_zero
        and rep.stab_bound == 2
    )
    detail = (
        f"degree-7 six-monomial ideal reg={regs}, reg_phi={fit.reg_phi}, a*_phi={fit.a_star_phi}, "
        f"stab=({fit.stab_a},{fit.stab_reg}), a*(R_(0,*))={s0}, R_(-1,*)=0: {neg_zero}, "
        f"stab bound with reg^phi_*=1: {rep.stab_bound}"
    )
    return ok, detail, time.perf_counter() - t0, 120


def criterion_3():
    t0 = time.perf_counter()
    I = Ideal(A, ("x^2", "x*y"))
    R = rees_presentation(I)
    Q = R.quotient()
    gor = depth_and_cm(Q).is_gorenstein
    K = canonical_module(Q)
    (gen,) = K.degrees if K.rank == 1 else (None,)
    t_twist = None if gen is None else gen[1]
    grid = [(a, b) for a in range(0, 9) for b in range(0, 4)]
    same = gen is not None and all(
        hilbert_function(K, [deg])[0] == hilbert_function(Q.shifted(gen), [deg])[0] for deg in grid
    )
    h = gorenstein_nonvanishing(R, -1, range(6))
    nonzero = all(v != 0 for v in h.values())
    ok = gor and same and t_twist == 1 and nonzero
    detail = (
        f"(x^2,xy) Rees ring Gorenstein: {gor}; K = R(-{t_twist}) in the t-grading with equal Hilbert "
        f"functions: {same}; h^1(X~, O(q'+2,-1)) for q'=0..5 on the phi-side: {list(h.values())}"
    )
    return ok, detail, time.perf_counter() - t0, 30


def criterion_4():
    t0 = time.perf_counter()
    points, bad = 0, []
    for name, I, job in _corpus_ideals():
        table = power_invariants(I, max(job.qmax, job.window + 1))
        aphi = detect_stabilization(table, job.window).a_star_phi
        R = rees_presentation(I)
        cert = a_star_pi_certificate(I, R)
        for p in range(aphi + 1, aphi + 4):
            for q in range(1, 5):
                points += 1
                try:
                    cohomology_Xtilde(R, p, q, "both", a_star_pi=cert, a_star_phi=aphi)
                except ArithmeticError as exc:
                    bad.append(f"{name}: {exc}")
    ok = not bad
    detail = f"two routes agree on {points - len(bad)}/{points} grid points over {len(CORPUS)} corpus ideals"
    if bad:
        detail += f"; first mismatch {bad[0]}"
    return ok, detail, time.perf_counter() - t0, 300


def criterion_5():
    t0 = time.perf_counter()
    mods = corpus_modules() + random_modules()
    bad = [i for i, M in enumerate(mods) if regularity_betti(M) != a_invariants(M).reg]
    detail = f"Betti regularity equals duality regularity on {len(mods) - len(bad)}/{len(mods)} modules"
    return not bad, detail, time.perf_counter() - t0, None


def criterion_6():
    t0 = time.perf_counter()
    mods = random_modules()
    bad = []
    for idx, M in enumerate(mods):
        if M.is_zero():
            if any(hilbert_function(M, (-5, 5))):
                bad.append(idx)
            continue
        P = hilbert_polynomial(M)
        t = a_invariants(M)
        hi = t.reg + 1 if is_finite(t.reg) else 0
        for n in range(hi - 9, hi + 1):
            chi = sum((-1) ** i * t.dim(i, n) for i in range(M.ring.nvars + 1))
            if hilbert_function(M, [n])[0] - P(n) != chi:
                bad.append(idx)
                break
    detail = f"Euler characteristic identity on a 10-degree window for {len(mods) - len(bad)}/{len(mods)} modules"
    return not bad, detail, time.perf_counter() - t0, None


def criterion_7():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 7)
    ideals = []
    for _name, I, job in _corpus_ideals():
        ideals.append(I)
        ideals.extend(ideal_power(I, q) for q in range(2, 4))
        R = rees_presentation(I)
        ideals.append(R.J)
        ideals.append(fiber_ideal(R))
    rings = [Ring.polynomial("x,y,z"), Ring.polynomial("x,y,z,w")]
    for _ in range(12):
        ring = rng.choice(rings)
        gens = []
        for _ in range(rng.randint(2, 4)):
            d = rng.randint(1, 3)
            f = ring.zero()
            for _ in range(rng.randint(1, 3)):
                e = [0] * ring.nvars
                for _ in range(d):
                    e[rng.randrange(ring.nvars)] += 1
                f = f + ring.monomial(tuple(e), rng.randint(-4, 4) or 1)
            if f:
                gens.append(f)
        ideals.append(Ideal(ring, gens))
    ideals = [I for I in ideals if I.generators]
    unsound = [i for i, I in enumerate(ideals) if not I.groebner().is_groebner()]
    misses = 0
    for _ in range(200):
        I = rng.choice(ideals)
        ring = I.ring
        f = ring.zero()
        for g in I.generators:
            if rng.random() < 0.7:
                e = [0] * ring.nvars
                for _ in range(rng.randint(0, 2)):
                    e[rng.randrange(ring.nvars)] += 1
                f = f + g * ring.monomial(tuple(e), rng.randint(-5, 5) or 1)
        if not normal_form(f, I.groebner()).is_zero():
            misses += 1
    ok = not unsound and misses == 0
    detail = (
        f"{len(ideals) - len(unsound)}/{len(ideals)} reduced bases pass the S-pair check; "
        f"{200 - misses}/200 membership queries reduce to 0"
    )
    return ok, detail, time.perf_counter() - t0, None


def criterion_8():
    t0 = time.perf_counter()
    checked, bad = 0, []
    for name, I, _job in _corpus_ideals():
        R = rees_presentation(I)
        for q in range(0, 5):
            P = _ideal_module(I, q)
            M = strand_T(R, q).presentation
            shift_ok = all(deg == (R.d * q,) for deg in M.degrees)
            length = regularity_betti(P) + 3
            window = range(R.d * q, R.d * q + length)
            checked += 1
            if not shift_ok or hilbert_function(M, window) != hilbert_function(P, window):
                bad.append((name, q))
    detail = f"strand_T(q) matches I^q on {checked - len(bad)}/{checked} (ideal, q) pairs, q = 0..4"
    return not bad, detail, time.perf_counter() - t0, None


def criterion_9():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 9)
    W, cap = 3, 10
    failures, notes = [], []
    for idx in range(20):
        I = random_m_primary(rng, A)
        q_max = W + 1
        while True:
            table = power_invariants(I, q_max)
            fit = detect_stabilization(table, W)
            rep = theorem_bounds(I, fit.a_star_phi, empirical_stab=fit.stab_a)
            # extend until the detected constant has W confirmations past both the bound and stab_a
            horizon = max(rep.stab_bound or 1, fit.stab_a) + W - 1
            if (fit.confirmed and q_max >= horizon) or q_max >= cap:
                break
            q_max += 1
        ds = table.defects()
        monotone = all(a >= b for a, b in zip(ds, ds[1:]))
        if rep.stab_bound is None or rep.stab_bound < fit.stab_a or not monotone:
            failures.append((idx, [str(g) for g in I.generators], rep.stab_bound, fit.stab_a, ds))
        notes.append((q_max, fit.stab_a))
    detail = (
        f"{20 - len(failures)}/20 random m-primary ideals: stab bound >= empirical stab_a and "
        f"non-increasing defects (stab_a values {sorted({s for _, s in notes})}, "
        f"q_max {min(q for q, _ in notes)}..{max(q for q, _ in notes)})"
    )
    if failures:
        detail += f"; first failure {failures[0]}"
    return not failures, detail, time.perf_counter() - t0, 900


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("k", range(1, 10))
def test_criterion(k):
    ok, detail, elapsed, limit = CRITERIA[k - 1]()
    assert record(k, ok, detail, elapsed, limit), detail


if __name__ == "__main__":
    results = []
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail, elapsed, limit = fn()
        results.append(record(k, ok, detail, elapsed, limit))
    sys.exit(0 if all(results) else 1)
