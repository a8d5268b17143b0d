"""Power tables, asymptotic constants, a*_pi certificates and threshold assembly."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cohomsheaf import Uncertified, cohomology_Xtilde, phi_side, pi_side, sheaf_regularity
from .groebner import BudgetExceeded, Ideal, budget_scope, active_budget, ideal_power, is_m_primary
from .rees import ReesPresentation, rees_presentation, strand_x
from .resolve import (
    NEG_INF,
    GradedPresentation,
    a_invariants,
    depth_and_cm,
    free_resolution,
    is_finite,
    regularity_betti,
    xmax,
)


def _fmt(v):
    return "-inf" if v is NEG_INF else v


@dataclass
class PowerRow:
    q: int
    equigenerated: bool
    a_list: list
    a_star: object
    reg: object
    defect: object

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "a_list": [_fmt(a) for a in self.a_list],
            "a_star": _fmt(self.a_star),
            "reg": _fmt(self.reg),
            "defect": _fmt(self.defect),
        }


@dataclass
class PowerTable:
    d: int
    rows: list
    truncated: str | None = None

    def a_star(self, q: int):
        return self.rows[q - 1].a_star

    def reg(self, q: int):
        return self.rows[q - 1].reg

    @property
    def q_max(self) -> int:
        return len(self.rows)

    def defects(self) -> list:
        return [r.defect for r in self.rows]


def generation_degree(I: Ideal) -> int:
    degs = {g.total_degree() for g in I.generators}
    if len(degs) != 1:
        raise ValueError(f"ideal is not equigenerated (degrees {sorted(degs)})")
    return degs.pop()


def _row(ring, gens, q, d, budget) -> PowerRow:
    with budget_scope(budget):
        P = ideal_power(Ideal(ring, gens), q)
        equi = all(g.total_degree() == d * q for g in P.generators)
        M = GradedPresentation.ideal_module(P)
        lc = a_invariants(M, window=(0, -1))
        reg = regularity_betti(M)
        if reg != lc.reg:
            raise ArithmeticError(f"q={q}: Betti regularity {reg} differs from duality value {lc.reg}")
        return PowerRow(q, equi, list(lc.a), lc.a_star, reg, lc.a_star - d * q)


def power_invariants(I: Ideal, q_max: int, threads: int = 1) -> PowerTable:
    """Exact a-invariants and regularity of I^q for q = 1..q_max."""
    if q_max < 1:
        raise ValueError("q_max must be at least 1")
    d = generation_degree(I)
    gens = list(I.generators)
    budget = active_budget()
    rows: list = []
    truncated = None
    if threads > 1 and q_max > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futs = [pool.submit(_row, I.ring, gens, q, d, budget) for q in range(1, q_max + 1)]
            for f in futs:
                try:
                    rows.append(f.result())
                except BudgetExceeded as exc:
                    truncated = str(exc)
                    break
    else:
        for q in range(1, q_max + 1):
            try:
                rows.append(_row(I.ring, gens, q, d, budget))
            except BudgetExceeded as exc:
                truncated = str(exc)
                break
    return PowerTable(d, rows, truncated)


@dataclass
class AsymptoticFit:
    d: int
    a_star_phi: int
    reg_phi: int
    stab_a: int
    stab_reg: int
    window: int
    confirmed: bool

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "a_star_phi": self.a_star_phi,
            "reg_phi": self.reg_phi,
            "stab_a": self.stab_a,
            "stab_reg": self.stab_reg,
            "confirmed": self.confirmed,
        }


def _first_constant(seq: list) -> int:
    """1-based index from which the sequence is constant through its end."""
    k = len(seq)
    while k > 1 and seq[k - 2] == seq[-1]:
        k -= 1
    return k


def detect_stabilization(table: PowerTable, W: int = 3) -> AsymptoticFit:
    if table.q_max < W + 1:
        raise ValueError(f"table has {table.q_max} rows, need at least {W + 1}")
    d = table.d
    da = [r.a_star - d * r.q for r in table.rows]
    dr = [r.reg - d * r.q for r in table.rows]
    sa, sr = _first_constant(da), _first_constant(dr)
    confirmed = table.q_max - sa + 1 >= W and table.q_max - sr + 1 >= W
    return AsymptoticFit(d, da[-1], dr[-1], sa, sr, W, confirmed)


# ---------------------------------------------------------------------------
# a*_pi certificates


@dataclass(frozen=True)
class Certificate:
    kind: str  # MPrimary | CMRees | GorensteinRees | DeclaredFatPoints | ChartUpperBound
    value: int
    exact: bool
    note: str = ""

    def as_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value, "exact": self.exact, "note": self.note}


def chart_upper_bound(R: ReesPresentation) -> int:
    """Largest T-degree among the twists of a minimal bigraded resolution of k[x,T]/J, minus (m+1).

    Localising at x_i is exact, so the same twists bound every affine chart.
    """
    res = free_resolution(R.quotient())
    top = max(deg[1] for step in res.twists for deg in step)
    return max(top - R.nt, -1)


def a_star_pi_certificates(I: Ideal, R: ReesPresentation | None = None, fat_points: bool = False) -> list:
    """Every applicable certificate, in the preferred order."""
    R = R or rees_presentation(I)
    out = []
    if is_m_primary(I):
        out.append(Certificate("MPrimary", -1, True, "dim A/I = 0"))
    rep = depth_and_cm(R.quotient())
    if rep.is_gorenstein:
        out.append(Certificate("GorensteinRees", -1, True, f"Rees ring Gorenstein of dimension {rep.dim}"))
    if rep.is_cm:
        out.append(Certificate("CMRees", -1, True, f"Rees ring Cohen-Macaulay of dimension {rep.dim}"))
    if fat_points:
        out.append(Certificate("DeclaredFatPoints", -1, True, "declared by the user"))
    out.append(Certificate("ChartUpperBound", chart_upper_bound(R), False, "resolution T-twists minus (m+1)"))
    return out


def a_star_pi_certificate(I: Ideal, R: ReesPresentation | None = None, fat_points: bool = False) -> Certificate:
    R = R or rees_presentation(I)
    if is_m_primary(I):
        return Certificate("MPrimary", -1, True, "dim A/I = 0")
    rep = depth_and_cm(R.quotient())
    if rep.is_gorenstein:
        return Certificate("GorensteinRees", -1, True, f"Rees ring Gorenstein of dimension {rep.dim}")
    if rep.is_cm:
        return Certificate("CMRees", -1, True, f"Rees ring Cohen-Macaulay of dimension {rep.dim}")
    if fat_points:
        return Certificate("DeclaredFatPoints", -1, True, "declared by the user")
    return Certificate("ChartUpperBound", chart_upper_bound(R), False, "resolution T-twists minus (m+1)")


def strand_a_star(R: ReesPresentation, p: int):
    M = strand_x(R, p).presentation
    return a_invariants(M, window=(0, -1)).a_star


def strand_sheaf_reg(R: ReesPresentation, p: int):
    M = strand_x(R, p).presentation
    return sheaf_regularity(M)


# ---------------------------------------------------------------------------
# thresholds


@dataclass
class Ingredient:
    value: object
    status: str  # exact | upper-bound | missing

    def as_dict(self) -> dict:
        return {"value": None if self.value is None else _fmt(self.value), "status": self.status}


@dataclass
class ThresholdReport:
    ingredients: dict
    threshold1: object
    threshold2: object
    stab_bound: object
    stab_bound_rule: str
    empirical_stab: int | None = None

    @property
    def complete(self) -> bool:
        return all(i.status != "missing" for i in self.ingredients.values())

    def as_dict(self) -> dict:
        return {
            "ingredients": {k: v.as_dict() for k, v in self.ingredients.items()},
            "threshold1": _fmt(self.threshold1),
            "threshold2": _fmt(self.threshold2),
            "stab_bound": None if self.stab_bound is None else _fmt(self.stab_bound),
            "stab_bound_rule": self.stab_bound_rule,
            "empirical_stab": self.empirical_stab,
            "complete": self.complete,
        }


def theorem_bounds(
    I: Ideal,
    a_star_phi: int | None,
    reg_phi_star: int | None = None,
    R: ReesPresentation | None = None,
    certificate: Certificate | None = None,
    empirical_stab: int | None = None,
) -> ThresholdReport:
    if a_star_phi is None:
        raise ValueError("a*_phi is required")
    R = R or rees_presentation(I)
    cert = certificate or a_star_pi_certificate(I, R)
    api = cert.value
    s1 = strand_a_star(R, a_star_phi + 1)
    s0 = strand_sheaf_reg(R, a_star_phi)
    ingredients = {
        "a_star_pi": Ingredient(api, "exact" if cert.exact else "upper-bound"),
        "a_star_strand": Ingredient(s1, "exact"),
        "sheaf_reg_strand": Ingredient(s0, "exact"),
        "reg_phi_star": Ingredient(reg_phi_star, "missing" if reg_phi_star is None else "exact"),
    }
    t1 = xmax([api, s1])
    t2 = xmax([api + 1, s0] + ([reg_phi_star] if reg_phi_star is not None else []))
    if reg_phi_star is not None:
        bound = xmax([api + 1, s1 + 1, s0, reg_phi_star])
        rule = "theorem"
    elif cert.kind == "MPrimary":
        bound = xmax([api + 1, s1 + 1])
        rule = "m-primary"
    else:
        bound, rule = None, "missing reg_phi_star"
    if bound is not None:
        # stability indexes are powers q >= 1
        bound = max(bound, 1) if is_finite(bound) else 1
    return ThresholdReport(ingredients, t1, t2, bound, rule, empirical_stab)


# ---------------------------------------------------------------------------
# verification ledger


@dataclass
class Check:
    name: str
    status: str  # pass | fail | skipped
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class Verification:
    table: PowerTable
    fit: AsymptoticFit
    certificates: list
    report: ThresholdReport
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)


def _check(name, cond, detail="") -> Check:
    return Check(name, "pass" if cond else "fail", detail)


def gorenstein_nonvanishing(R: ReesPresentation, a_star_phi: int, qs=range(6)) -> dict:
    """q' -> h^{dim X}(X~, O(q' + d, -1)) on the phi-side."""
    top = R.nx - 1
    out = {}
    for qp in qs:
        h = cohomology_Xtilde(R, qp + R.d, -1, "phi", a_star_phi=a_star_phi)
        out[qp] = h[top]
    return out


def verify_theorems(
    I: Ideal,
    q_max: int,
    W: int = 3,
    reg_phi_star: int | None = None,
    fat_points: bool = False,
    threads: int = 1,
    table: PowerTable | None = None,
) -> Verification:
    table = table or power_invariants(I, q_max, threads)
    fit = detect_stabilization(table, W)
    R = rees_presentation(I)
    certs = a_star_pi_certificates(I, R, fat_points)
    cert = certs[0]
    report = theorem_bounds(I, fit.a_star_phi, reg_phi_star, R, cert, fit.stab_a)
    d, aphi = table.d, fit.a_star_phi
    checks = []

    rows = [r for r in table.rows if r.q > report.threshold1]
    bad = [r.q for r in rows if r.a_star > d * r.q + aphi]
    checks.append(_check("upper_linear_bound", not bad, f"q > {_fmt(report.threshold1)}; violations {bad}"))

    if report.complete:
        rows = [r for r in table.rows if r.q >= report.threshold2]
        bad = [r.q for r in rows if r.a_star < d * r.q + aphi]
        checks.append(_check("lower_linear_bound", not bad, f"q >= {_fmt(report.threshold2)}; violations {bad}"))
    else:
        checks.append(Check("lower_linear_bound", "skipped", "uncertified: reg_phi_star not supplied"))

    mprim = cert.kind == "MPrimary"
    if mprim:
        ds = table.defects()
        checks.append(_check("defect_monotone", all(a >= b for a, b in zip(ds, ds[1:])), f"defects {ds}"))
        bad = [r.q for r in table.rows if r.reg != r.a_star + 1]
        checks.append(_check("reg_equals_a_star_plus_one", not bad, f"violations {bad}"))
    else:
        checks.append(Check("defect_monotone", "skipped", "uncertified: not m-primary"))
        checks.append(Check("reg_equals_a_star_plus_one", "skipped", "uncertified: not m-primary"))

    mism = []
    grid = [(p, q) for p in range(aphi + 1, aphi + 4) for q in range(1, 5) if q > cert.value]
    for p, q in grid:
        try:
            a, b = pi_side(R, p, q), phi_side(R, p, q)
        except Uncertified:
            continue
        width = max(len(a), len(b))
        if tuple(a) + (0,) * (width - len(a)) != tuple(b) + (0,) * (width - len(b)):
            mism.append((p, q))
    checks.append(_check("two_route_equality", not mism, f"{len(grid)} grid points; mismatches {mism}"))

    if cert.kind == "GorensteinRees":
        vals = gorenstein_nonvanishing(R, aphi)
        zero = [qp for qp, h in vals.items() if h == 0]
        checks.append(_check("gorenstein_nonvanishing", not zero, f"h^top by q': {vals}"))
    else:
        checks.append(Check("gorenstein_nonvanishing", "skipped", "primary certificate is not GorensteinRees"))

    if report.stab_bound is not None:
        checks.append(
            _check(
                "stab_bound_sound",
                report.stab_bound >= fit.stab_a,
                f"bound {_fmt(report.stab_bound)} ({report.stab_bound_rule}) vs empirical {fit.stab_a}",
            )
        )
    else:
        checks.append(Check("stab_bound_sound", "skipped", "uncertified: stab bound needs reg_phi_star"))
    return Verification(table, fit, certs, report, checks)
