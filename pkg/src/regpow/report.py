"""Assemble JSON-ready reports for the CLI commands."""

from __future__ import annotations

from . import __version__
from .cohomsheaf import cohomology_grid, sheaf_regularity, x_local_cohomology_pieces
from .groebner import budget_scope
from .invariants import (
    _fmt,
    a_star_pi_certificates,
    detect_stabilization,
    power_invariants,
    theorem_bounds,
    verify_theorems,
)
from .jobs import JobSpec
from .rees import fiber_ideal, rees_presentation, strand_x
from .resolve import a_invariants, canonical_module, depth_and_cm, hilbert_dim, hilbert_function

COMMANDS = ("powers", "rees", "strand", "cohomology", "bounds", "verify")


def _meta(job: JobSpec, command: str, d: int) -> dict:
    return {
        "name": job.name,
        "command": command,
        "field": job.field,
        "vars": list(job.variables),
        "gens": list(job.generators),
        "d": d,
        "qmax": job.qmax,
        "window": job.window,
        "fat_points": job.fat_points,
        "reg_phi_star": job.reg_phi_star,
        "version": __version__,
    }


def _skeleton(job: JobSpec, command: str, d: int) -> dict:
    return {
        "meta": _meta(job, command, d),
        "power_table": [],
        "fit": None,
        "certificates": [],
        "thresholds": None,
        "checks": [],
    }


def rees_section(R) -> dict:
    rep = depth_and_cm(R.quotient())
    out = {
        "ambient": list(R.ambient.variables),
        "d": R.d,
        "J": [g.render() for g in R.J.generators],
        "J_bidegrees": [list(R.split_degree(g)) for g in R.J.generators],
        "fiber_ideal": [g.render() for g in fiber_ideal(R).generators],
        "substitution_check": R.substitution_check(),
        "depth": rep.depth,
        "dim": rep.dim,
        "cohen_macaulay": rep.is_cm,
        "gorenstein": rep.is_gorenstein,
    }
    if rep.is_cm:
        K = canonical_module(R.quotient())
        out["canonical_generators"] = [[d[0] - R.d * d[1], d[1]] for d in K.degrees]
        out["canonical_hilbert_match"] = canonical_matches_shift(R, K)
    return out


def canonical_matches_shift(R, K) -> bool:
    """K has one generator and the bigraded Hilbert function of R shifted to it (on a grid)."""
    if len(K.degrees) != 1:
        return False
    g = K.degrees[0]
    Q = R.quotient()
    for b in range(0, 5):
        for a in range(0, 5 + R.d * 4):
            deg = (a + g[0], b + g[1])
            if hilbert_dim(K, deg) != hilbert_dim(Q, (a, b)):
                return False
    return True


def strand_section(R, ps) -> list:
    rows = []
    for p in ps:
        M = strand_x(R, p).presentation
        zero = M.is_zero()
        lc = a_invariants(M, window=(0, -1))
        rows.append(
            {
                "p": p,
                "zero": zero,
                "rank": M.rank,
                "a_list": [_fmt(a) for a in lc.a],
                "a_star": _fmt(lc.a_star),
                "sheaf_reg": _fmt(sheaf_regularity(M)),
                "hilbert": hilbert_function(M, range(0, 7)),
            }
        )
    return rows


def build_report(job: JobSpec, command: str, threads: int = 1, p_range=None) -> dict:
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    with budget_scope(job.budget):
        I = job.ideal()
        R = rees_presentation(I)
        rep = _skeleton(job, command, R.d)
        if command == "rees":
            rep["rees"] = rees_section(R)
            rep["certificates"] = [c.as_dict() for c in a_star_pi_certificates(I, R, job.fat_points)]
            return rep
        if command == "strand":
            ps = p_range if p_range is not None else range(-1, 4)
            rep["strands"] = strand_section(R, ps)
            return rep
        if command == "verify":
            v = verify_theorems(
                I, job.qmax, job.window, job.reg_phi_star, job.fat_points, threads
            )
            rep["power_table"] = [r.as_dict() for r in v.table.rows]
            rep["fit"] = v.fit.as_dict()
            rep["certificates"] = [c.as_dict() for c in v.certificates]
            rep["thresholds"] = v.report.as_dict()
            rep["checks"] = [c.as_dict() for c in v.checks]
            if v.table.truncated:
                rep["meta"]["truncated"] = v.table.truncated
            return rep
        table = power_invariants(I, job.qmax, threads)
        rep["power_table"] = [r.as_dict() for r in table.rows]
        if table.truncated:
            rep["meta"]["truncated"] = table.truncated
        fit = detect_stabilization(table, job.window) if table.q_max >= job.window + 1 else None
        rep["fit"] = fit.as_dict() if fit else None
        if command == "powers":
            return rep
        if fit is None:
            raise ValueError(f"qmax must be at least window + 1 = {job.window + 1} for {command}")
        certs = a_star_pi_certificates(I, R, job.fat_points)
        rep["certificates"] = [c.as_dict() for c in certs]
        if command == "bounds":
            tr = theorem_bounds(I, fit.a_star_phi, job.reg_phi_star, R, certs[0], fit.stab_a)
            rep["thresholds"] = tr.as_dict()
            return rep
        # cohomology
        aphi = fit.a_star_phi
        grid = cohomology_grid(R, range(aphi + 1, aphi + 4), range(1, 5), "both", certs[0], aphi)
        rep["cohomology"] = {
            "space": grid.space,
            "certificate": grid.certificate,
            "rows": grid.rows(),
            "x_local_pieces": {
                str(i): {str(q): v for q, v in x_local_cohomology_pieces(R, aphi, range(0, 4), i).items()}
                for i in range(R.nx + 1)
            },
        }
        return rep
