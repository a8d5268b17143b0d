"""Built-in corpus of worked examples with golden values."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .groebner import Ideal, budget_scope
from .invariants import strand_a_star
from .jobs import JobSpec
from .kernel import Ring
from .report import build_report, rees_section
from .rees import rees_presentation, strand_x


@dataclass(frozen=True)
class CorpusEntry:
    job: JobSpec
    goldens: dict


CORPUS = (
    CorpusEntry(
        JobSpec(variables=("x", "y"), generators=("x^5", "x^4*y", "x*y^4", "y^5"), qmax=5, name="quintic_corners"),
        {
            "a_star": [6, 10, 14, 19, 24],
            "a_star_phi": -1,
            "stab_a": 3,
            "strand_a_star_0": 2,
            "certificate": ["MPrimary", -1],
            "threshold1": 2,
        },
    ),
    CorpusEntry(
        JobSpec(
            variables=("x", "y"),
            generators=("x^7", "x^6*y", "x^4*y^3", "x^3*y^4", "x*y^6", "y^7"),
            qmax=4,
            reg_phi_star=1,
            name="septic_six",
        ),
        {
            "reg": [8, 14, 21, 28],
            "reg_phi": 0,
            "a_star_phi": -1,
            "stab_a": 2,
            "stab_reg": 2,
            "strand_a_star_0": 1,
            "strand_zero_-1": True,
            "stab_bound": 2,
        },
    ),
    CorpusEntry(
        JobSpec(variables=("x", "y"), generators=("x", "y"), qmax=4, name="maximal_ideal"),
        {
            "a_star": [0, 1, 2, 3],
            "a_star_phi": -1,
            "stab_a": 1,
            "has_certificate": "CMRees",
            "threshold1": -1,
        },
    ),
    CorpusEntry(
        JobSpec(variables=("x", "y"), generators=("x^2", "x*y"), qmax=4, name="gorenstein_pair"),
        {
            "rees_gorenstein": True,
            "certificate": ["GorensteinRees", -1],
            "canonical_t_twist": 1,
            "canonical_hilbert_match": True,
        },
    ),
)


def observe(job: JobSpec, threads: int = 1) -> tuple[dict, dict]:
    """Full verification report plus the flat values goldens are compared against."""
    rep = build_report(job, "verify", threads)
    with budget_scope(job.budget):
        R = rees_presentation(job.ideal())
        rees = rees_section(R)
        strand0 = rep["thresholds"]["ingredients"]["a_star_strand"]["value"]
        if rep["fit"]["a_star_phi"] != -1:
            strand0 = strand_a_star(R, 0)
        zero_m1 = strand_x(R, -1).presentation.is_zero()
    rep["rees"] = rees
    cert = rep["certificates"][0]
    obs = {
        "a_star": [r["a_star"] for r in rep["power_table"]],
        "reg": [r["reg"] for r in rep["power_table"]],
        "a_star_phi": rep["fit"]["a_star_phi"],
        "reg_phi": rep["fit"]["reg_phi"],
        "stab_a": rep["fit"]["stab_a"],
        "stab_reg": rep["fit"]["stab_reg"],
        "strand_a_star_0": strand0,
        "strand_zero_-1": zero_m1,
        "certificate": [cert["kind"], cert["value"]],
        "has_certificate": [c["kind"] for c in rep["certificates"]],
        "threshold1": rep["thresholds"]["threshold1"],
        "stab_bound": rep["thresholds"]["stab_bound"],
        "rees_gorenstein": rees["gorenstein"],
        "canonical_t_twist": rees["canonical_generators"][0][1] if rees.get("canonical_generators") else None,
        "canonical_hilbert_match": rees.get("canonical_hilbert_match"),
    }
    return rep, obs


def compare(goldens: dict, obs: dict) -> list[str]:
    bad = []
    for key, want in goldens.items():
        got = obs.get(key)
        if key == "has_certificate":
            if want not in got:
                bad.append(f"{key}: {want} not among {got}")
        elif got != want:
            bad.append(f"{key}: expected {want}, got {got}")
    return bad


def run_entry(entry: CorpusEntry, threads: int = 1) -> tuple[dict, list[str]]:
    rep, obs = observe(entry.job, threads)
    bad = compare(entry.goldens, obs)
    rep["golden"] = {"expected": entry.goldens, "mismatches": bad}
    return rep, bad


def random_m_primary(rng: random.Random, ring: Ring | None = None, max_degree: int = 6) -> Ideal:
    """Random m-primary equigenerated ideal of k[x, y] with at most 6 generators.

    Always contains x^d and y^d; inner monomials near the two ends are favoured
    since gaps in the middle are what delay stabilization.
    """
    ring = ring or Ring.polynomial("x,y")
    d = rng.randint(3, max_degree)
    gens = [ring.monomial((d, 0), 1), ring.monomial((0, d), 1)]
    inner = [k for k in range(1, d) if rng.random() < (0.6 if k in (1, d - 1) else 0.2)][:4]
    for k in inner:
        f = ring.monomial((k, d - k), 1)
        if rng.random() < 0.25:
            j = rng.choice([i for i in range(d + 1) if i != k])
            f = f + ring.monomial((j, d - j), rng.choice([1, -1, 2]))
        gens.append(f)
    return Ideal(ring, gens)
