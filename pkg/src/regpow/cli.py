"""Command line entry point: ``regpow <command> [-i job] [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import nullcontext
from pathlib import Path

from .cache import GBCache
from .corpus import CORPUS, run_entry
from .groebner import BudgetExceeded, cache_scope
from .jobs import JobError, load_job
from .kernel import ParseError
from .report import build_report

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_GOLDEN = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors share the input-error code; 2 is reserved for budgets
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="regpow", description=__doc__)
    ap.add_argument("command", choices=["powers", "rees", "strand", "cohomology", "bounds", "verify", "corpus"])
    ap.add_argument("-i", "--input", help="job file (key = value lines)")
    ap.add_argument("--qmax", type=int, help="override the job's qmax")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", help="directory for report files")
    ap.add_argument("--format", choices=["json", "csv", "both"], default="both")
    ap.add_argument("--no-cache", action="store_true", help="disable the persistent Groebner basis cache")
    ap.add_argument("--p-range", help="strand indices as lo:hi (inclusive), default -1:3; write --p-range=-1:3 for negative lo")
    return ap


def dump_json(rep: dict) -> str:
    return json.dumps(rep, indent=2, sort_keys=True) + "\n"


def _csv(rows: list, columns: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([";".join(map(str, r[c])) if isinstance(r[c], list) else r[c] for c in columns])
    return buf.getvalue()


def csv_tables(rep: dict) -> dict:
    """name -> CSV text for the tabular sections present in a report."""
    out = {}
    if rep.get("power_table"):
        out["power_table"] = _csv(rep["power_table"], ["q", "a_star", "reg", "defect", "a_list"])
    if rep.get("checks"):
        out["checks"] = _csv(rep["checks"], ["name", "status", "detail"])
    if rep.get("strands"):
        out["strands"] = _csv(rep["strands"], ["p", "zero", "rank", "a_star", "sheaf_reg", "a_list", "hilbert"])
    if rep.get("cohomology"):
        rows = [{"p": r["twist"][0], "q": r["twist"][1], "h": r["h"]} for r in rep["cohomology"]["rows"]]
        out["cohomology"] = _csv(rows, ["p", "q", "h"])
    if rep.get("certificates"):
        out["certificates"] = _csv(rep["certificates"], ["kind", "value", "exact", "note"])
    if rep.get("thresholds"):
        th = rep["thresholds"]
        rows = [{"name": k, "value": v["value"], "status": v["status"]} for k, v in th["ingredients"].items()]
        for k in ("threshold1", "threshold2", "stab_bound", "empirical_stab"):
            rows.append({"name": k, "value": th[k], "status": th["stab_bound_rule"] if k == "stab_bound" else ""})
        out["thresholds"] = _csv(rows, ["name", "value", "status"])
    return out


PRIMARY = {
    "powers": "power_table",
    "rees": "certificates",
    "strand": "strands",
    "cohomology": "cohomology",
    "bounds": "thresholds",
    "verify": "checks",
}


def emit(rep: dict, stem: str, args) -> None:
    tables = csv_tables(rep)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.format in ("json", "both"):
            (out / f"{stem}.json").write_text(dump_json(rep))
        if args.format in ("csv", "both"):
            for name, text in tables.items():
                (out / f"{stem}.{name}.csv").write_text(text)
        return
    if args.format == "json":
        sys.stdout.write(dump_json(rep))
    else:
        primary = tables.get(PRIMARY.get(rep["meta"]["command"], ""))
        if args.format == "csv" or primary is not None:
            sys.stdout.write(primary or "")
        else:
            sys.stdout.write(dump_json(rep))
        if args.format == "both" and rep.get("checks"):
            for c in rep["checks"]:
                print(f"[{c['status']}] {c['name']}: {c['detail']}", file=sys.stderr)


def _p_range(text: str | None):
    if text is None:
        return None
    try:
        lo, hi = (int(s) for s in text.split(":"))
    except ValueError:
        raise JobError(f"bad --p-range {text!r}, expected lo:hi") from None
    return range(lo, hi + 1)


def _corpus_job(idx: int, threads: int, use_cache: bool):
    entry = CORPUS[idx]
    ctx = cache_scope(GBCache()) if use_cache else nullcontext()
    with ctx:
        return run_entry(entry, threads)


def run_corpus(args) -> int:
    use_cache = not args.no_cache
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(_corpus_job, range(len(CORPUS)), [1] * len(CORPUS), [use_cache] * len(CORPUS)))
    else:
        results = [_corpus_job(i, 1, use_cache) for i in range(len(CORPUS))]
    failed = False
    for entry, (rep, bad) in zip(CORPUS, results):
        status = "ok" if not bad else "MISMATCH"
        print(f"{entry.job.name}: {status}")
        for line in bad:
            print(f"  {line}")
        failed |= bool(bad)
        if args.out:
            emit(rep, entry.job.name, args)
    return EXIT_GOLDEN if failed else EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "corpus":
            return run_corpus(args)
        if not args.input:
            raise JobError(f"{args.command} needs -i <job file>")
        job = load_job(args.input).with_qmax(args.qmax).validate()
        ctx = nullcontext() if args.no_cache else cache_scope(GBCache())
        with ctx:
            rep = build_report(job, args.command, args.threads, _p_range(args.p_range))
        emit(rep, job.name, args)
        return EXIT_OK
    except (JobError, ParseError) as exc:
        print(f"regpow: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"regpow: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"regpow: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
