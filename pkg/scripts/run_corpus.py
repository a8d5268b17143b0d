"""Run the built-in corpus, diff against goldens and write JSON/CSV reports.

    python scripts/run_corpus.py --out results/corpus --threads 4
"""

import argparse
import sys

from regpow.cli import main

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results/corpus")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--no-cache", action="store_true")
    args = ap.parse_args()
    argv = ["corpus", "--out", args.out, "--threads", str(args.threads)]
    if args.no_cache:
        argv.append("--no-cache")
    sys.exit(main(argv))
