"""Run the acceptance matrix and print one line per criterion."""

import argparse
import sys

from ramlift.acceptance import CRITERIA, run_criterion
from ramlift.corpus import load_corpus


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("ids", nargs="*", help=f"subset of {', '.join(CRITERIA)}")
    args = parser.parse_args()
    corpus = load_corpus()
    results = [run_criterion(cid, corpus) for cid in (args.ids or CRITERIA)]
    for r in results:
        print(r.line(), flush=True)
    sys.exit(0 if all(r.passed for r in results) else 1)


if __name__ == "__main__":
    main()
