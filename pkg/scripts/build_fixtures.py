"""Regenerate the bundled graph corpus and named fixtures."""

import argparse
from pathlib import Path

from ramlift.corpus import FIXTURE_DIR, load_corpus, write_fixtures


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=FIXTURE_DIR)
    args = parser.parse_args()
    write_fixtures(args.out)
    corpus = load_corpus(args.out)
    loopless = sum(cg.loopless for cg in corpus)
    print(f"wrote {len(corpus)} graphs ({loopless} loopless) to {args.out}")


if __name__ == "__main__":
    main()
