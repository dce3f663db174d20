#!/usr/bin/env python3
"""Generate a random synthetic corpus JSONL for experiments.

Usage: python3 scripts/make_synthetic_corpus.py out.jsonl --persons 10000 --links 100000
"""

import argparse

from chronograph.corpus import write_corpus
from chronograph.synth import make_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out")
    ap.add_argument("--persons", type=int, default=10_000)
    ap.add_argument("--links", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--edition", default="syn")
    ap.add_argument("--mean-lifespan", type=float, default=60.0)
    args = ap.parse_args()
    corpus = make_corpus(args.persons, args.links, seed=args.seed,
                         mean_lifespan=args.mean_lifespan, edition=args.edition)
    write_corpus(corpus, args.out)
    print(f"wrote {len(corpus.persons)} persons, {len(corpus.links)} links to {args.out}")


if __name__ == "__main__":
    main()
