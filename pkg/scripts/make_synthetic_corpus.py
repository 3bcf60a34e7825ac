"""Write a JSONL corpus of random parsed sentences for benchmarking and smoke tests."""

import argparse
import random
import sys

from negscope.corpus import dumps
from negscope.synthetic import random_record


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=10_000)
    ap.add_argument("--max-tokens", type=int, default=30)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    out = sys.stdout if args.output == "-" else open(args.output, "w", encoding="utf-8")
    with out:
        for k in range(args.n):
            out.write(dumps(random_record(rng, f"syn:{k}", args.max_tokens)) + "\n")


if __name__ == "__main__":
    main()
