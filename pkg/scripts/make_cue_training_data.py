"""Emit guideline-patterned cue-classifier training records (JSONL with gold_cues)."""

import argparse
import sys

from negscope.corpus import dumps
from negscope.synthetic import cue_training_sentences


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-template", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args(argv)
    out = sys.stdout if args.output == "-" else open(args.output, "w", encoding="utf-8")
    with out:
        for k, (s, i, label) in enumerate(cue_training_sentences(args.per_template, args.seed)):
            rec = {
                "id": f"cue:{k}",
                "tokens": [{"surface": t.surface, "pos": t.pos} for t in s.tokens],
                "gold_cues": [{"index": i, "is_true_cue": label}],
            }
            out.write(dumps(rec) + "\n")


if __name__ == "__main__":
    main()
