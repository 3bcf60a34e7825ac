"""Rule-based scopes vs. the punctuation baseline on a gold JSONL corpus.

Cues come from gold, so only scope resolution is compared.
"""

import argparse

from negscope.corpus import gold_sites, has_gold, read_jsonl, record_to_sentence
from negscope.cues import CueOccurrence
from negscope.evaluation import score_scopes
from negscope.lexicons import Lexicons
from negscope.scope import detect_scope, punctuation_scope


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("gold")
    args = ap.parse_args(argv)
    lex = Lexicons.load()
    gold, rules, punct = [], [], []
    for lineno, rec in read_jsonl(args.gold):
        if isinstance(rec, Exception) or not has_gold(rec):
            continue
        s = record_to_sentence(rec)
        for g in gold_sites(rec):
            occ = CueOccurrence(g.cue_index, s[g.cue_index].norm, g.is_true_cue)
            gold.append(g)
            rules.append(detect_scope(s, occ, lex))
            punct.append(punctuation_scope(s, occ))
    for name, pred in (("rules", rules), ("punctuation", punct)):
        print(f"== {name}")
        print(score_scopes(gold, pred).table())


if __name__ == "__main__":
    main()
