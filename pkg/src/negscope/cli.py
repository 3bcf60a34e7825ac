"""Command-line interface: ``negscope {detect,train-cue,evaluate,transform,agree,convert,normalize}``.

Exit codes: 0 clean, 1 usage or fatal error, 2 the run finished but some
records were rejected (see the rejects file).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from contextlib import contextmanager
from pathlib import Path

from . import corpus as cp
from .cues import CueOccurrence, LinearModel, TrainConfig, TrainingError, detect_cues, extract_features, train
from .evaluation import AlignmentError, score_cues, score_scopes, agreement
from .lexicons import Lexicons
from .scope import MissingTreeError, ScopeResult, detect_scope, punctuation_scope
from .transform import MODES, TransformConfig, apply_transform, normalize_tweet

log = logging.getLogger("negscope")

EXIT_OK, EXIT_USAGE, EXIT_REJECTS = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@contextmanager
def _open_out(path):
    if path is None or str(path) == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


class Rejects:
    def __init__(self, path, default_base=None):
        if path is None and default_base not in (None, "-"):
            path = f"{default_base}.rejects.jsonl"
        self.path = path
        self.items = []

    def add(self, source, lineno, rec_id, error):
        self.items.append({"file": str(source), "line": lineno, "id": rec_id, "error": str(error)})

    def flush(self) -> int:
        if not self.items:
            return EXIT_OK
        if self.path is None:
            for r in self.items:
                print(f"{r['file']}:{r['line']}: {r['id']}: {r['error']}", file=sys.stderr)
        else:
            with open(self.path, "w", encoding="utf-8") as fh:
                for r in self.items:
                    fh.write(cp.dumps(r) + "\n")
        log.warning("%d record(s) rejected", len(self.items))
        return EXIT_REJECTS


def _lexicons(args) -> Lexicons:
    return Lexicons.load(cues=args.cues, nrp=args.nrp, connectives=args.connectives, antonyms=args.antonyms)


def _gold_occurrences(rec, sentence):
    return [CueOccurrence(g.cue_index, sentence[g.cue_index].norm, g.is_true_cue, 1.0 if g.is_true_cue else 0.0)
            for g in cp.gold_sites(rec)]


def _scope_record(res: ScopeResult, occ, sentence, extra, trace: bool):
    out = dict(extra)
    out.update({
        "id": sentence.source_id,
        "cue_index": occ.token_index,
        "cue_form": occ.cue_form,
        "is_true_cue": occ.is_true_cue,
        "score": occ.score,
        "scope": list(res.scope),
        "scope_text": " ".join(sentence[i].surface for i in res.scope),
    })
    if trace:
        out["raw_scope"] = list(res.raw)
        out["trace"] = [s.to_dict() for s in res.trace]
    return out


def cmd_detect(args) -> int:
    lex = _lexicons(args)
    model = LinearModel.load(args.cue_model) if args.cue_model else None
    baseline = args.baseline == "punctuation"
    rejects = Rejects(args.rejects, args.output)
    with _open_out(args.output) as out:
        for lineno, rec in cp.read_jsonl(args.input):
            if isinstance(rec, Exception):
                rejects.add(args.input, lineno, None, rec)
                continue
            rid = cp.record_id(rec)
            try:
                sentence = cp.record_to_sentence(rec, with_tree=not baseline)
                if not baseline and sentence.tree is None:
                    raise MissingTreeError("missing tree")
                if args.gold_cues:
                    occs = _gold_occurrences(rec, sentence)
                else:
                    occs = detect_cues(sentence, lex.cues, model)
                lines = []
                extra = {k: v for k, v in rec.items() if k not in cp.KNOWN_FIELDS}
                for occ in occs:
                    if baseline:
                        res = punctuation_scope(sentence, occ, all_cues=args.baseline_all_cues)
                    else:
                        res = detect_scope(sentence, occ, lex)
                    lines.append(cp.dumps(_scope_record(res, occ, sentence, extra, args.trace)))
            except (ValueError, KeyError, IndexError, TypeError) as exc:
                rejects.add(args.input, lineno, rid, exc)
                continue
            for line in lines:
                out.write(line + "\n")
    return rejects.flush()


def cmd_train_cue(args) -> int:
    lex = _lexicons(args)
    examples = []
    skipped = 0
    rejects = Rejects(args.rejects, args.output)
    for lineno, rec in cp.read_jsonl(args.input):
        if isinstance(rec, Exception):
            rejects.add(args.input, lineno, None, rec)
            continue
        try:
            sentence = cp.record_to_sentence(rec, with_tree=False)
            for occ in _gold_occurrences(rec, sentence):
                if sentence[occ.token_index].norm not in lex.cues.entries:
                    skipped += 1
                    continue
                examples.append((extract_features(sentence, occ), occ.is_true_cue))
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            rejects.add(args.input, lineno, cp.record_id(rec), exc)
    if skipped:
        log.warning("skipped %d gold cue(s) outside the cue lexicon", skipped)
    config = TrainConfig(epochs=args.epochs, learning_rate=args.lr, l2=args.l2, batch_size=args.batch_size,
                         seed=args.seed, true_weight=args.true_weight, false_weight=args.false_weight,
                         threshold=args.threshold)
    try:
        model = train(examples, config)
    except TrainingError as exc:
        print(f"{args.input}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    with _open_out(args.output) as out:
        out.write(model.dumps())
    log.info("trained on %d cues, final loss %.6f", len(examples), model.metadata["final_loss"])
    return rejects.flush()


def _read_predictions(path):
    preds = []
    for lineno, rec in cp.read_jsonl(path):
        if isinstance(rec, Exception):
            raise UsageError(f"{path}:{lineno}: {rec}")
        try:
            preds.append((lineno, rec, ScopeResult(int(rec["cue_index"]), tuple(rec.get("scope", ())),
                                                   sentence_id=cp.record_id(rec))))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"{path}:{lineno}: malformed prediction ({exc})") from None
    return preds


def _read_gold(path):
    sites = []
    for lineno, rec in cp.read_jsonl(path):
        if isinstance(rec, Exception):
            raise UsageError(f"{path}:{lineno}: {rec}")
        if not cp.has_gold(rec):
            continue
        try:
            sites.extend(cp.gold_sites(rec))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
    return sites


def cmd_evaluate(args) -> int:
    gold = _read_gold(args.gold)
    preds = _read_predictions(args.pred)
    try:
        report = score_scopes(gold, [p for _, _, p in preds])
        if not args.no_cues and any("is_true_cue" in rec for _, rec, _ in preds):
            report = score_cues({g.key: g.is_true_cue for g in gold},
                                {(r.sentence_id, r.cue_index): bool(rec.get("is_true_cue", True))
                                 for _, rec, r in preds},
                                report)
    except AlignmentError as exc:
        raise UsageError(f"{args.gold} vs {args.pred}: {exc}") from None
    print(report.table())
    if args.json:
        with _open_out(args.json) as fh:
            fh.write(report.to_json() + "\n")
    return EXIT_OK


def cmd_transform(args) -> int:
    lex = _lexicons(args)
    config = TransformConfig(mode=args.mode, keep_cue=not args.drop_cue)
    by_sentence = {}
    for _, _, res in _read_predictions(args.scopes):
        by_sentence.setdefault(res.sentence_id, []).append(res)
    rejects = Rejects(args.rejects, args.output)
    with _open_out(args.output) as out:
        for lineno, rec in cp.read_jsonl(args.input):
            if isinstance(rec, Exception):
                rejects.add(args.input, lineno, None, rec)
                continue
            try:
                sentence = cp.record_to_sentence(rec, with_tree=False)
                ts = apply_transform(sentence, by_sentence.get(sentence.source_id, ()), lex.antonyms, config)
            except (ValueError, KeyError, IndexError, TypeError) as exc:
                rejects.add(args.input, lineno, cp.record_id(rec), exc)
                continue
            rec = dict(rec)
            rec["transformed"] = list(ts.tokens)
            rec["transformed_text"] = ts.text()
            out.write(cp.dumps(rec) + "\n")
    return rejects.flush()


def cmd_agree(args) -> int:
    a, b = _read_gold(args.a), _read_gold(args.b)
    try:
        rep = agreement(a, b)
    except AlignmentError as exc:
        raise UsageError(f"{args.a} vs {args.b}: {exc}") from None
    print(f"token agreement       {rep.token_agreement:.4f}  ({rep.tokens} tokens)")
    print(f"full-scope agreement  {rep.full_scope_agreement:.4f}  ({rep.sites} cue sites)")
    if args.json:
        with _open_out(args.json) as fh:
            fh.write(json.dumps(rep.__dict__, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_convert(args) -> int:
    if args.to == "jsonl":
        with open(args.input, encoding="utf-8") as fh, _open_out(args.output) as out:
            try:
                for rec in cp.read_conll(fh):
                    out.write(cp.dumps(rec) + "\n")
            except cp.RecordError as exc:
                raise UsageError(f"{args.input}: {exc}") from None
        return EXIT_OK
    rejects = Rejects(args.rejects, args.output)
    with _open_out(args.output) as out:
        for lineno, rec in cp.read_jsonl(args.input):
            if isinstance(rec, Exception):
                rejects.add(args.input, lineno, None, rec)
                continue
            try:
                block = cp.record_to_conll(rec)
            except (ValueError, KeyError, IndexError, TypeError) as exc:
                rejects.add(args.input, lineno, cp.record_id(rec), exc)
                continue
            out.write(block + "\n")
    return rejects.flush()


def cmd_normalize(args) -> int:
    src = sys.stdin if args.input in (None, "-") else open(args.input, encoding="utf-8")
    with src, _open_out(args.output) as out:
        for line in src:
            out.write(normalize_tweet(line.rstrip("\n")) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="negscope", description="Negation cue and scope detection for conversational text.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def lex_flags(sp):
        sp.add_argument("--cues", type=Path, help="cue lexicon (default: bundled)")
        sp.add_argument("--nrp", type=Path, help="neg-raising / copula verb list")
        sp.add_argument("--connectives", type=Path, help="prune-connective list")
        sp.add_argument("--antonyms", type=Path, help="antonym TSV")

    sp = sub.add_parser("detect", help="predict cues and scopes")
    sp.add_argument("input")
    sp.add_argument("-o", "--output")
    lex_flags(sp)
    sp.add_argument("--cue-model", type=Path)
    sp.add_argument("--gold-cues", action="store_true", help="use gold cues, bypass the classifier")
    sp.add_argument("--baseline", choices=["punctuation"])
    sp.add_argument("--baseline-all-cues", action="store_true",
                    help="give false cues a punctuation scope too")
    sp.add_argument("--trace", action="store_true")
    sp.add_argument("--rejects")
    sp.set_defaults(func=cmd_detect)

    sp = sub.add_parser("train-cue", help="train the true/false cue classifier")
    sp.add_argument("input")
    sp.add_argument("-o", "--output")
    lex_flags(sp)
    d = TrainConfig()
    sp.add_argument("--seed", type=int, default=d.seed)
    sp.add_argument("--epochs", type=int, default=d.epochs)
    sp.add_argument("--lr", type=float, default=d.learning_rate)
    sp.add_argument("--l2", type=float, default=d.l2)
    sp.add_argument("--batch-size", type=int, default=d.batch_size)
    sp.add_argument("--true-weight", type=float, default=d.true_weight)
    sp.add_argument("--false-weight", type=float, default=d.false_weight)
    sp.add_argument("--threshold", type=float, default=d.threshold)
    sp.add_argument("--rejects")
    sp.set_defaults(func=cmd_train_cue)

    sp = sub.add_parser("evaluate", help="score predictions against gold")
    sp.add_argument("--gold", required=True)
    sp.add_argument("--pred", required=True)
    sp.add_argument("--json")
    sp.add_argument("--no-cues", action="store_true", help="skip cue classification scores")
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser("transform", help="NOT_ prefixing / antonym substitution")
    sp.add_argument("input")
    sp.add_argument("--scopes", required=True, help="detect output")
    sp.add_argument("-o", "--output")
    lex_flags(sp)
    sp.add_argument("--mode", choices=MODES, default="not-prefix")
    sp.add_argument("--drop-cue", action="store_true")
    sp.add_argument("--rejects")
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("agree", help="inter-annotator agreement")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_agree)

    sp = sub.add_parser("convert", help="JSONL <-> *SEM column format")
    sp.add_argument("input")
    sp.add_argument("--to", choices=["conll", "jsonl"], required=True)
    sp.add_argument("-o", "--output")
    sp.add_argument("--rejects")
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("normalize", help="tweet cleaning, one text per line")
    sp.add_argument("input", nargs="?")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_normalize)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, FileNotFoundError) as exc:
        print(f"negscope: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
