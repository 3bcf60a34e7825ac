"""JSONL corpus records and *SEM-style column files.

A corpus record is one JSON object per line::

    {"id": "t1",
     "tokens": [{"surface": "I", "pos": "PRP", "lemma": "i"}, ...],
     "parse": "(ROOT (S ...))",                      # optional
     "gold_cues": [{"index": 2, "is_true_cue": true}],  # optional
     "gold_scopes": [{"cue_index": 2, "token_indices": [3, 4]}]}  # optional

Unknown fields are carried through untouched by the commands that echo
records.
"""

from __future__ import annotations

import json

from .evaluation import GoldScope
from .sentence import Sentence, align, make_tokens, tokens_from_tree
from .tree import parse_bracketed

KNOWN_FIELDS = frozenset({"id", "tokens", "parse", "gold_cues", "gold_scopes"})


class RecordError(ValueError):
    pass


def read_jsonl(path):
    """Yield ``(line_number, object)``; a malformed line yields ``(line_number, exception)``."""
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                yield lineno, RecordError(f"invalid JSON: {exc}")


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def record_id(rec) -> str:
    return str(rec.get("id", ""))


def record_to_sentence(rec, with_tree: bool = True) -> Sentence:
    """Build a :class:`Sentence`; raises on missing tokens or tree misalignment."""
    sid = record_id(rec)
    tree = None
    if with_tree and rec.get("parse"):
        tree = parse_bracketed(rec["parse"])
    toks = rec.get("tokens")
    if toks is None:
        if tree is None:
            raise RecordError(f"record {sid!r} has neither tokens nor parse")
        return Sentence(tokens_from_tree(tree), tree, sid)
    try:
        tokens = make_tokens([t["surface"] for t in toks], [t.get("pos", "") for t in toks],
                             [t.get("lemma") for t in toks])
    except (KeyError, TypeError) as exc:
        raise RecordError(f"record {sid!r}: malformed token entry ({exc})") from None
    if tree is None:
        return Sentence(tokens, None, sid)
    return align(tree, tokens, sid)


def gold_sites(rec):
    """Gold cue sites of a record as :class:`GoldScope` objects, in cue order.

    A cue listed only in ``gold_scopes`` is a true cue; a true cue listed only
    in ``gold_cues`` has an empty gold scope.
    """
    sid = record_id(rec)
    n = len(rec["tokens"]) if rec.get("tokens") is not None else len(parse_bracketed(rec["parse"]).leaves)
    labels = {}
    for c in rec.get("gold_cues") or ():
        labels[int(c["index"])] = bool(c.get("is_true_cue", True))
    scopes = {}
    for s in rec.get("gold_scopes") or ():
        ci = int(s["cue_index"])
        if ci in scopes:
            raise RecordError(f"record {sid!r}: duplicate gold scope for cue {ci}")
        scopes[ci] = frozenset(int(i) for i in s.get("token_indices", ()))
        labels.setdefault(ci, True)
    out = []
    for ci in sorted(labels):
        scope = scopes.get(ci, frozenset())
        for i in (ci, *scope):
            if not 0 <= i < n:
                raise RecordError(f"record {sid!r}: gold index {i} out of range for {n} tokens")
        out.append(GoldScope(sid, ci, n, scope, labels[ci]))
    return out


def has_gold(rec) -> bool:
    return bool(rec.get("gold_cues") or rec.get("gold_scopes"))


# --- *SEM 2012 style columns -------------------------------------------------
#
# chapter  sentence  token  word  lemma  pos  syntax  [cue scope event]* | ***


def _syntax_fragments(tree):
    frags = []
    leaves = tree.leaves
    opens = [[] for _ in leaves]
    closes = [0] * len(leaves)
    stack = [tree.root]
    while stack:
        node = stack.pop()
        if node.is_leaf:
            continue
        opens[node.span[0]].append(node)
        closes[node.span[1] - 1] += 1
        stack.extend(reversed(node.children))
    for i in range(len(leaves)):
        # preorder visit puts outer constituents first
        labels = "".join(f"({n.label}" for n in opens[i])
        frags.append(labels + "*" + ")" * closes[i])
    return frags


def record_to_conll(rec) -> str:
    sid = record_id(rec)
    chapter, _, sent_no = sid.rpartition(":")
    chapter = chapter or "doc"
    sent_no = sent_no or "0"
    toks = rec["tokens"]
    frags = ["*"] * len(toks)
    if rec.get("parse"):
        frags = _syntax_fragments(parse_bracketed(rec["parse"]))
    negs = [g for g in gold_sites(rec) if g.is_true_cue]
    lines = []
    for i, t in enumerate(toks):
        cols = [chapter, sent_no, str(i), t["surface"], t.get("lemma") or t["surface"].lower(),
                t.get("pos", ""), frags[i]]
        if not negs:
            cols.append("***")
        for g in negs:
            cols.append(t["surface"] if i == g.cue_index else "_")
            cols.append(t["surface"] if i in g.scope else "_")
            cols.append("_")
        lines.append("\t".join(cols))
    return "\n".join(lines) + "\n"


def _block_to_record(rows):
    chapter, sent_no = rows[0][0], rows[0][1]
    tokens = [{"surface": r[3], "lemma": r[4], "pos": r[5]} for r in rows]
    rec = {"id": f"{chapter}:{sent_no}", "tokens": tokens}
    if all(r[6] != "_" for r in rows) and not any(ch in r[3] for r in rows for ch in "() "):
        parse = " ".join(r[6].replace("*", f"({r[5]} {r[3]})") for r in rows)
        if parse.count("(") > len(rows):
            rec["parse"] = parse
    extra = rows[0][7:]
    if extra and extra != ["***"]:
        if len(extra) % 3:
            raise RecordError(f"sentence {rec['id']}: negation columns not a multiple of 3")
        cues, scopes = [], []
        for k in range(len(extra) // 3):
            cue_col = [r[7 + 3 * k] for r in rows]
            scope_col = [r[8 + 3 * k] for r in rows]
            cue_idx = [i for i, v in enumerate(cue_col) if v != "_"]
            if not cue_idx:
                continue
            ci = cue_idx[0]
            cues.append({"index": ci, "is_true_cue": True})
            scopes.append({"cue_index": ci,
                           "token_indices": [i for i, v in enumerate(scope_col) if v != "_" and i != ci]})
        rec["gold_cues"] = cues
        rec["gold_scopes"] = scopes
    return rec


def read_conll(lines):
    """Parse *SEM-style column lines into corpus records."""
    block = []
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line.strip():
            if block:
                yield _block_to_record(block)
                block = []
            continue
        cols = line.split("\t")
        if len(cols) < 8:
            raise RecordError(f"line {lineno}: expected at least 8 columns, got {len(cols)}")
        block.append(cols)
    if block:
        yield _block_to_record(block)
