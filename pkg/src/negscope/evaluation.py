"""Scope and cue scoring, and inter-annotator agreement.

Scope metrics are micro-averaged over cue instances: each cue contributes
one in/out labeling of every token of its sentence. PCS is the fraction of
gold true cues whose predicted index set equals the gold set.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Dict, FrozenSet


class AlignmentError(ValueError):
    pass


@dataclass(frozen=True)
class GoldScope:
    sentence_id: str
    cue_index: int
    n_tokens: int
    scope: FrozenSet[int] = frozenset()
    is_true_cue: bool = True

    @property
    def key(self):
        return (self.sentence_id, self.cue_index)


@dataclass
class PRF:
    precision: float = 0.0
    recall: float = 0.0
    f1: float = 0.0
    support: int = 0

    @classmethod
    def from_counts(cls, tp, fp, fn):
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        f = 2 * p * r / (p + r) if p + r else 0.0
        return cls(p, r, f, tp + fn)


@dataclass
class EvalReport:
    in_scope: PRF = field(default_factory=PRF)
    out_scope: PRF = field(default_factory=PRF)
    pcs: float = 0.0
    cue_true: PRF = field(default_factory=PRF)
    cue_false: PRF = field(default_factory=PRF)
    counts: Dict[str, int] = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def table(self) -> str:
        lines = []
        if "cues_gold" in self.counts:
            lines += [
                f"{'':14}{'P':>8}{'R':>8}{'F':>8}{'Support':>9}",
                *(f"{name:14}{m.precision:8.2f}{m.recall:8.2f}{m.f1:8.2f}{m.support:9d}"
                  for name, m in (("False cues", self.cue_false), ("Actual cues", self.cue_true))),
                "",
            ]
        if "scopes_gold" in self.counts:
            lines += [
                f"{'':14}{'P':>8}{'R':>8}{'F':>8}",
                f"{'In-scope':14}{self.in_scope.precision:8.2f}{self.in_scope.recall:8.2f}{self.in_scope.f1:8.2f}",
                f"{'Out-scope':14}{self.out_scope.precision:8.2f}{self.out_scope.recall:8.2f}{self.out_scope.f1:8.2f}",
                f"{'PCS':14}{self.pcs:8.2f}  ({self.counts['pcs_correct']}/{self.counts['scopes_gold']})",
            ]
        return "\n".join(lines)


def _index_unique(items, key, what):
    out = {}
    for item in items:
        k = key(item)
        if k in out:
            raise AlignmentError(f"duplicate {what} {k}")
        out[k] = item
    return out


def score_scopes(gold, pred) -> EvalReport:
    """Token-level P/R/F for both classes and PCS.

    ``pred`` holds :class:`~negscope.scope.ScopeResult` objects keyed by
    ``(sentence_id, cue_index)``. Gold false cues stay out of the PCS
    denominator but any tokens predicted for them are in-scope false positives.
    A gold false cue with no prediction counts as an empty prediction.
    """
    gold_by = _index_unique(gold, lambda g: g.key, "gold cue")
    pred_by = _index_unique(pred, lambda r: (r.sentence_id, r.cue_index), "predicted cue")
    unknown = sorted(set(pred_by) - set(gold_by))
    if unknown:
        raise AlignmentError(f"predictions for cues absent from gold: {unknown[:5]}")
    missing = sorted(k for k, g in gold_by.items() if g.is_true_cue and k not in pred_by)
    if missing:
        raise AlignmentError(f"gold true cues without a prediction: {missing[:5]}")

    tp = fp = fn = tn = 0
    exact = n_true = 0
    for k, g in gold_by.items():
        p = set(pred_by[k].scope) if k in pred_by else set()
        bad = [i for i in p if not 0 <= i < g.n_tokens]
        if bad:
            raise AlignmentError(f"predicted index {bad[0]} out of range for {k}")
        gs = set(g.scope) if g.is_true_cue else set()
        inter = len(gs & p)
        tp += inter
        fp += len(p) - inter
        fn += len(gs) - inter
        tn += g.n_tokens - len(gs | p)
        if g.is_true_cue:
            n_true += 1
            exact += gs == p
    counts = {"in_tp": tp, "in_fp": fp, "in_fn": fn, "in_tn": tn,
              "scopes_gold": n_true, "pcs_correct": exact}
    # out-of-scope class: its TP are the in-scope TN, its FP the in-scope FN
    return EvalReport(
        in_scope=PRF.from_counts(tp, fp, fn),
        out_scope=PRF.from_counts(tn, fn, fp),
        pcs=exact / n_true if n_true else 0.0,
        counts=counts,
    )


def score_cues(gold, pred, report: EvalReport = None) -> EvalReport:
    """Per-class cue classification P/R/F.

    ``gold`` and ``pred`` map ``(sentence_id, token_index)`` to the
    true-cue boolean.
    """
    gold, pred = dict(gold), dict(pred)
    if set(gold) != set(pred):
        extra = sorted(set(pred) - set(gold))[:5]
        lost = sorted(set(gold) - set(pred))[:5]
        raise AlignmentError(f"cue sites differ: unexpected {extra}, missing {lost}")
    tallies = {(g, p): 0 for g in (True, False) for p in (True, False)}
    for k, g in gold.items():
        tallies[(bool(g), bool(pred[k]))] += 1
    report = report or EvalReport()
    report.cue_true = PRF.from_counts(tallies[(True, True)], tallies[(False, True)], tallies[(True, False)])
    report.cue_false = PRF.from_counts(tallies[(False, False)], tallies[(True, False)], tallies[(False, True)])
    report.counts.update({
        "cues_gold": len(gold),
        "cue_tt": tallies[(True, True)], "cue_tf": tallies[(True, False)],
        "cue_ft": tallies[(False, True)], "cue_ff": tallies[(False, False)],
    })
    return report


@dataclass
class AgreementReport:
    token_agreement: float
    full_scope_agreement: float
    tokens: int = 0
    sites: int = 0


def agreement(a, b) -> AgreementReport:
    """Token-level and exact-scope agreement between two annotation sets.

    Each set is a sequence of :class:`GoldScope`; both must cover the same
    cue sites with the same sentence lengths.
    """
    ia = _index_unique(a, lambda g: g.key, "cue site")
    ib = _index_unique(b, lambda g: g.key, "cue site")
    if set(ia) != set(ib):
        raise AlignmentError(f"cue sites differ: {sorted(set(ia) ^ set(ib))[:5]}")
    agree_tok = total_tok = agree_site = 0
    for k, ga in ia.items():
        gb = ib[k]
        if ga.n_tokens != gb.n_tokens:
            raise AlignmentError(f"sentence length differs at {k}: {ga.n_tokens} vs {gb.n_tokens}")
        sa, sb = set(ga.scope), set(gb.scope)
        total_tok += ga.n_tokens
        agree_tok += ga.n_tokens - len(sa ^ sb)
        agree_site += sa == sb
    return AgreementReport(
        token_agreement=agree_tok / total_tok if total_tok else 1.0,
        full_scope_agreement=agree_site / len(ia) if ia else 1.0,
        tokens=total_tok,
        sites=len(ia),
    )
