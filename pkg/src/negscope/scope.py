"""Constituency-tree negation scope detection.

Pipeline per cue:

1. ``find_anchor``: scan right of the cue for the first noun, adjective,
   verb or adverb, skipping neg-raising / copula verbs.
2. ``raw_scope``: climb from the anchor leaf to the nearest ancestor with a
   class-specific phrase tag, drop trailing clause/modifier children, and
   take the remaining leaves.
3. ``post_process``: the six alignment rules (connective cut, punctuation
   cut, drop cue, drop left context, default scope, fill up to the cue).

Every rule that fires leaves a :class:`TraceStep`; replaying the steps from
``ScopeResult.raw`` reproduces ``ScopeResult.scope``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Tuple

from .tree import ancestor_with_tag, child_containing, matches_any


class PosClass(str, enum.Enum):
    NOUN = "noun"
    ADJECTIVE = "adjective"
    VERB = "verb"
    ADVERB = "adverb"
    OTHER = "other"


_POS_CLASSES = {
    **dict.fromkeys(("NN", "NNS", "NNP", "NNPS"), PosClass.NOUN),
    **dict.fromkeys(("JJ", "JJR", "JJS"), PosClass.ADJECTIVE),
    **dict.fromkeys(("VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "MD"), PosClass.VERB),
    **dict.fromkeys(("RB", "RBR", "RBS"), PosClass.ADVERB),
}

ANCESTOR_TAGS = {
    PosClass.ADJECTIVE: ("NP", "VP", "ADJP", "SBAR*", "S*"),
    PosClass.NOUN: ("NP", "SBAR*", "S*"),
    PosClass.VERB: ("VP", "SBAR*", "S*"),
    PosClass.ADVERB: ("VP", "SBAR*", "S*"),
}

_NOMINAL_PRUNE = ("PP", "VP", "ADVP", "SQ", "SINV", "SBAR*")
_VERBAL_PRUNE = ("SBAR*", "SQ", "SINV")
PRUNE_TAGS = {
    PosClass.ADJECTIVE: _NOMINAL_PRUNE,
    PosClass.NOUN: _NOMINAL_PRUNE,
    PosClass.VERB: _VERBAL_PRUNE,
    PosClass.ADVERB: _VERBAL_PRUNE,
}

# Word classes that end the default scope (adverbs deliberately absent).
_DEFAULT_STOP = (PosClass.NOUN, PosClass.ADJECTIVE, PosClass.VERB)


def pos_class(tag: str) -> PosClass:
    return _POS_CLASSES.get(tag, PosClass.OTHER)


class ScopeError(ValueError):
    pass


class MissingTreeError(ScopeError):
    pass


class NoAncestorError(ScopeError):
    pass


@dataclass(frozen=True)
class TraceStep:
    rule: str
    before: Tuple[int, ...]
    after: Tuple[int, ...]
    note: str = ""

    def to_dict(self):
        d = {"rule": self.rule, "before": list(self.before), "after": list(self.after)}
        if self.note:
            d["note"] = self.note
        return d


@dataclass(frozen=True)
class ScopeResult:
    cue_index: int
    scope: Tuple[int, ...]
    trace: Tuple[TraceStep, ...] = ()
    raw: Tuple[int, ...] = ()
    sentence_id: str = ""

    def replay(self) -> Tuple[int, ...]:
        """Re-apply the trace to ``raw``; raises if a step does not chain."""
        cur = tuple(self.raw)
        for step in self.trace:
            if step.before != cur:
                raise ScopeError(f"trace step {step.rule!r} expects {step.before}, state is {cur}")
            cur = step.after
        return cur


def find_anchor(sentence, cue_index: int, nrp) -> Optional[Tuple[int, PosClass]]:
    toks = sentence.tokens
    if not 0 <= cue_index < len(toks):
        raise IndexError(f"cue index {cue_index} out of range for {len(toks)} tokens")
    for tok in toks[cue_index + 1:]:
        cls = pos_class(tok.pos)
        if cls is PosClass.OTHER:
            continue
        if cls is PosClass.VERB and tok.surface.lower() in nrp.entries:
            continue
        return tok.index, cls
    return None


def raw_scope(sentence, cue_index: int, anchor_index: int, cls: PosClass, tree=None) -> Tuple[int, ...]:
    tree = tree if tree is not None else sentence.tree
    if tree is None:
        raise MissingTreeError(f"sentence {sentence.source_id!r} has no parse tree")
    if cls not in ANCESTOR_TAGS:
        raise ValueError(f"anchor class {cls} has no scope rule")
    ancestor = ancestor_with_tag(tree, anchor_index, ANCESTOR_TAGS[cls])
    if ancestor is None:
        raise NoAncestorError(f"no {'/'.join(ANCESTOR_TAGS[cls])} ancestor above token {anchor_index}")
    anchor_end = child_containing(ancestor, anchor_index).span[1]
    prune = PRUNE_TAGS[cls]
    out = []
    for child in ancestor.children:
        if child.span[0] >= anchor_end and matches_any(child, prune):
            continue
        out.extend(range(*child.span))
    return tuple(out)


def _cut_before(current, stop):
    return tuple(i for i in current if i < stop)


def post_process(sentence, cue_index: int, raw, connectives, cues=None) -> ScopeResult:
    """Apply the six alignment rules, in order, to a raw scope.

    Connective and punctuation cuts only look at tokens right of the cue;
    a connective that is itself a lexicon cue (``nothing``) never cuts.
    """
    toks = sentence.tokens
    trace = []
    cur = tuple(sorted(set(raw)))

    def step(rule, new, note=""):
        nonlocal cur
        new = tuple(new)
        if new != cur:
            trace.append(TraceStep(rule, cur, new, note))
            cur = new

    # 1. connective
    for i in cur:
        if i > cue_index and toks[i].norm in connectives.entries and not (
                cues is not None and toks[i].norm in cues.entries):
            step("connective", _cut_before(cur, i), toks[i].surface)
            break
    # 2. punctuation
    for i in cur:
        if i > cue_index and toks[i].is_punct:
            step("punctuation", _cut_before(cur, i), toks[i].surface)
            break
    # 3. cue
    step("remove-cue", (i for i in cur if i != cue_index))
    # 4. left context
    step("before-cue", (i for i in cur if i > cue_index))
    # scope is continuous: keep the leading run after a pruned middle child
    if cur and cur[-1] - cur[0] + 1 != len(cur):
        run = [cur[0]]
        for i in cur[1:]:
            if i != run[-1] + 1:
                break
            run.append(i)
        step("contiguous", run)
    # 5. default scope, up to and including the first noun/adjective/verb
    if not cur:
        default = ()
        for tok in toks[cue_index + 1:]:
            if pos_class(tok.pos) in _DEFAULT_STOP:
                default = tuple(range(cue_index + 1, tok.index + 1))
                break
        if default:
            step("default", default, "inclusive of the first noun/adjective/verb")
        else:
            trace.append(TraceStep("default-empty", cur, cur, "no noun/adjective/verb after cue"))
    # 6. fill from the cue up to the scope start
    if cur and cur[0] > cue_index + 1:
        step("fill", tuple(range(cue_index + 1, cur[0])) + cur)
    return ScopeResult(cue_index, cur, tuple(trace), tuple(sorted(set(raw))), sentence.source_id)


def detect_scope(sentence, occ, lexicons) -> ScopeResult:
    """Scope of one cue occurrence; false cues get an empty scope."""
    i = occ.token_index
    if not occ.is_true_cue:
        return ScopeResult(i, (), (TraceStep("false-cue", (), ()),), (), sentence.source_id)
    if sentence.tree is None:
        raise MissingTreeError(f"sentence {sentence.source_id!r} has no parse tree")
    pre = []
    raw = ()
    anchor = find_anchor(sentence, i, lexicons.nrp)
    if anchor is None:
        pre.append(TraceStep("no-anchor", (), ()))
    else:
        a, cls = anchor
        try:
            raw = raw_scope(sentence, i, a, cls)
        except NoAncestorError as exc:
            pre.append(TraceStep("no-ancestor", (), (), str(exc)))
    res = post_process(sentence, i, raw, lexicons.connectives, lexicons.cues)
    if pre:
        return ScopeResult(i, res.scope, tuple(pre) + res.trace, res.raw, res.sentence_id)
    return res


def punctuation_scope(sentence, occ, all_cues: bool = False) -> ScopeResult:
    """Baseline: every token after the cue up to the next punctuation mark."""
    i = occ.token_index
    if not occ.is_true_cue and not all_cues:
        return ScopeResult(i, (), (TraceStep("false-cue", (), ()),), (), sentence.source_id)
    end = len(sentence.tokens)
    for tok in sentence.tokens[i + 1:]:
        if tok.is_punct:
            end = tok.index
            break
    scope = tuple(range(i + 1, end))
    return ScopeResult(i, scope, (TraceStep("punctuation-baseline", (), scope),), (), sentence.source_id)
