import random

import pytest
from hypothesis import given, strategies as st

from negscope.cues import CueOccurrence
from negscope.scope import (
    MissingTreeError, NoAncestorError, PosClass, ScopeResult, detect_scope, find_anchor, pos_class, post_process,
    punctuation_scope, raw_scope,
)
from negscope.synthetic import random_sentence

from golden import GOLDEN_SCOPES, IF_NOT, NO_DETAILS, NOT_ANGRY, NOT_WANT, WONT_BE_ABLE, sent, tagged


def words(s, idx):
    return [s[i].surface for i in idx]


@pytest.mark.parametrize("tag, cls", [
    ("NNS", PosClass.NOUN), ("NNP", PosClass.NOUN), ("JJR", PosClass.ADJECTIVE), ("MD", PosClass.VERB),
    ("VBZ", PosClass.VERB), ("RBS", PosClass.ADVERB), ("DT", PosClass.OTHER), ("UH", PosClass.OTHER),
])
def test_pos_class(tag, cls):
    assert pos_class(tag) is cls


def test_find_anchor_examples(lex):
    s = sent(NO_DETAILS)
    assert find_anchor(s, 2, lex.nrp) == (3, PosClass.NOUN)
    s = sent(NOT_ANGRY)
    assert find_anchor(s, 5, lex.nrp) == (6, PosClass.ADJECTIVE)
    s = sent(NOT_WANT)
    assert find_anchor(s, 2, lex.nrp) == (3, PosClass.VERB)


def test_find_anchor_skips_nrp_and_copula(lex):
    s = tagged("It/PRP does/VBZ not/RB seem/VB fair/JJ")
    assert find_anchor(s, 2, lex.nrp) == (4, PosClass.ADJECTIVE)
    s = tagged("A/DT worker/NN does/VBZ not/RB become/VB rich/JJ")
    assert find_anchor(s, 3, lex.nrp) == (5, PosClass.ADJECTIVE)
    # MD counts as a verb, "might" is on the list
    s = tagged("not/RB might/MD Help/VB")
    assert find_anchor(s, 0, lex.nrp) == (2, PosClass.VERB)
    # only verbs are skipped: noun "look" anchors
    s = tagged("no/DT look/NN")
    assert find_anchor(s, 0, lex.nrp) == (1, PosClass.NOUN)


def test_find_anchor_none_and_bad_index(lex):
    s = tagged("I/PRP do/VBP not/RB ./.")
    assert find_anchor(s, 2, lex.nrp) is None
    with pytest.raises(IndexError):
        find_anchor(s, 9, lex.nrp)


def test_raw_scope_noun():
    s = sent("(NP (DT no) (NNS details))")
    assert raw_scope(s, 0, 1, PosClass.NOUN) == (0, 1)


def test_raw_scope_adjective_worked_example():
    s = sent(NOT_ANGRY)
    assert words(s, raw_scope(s, 5, 6, PosClass.ADJECTIVE)) == ["angry", "but", "upset"]


def test_raw_scope_verb():
    s = sent(NOT_WANT)
    assert words(s, raw_scope(s, 2, 3, PosClass.VERB)) == ["want", "to", "update", "it", "anymore"]


def test_raw_scope_prunes_right_children():
    # noun: a right PP child of the NP goes
    s = sent("(NP (NP (DT no) (NN refund)) (PP (IN for) (NP (NNS days))))")
    assert words(s, raw_scope(s, 0, 1, PosClass.NOUN)) == ["no", "refund"]
    s = sent("(NP (DT no) (NN refund) (PP (IN for) (NP (NNS days))) (SBAR (IN because) (S (NP (PRP it)))))")
    assert words(s, raw_scope(s, 0, 1, PosClass.NOUN)) == ["no", "refund"]
    # verb: SBAR right child goes, S does not
    s = sent(WONT_BE_ABLE)
    assert words(s, raw_scope(s, 3, 4, PosClass.VERB)) == ["be", "able", "to", "vote"]


def test_raw_scope_left_children_never_pruned():
    s = sent("(NP (PP (IN of)) (DT no) (NN use))")
    assert words(s, raw_scope(s, 1, 2, PosClass.NOUN)) == ["of", "no", "use"]


def test_raw_scope_no_ancestor():
    s = sent("(FRAG (RB not) (NN way))")
    with pytest.raises(NoAncestorError):
        raw_scope(s, 0, 1, PosClass.NOUN)


def test_raw_scope_missing_tree():
    with pytest.raises(MissingTreeError):
        raw_scope(tagged("no/DT way/NN"), 0, 1, PosClass.NOUN)


def test_post_process_connective(lex):
    s = sent(NOT_ANGRY)
    r = post_process(s, 5, (6, 7, 8), lex.connectives, lex.cues)
    assert words(s, r.scope) == ["angry"]
    assert [t.rule for t in r.trace] == ["connective"]


def test_post_process_removes_cue(lex):
    s = sent("(NP (DT no) (NNS details))")
    r = post_process(s, 0, (0, 1), lex.connectives, lex.cues)
    assert r.scope == (1,)
    assert [t.rule for t in r.trace] == ["remove-cue"]


def test_post_process_default_scope(lex):
    s = tagged("I/PRP do/VBP not/RB really/RB want/VB to/TO go/VB")
    r = post_process(s, 2, (), lex.connectives, lex.cues)
    assert words(s, r.scope) == ["really", "want"]
    assert [t.rule for t in r.trace] == ["default"]
    s = tagged("not/RB want/VB to/TO")
    assert post_process(s, 0, (), lex.connectives, lex.cues).scope == (1,)


def test_post_process_default_ignores_adverbs(lex):
    s = tagged("not/RB really/RB ./.")
    r = post_process(s, 0, (), lex.connectives, lex.cues)
    assert r.scope == ()
    assert r.trace[-1].rule == "default-empty"


def test_post_process_fill(lex):
    s = tagged("not/RB at/IN all/DT happy/JJ")
    r = post_process(s, 0, (3,), lex.connectives, lex.cues)
    assert r.scope == (1, 2, 3)
    assert r.trace[-1].rule == "fill"


def test_post_process_punct_and_left_context(lex):
    s = tagged("Well/UH ,/, not/RB now/RB ,/, later/RB")
    r = post_process(s, 2, range(6), lex.connectives, lex.cues)
    assert r.scope == (3,)
    assert [t.rule for t in r.trace] == ["punctuation", "remove-cue", "before-cue"]


def test_cue_does_not_delimit_itself_or_other_cues(lex):
    # "nothing" is on both the cue and the connective list
    s = tagged("not/RB nothing/NN left/VBN")
    r = post_process(s, 0, (0, 1, 2), lex.connectives, lex.cues)
    assert r.scope == (1, 2)


def test_post_process_gap_keeps_leading_run(lex):
    s = tagged("no/DT refund/NN for/IN days/NNS ok/JJ")
    r = post_process(s, 0, (0, 1, 4), lex.connectives, lex.cues)
    assert r.scope == (1,)
    assert r.trace[-1].rule == "contiguous"


def test_detect_scope_golden(lex):
    for tree, cue, gold in GOLDEN_SCOPES:
        s = sent(tree)
        r = detect_scope(s, CueOccurrence(cue, s[cue].norm), lex)
        assert words(s, r.scope) == gold
        assert r.replay() == r.scope


def test_detect_scope_false_cue(lex):
    s = sent(IF_NOT)
    r = detect_scope(s, CueOccurrence(1, "not", is_true_cue=False, score=0.1), lex)
    assert r.scope == ()
    assert r.trace[0].rule == "false-cue"


def test_detect_scope_final_cue(lex):
    s = sent("(S (NP (PRP I)) (VP (VBP do) (RB not)))")
    r = detect_scope(s, CueOccurrence(2, "not"), lex)
    assert r.scope == ()
    assert [t.rule for t in r.trace] == ["no-anchor", "default-empty"]


def test_detect_scope_no_ancestor_falls_back(lex):
    s = sent("(FRAG (RB not) (NN way))")
    r = detect_scope(s, CueOccurrence(0, "not"), lex)
    assert r.scope == (1,)
    assert [t.rule for t in r.trace] == ["no-ancestor", "default"]


def test_detect_scope_needs_tree(lex):
    with pytest.raises(MissingTreeError):
        detect_scope(tagged("not/RB good/JJ"), CueOccurrence(0, "not"), lex)


def test_wont_be_able(lex):
    s = sent(WONT_BE_ABLE)
    r = detect_scope(s, CueOccurrence(3, "wont"), lex)
    assert words(s, r.scope) == ["be", "able", "to", "vote"]


@pytest.mark.parametrize("text, cue, expected", [
    ("I/PRP do/VBP not/RB want/VB it/PRP ,/, thanks/NNS", 2, ["want", "it"]),
    ("not/RB ,/, ok/JJ", 0, []),
    ("I/PRP do/VBP not/RB want/VB to/TO update/VB it/PRP anymore/RB", 2,
     ["want", "to", "update", "it", "anymore"]),
])
def test_punctuation_scope(text, cue, expected):
    s = tagged(text)
    assert words(s, punctuation_scope(s, CueOccurrence(cue, s[cue].norm)).scope) == expected


def test_punctuation_scope_false_cue_flag():
    s = tagged("If/IN not/RB we/PRP can/MD ./.")
    occ = CueOccurrence(1, "not", is_true_cue=False)
    assert punctuation_scope(s, occ).scope == ()
    assert punctuation_scope(s, occ, all_cues=True).scope == (2, 3)


def test_punctuation_by_surface():
    s = tagged("not/RB good/JJ !!/SYM more/JJR")
    assert punctuation_scope(s, CueOccurrence(0, "not")).scope == (1,)


def test_replay_detects_broken_chain():
    from negscope.scope import ScopeError, TraceStep

    r = ScopeResult(0, (1,), (TraceStep("x", (5,), (1,)),), raw=(1, 2))
    with pytest.raises(ScopeError):
        r.replay()


def check_invariants(s, r):
    n = len(s)
    sc = r.scope
    assert r.cue_index not in sc
    assert all(0 <= i < n for i in sc)
    if sc:
        assert list(sc) == list(range(sc[0], sc[-1] + 1))
        assert sc[0] == r.cue_index + 1
    assert r.replay() == sc


@given(st.integers(0, 2**32 - 1), st.data())
def test_scope_invariants_random_trees(lex, seed, data):
    s = random_sentence(random.Random(seed))
    cue = data.draw(st.integers(0, len(s) - 1))
    r = detect_scope(s, CueOccurrence(cue, s[cue].norm), lex)
    check_invariants(s, r)
    assert detect_scope(s, CueOccurrence(cue, s[cue].norm), lex) == r


@given(st.integers(0, 2**32 - 1), st.data())
def test_monotone_climbing(lex, seed, data):
    from negscope.scope import ANCESTOR_TAGS
    from negscope.tree import ancestor_with_tag

    s = random_sentence(random.Random(seed))
    cue = data.draw(st.integers(0, len(s) - 1))
    anchor = find_anchor(s, cue, lex.nrp)
    if anchor is None:
        return
    a, cls = anchor
    node = ancestor_with_tag(s.tree, a, ANCESTOR_TAGS[cls])
    if node is None:
        return
    assert node.span[0] <= a < node.span[1]
    accepted = {"NP", "VP", "ADJP", "S", "SQ", "SINV", "SBAR", "SBARQ"}
    if cls is PosClass.NOUN:
        accepted -= {"VP", "ADJP"}
    elif cls is not PosClass.ADJECTIVE:
        accepted -= {"NP", "ADJP"}
    for between in s.tree.path_to_root(s.tree.leaves[a]):
        if between is node:
            break
        assert between.tag not in accepted


def test_restriction_against_punctuation_baseline(lex):
    for tree, cue, _ in GOLDEN_SCOPES:
        s = sent(tree)
        occ = CueOccurrence(cue, s[cue].norm)
        rb, pb = detect_scope(s, occ, lex).scope, punctuation_scope(s, occ).scope
        assert rb[0] == pb[0] == cue + 1
        assert rb[-1] <= pb[-1]
