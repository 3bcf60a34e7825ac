"""Synthetic trees, sentences and cue-training data for tests and benchmarks."""

from __future__ import annotations

import random

from .sentence import Sentence, make_tokens, sentence_from_tree
from .tree import ParseNode, ParseTree

PHRASES = ["S", "SQ", "SINV", "SBAR", "SBARQ", "NP", "NP-SBJ", "VP", "ADJP", "ADVP", "PP", "FRAG", "PRN"]

VOCAB = {
    "NN": ["page", "order", "refund", "phone", "account", "help", "reply"],
    "NNS": ["details", "options", "items", "days"],
    "NNP": ["Monday", "Support"],
    "JJ": ["angry", "upset", "able", "happy", "late", "broken"],
    "JJR": ["better"],
    "VB": ["want", "update", "help", "call", "be", "look"],
    "VBD": ["was", "got", "said"],
    "VBG": ["running", "working"],
    "VBN": ["been", "sent"],
    "VBP": ["am", "are", "do", "think"],
    "VBZ": ["is", "has", "seems"],
    "MD": ["can", "might", "will", "could"],
    "RB": ["not", "never", "really", "anymore", "here"],
    "DT": ["the", "a", "no", "this"],
    "PRP": ["I", "you", "we", "it"],
    "IN": ["on", "if", "because", "while", "into"],
    "CC": ["but", "and", "&", "nor"],
    "TO": ["to"],
    "WP": ["what", "nothing"],
    "WRB": ["why", "where", "whenever"],
    ",": [","],
    ".": [".", "!", "?"],
    ":": [":", ";"],
    "UH": ["lol", "pls"],
}
POS_TAGS = list(VOCAB)


def random_tree(rng: random.Random, max_leaves: int = 30, max_depth: int = 6) -> ParseTree:
    """A random labeled tree with between 1 and ``max_leaves`` leaves."""
    budget = [max_leaves]

    def leaf():
        budget[0] -= 1
        tag = rng.choice(POS_TAGS)
        return ParseNode(tag, leaf_text=rng.choice(VOCAB[tag]))

    def build(depth):
        if depth >= max_depth or budget[0] <= 1 or rng.random() < 0.3:
            return leaf()
        kids = []
        for _ in range(rng.randint(1, 4)):
            if budget[0] <= 0:
                break
            kids.append(build(depth + 1))
        return ParseNode(rng.choice(PHRASES), kids) if kids else leaf()

    root = ParseNode("ROOT", [build(1)])
    return ParseTree.from_root(root)


def random_sentence(rng: random.Random, max_leaves: int = 30, source_id: str = ""):
    return sentence_from_tree(random_tree(rng, max_leaves), source_id)


def random_record(rng: random.Random, rec_id: str, max_leaves: int = 30):
    tree = random_tree(rng, max_leaves)
    return {
        "id": rec_id,
        "tokens": [{"surface": lf.leaf_text, "pos": lf.label} for lf in tree.leaves],
        "parse": tree.to_bracketed(),
    }


# --- cue classifier training data ---------------------------------------------
# Each template is (tagged tokens, cue position, is_true_cue). Slots in braces
# are filled from the small word lists below.

_FILL = {
    "{V}": ["look", "check", "help", "fix", "review"],
    "{N}": ["options", "details", "refunds", "orders", "accounts"],
    "{PRON}": ["He", "She", "They", "You"],
    "{ADJ}": ["happy", "sure", "able", "aware", "clear"],
    "{VING}": ["working", "loading", "helping", "responding"],
}
_SLOT_TAGS = {"{V}": "VB", "{N}": "NNS", "{PRON}": "PRP", "{ADJ}": "JJ", "{VING}": "VBG"}

_FALSE_TEMPLATES = [
    ("If/IN not/RB ,/, we/PRP can/MD {V} into/IN {N} :/:", 1),
    ("If/IN not/RB ,/, please/UH {V} the/DT {N} ./.", 1),
    ("{PRON} could/MD not/RB help/VB me/PRP more/RBR ./.", 2),
    ("{PRON} could/MD not/RB be/VB more/RBR {ADJ} !/.", 2),
    ("Why/WRB not/RB ?/.", 1),
    ("Hope/VBP not/RB !/.", 1),
    ("Of/IN course/NN not/RB ./.", 2),
    ("No/UH ,/, thanks/NNS !/.", 0),
    ("No/UH worries/NNS ,/, we/PRP will/MD {V} it/PRP ./.", 0),
]
_TRUE_TEMPLATES = [
    ("I/PRP don't/VBP think/VB you/PRP do/VBP understand/VB ./.", 1),
    ("I/PRP do/VBP not/RB want/VB to/TO {V} it/PRP anymore/RB", 2),
    ("There/EX are/VBP no/DT {N} on/IN the/DT page/NN", 2),
    ("It/PRP is/VBZ not/RB {VING} at/IN all/DT ./.", 2),
    ("I/PRP am/VBP not/RB {ADJ} about/IN the/DT {N} ./.", 2),
    ("We/PRP never/RB got/VBD any/DT {N} ./.", 1),
    ("{PRON} can't/MD {V} the/DT {N} ./.", 1),
    ("This/DT isn't/VBZ {ADJ} ./.", 1),
    ("I/PRP didn't/VBD get/VB the/DT {N} ./.", 1),
    ("You/PRP won't/MD be/VB {ADJ} to/TO {V} it/PRP ./.", 1),
]


def _instantiate(template, rng):
    surfaces, tags = [], []
    for item in template.split():
        if item in _FILL:
            surfaces.append(rng.choice(_FILL[item]))
            tags.append(_SLOT_TAGS[item])
        else:
            word, _, tag = item.rpartition("/")
            surfaces.append(word)
            tags.append(tag)
    return surfaces, tags


def cue_training_sentences(n_per_template: int = 4, seed: int = 0):
    """``(Sentence, cue_index, is_true_cue)`` triples from guideline-style templates."""
    rng = random.Random(seed)
    out = []
    for label, templates in ((False, _FALSE_TEMPLATES), (True, _TRUE_TEMPLATES)):
        for t_idx, (template, cue) in enumerate(templates):
            for k in range(n_per_template):
                surfaces, tags = _instantiate(template, rng)
                sid = f"{'true' if label else 'false'}-{t_idx}-{k}"
                out.append((Sentence(make_tokens(surfaces, tags), None, sid), cue, label))
    return out
