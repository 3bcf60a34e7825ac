"""Tokens, sentences and tree/token alignment."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Optional

from .tree import ParseTree, TreeError

_APOSTROPHES = str.maketrans("", "", "'’")

# PTB punctuation tags.
PUNCT_TAGS = frozenset({".", ",", ":", "''", "``", "-LRB-", "-RRB-"})


def normalize(surface: str) -> str:
    """Lowercase and drop ASCII / right-single-quote apostrophes (``Don't`` -> ``dont``)."""
    return surface.translate(_APOSTROPHES).lower()


def is_punct_surface(surface: str) -> bool:
    return bool(surface) and all(unicodedata.category(ch).startswith("P") for ch in surface)


@dataclass(frozen=True)
class Token:
    index: int
    surface: str
    pos: str
    lemma: Optional[str] = None

    @property
    def norm(self) -> str:
        return normalize(self.surface)

    @property
    def lemma_or_norm(self) -> str:
        return self.lemma if self.lemma else self.norm

    @property
    def is_punct(self) -> bool:
        return self.pos in PUNCT_TAGS or is_punct_surface(self.surface)


@dataclass(frozen=True)
class Sentence:
    tokens: tuple
    tree: Optional[ParseTree] = None
    source_id: str = ""

    def __len__(self):
        return len(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    @property
    def surfaces(self):
        return [t.surface for t in self.tokens]


def make_tokens(surfaces, tags, lemmas=None):
    if len(surfaces) != len(tags):
        raise ValueError(f"{len(surfaces)} surfaces but {len(tags)} tags")
    lemmas = lemmas or [None] * len(surfaces)
    return tuple(Token(i, s, p, l) for i, (s, p, l) in enumerate(zip(surfaces, tags, lemmas)))


def tokens_from_tree(tree: ParseTree):
    """Tokens read off the tree leaves (surface and POS from the preterminals)."""
    return tuple(Token(i, leaf.leaf_text, leaf.label) for i, leaf in enumerate(tree.leaves))


def align(tree: ParseTree, tokens, source_id: str = "") -> Sentence:
    """Pair a tree with a token sequence; leaf text must equal token surface exactly."""
    tokens = tuple(tokens)
    if len(tree.leaves) != len(tokens):
        raise TreeError(f"count mismatch: tree has {len(tree.leaves)} leaves, {len(tokens)} tokens given")
    for k, (leaf, tok) in enumerate(zip(tree.leaves, tokens)):
        if leaf.leaf_text != tok.surface:
            raise TreeError(f"surface mismatch at index {k}: leaf {leaf.leaf_text!r} vs token {tok.surface!r}")
    return Sentence(tokens, tree, source_id)


def sentence_from_tree(tree: ParseTree, source_id: str = "") -> Sentence:
    return Sentence(tokens_from_tree(tree), tree, source_id)
