"""Negation-aware rewrites of token sequences for sentiment models.

Tweet normalization (applied to raw text before tokenization):

* ``https?://\\S+`` and ``www.\\S+`` become the token ``URL``;
* ``@handle`` (not preceded by a word character) becomes ``MENTION``;
* ``#word`` loses its leading ``#`` signs.

Rules are re-applied until the text stops changing, which makes the
normalization idempotent. Emoji and entity replacement are not done here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Tuple

_URL_RE = re.compile(r"\bhttps?://\S+|\bwww\.\S+", re.IGNORECASE)
_MENTION_RE = re.compile(r"(?<!\w)@+\w+")
_HASHTAG_RE = re.compile(r"(?<!\w)#+(\w+)")

MODES = ("not-prefix", "antonym", "antonym-all")
NOT_PREFIX = "NOT_"


def normalize_tweet(raw: str) -> str:
    prev = None
    text = raw
    while text != prev:
        prev = text
        text = _URL_RE.sub("URL", text)
        text = _MENTION_RE.sub("MENTION", text)
        text = _HASHTAG_RE.sub(r"\1", text)
    return text


@dataclass(frozen=True)
class TransformConfig:
    mode: str = "not-prefix"
    keep_cue: bool = True

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


@dataclass(frozen=True)
class Provenance:
    """What happened to one input token.

    kind is one of ``unchanged``, ``prefixed``, ``substituted``,
    ``attempted`` (in scope, left as is), ``deleted`` (a consumed cue).
    """

    kind: str = "unchanged"
    original: str = ""
    cue_index: int = -1
    warning: str = ""


@dataclass(frozen=True)
class TransformedSentence:
    tokens: Tuple[str, ...]
    provenance: Tuple[Provenance, ...]

    def text(self) -> str:
        return " ".join(self.tokens)


def apply_transform(sentence, scopes, antonyms, config: TransformConfig = TransformConfig()):
    """Rewrite in-scope tokens; earlier cues win on overlapping scopes."""
    surfaces = [t.surface for t in sentence.tokens]
    n = len(surfaces)
    out = list(surfaces)
    prov = [Provenance(original=s) for s in surfaces]
    deleted = [False] * n
    ordered = sorted(scopes, key=lambda r: r.cue_index)
    for res in ordered:
        for i in res.scope:
            if not 0 <= i < n:
                raise IndexError(f"scope index {i} out of range for {n} tokens")

    def claimed(i):
        return prov[i].kind != "unchanged"

    def warn(i, cue):
        prov[i] = Provenance(prov[i].kind, prov[i].original, prov[i].cue_index,
                             f"conflict: cue {cue} overridden by cue {prov[i].cue_index}")

    def prefix_scope(res):
        for i in res.scope:
            if claimed(i):
                warn(i, res.cue_index)
                continue
            out[i] = NOT_PREFIX + surfaces[i]
            prov[i] = Provenance("prefixed", surfaces[i], res.cue_index)

    for res in ordered:
        if not res.scope:
            continue
        c = res.cue_index
        hits = []
        if config.mode != "not-prefix":
            hits = [i for i in res.scope if not claimed(i) and antonyms.get(surfaces[i]) is not None]
            if config.mode == "antonym":
                hits = hits[:1]
        if not hits:
            prefix_scope(res)
            if not config.keep_cue and not claimed(c):
                deleted[c] = True
                prov[c] = Provenance("deleted", surfaces[c], c)
            continue
        for i in res.scope:
            if claimed(i):
                warn(i, c)
            elif i in hits:
                out[i] = antonyms.get(surfaces[i])
                prov[i] = Provenance("substituted", surfaces[i], c)
            else:
                prov[i] = Provenance("attempted", surfaces[i], c)
        if claimed(c):
            warn(c, c)
        else:
            deleted[c] = True
            prov[c] = Provenance("deleted", surfaces[c], c)
    tokens = tuple(tok for tok, gone in zip(out, deleted) if not gone)
    return TransformedSentence(tokens, tuple(prov))
