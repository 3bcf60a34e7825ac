"""Rule lexicons: negation cues, neg-raising/copula verbs, prune connectives, antonyms.

Plain-text files hold one entry per line; ``#`` lines and blank lines are
skipped. The antonym file is two tab-separated columns.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .sentence import normalize

log = logging.getLogger(__name__)

KINDS = ("cues", "nrp", "connectives", "antonyms")

_DEFAULT_FILES = {
    "cues": "cues.txt",
    "nrp": "nrp.txt",
    "connectives": "connectives.txt",
    "antonyms": "antonyms.tsv",
}


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class WordList:
    entries: frozenset

    def __contains__(self, word):
        return word in self.entries

    def __len__(self):
        return len(self.entries)


class CueLexicon(WordList):
    def is_cue(self, token) -> bool:
        return token.norm in self.entries


class NrpCopulaList(WordList):
    pass


class ConnectiveList(WordList):
    pass


@dataclass(frozen=True)
class AntonymDict:
    pairs: dict = field(default_factory=dict)

    def get(self, word):
        return self.pairs.get(normalize(word))

    def __contains__(self, word):
        return normalize(word) in self.pairs

    def __len__(self):
        return len(self.pairs)


_WORDLIST_TYPES = {"cues": CueLexicon, "nrp": NrpCopulaList, "connectives": ConnectiveList}


def _lines(path):
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"lexicon file not found: {path}")
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield lineno, line


def load_lexicon(path, kind: str):
    if kind not in KINDS:
        raise ValueError(f"unknown lexicon kind {kind!r}; expected one of {KINDS}")
    if kind == "antonyms":
        return _load_antonyms(path)
    entries = {normalize(line.strip()) for _, line in _lines(path)}
    entries.discard("")
    return _WORDLIST_TYPES[kind](frozenset(entries))


def _load_antonyms(path):
    pairs = {}
    for lineno, line in _lines(path):
        fields = line.split("\t")
        if len(fields) != 2:
            raise LexiconError(f"{path}:{lineno}: expected 2 tab-separated fields, got {len(fields)}")
        word, ant = normalize(fields[0].strip()), fields[1].strip()
        if not word or not ant:
            raise LexiconError(f"{path}:{lineno}: empty field")
        if normalize(ant) == word:
            raise LexiconError(f"{path}:{lineno}: {word!r} listed as its own antonym")
        if word in pairs:
            if pairs[word] != ant:
                log.warning("%s:%d: %r already maps to %r; ignoring %r", path, lineno, word, pairs[word], ant)
            continue
        pairs[word] = ant
    return AntonymDict(pairs)


def default_path(kind: str) -> Path:
    return Path(str(resources.files("negscope") / "data" / _DEFAULT_FILES[kind]))


def load_default(kind: str):
    return load_lexicon(default_path(kind), kind)


@dataclass(frozen=True)
class Lexicons:
    """The bundle of lexicons the pipeline needs."""

    cues: CueLexicon
    nrp: NrpCopulaList
    connectives: ConnectiveList
    antonyms: AntonymDict

    @classmethod
    def load(cls, cues=None, nrp=None, connectives=None, antonyms=None):
        paths = {"cues": cues, "nrp": nrp, "connectives": connectives, "antonyms": antonyms}
        return cls(**{k: load_lexicon(p or default_path(k), k) for k, p in paths.items()})


def is_cue(token, lex: CueLexicon) -> bool:
    return token.norm in lex.entries
