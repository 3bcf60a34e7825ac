"""Negation cue detection and true/false cue disambiguation.

Cues form a closed class: only lexicon matches are ever considered. Each
match is then scored by a binary logistic-regression model over sparse
string features of the cue's local context.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, replace
from typing import Dict, Optional

import numpy as np

from .lexicons import CueLexicon

BOS, EOS = "BOS", "EOS"


@dataclass(frozen=True)
class CueOccurrence:
    token_index: int
    cue_form: str
    is_true_cue: bool = True
    score: float = 1.0


def find_cues(sentence, lex: CueLexicon):
    """One provisional (true, score 1.0) occurrence per lexicon match, in token order."""
    return [CueOccurrence(t.index, t.norm) for t in sentence.tokens if t.norm in lex.entries]


def _last_content_index(sentence):
    for tok in reversed(sentence.tokens):
        if not tok.is_punct:
            return tok.index
    return -1


def extract_features(sentence, occ: CueOccurrence) -> Dict[str, float]:
    toks = sentence.tokens
    n = len(toks)
    i = occ.token_index
    if not 0 <= i < n:
        raise IndexError(f"cue index {i} out of range for {n} tokens")
    tok = toks[i]
    prev_lemma = toks[i - 1].lemma_or_norm if i > 0 else BOS
    next_lemma = toks[i + 1].lemma_or_norm if i + 1 < n else EOS
    prev_pos = toks[i - 1].pos if i > 0 else BOS
    next_pos = toks[i + 1].pos if i + 1 < n else EOS
    final = 1 if i == _last_content_index(sentence) else 0
    return {
        f"wf={tok.surface.lower()}": 1.0,
        f"pos={tok.pos}": 1.0,
        f"lemma={tok.lemma_or_norm}": 1.0,
        f"prev_lemma={prev_lemma}": 1.0,
        f"next_lemma={next_lemma}": 1.0,
        "relpos": i / (n - 1) if n > 1 else 0.0,
        f"posbi_prev={prev_pos}|{tok.pos}": 1.0,
        f"posbi_next={tok.pos}|{next_pos}": 1.0,
        f"sent_final={final}": 1.0,
    }


@dataclass
class TrainConfig:
    epochs: int = 200
    learning_rate: float = 0.5
    l2: float = 1e-3
    batch_size: int = 16
    seed: int = 0
    # Loss weight per class; the false class is rare (roughly 1 in 12 cues).
    true_weight: float = 1.0
    false_weight: float = 1.0
    threshold: float = 0.5


class TrainingError(ValueError):
    pass


@dataclass
class LinearModel:
    weights: Dict[str, float]
    bias: float = 0.0
    threshold: float = 0.5
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 < self.threshold < 1.0:
            raise ValueError(f"threshold must lie in (0, 1), got {self.threshold}")

    def margin(self, features) -> float:
        w = self.weights
        return self.bias + sum(w.get(name, 0.0) * v for name, v in features.items())

    def score(self, features) -> float:
        return sigmoid(self.margin(features))

    def dumps(self) -> str:
        payload = {
            "format": "negscope-linear-model/1",
            "threshold": self.threshold,
            "bias": self.bias,
            "metadata": self.metadata,
            "weights": dict(sorted(self.weights.items())),
        }
        return json.dumps(payload, indent=1, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def loads(cls, text: str) -> "LinearModel":
        payload = json.loads(text)
        if payload.get("format") != "negscope-linear-model/1":
            raise ValueError(f"unrecognized model format {payload.get('format')!r}")
        return cls(
            weights={k: float(v) for k, v in payload["weights"].items()},
            bias=float(payload["bias"]),
            threshold=float(payload["threshold"]),
            metadata=payload.get("metadata", {}),
        )

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    @classmethod
    def load(cls, path) -> "LinearModel":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())


def sigmoid(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


def _vectorize(corpus):
    names = sorted({name for feats, _ in corpus for name in feats})
    col = {name: j for j, name in enumerate(names)}
    X = np.zeros((len(corpus), len(names)))
    y = np.zeros(len(corpus))
    for r, (feats, label) in enumerate(corpus):
        for name, v in feats.items():
            X[r, col[name]] = v
        y[r] = 1.0 if label else 0.0
    return names, X, y


def _loss(X, y, sw, w, b, l2):
    z = X @ w + b
    # log(1 + exp(-z)) for y=1, log(1 + exp(z)) for y=0
    per = np.logaddexp(0.0, np.where(y == 1.0, -z, z))
    return float(np.sum(sw * per) / np.sum(sw) + 0.5 * l2 * np.dot(w, w))


def train(corpus, config: Optional[TrainConfig] = None) -> LinearModel:
    """Fit L2-regularised logistic regression by seeded mini-batch gradient descent.

    ``corpus`` is a sequence of ``(features, is_true_cue)`` pairs. Label 1
    is the true-cue class.
    """
    config = config or TrainConfig()
    corpus = list(corpus)
    if not corpus:
        raise TrainingError("empty training corpus")
    labels = {bool(lbl) for _, lbl in corpus}
    if len(labels) < 2:
        raise TrainingError(f"training corpus has a single class ({labels.pop()})")
    names, X, y = _vectorize(corpus)
    sw = np.where(y == 1.0, config.true_weight, config.false_weight)
    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    rng = np.random.default_rng(config.seed)
    bs = max(1, min(config.batch_size, n))
    with np.errstate(over="ignore", invalid="ignore"):
        for epoch in range(config.epochs):
            order = rng.permutation(n)
            for start in range(0, n, bs):
                idx = order[start:start + bs]
                xb, yb, wb = X[idx], y[idx], sw[idx]
                p = 1.0 / (1.0 + np.exp(-np.clip(xb @ w + b, -500, 500)))
                g = wb * (p - yb)
                denom = wb.sum()
                w -= config.learning_rate * (xb.T @ g / denom + config.l2 * w)
                b -= config.learning_rate * float(g.sum() / denom)
            if not (np.all(np.isfinite(w)) and math.isfinite(b)):
                raise TrainingError(
                    f"non-finite parameters at epoch {epoch}; learning rate {config.learning_rate} diverges")
    loss = _loss(X, y, sw, w, b, config.l2)
    if not math.isfinite(loss):
        raise TrainingError(f"non-finite loss; learning rate {config.learning_rate} diverges")
    meta = {"config": asdict(config), "final_loss": loss, "n_examples": n, "n_features": d}
    return LinearModel(
        weights={name: float(v) for name, v in zip(names, w)},
        bias=b,
        threshold=config.threshold,
        metadata=meta,
    )


def classify(model: LinearModel, sentence, occ: CueOccurrence) -> CueOccurrence:
    score = model.score(extract_features(sentence, occ))
    return replace(occ, score=score, is_true_cue=score >= model.threshold)


def detect_cues(sentence, lex: CueLexicon, model: Optional[LinearModel] = None):
    """Find lexicon cues and, when a model is given, disambiguate them."""
    found = find_cues(sentence, lex)
    if model is None:
        return found
    return [classify(model, sentence, occ) for occ in found]
