"""Negation cue and scope detection for conversational text."""

from .cues import CueOccurrence, LinearModel, TrainConfig, classify, detect_cues, extract_features, find_cues, train
from .evaluation import AgreementReport, EvalReport, GoldScope, agreement, score_cues, score_scopes
from .lexicons import Lexicons, is_cue, load_default, load_lexicon
from .scope import ScopeResult, detect_scope, find_anchor, post_process, punctuation_scope, raw_scope
from .sentence import Sentence, Token, align, make_tokens, normalize, sentence_from_tree
from .transform import TransformConfig, apply_transform, normalize_tweet
from .tree import ParseNode, ParseTree, ancestor_with_tag, parse_bracketed

__version__ = "0.1.0"
