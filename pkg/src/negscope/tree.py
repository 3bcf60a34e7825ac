"""Penn-Treebank bracketed constituency trees.

Trees are read from strings like ``(S (NP (PRP I)) (VP (VBP agree)))``.
A leaf is a preterminal: it carries a POS label and the token surface.
Leaves are numbered left to right from 0 and every node records the
half-open token span it covers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")

# Wildcard tag classes used by the scope rules.
TAG_CLASSES = {
    "SBAR*": frozenset({"SBAR", "SBARQ"}),
    "S*": frozenset({"S", "SQ", "SINV"}),
}


class TreeError(ValueError):
    """Malformed bracketing or a tree/token alignment failure."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} at offset {offset}"
        super().__init__(message)


def bare_tag(label: str) -> str:
    """Strip functional tags and indices: ``NP-SBJ-1`` -> ``NP``, ``S=2`` -> ``S``.

    Labels that start with a dash (``-LRB-``, ``-NONE-``) are kept whole.
    """
    if not label or label[0] == "-":
        return label
    return re.split(r"[-=]", label, maxsplit=1)[0] or label


class ParseNode:
    __slots__ = ("label", "tag", "children", "leaf_text", "span")

    def __init__(self, label, children=(), leaf_text=None, span=(0, 0)):
        self.label = label
        self.tag = bare_tag(label)
        self.children = tuple(children)
        self.leaf_text = leaf_text
        self.span = span

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def to_bracketed(self) -> str:
        if self.is_leaf:
            return f"({self.label} {self.leaf_text})"
        return "({} {})".format(self.label, " ".join(c.to_bracketed() for c in self.children))

    def __repr__(self):
        return f"ParseNode({self.label!r}, span={self.span})"


@dataclass(frozen=True)
class ParseTree:
    root: ParseNode
    leaves: tuple = field(repr=False)
    parent_of: dict = field(repr=False, compare=False)

    @classmethod
    def from_root(cls, root: ParseNode) -> "ParseTree":
        leaves = []
        parent_of = {}
        _number(root, leaves, parent_of)
        return cls(root, tuple(leaves), parent_of)

    def __len__(self):
        return len(self.leaves)

    def parent(self, node: ParseNode):
        return self.parent_of.get(node)

    def path_to_root(self, node: ParseNode):
        """Strict ancestors of ``node``, nearest first."""
        node = self.parent_of.get(node)
        while node is not None:
            yield node
            node = self.parent_of.get(node)

    def leaf_surfaces(self):
        return [leaf.leaf_text for leaf in self.leaves]

    def to_bracketed(self) -> str:
        return self.root.to_bracketed()

    def __str__(self):
        return self.to_bracketed()


def _number(node, leaves, parent_of):
    # Spans are assigned bottom-up; iterative to survive deep trees.
    stack = [(node, False)]
    while stack:
        n, done = stack.pop()
        if n.is_leaf:
            n.span = (len(leaves), len(leaves) + 1)
            leaves.append(n)
        elif done:
            n.span = (n.children[0].span[0], n.children[-1].span[1])
        else:
            stack.append((n, True))
            for child in reversed(n.children):
                parent_of[child] = n
                stack.append((child, False))


def parse_bracketed(text: str) -> ParseTree:
    """Parse one PTB bracketing into a :class:`ParseTree`.

    An unlabeled outer wrapper ``( ... )`` becomes a node labeled ``ROOT``.
    ``-NONE-`` empty elements are dropped, together with any constituent
    left empty by their removal.
    """
    tokens = [(m.group(), m.start()) for m in _TOKEN_RE.finditer(text)]
    if not tokens:
        raise TreeError("empty tree string")
    if tokens[0][0] != "(":
        raise TreeError("expected '('", tokens[0][1])

    # Each frame: [label, children, open_offset, words, dropped_empty]
    stack = []
    root = None
    i = 0
    n = len(tokens)
    while i < n:
        tok, off = tokens[i]
        if tok == "(":
            if root is not None:
                raise TreeError("trailing material after tree", off)
            if i + 1 >= n:
                raise TreeError("unbalanced parentheses", len(text) - 1)
            nxt, nxt_off = tokens[i + 1]
            if nxt == ")":
                raise TreeError("empty constituent", off)
            if nxt == "(":
                if stack:
                    raise TreeError("label missing", off)
                stack.append(["ROOT", [], off, [], False])
                i += 1
                continue
            stack.append([nxt, [], off, [], False])
            i += 2
            continue
        if tok == ")":
            if not stack:
                raise TreeError("unbalanced parentheses", off)
            label, children, open_off, words, dropped = stack.pop()
            if words and children:
                raise TreeError("mixed words and constituents", open_off)
            if len(words) > 1:
                raise TreeError("preterminal with more than one word", open_off)
            node = None
            if words:
                if label != "-NONE-":
                    node = ParseNode(label, leaf_text=words[0])
            elif children:
                node = ParseNode(label, children)
            elif not dropped:
                raise TreeError("empty constituent", open_off)
            if not stack:
                if node is None:
                    raise TreeError("tree has no tokens", open_off)
                root = node
            elif node is not None:
                stack[-1][1].append(node)
            else:
                stack[-1][4] = True
            i += 1
            continue
        # bare word
        if not stack:
            raise TreeError("word outside any constituent", off)
        stack[-1][3].append(tok)
        i += 1
    if stack:
        raise TreeError("unbalanced parentheses", len(text) - 1)
    return ParseTree.from_root(root)


def read_trees(lines):
    """Parse one tree per non-blank line."""
    for line in lines:
        if line.strip():
            yield parse_bracketed(line)


def _tag_matches(tag: str, pattern: str) -> bool:
    if pattern in TAG_CLASSES:
        return tag in TAG_CLASSES[pattern]
    if pattern.endswith("*"):
        return tag.startswith(pattern[:-1])
    return tag == pattern


def matches_any(node: ParseNode, patterns) -> bool:
    return any(_tag_matches(node.tag, p) for p in patterns)


def ancestor_with_tag(tree: ParseTree, leaf_index: int, accepted):
    """Nearest strict ancestor of leaf ``leaf_index`` whose bare tag matches.

    ``accepted`` holds exact tags or wildcards (``SBAR*``, ``S*``, or any
    ``X*`` prefix class). Returns None when no ancestor matches.
    """
    if not 0 <= leaf_index < len(tree.leaves):
        raise IndexError(f"leaf index {leaf_index} out of range for {len(tree.leaves)} leaves")
    if not accepted:
        raise ValueError("accepted tag set is empty")
    for node in tree.path_to_root(tree.leaves[leaf_index]):
        if matches_any(node, accepted):
            return node
    return None


def child_containing(node: ParseNode, index: int) -> ParseNode:
    for child in node.children:
        if child.span[0] <= index < child.span[1]:
            return child
    raise IndexError(f"token {index} not under {node!r}")


def leaf_indices(node: ParseNode):
    return range(*node.span)
