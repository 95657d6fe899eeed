"""Multi-pattern token-sequence matching (Aho-Corasick over word tokens).

Patterns and text are both reduced to word-token sequences, so a pattern
matches wherever its tokens appear consecutively between word boundaries:
``("mountain", "hare")`` matches "A Mountain-Hare!" but not
"mountainous harebell". Any non-alphanumeric character (including the
underscore) is a boundary, which keeps matching robust against the
punctuation, casing, and snake_case filenames common in web captions.

The automaton runs on whole tokens rather than characters:

    1. goto trie: every pattern is inserted token by token;
    2. failure links, computed breadth-first: on a mismatch at a node,
       fall back to the longest proper suffix of the current token path
       that is also a path in the trie;
    3. match output propagated along failure links, so patterns that are
       suffixes of longer ones are still reported.

A scan therefore costs O(tokens) amortized per line, independent of the
pattern count, which is what makes corpus-scale counting practical.
"""

from __future__ import annotations

import re
from collections import deque
from typing import Iterable, Sequence

_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Split text into word tokens; non-alphanumerics act as boundaries.

    Purely a boundary splitter: callers are expected to case-fold and
    Unicode-normalize first so both patterns and captions agree.
    """
    return _WORD_RE.findall(text)


class TokenAutomaton:
    """Matches many token-sequence patterns against token streams in one pass.

    Built once from a fixed pattern list and immutable afterwards, so a
    single instance can be shared freely across threads. Pattern ids are
    the indices into the constructor argument; duplicate token sequences
    are allowed and report every id that maps to them.
    """

    def __init__(self, patterns: Sequence[Sequence[str]]):
        # Node 0 is the root. Parallel arrays instead of node objects keep
        # the automaton compact and cheap to traverse.
        self._children: list[dict[str, int]] = [{}]
        self._fail: list[int] = [0]
        self._ends: list[list[int]] = [[]]
        for pid, tokens in enumerate(patterns):
            if not tokens:
                raise ValueError(f"pattern {pid} has no tokens")
            self._insert(pid, tokens)
        self._link()
        self._n_patterns = len(patterns)

    def _insert(self, pid: int, tokens: Sequence[str]) -> None:
        node = 0
        for tok in tokens:
            nxt = self._children[node].get(tok)
            if nxt is None:
                nxt = len(self._children)
                self._children.append({})
                self._fail.append(0)
                self._ends.append([])
                self._children[node][tok] = nxt
            node = nxt
        self._ends[node].append(pid)

    def _link(self) -> None:
        # BFS guarantees a node's failure target (strictly shallower) is
        # fully linked before the node itself, so output propagation is a
        # single append of the target's list.
        queue: deque[int] = deque()
        for child in self._children[0].values():
            self._fail[child] = 0
            queue.append(child)
        while queue:
            node = queue.popleft()
            for tok, child in self._children[node].items():
                fall = self._fail[node]
                while fall and tok not in self._children[fall]:
                    fall = self._fail[fall]
                target = self._children[fall].get(tok, 0)
                if target == child:  # only possible via the root self-transition
                    target = 0
                self._fail[child] = target
                if self._ends[target]:
                    self._ends[child] = self._ends[child] + self._ends[target]
                queue.append(child)

    @property
    def n_patterns(self) -> int:
        return self._n_patterns

    @property
    def n_nodes(self) -> int:
        return len(self._children)

    def match_ids(self, tokens: Iterable[str]) -> set[int]:
        """Ids of every pattern occurring in ``tokens``, each reported once."""
        children = self._children
        fail = self._fail
        ends = self._ends
        state = 0
        found: set[int] = set()
        for tok in tokens:
            while state and tok not in children[state]:
                state = fail[state]
            state = children[state].get(tok, 0)
            if ends[state]:
                found.update(ends[state])
        return found

    def contains_any(self, tokens: Iterable[str]) -> bool:
        children = self._children
        fail = self._fail
        ends = self._ends
        state = 0
        for tok in tokens:
            while state and tok not in children[state]:
                state = fail[state]
            state = children[state].get(tok, 0)
            if ends[state]:
                return True
        return False
