"""Shared test utilities: independent oracles and data builders.

The oracles deliberately avoid the library's matching/scoring paths:
matching is re-done by positional token scans and scoring by explicit
per-class loops, so agreement is meaningful.
"""

from __future__ import annotations

import numpy as np

from zsspecies.matching import tokenize
from zsspecies.taxonomy import normalize_name


def unit_rows(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    """Random unit-norm float32 rows."""
    m = rng.standard_normal((n, dim))
    norms = np.linalg.norm(m, axis=1, keepdims=True)
    return (m / norms).astype(np.float32)


def double_loop_scores(images, stacks) -> np.ndarray:
    """Reference scorer: explicit loops, one dot product at a time."""
    scores = np.empty((len(images), len(stacks)))
    for i, img in enumerate(np.asarray(images, dtype=np.float64)):
        for k, stack in enumerate(stacks):
            sims = [float(np.dot(np.asarray(p, dtype=np.float64), img)) for p in stack]
            scores[i, k] = sum(sims) / len(sims)
    return scores


def lowest_index_argmax(row) -> int:
    best = 0
    for k in range(1, len(row)):
        if row[k] > row[best]:
            best = k
    return best


def naive_token_contains(tokens: list[str], pattern: tuple[str, ...]) -> bool:
    """Positional scan: does the pattern occur as a contiguous token run."""
    m = len(pattern)
    for i in range(len(tokens) - m + 1):
        if tuple(tokens[i : i + m]) == pattern:
            return True
    return False


def naive_doc_freq(lines, pattern_set) -> dict[str, int]:
    """Quadratic per-line, per-pattern document-frequency oracle."""
    token_lists = pattern_set.token_sequences()
    counts = [0] * len(token_lists)
    for line in lines:
        if isinstance(line, (bytes, bytearray)):
            try:
                line = line.decode("utf-8")
            except UnicodeDecodeError:
                continue
        tokens = tokenize(normalize_name(line))
        for pid, pattern in enumerate(token_lists):
            if naive_token_contains(tokens, pattern):
                counts[pid] += 1
    return {name: counts[pid] for pid, name in enumerate(pattern_set.names)}


def indexed_doc_freq(lines, pattern_set) -> dict[str, int]:
    """Document-frequency oracle with a first-token index.

    Still a positional token-boundary scan (nothing automaton-like), but
    fast enough for corpus-scale equivalence checks.
    """
    token_lists = pattern_set.token_sequences()
    by_first: dict[str, list[int]] = {}
    for pid, toks in enumerate(token_lists):
        by_first.setdefault(toks[0], []).append(pid)
    counts = [0] * len(token_lists)
    for line in lines:
        tokens = tokenize(normalize_name(line))
        hit: set[int] = set()
        for i, tok in enumerate(tokens):
            for pid in by_first.get(tok, ()):
                if pid in hit:
                    continue
                pattern = token_lists[pid]
                if tuple(tokens[i : i + len(pattern)]) == pattern:
                    hit.add(pid)
        for pid in hit:
            counts[pid] += 1
    return {name: counts[pid] for pid, name in enumerate(pattern_set.names)}
