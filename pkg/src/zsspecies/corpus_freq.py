"""Caption-corpus name frequency counting.

Counts, for each species name, the number of captions that contain the
name at least once: document frequency, not raw hit count, so a caption
repeating a name still counts once. Matching is case-insensitive, on
word boundaries, after text normalization on both sides.

Built for large web caption dumps: input is streamed line by line,
undecodable lines are skipped and tallied instead of aborting the scan,
and shard counts merge associatively so a corpus can be counted in
pieces (one worker per shard, private tables, merge at the end) with a
result independent of line order and shard boundaries.
"""

from __future__ import annotations

import gzip
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from zsspecies.matching import TokenAutomaton, tokenize
from zsspecies.taxonomy import NameTable, normalize_name


class PatternError(ValueError):
    """A pattern is unusable (empty or token-free after normalization)."""


class MergeError(ValueError):
    """Frequency tables built over different pattern universes."""


class FrequencyTableError(ValueError):
    """Malformed frequency-table file."""


class PatternSet:
    """Compiled, deduplicated set of name patterns.

    Pattern ids are dense integers 0..n-1 in first-occurrence order;
    names that normalize identically share one id. Immutable after
    construction and shareable across threads.
    """

    def __init__(self, names: Iterable[str]):
        self.names: tuple[str, ...] = ()
        ordered: list[str] = []
        token_lists: list[tuple[str, ...]] = []
        self._id_by_name: dict[str, int] = {}
        for idx, raw in enumerate(names):
            norm = normalize_name(raw)
            if not norm:
                raise PatternError(f"pattern at index {idx} is empty after normalization")
            if norm in self._id_by_name:
                continue
            tokens = tuple(tokenize(norm))
            if not tokens:
                raise PatternError(
                    f"pattern at index {idx} ({raw!r}) has no word tokens"
                )
            self._id_by_name[norm] = len(ordered)
            ordered.append(norm)
            token_lists.append(tokens)
        self.names = tuple(ordered)
        self._token_lists = tuple(token_lists)
        self._automaton = TokenAutomaton(token_lists)

    @property
    def patterns(self) -> list[tuple[str, int]]:
        """(normalized name, pattern_id) pairs, id order."""
        return [(name, pid) for pid, name in enumerate(self.names)]

    def __len__(self) -> int:
        return len(self.names)

    def pattern_id(self, name: str) -> int | None:
        return self._id_by_name.get(normalize_name(name))

    def token_sequences(self) -> tuple[tuple[str, ...], ...]:
        return self._token_lists

    def match_line(self, line: str) -> set[int]:
        """Ids of all patterns present in one caption (word-boundary match)."""
        return self._automaton.match_ids(tokenize(normalize_name(line)))


def build_pattern_set(names: Iterable[str]) -> PatternSet:
    return PatternSet(names)


@dataclass
class FrequencyTable:
    """Per-name caption counts over a scanned corpus.

    ``counts`` maps normalized name to the number of captions containing
    it; names never scanned for are absent and read as 0. ``corpus_lines``
    is every input line seen, including the ``skipped_lines`` that could
    not be decoded or lacked the requested caption column.
    """

    counts: dict[str, int] = field(default_factory=dict)
    corpus_lines: int = 0
    skipped_lines: int = 0

    def get(self, name: str) -> int:
        return self.counts.get(normalize_name(name), 0)

    def __getitem__(self, name: str) -> int:
        return self.get(name)


def count_occurrences(
    corpus: Iterable[str | bytes],
    patterns: PatternSet,
    caption_column: int | None = None,
) -> FrequencyTable:
    """Scan captions and build the document-frequency table.

    ``corpus`` yields one caption per item, as str or UTF-8 bytes; byte
    items that fail to decode are skipped and tallied. With
    ``caption_column`` set, items are tab-separated rows and only that
    0-based field is scanned (rows without the field are skipped).
    """
    counts = [0] * len(patterns)
    automaton = patterns._automaton
    lines = 0
    skipped = 0
    for raw in corpus:
        lines += 1
        if isinstance(raw, (bytes, bytearray)):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError:
                skipped += 1
                continue
        else:
            line = raw
        line = line.rstrip("\r\n")
        if caption_column is not None:
            parts = line.split("\t")
            if caption_column >= len(parts):
                skipped += 1
                continue
            line = parts[caption_column]
        hit = automaton.match_ids(tokenize(normalize_name(line)))
        for pid in hit:
            counts[pid] += 1
    table = {name: counts[pid] for pid, name in enumerate(patterns.names)}
    return FrequencyTable(counts=table, corpus_lines=lines, skipped_lines=skipped)


def iter_corpus_lines(path) -> Iterator[bytes]:
    """Raw corpus lines; transparently decompresses ``*.gz`` files."""
    opener = gzip.open if str(path).endswith(".gz") else open
    with opener(path, "rb") as fh:
        yield from fh


def count_corpus_file(
    path, patterns: PatternSet, caption_column: int | None = None
) -> FrequencyTable:
    return count_occurrences(iter_corpus_lines(path), patterns, caption_column)


def merge(a: FrequencyTable, b: FrequencyTable) -> FrequencyTable:
    """Pointwise sum of two shard tables over the same pattern universe."""
    if set(a.counts) != set(b.counts):
        only_a = next(iter(set(a.counts) - set(b.counts)), None)
        only_b = next(iter(set(b.counts) - set(a.counts)), None)
        detail = only_a if only_a is not None else only_b
        raise MergeError(f"mismatched pattern universes (e.g. {detail!r})")
    summed = {name: count + b.counts[name] for name, count in a.counts.items()}
    return FrequencyTable(
        counts=summed,
        corpus_lines=a.corpus_lines + b.corpus_lines,
        skipped_lines=a.skipped_lines + b.skipped_lines,
    )


@dataclass(frozen=True)
class CoverageSummary:
    """How many species have any name present in the scanned corpus."""

    scientific: int
    with_common: int
    total_species: int


def coverage_report(table: FrequencyTable, names: NameTable) -> CoverageSummary:
    """Species whose scientific name occurs, and whose scientific OR any
    common name occurs, at least once in the corpus."""
    sci = 0
    either = 0
    for rec in names:
        has_sci = table.get(rec.scientific_name) > 0
        if has_sci:
            sci += 1
        if has_sci or any(table.get(c) > 0 for c in rec.common_names):
            either += 1
    return CoverageSummary(
        scientific=sci, with_common=either, total_species=len(names)
    )


def write_frequency_table(table: FrequencyTable, dest) -> None:
    """TSV rows ``name<TAB>count`` sorted by name, after a header comment
    recording the number of corpus lines scanned."""
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8") as fh:
            write_frequency_table(table, fh)
        return
    dest.write(f"# corpus_lines={table.corpus_lines}\n")
    for name in sorted(table.counts):
        dest.write(f"{name}\t{table.counts[name]}\n")


def read_frequency_table(source) -> FrequencyTable:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return read_frequency_table(fh)
    counts: dict[str, int] = {}
    corpus_lines = 0
    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\r\n")
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("corpus_lines="):
                try:
                    corpus_lines = int(body.split("=", 1)[1])
                except ValueError:
                    raise FrequencyTableError(
                        f"line {lineno}: bad corpus_lines header"
                    ) from None
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise FrequencyTableError(
                f"line {lineno}: expected 2 columns, found {len(cols)}"
            )
        name, count_text = cols
        try:
            count = int(count_text)
        except ValueError:
            raise FrequencyTableError(
                f"line {lineno}: count {count_text!r} is not an integer"
            ) from None
        if count < 0:
            raise FrequencyTableError(f"line {lineno}: negative count")
        counts[name] = count
    return FrequencyTable(counts=counts, corpus_lines=corpus_lines)
