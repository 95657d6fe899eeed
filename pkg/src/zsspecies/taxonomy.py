"""Species name tables: ingestion, normalization, and name resolution.

A name map is a UTF-8 TSV file with four columns per row:

    species_id <TAB> scientific_name <TAB> common_names <TAB> organism_type

``common_names`` is a ``|``-separated ordered list and may be empty;
``organism_type`` may be empty. Lines starting with ``#`` are comments
and blank lines are ignored. There is no header row.
"""

from __future__ import annotations

import io
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator


class NameMapError(ValueError):
    """Malformed name-map data. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def normalize_name(raw: str) -> str:
    """Canonical form used for all name matching and lookups.

    Unicode compatibility normalization (NFKC), lowercasing, and runs of
    whitespace collapsed to single spaces with the ends trimmed. Total
    function: empty input yields the empty string. Idempotent.
    """
    folded = unicodedata.normalize("NFKC", raw).lower()
    return " ".join(folded.split())


@dataclass(frozen=True)
class SpeciesRecord:
    """One species: identifier, scientific name, curated common names.

    ``common_names`` preserves curation order; position 0 is the preferred
    common name. Construction cleans the fields: names are stripped, empty
    entries dropped, and common names that are duplicates after
    normalization collapse to their first occurrence.
    """

    species_id: str
    scientific_name: str
    common_names: tuple[str, ...] = ()
    organism_type: str | None = None

    def __post_init__(self):
        species_id = self.species_id.strip()
        scientific = self.scientific_name.strip()
        if not species_id:
            raise NameMapError("empty species_id")
        if not scientific:
            raise NameMapError(f"species {species_id!r}: empty scientific name")
        cleaned: list[str] = []
        seen: set[str] = set()
        for name in self.common_names:
            name = name.strip()
            key = normalize_name(name)
            if not key or key in seen:
                continue
            seen.add(key)
            cleaned.append(name)
        organism = (self.organism_type or "").strip() or None
        object.__setattr__(self, "species_id", species_id)
        object.__setattr__(self, "scientific_name", scientific)
        object.__setattr__(self, "common_names", tuple(cleaned))
        object.__setattr__(self, "organism_type", organism)

    def all_names(self) -> tuple[str, ...]:
        return (self.scientific_name,) + self.common_names


def resolve_common(record: SpeciesRecord) -> str:
    """Preferred common name, or the scientific name when none is curated."""
    if record.common_names:
        return record.common_names[0]
    return record.scientific_name


@dataclass(frozen=True)
class NameTable:
    """Immutable collection of species records with a normalized-name index.

    Scientific names must be unique after normalization and always win a
    lookup; common names are indexed best-effort (first occurrence wins).
    """

    records: tuple[SpeciesRecord, ...]
    index: dict[str, str] = field(repr=False)
    by_id: dict[str, SpeciesRecord] = field(repr=False)

    @classmethod
    def from_records(cls, records: Iterable[SpeciesRecord]) -> "NameTable":
        records = tuple(records)
        by_id: dict[str, SpeciesRecord] = {}
        index: dict[str, str] = {}
        for rec in records:
            if rec.species_id in by_id:
                raise NameMapError(f"duplicate species_id {rec.species_id!r}")
            by_id[rec.species_id] = rec
            sci_key = normalize_name(rec.scientific_name)
            if sci_key in index:
                raise NameMapError(
                    f"scientific name {rec.scientific_name!r} collides with "
                    f"species {index[sci_key]!r}"
                )
            index[sci_key] = rec.species_id
        for rec in records:
            for name in rec.common_names:
                index.setdefault(normalize_name(name), rec.species_id)
        return cls(records=records, index=index, by_id=by_id)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[SpeciesRecord]:
        return iter(self.records)

    def get(self, species_id: str) -> SpeciesRecord:
        return self.by_id[species_id]

    def lookup(self, name: str) -> SpeciesRecord | None:
        """Find a record by any of its names (normalized match)."""
        species_id = self.index.get(normalize_name(name))
        return None if species_id is None else self.by_id[species_id]

    def all_names(self) -> list[str]:
        """Every scientific and common name, in record order."""
        names: list[str] = []
        for rec in self.records:
            names.extend(rec.all_names())
        return names

    def organism_types(self) -> dict[str, str | None]:
        return {rec.species_id: rec.organism_type for rec in self.records}


def _iter_lines(source) -> tuple[Iterable[str], bool]:
    """Accepts a path, a text file object, or an iterable of lines."""
    if isinstance(source, (str, Path)):
        fh = open(source, "r", encoding="utf-8")
        return fh, True
    return source, False


def load_name_table(source) -> NameTable:
    """Parse a name-map TSV into a NameTable.

    Raises NameMapError with the offending line number for rows with the
    wrong column count, empty required fields, or duplicate species ids.
    """
    lines, owns = _iter_lines(source)
    records: list[SpeciesRecord] = []
    seen_ids: set[str] = set()
    try:
        for lineno, raw in enumerate(lines, start=1):
            line = raw.rstrip("\r\n")
            if not line or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 4:
                raise NameMapError(
                    f"expected 4 tab-separated columns, found {len(cols)}", lineno
                )
            species_id, scientific, commons_field, organism = cols
            commons = commons_field.split("|") if commons_field else []
            try:
                rec = SpeciesRecord(
                    species_id=species_id,
                    scientific_name=scientific,
                    common_names=tuple(commons),
                    organism_type=organism,
                )
            except NameMapError as exc:
                raise NameMapError(str(exc), lineno) from None
            if rec.species_id in seen_ids:
                raise NameMapError(
                    f"duplicate species_id {rec.species_id!r}", lineno
                )
            seen_ids.add(rec.species_id)
            records.append(rec)
    finally:
        if owns:
            lines.close()
    return NameTable.from_records(records)


def write_name_table(table: NameTable, dest) -> None:
    """Serialize a NameTable back to the name-map TSV format."""
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8") as fh:
            write_name_table(table, fh)
        return
    for rec in table:
        dest.write(
            "\t".join(
                (
                    rec.species_id,
                    rec.scientific_name,
                    "|".join(rec.common_names),
                    rec.organism_type or "",
                )
            )
            + "\n"
        )


def dumps_name_table(table: NameTable) -> str:
    buf = io.StringIO()
    write_name_table(table, buf)
    return buf.getvalue()
