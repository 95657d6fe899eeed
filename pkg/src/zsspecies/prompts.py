"""Prompt construction for species classes.

Three naming strategies, each optionally extended with per-species
description lines:

  s-name  the scientific (Latin/Greek) name as curated
  c-name  the preferred common English name, falling back to the
          scientific name when no common name is curated
  f-name  whichever of the two occurs more often in a reference caption
          corpus; ties prefer the common name

A prompt set always opens with the photo prompt for the selected name.
With descriptions enabled, one description line per curated description
follows; species without descriptions keep the plain single-prompt set.
Description lines start a sentence with the name, so the name is
sentence-cased there (first character upper, rest untouched).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from zsspecies.corpus_freq import FrequencyTable
from zsspecies.taxonomy import SpeciesRecord, resolve_common

DEFAULT_PHOTO_TEMPLATE = "Here is a photo of the {name}."


class PromptError(ValueError):
    """Unusable prompt inputs (empty name/description, bad template)."""


class StrategyError(ValueError):
    """Strategy configuration is incomplete (e.g. f-name without counts)."""


class DescriptionError(ValueError):
    """Malformed description data."""


class NameChoice(str, Enum):
    SCIENTIFIC = "s-name"
    COMMON = "c-name"
    FREQUENT = "f-name"


@dataclass(frozen=True)
class Strategy:
    """A prompt strategy configuration: which name, plus descriptions or not."""

    name_choice: NameChoice
    with_descriptions: bool = False

    @property
    def label(self) -> str:
        if self.with_descriptions:
            return f"{self.name_choice.value} + descriptions"
        return self.name_choice.value


@dataclass(frozen=True)
class PromptSet:
    """Ordered prompt strings for one species under one strategy."""

    species_id: str
    prompts: tuple[str, ...]


class DescriptionStore:
    """Ingested per-species descriptions, order preserved.

    File format: UTF-8 TSV ``species_id<TAB>description``, one description
    per line, several lines per species allowed. A species absent from the
    store simply has no descriptions.
    """

    def __init__(self, entries: Mapping[str, Sequence[str]] | None = None):
        self._by_id: dict[str, tuple[str, ...]] = {}
        if entries:
            for species_id, descs in entries.items():
                descs = tuple(d.strip() for d in descs)
                if any(not d for d in descs):
                    raise DescriptionError(
                        f"species {species_id!r} has an empty description"
                    )
                self._by_id[species_id] = descs

    @classmethod
    def load(cls, source) -> "DescriptionStore":
        if isinstance(source, (str, Path)):
            with open(source, "r", encoding="utf-8") as fh:
                return cls.load(fh)
        store = cls()
        for lineno, raw in enumerate(source, start=1):
            line = raw.rstrip("\r\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t", 1)
            if len(parts) != 2:
                raise DescriptionError(f"line {lineno}: expected 2 columns")
            species_id, description = parts[0].strip(), parts[1].strip()
            if not species_id:
                raise DescriptionError(f"line {lineno}: empty species_id")
            if not description:
                raise DescriptionError(f"line {lineno}: empty description")
            store._by_id.setdefault(species_id, ())
            store._by_id[species_id] += (description,)
        return store

    def get(self, species_id: str) -> tuple[str, ...]:
        return self._by_id.get(species_id, ())

    def __contains__(self, species_id: str) -> bool:
        return species_id in self._by_id

    def __len__(self) -> int:
        return len(self._by_id)


def sentence_case(name: str) -> str:
    """Upper-case the first character only; the rest is left as curated."""
    return name[:1].upper() + name[1:]


def select_name(
    strategy: Strategy | NameChoice,
    record: SpeciesRecord,
    freq: FrequencyTable | None = None,
) -> str:
    """Pick the name a strategy puts in prompts for one species.

    f-name compares the document frequency of the scientific name with
    that of the preferred common name and takes the more frequent one,
    preferring the common name on a tie. Species without any common name
    keep their scientific name under every strategy.
    """
    choice = strategy.name_choice if isinstance(strategy, Strategy) else strategy
    if choice is NameChoice.SCIENTIFIC:
        return record.scientific_name
    if choice is NameChoice.COMMON:
        return resolve_common(record)
    if choice is NameChoice.FREQUENT:
        if freq is None:
            raise StrategyError("f-name needs a frequency table")
        if not record.common_names:
            return record.scientific_name
        common = record.common_names[0]
        if freq.get(common) >= freq.get(record.scientific_name):
            return common
        return record.scientific_name
    raise StrategyError(f"unknown name choice {choice!r}")


def _render_template(template: str, name: str) -> str:
    if "{name}" not in template:
        raise PromptError(f"template {template!r} has no {{name}} placeholder")
    try:
        return template.format(name=name)
    except (KeyError, IndexError, ValueError) as exc:
        raise PromptError(f"bad template {template!r}: {exc}") from None


def build_photo_prompt(name: str, template: str = DEFAULT_PHOTO_TEMPLATE) -> str:
    if not name:
        raise PromptError("empty name")
    return _render_template(template, name)


def build_description_prompt(name: str, description: str) -> str:
    if not name:
        raise PromptError("empty name")
    if not description:
        raise PromptError("empty description")
    return f"{name} has {description}."


def build_prompt_set(
    record: SpeciesRecord,
    strategy: Strategy,
    descriptions: DescriptionStore | None = None,
    freq: FrequencyTable | None = None,
    *,
    template: str = DEFAULT_PHOTO_TEMPLATE,
    mixed_fname_descriptions: bool = False,
) -> PromptSet:
    """Assemble the prompt ensemble for one species.

    The photo prompt always comes first and always uses the selected
    name, so every set has a name-bearing anchor. Description lines use
    the selected name too; with ``mixed_fname_descriptions`` they keep
    the scientific name under f-name while the photo line still carries
    the selected name.
    """
    selected = select_name(strategy, record, freq)
    prompts = [build_photo_prompt(selected, template)]
    if strategy.with_descriptions and descriptions is not None:
        desc_name = selected
        if (
            mixed_fname_descriptions
            and strategy.name_choice is NameChoice.FREQUENT
        ):
            desc_name = record.scientific_name
        for description in descriptions.get(record.species_id):
            prompts.append(
                build_description_prompt(sentence_case(desc_name), description)
            )
    return PromptSet(species_id=record.species_id, prompts=tuple(prompts))


def write_prompt_sets(prompt_sets: Iterable[PromptSet], dest) -> None:
    """JSON-lines export: one ``{"species_id": ..., "prompts": [...]}``
    object per species. Key names are fixed; embedding exporters key on
    them."""
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8") as fh:
            write_prompt_sets(prompt_sets, fh)
        return
    for ps in prompt_sets:
        dest.write(
            json.dumps(
                {"species_id": ps.species_id, "prompts": list(ps.prompts)},
                ensure_ascii=False,
            )
            + "\n"
        )


def read_prompt_sets(source) -> Iterator[PromptSet]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            yield from read_prompt_sets(fh)
        return
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            species_id = obj["species_id"]
            prompts = tuple(obj["prompts"])
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise PromptError(f"line {lineno}: bad prompt record: {exc}") from None
        if not prompts:
            raise PromptError(f"line {lineno}: species {species_id!r} has no prompts")
        yield PromptSet(species_id=species_id, prompts=prompts)
