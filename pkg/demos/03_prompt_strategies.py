"""
Prompt strategies
=================

One species, six prompt configurations. The s-name strategy uses the
scientific name, c-name the preferred common name, f-name whichever of
the two is more frequent in the reference corpus (ties prefer the common
name). Each strategy optionally appends description lines; species
without curated descriptions keep the plain single-prompt set.
"""

import io

from zsspecies import (
    DescriptionStore,
    FrequencyTable,
    NameChoice,
    SpeciesRecord,
    Strategy,
    build_prompt_set,
    write_prompt_sets,
)

magpie = SpeciesRecord(
    species_id="aves_001",
    scientific_name="Pica pica",
    common_names=("common magpie",),
    organism_type="birds",
)
descriptions = DescriptionStore({"aves_001": ["a blue tail", "a long black bill"]})
freq = FrequencyTable({"pica pica": 7, "common magpie": 12})

for choice in NameChoice:
    for with_descriptions in (False, True):
        strategy = Strategy(choice, with_descriptions)
        ps = build_prompt_set(magpie, strategy, descriptions, freq)
        print(f"{strategy.label}:")
        for prompt in ps.prompts:
            print(f"    {prompt}")

# The compatibility form keeps the scientific name in f-name description
# lines while the photo line carries the selected (more frequent) name.
mixed = build_prompt_set(
    magpie,
    Strategy(NameChoice.FREQUENT, True),
    descriptions,
    freq,
    mixed_fname_descriptions=True,
)
print("f-name + descriptions (mixed form):")
for prompt in mixed.prompts:
    print(f"    {prompt}")

# Prompt sets serialize to JSON lines for the embedding exporter.
buf = io.StringIO()
write_prompt_sets([mixed], buf)
print("\nJSONL for the exporter:")
print(buf.getvalue())
