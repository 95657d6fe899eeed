"""
Resolving species names
=======================

Species in field datasets carry scientific (Latin/Greek) names; web-scale
caption corpora mostly talk about them by their common English names.
This demo loads a tiny curated name map and shows how each species
resolves for prompting.
"""

import io

from zsspecies import load_name_table, resolve_common

# A name map is a 4-column TSV: id, scientific name, pipe-separated
# common names (may be empty), organism type (may be empty).
NAME_MAP = """\
inat_007\tLepus Timidus\tMountain Hare\tmammals
aves_003\tCiconia Nigra\tBlack Stork\tbirds
inat_015\tNymphaea\tWater Lily|waterlily\tplants
cub_012\tSayorna\tSay's Phoebe\tbirds
inat_042\tPonana Citrina\t\tinsects
"""

table = load_name_table(io.StringIO(NAME_MAP))

print(f"{len(table)} species loaded\n")
for record in table:
    resolved = resolve_common(record)
    marker = "(fallback: no common name curated)" if not record.common_names else ""
    print(f"  {record.scientific_name:<16} -> {resolved} {marker}")

# Lookups go through one normalized index, so casing and spacing do not
# matter, and both name forms find the record.
print()
print("lookup 'lepus  TIMIDUS' ->", table.lookup("lepus  TIMIDUS").species_id)
print("lookup 'water lily'     ->", table.lookup("water lily").species_id)
