"""
Counting species names in a caption corpus
==========================================

Which name form does a vision-language model actually see during
pretraining? This demo scans a miniature caption corpus and counts, for
every species name, the number of captions containing it (document
frequency, matched on word boundaries, case-insensitive). The same
machinery scans LAION-scale dumps: shard the files, count each shard,
merge.
"""

import io

from zsspecies import (
    build_pattern_set,
    count_occurrences,
    coverage_report,
    load_name_table,
    merge,
    write_frequency_table,
)

NAME_MAP = """\
inat_007\tLepus Timidus\tMountain Hare\tmammals
aves_003\tCiconia Nigra\tBlack Stork\tbirds
inat_015\tNymphaea\tWater Lily\tplants
"""

CAPTIONS = [
    "a mountain hare sprinting across Scottish moorland",
    "Mountain-Hare in winter coat, wildlife photography",
    "mountainous harebell flowers by the trail",          # no boundary match
    "black stork (Ciconia nigra) at the nest",
    "the water lily pond at dawn",
    "nymphaea cultivar close-up",
    "lepus timidus, museum specimen drawer 12",
]

table = load_name_table(io.StringIO(NAME_MAP))
patterns = build_pattern_set(table.all_names())
print(f"{len(patterns)} distinct patterns compiled\n")

# Sharded counting: two workers would each scan half and merge results.
left = count_occurrences(CAPTIONS[:4], patterns)
right = count_occurrences(CAPTIONS[4:], patterns)
freq = merge(left, right)

for name, count in sorted(freq.counts.items(), key=lambda kv: -kv[1]):
    print(f"  {count}  {name}")

cov = coverage_report(freq, table)
print(f"\nspecies with the scientific name present: {cov.scientific}/{cov.total_species}")
print(f"species with any name present:            {cov.with_common}/{cov.total_species}")

buf = io.StringIO()
write_frequency_table(freq, buf)
print("\nserialized frequency table:")
print(buf.getvalue())
