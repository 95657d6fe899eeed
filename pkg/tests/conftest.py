import pytest

from zsspecies import SpeciesRecord


@pytest.fixture
def magpie() -> SpeciesRecord:
    return SpeciesRecord(
        species_id="aves_001",
        scientific_name="Pica pica",
        common_names=("common magpie", "eurasian magpie"),
        organism_type="birds",
    )


@pytest.fixture
def nameless() -> SpeciesRecord:
    # No curated common name; resolution must fall back to the scientific name.
    return SpeciesRecord(
        species_id="inat_042",
        scientific_name="Ponana Citrina",
        common_names=(),
        organism_type="insects",
    )
