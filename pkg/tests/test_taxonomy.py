import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zsspecies import (
    NameMapError,
    NameTable,
    SpeciesRecord,
    load_name_table,
    normalize_name,
    resolve_common,
)
from zsspecies.taxonomy import dumps_name_table


class TestNormalizeName:
    def test_collapses_and_lowercases(self):
        assert normalize_name("Lepus  Timidus ") == "lepus timidus"

    def test_empty(self):
        assert normalize_name("") == ""

    def test_tab_collapse(self):
        assert normalize_name("Ponana\tCitrina") == "ponana citrina"

    def test_compatibility_form(self):
        # fullwidth letters and non-breaking space fold to plain ASCII
        assert normalize_name("Ｐｉｃａ ｐｉｃａ") == "pica pica"

    @given(st.text(max_size=60))
    def test_idempotent(self, raw):
        once = normalize_name(raw)
        assert normalize_name(once) == once


class TestSpeciesRecord:
    def test_cleans_common_names(self):
        rec = SpeciesRecord("x", "Pica pica", ("  Magpie ", "", "magpie", "pie"))
        assert rec.common_names == ("Magpie", "pie")

    def test_rejects_empty_scientific(self):
        with pytest.raises(NameMapError):
            SpeciesRecord("x", "   ")

    def test_rejects_empty_id(self):
        with pytest.raises(NameMapError):
            SpeciesRecord("", "Pica pica")

    def test_empty_organism_type_is_none(self):
        assert SpeciesRecord("x", "Pica pica", (), "  ").organism_type is None


class TestResolveCommon:
    def test_prefers_first_common_name(self):
        rec = SpeciesRecord("x", "Lepus Timidus", ("mountain hare",))
        assert resolve_common(rec) == "mountain hare"

    def test_magpie(self, magpie):
        assert resolve_common(magpie) == "common magpie"

    def test_fallback_to_scientific(self, nameless):
        assert resolve_common(nameless) == "Ponana Citrina"

    @given(
        st.text(min_size=1, max_size=30).filter(lambda s: s.strip()),
        st.lists(st.text(max_size=20), max_size=4),
    )
    def test_never_empty(self, scientific, commons):
        rec = SpeciesRecord("x", scientific, tuple(commons))
        assert resolve_common(rec).strip() != ""


NAME_MAP = """\
# species name map fixture
aves_001\tPica pica\tcommon magpie|eurasian magpie\tbirds
inat_042\tPonana Citrina\t\tinsects
inat_007\tLepus Timidus\tMountain Hare\tmammals
"""


class TestLoadNameTable:
    def test_parses_rows(self):
        table = load_name_table(io.StringIO(NAME_MAP))
        assert len(table) == 3
        rec = table.get("aves_001")
        assert rec.scientific_name == "Pica pica"
        assert rec.common_names == ("common magpie", "eurasian magpie")
        assert rec.organism_type == "birds"
        assert table.get("inat_042").common_names == ()

    def test_empty_file(self):
        assert len(load_name_table(io.StringIO(""))) == 0

    def test_wrong_column_count(self):
        with pytest.raises(NameMapError, match="line 1"):
            load_name_table(io.StringIO("a\tPica pica\tmag\n"))

    def test_missing_scientific_name(self):
        with pytest.raises(NameMapError, match="line 2"):
            load_name_table(io.StringIO("# hdr\nid1\t \tmag\tbirds\n"))

    def test_duplicate_species_id(self):
        data = "a\tPica pica\t\t\na\tLepus Timidus\t\t\n"
        with pytest.raises(NameMapError, match="duplicate species_id"):
            load_name_table(io.StringIO(data))

    def test_duplicate_scientific_name(self):
        data = "a\tPica pica\t\t\nb\tPICA  PICA\t\t\n"
        with pytest.raises(NameMapError, match="collides"):
            load_name_table(io.StringIO(data))

    def test_lookup_by_any_name(self):
        table = load_name_table(io.StringIO(NAME_MAP))
        assert table.lookup("pica  PICA").species_id == "aves_001"
        assert table.lookup("Eurasian Magpie").species_id == "aves_001"
        assert table.lookup("mountain hare").species_id == "inat_007"
        assert table.lookup("no such beast") is None

    def test_every_record_reachable_by_scientific_name(self):
        table = load_name_table(io.StringIO(NAME_MAP))
        for rec in table:
            assert table.lookup(rec.scientific_name) is rec

    def test_round_trip(self):
        table = load_name_table(io.StringIO(NAME_MAP))
        again = load_name_table(io.StringIO(dumps_name_table(table)))
        assert again.records == table.records

    def test_from_records_rejects_duplicate_ids(self):
        recs = [SpeciesRecord("a", "Pica pica"), SpeciesRecord("a", "Lepus Timidus")]
        with pytest.raises(NameMapError):
            NameTable.from_records(recs)

    def test_organism_types(self):
        table = load_name_table(io.StringIO(NAME_MAP))
        assert table.organism_types()["inat_007"] == "mammals"
