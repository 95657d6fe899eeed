import random

import pytest

from helpers import naive_token_contains
from zsspecies.matching import TokenAutomaton, tokenize


class TestTokenize:
    def test_punctuation_is_boundary(self):
        assert tokenize("a mountain-hare, photo!") == ["a", "mountain", "hare", "photo"]

    def test_underscore_is_boundary(self):
        assert tokenize("common_magpie_photo.jpg") == ["common", "magpie", "photo", "jpg"]

    def test_digits_stay_in_tokens(self):
        assert tokenize("flower102 x2") == ["flower102", "x2"]

    def test_empty(self):
        assert tokenize("...!?") == []


class TestTokenAutomaton:
    def test_rejects_empty_pattern(self):
        with pytest.raises(ValueError):
            TokenAutomaton([("a",), ()])

    def test_reports_nested_and_overlapping_patterns(self):
        patterns = [("a",), ("a", "a"), ("a", "a", "a"), ("b", "a")]
        auto = TokenAutomaton(patterns)
        assert auto.match_ids("a a a b a".split()) == {0, 1, 2, 3}
        assert auto.match_ids("b b".split()) == set()
        assert auto.match_ids("a b".split()) == {0}

    def test_suffix_pattern_found_inside_longer_match(self):
        auto = TokenAutomaton([("x", "y", "z"), ("y", "z")])
        assert auto.match_ids("w x y z".split()) == {0, 1}

    def test_duplicate_token_sequences_report_all_ids(self):
        auto = TokenAutomaton([("pica", "pica"), ("pica", "pica")])
        assert auto.match_ids("pica pica".split()) == {0, 1}

    def test_contains_any(self):
        auto = TokenAutomaton([("m", "h")])
        assert auto.contains_any("z m h".split())
        assert not auto.contains_any("m z h".split())

    def test_matches_agree_with_positional_scan_on_random_streams(self):
        # Tiny alphabet maximizes suffix overlap, the regime where failure
        # links earn their keep.
        rng = random.Random(1234)
        alphabet = ["a", "b", "c"]
        for _ in range(300):
            n_patterns = rng.randint(1, 12)
            patterns = [
                tuple(rng.choice(alphabet) for _ in range(rng.randint(1, 4)))
                for _ in range(n_patterns)
            ]
            auto = TokenAutomaton(patterns)
            stream = [rng.choice(alphabet) for _ in range(rng.randint(0, 30))]
            expected = {
                pid
                for pid, pat in enumerate(patterns)
                if naive_token_contains(stream, pat)
            }
            assert auto.match_ids(stream) == expected
