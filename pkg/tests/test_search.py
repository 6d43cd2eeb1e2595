from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from leech.blocks import StabilizationError
from leech.pattern import (
    KAPPA1,
    KAPPA2,
    KAPPA3,
    KAPPA4,
    Assignment,
    LocalInstance,
    Pattern,
    instantiate,
    pattern_from_name,
)
from leech.search import SearchBounds, longest_prefix_factor, rigidity_census, search_instances
from leech.words import ALPHABET, LEECH, WordError, factor_set, leech_prefix, occurrences, rotate

BASE_ORBIT = {
    Assignment("B", "C", "ABCACBA"),
    Assignment("C", "A", "BCABACB"),
    Assignment("A", "B", "CABCBAC"),
}


def keyword_candidates(max_len):
    return ["".join(t) for n in range(1, max_len + 1) for t in product(ALPHABET, repeat=n)]


def naive_search(p, max_len, depth):
    """Every assignment of candidate words to the pattern's variables, then
    every occurrence of the instantiated word."""
    text = leech_prefix(depth)
    words = keyword_candidates(max_len)
    found = set()
    for combo in product(words, repeat=len(p.variables)):
        s = Assignment(**dict(zip(p.variables, combo)))
        found.update((anchor, s) for anchor in occurrences(instantiate(p, s), text))
    return found


class TestPatterns:
    def test_constants(self):
        assert KAPPA1.symbols == "abacbcabac"
        assert KAPPA2.symbols == "abacbcaba"
        assert KAPPA3.symbols == "cabacbcaba"
        assert KAPPA4.symbols == "cabacbcabac"

    def test_bad_pattern(self):
        with pytest.raises(ValueError):
            Pattern("abd")
        with pytest.raises(ValueError):
            Pattern("")

    def test_lookup(self):
        assert pattern_from_name("kappa2") is KAPPA2
        assert pattern_from_name("k1") is KAPPA1
        assert pattern_from_name("abacbcaba") is KAPPA2
        assert pattern_from_name("abc").symbols == "abc"
        with pytest.raises(ValueError):
            pattern_from_name("ABC")

    def test_instantiate(self):
        w = instantiate(KAPPA2, Assignment("B", "C", "ABCACBA"))
        assert w == "BCBABCACBACABCACBABCB"
        assert len(w) == 21
        assert instantiate(KAPPA2, Assignment("A", "B", "C")) == "ABACBCABA"
        assert instantiate(KAPPA1, Assignment("A", "B", "C")) == "ABACBCABAC"

    def test_missing_keyword(self):
        with pytest.raises(WordError):
            instantiate(KAPPA2, Assignment("A", "B"))

    @given(*(st.text(alphabet=ALPHABET, min_size=1, max_size=12) for _ in range(3)))
    def test_length_formula(self, a, b, c):
        assert len(instantiate(KAPPA2, Assignment(a, b, c))) == 4 * len(a) + 3 * len(b) + 2 * len(c)

    def test_instance_round_trip(self):
        inst = LocalInstance(KAPPA2, Assignment("B", "C", "ABCACBA"), 360, 3)
        assert LocalInstance.from_dict(inst.to_dict()) == inst
        assert inst.slots("c") == [363, 371]


class TestSearch:
    def test_kappa2_depth4(self):
        res = search_instances(KAPPA2, SearchBounds(7, 4))
        assert set(res.assignments) == BASE_ORBIT
        assert all(res.anchors(s) for s in BASE_ORBIT)

    @pytest.mark.parametrize("p", [KAPPA1, KAPPA3, KAPPA4])
    def test_longer_patterns_absent(self, p):
        assert len(search_instances(p, SearchBounds(7, 4))) == 0

    def test_short_keywords_absent(self):
        assert len(search_instances(KAPPA2, SearchBounds(3, 4))) == 0

    def test_sorted(self):
        res = search_instances(Pattern("aba"), SearchBounds(4, 3))
        keys = [(i.anchor,) + i.assignment.sort_key() for i in res.instances]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)

    def test_bounds_checked(self):
        with pytest.raises(ValueError):
            search_instances(KAPPA2, SearchBounds(7, 1))
        with pytest.raises(ValueError):
            search_instances(KAPPA2, SearchBounds(0, 3))

    def test_per_variable_bounds(self):
        res = search_instances(KAPPA2, SearchBounds({"a": 1, "b": 1, "c": 7}, 4))
        assert set(res.assignments) == BASE_ORBIT
        assert len(search_instances(KAPPA2, SearchBounds({"a": 7, "b": 7, "c": 6}, 4))) == 0

    @pytest.mark.parametrize("symbols", ["abacbcaba", "aba", "abc", "abcab", "acb", "abca", "cbcb"])
    def test_matches_naive_oracle(self, symbols):
        p = Pattern(symbols)
        got = {(i.anchor, i.assignment) for i in search_instances(p, SearchBounds(3, 3)).instances}
        assert got == naive_search(p, 3, 3)

    @pytest.mark.parametrize("symbols", ["abacbcaba", "abca", "abcba"])
    def test_anchor_validity(self, symbols):
        res = search_instances(Pattern(symbols), SearchBounds(5, 3))
        text = leech_prefix(3)
        for inst in res.instances:
            assert inst.anchor in occurrences(inst.word, text)

    def test_closure_under_expansion(self):
        res = search_instances(KAPPA2, SearchBounds(7, 3))
        deeper = leech_prefix(4)
        for inst in res.instances:
            e = inst.expand()
            assert deeper.startswith(e.word, 13 * inst.anchor)

    def test_closure_under_rotation(self):
        found = set(search_instances(KAPPA2, SearchBounds(7, 4)).assignments)
        assert {s.map(rotate) for s in found} == found

    @pytest.mark.parametrize("symbols", ["abacbcaba", "abca"])
    def test_monotone_in_depth(self, symbols):
        p = Pattern(symbols)
        shallow = {(i.anchor, i.assignment) for i in search_instances(p, SearchBounds(5, 3)).instances}
        deep = {(i.anchor, i.assignment) for i in search_instances(p, SearchBounds(5, 4)).instances}
        assert shallow <= deep
        limit = 13**3
        assert {x for x in deep if x[0] + len(instantiate(p, x[1])) <= limit} == shallow


class TestLongestPrefixFactor:
    def test_square(self):
        assert longest_prefix_factor("AAB", 3) == 1

    def test_theorem8_display(self):
        w = instantiate(KAPPA2, Assignment("C", "ACB", "AB"))
        assert len(w) == 17
        # frozen from a letter-by-letter scan of the plain-Python prefix
        assert longest_prefix_factor(w, 5) == 14

    @settings(max_examples=50)
    @given(st.integers(0, 2000), st.integers(1, 150))
    def test_factors_are_full(self, pos, n):
        w = leech_prefix(3)[pos : pos + n]
        assert longest_prefix_factor(w, 3) == len(w)

    @settings(max_examples=100)
    @given(st.text(alphabet=ALPHABET, min_size=1, max_size=25))
    def test_matches_linear_scan(self, w):
        text = leech_prefix(4)
        ell = 0
        while ell < len(w) and w[: ell + 1] in text:
            ell += 1
        assert longest_prefix_factor(w, 4) == ell


class TestCensus:
    def test_seven(self):
        c = rigidity_census(7, 5)
        assert c.total == 54
        assert c.nonrigid == ["ABCACBA", "BCABACB", "CABCBAC"]
        assert c.summary() == "54 factors, 51 rigid; nonrigid: ABCACBA BCABACB CABCBAC"

    def test_six(self):
        c = rigidity_census(6, 5)
        assert len(c.orbits) == 14
        assert c.rigid_orbits == [
            "ABACAB", "ABACBA", "ABACBC", "ABCABA", "ABCBAB",
            "ACABAC", "ACABCA", "ACABCB", "ACBACA", "ACBCAC",
        ]

    def test_five(self):
        c = rigidity_census(5, 5)
        assert len(c.orbits) == 10
        assert c.rigid_orbits == ["ABACA", "ABCAB", "ACABA", "ACBAC"]

    def test_four(self):
        c = rigidity_census(4, 5)
        assert len(c.orbits) == 6
        assert c.rigid == []

    def test_rigid_count_rotation_closed(self):
        c = rigidity_census(6, 5)
        assert {rotate(w) for w in c.rigid} == set(c.rigid)

    def test_unstabilized(self):
        with pytest.raises(StabilizationError):
            rigidity_census(3, 1)

    def test_eight_all_rigid(self):
        c = rigidity_census(8, 5)
        assert c.nonrigid == []
        assert len(c.rigid) == len(factor_set(8, 5))

    def test_blocks_expand_rigid(self):
        for w in rigidity_census(7, 5).rigid[:5]:
            assert LEECH(w) in leech_prefix(5)
