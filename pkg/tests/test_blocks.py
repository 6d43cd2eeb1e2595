from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from leech.blocks import (
    Flush,
    InvariantError,
    MatrixDecomposition,
    NotAFactorError,
    RigidityError,
    RigidityReport,
    StabilizationError,
    block_of,
    desubstitute,
    flush_status,
    is_keyword_blush,
    is_keyword_flush,
    is_locally_rigid,
    is_rigid,
    locally_rigid_keywords,
    matrices,
    matrix_of_occurrence,
    plan_shift,
    reduce_fully,
    reduce_instance,
    round_bound,
    shift_to_flush,
    slot_matrices,
)
from leech.pattern import KAPPA2, Assignment, LocalInstance, Pattern
from leech.words import ALPHABET, LEECH, WordError, factor_set, leech_prefix, occurrences, rotate

BASE = Assignment("B", "C", "ABCACBA")
BASE_ANCHOR = 360  # first occurrence of the base instance, found by scanning P^3(A)


@pytest.fixture(scope="module")
def base():
    return LocalInstance(KAPPA2, BASE, BASE_ANCHOR, 3).validate()


def trimmed_cover(pos, length, depth):
    """Oracle: start from the whole block parse and drop whole blocks from each
    end while the rest still covers the occurrence (drops taken in halving strides)."""
    parent = leech_prefix(depth - 1)
    lo, hi = 0, len(parent)
    step = 1 << len(parent).bit_length()
    while step:
        if (lo + step) * 13 <= pos:
            lo += step
        if hi - step > lo and (hi - step) * 13 >= pos + length:
            hi -= step
        step >>= 1
    return MatrixDecomposition(parent[lo:hi], pos - 13 * lo)


class TestBlocks:
    def test_block_images(self):
        assert block_of("A") == "ABCBACBCABCBA"
        assert block_of("B") == "BCACBACABCACB"
        assert block_of("C") == "CABACBABCABAC"

    def test_bad_letter(self):
        with pytest.raises(WordError):
            block_of("AB")

    def test_blocks_start_with_distinct_letters(self):
        assert {block_of(x)[0] for x in ALPHABET} == set(ALPHABET)


class TestMatrixOfOccurrence:
    def test_examples(self):
        assert matrix_of_occurrence(0, 5, 1) == MatrixDecomposition("A", 0)
        assert matrix_of_occurrence(8, 5, 1) == MatrixDecomposition("A", 8)

    def test_leftmost_bacab(self):
        pos = occurrences("BACAB", leech_prefix(3))[0]
        assert pos == 17
        assert LEECH("B")[4:9] == "BACAB"
        assert matrix_of_occurrence(pos, 5, 3) == MatrixDecomposition("B", 4)

    def test_out_of_range(self):
        with pytest.raises(WordError):
            matrix_of_occurrence(10, 5, 1)
        with pytest.raises(ValueError):
            matrix_of_occurrence(0, 1, 0)

    @settings(max_examples=300)
    @given(st.integers(0, 28561 - 1), st.integers(1, 60))
    def test_matches_trimming_oracle(self, pos, length):
        if pos + length > 28561:
            length = 28561 - pos
        d = matrix_of_occurrence(pos, length, 4)
        assert d == trimmed_cover(pos, length, 4)
        assert d.matrix[d.offset : d.offset + length] == leech_prefix(4)[pos : pos + length]
        assert d.offset + length > 13 * (len(d.preimage) - 1)
        assert d.preimage in leech_prefix(3)


class TestMatrices:
    def test_bacab(self):
        rep = matrices("BACAB", 4)
        assert sorted(rep.preimages) == ["AC", "B", "CA"]
        assert {d.preimage: d.offset for d in rep.decompositions} == {"B": 4, "AC": 11, "CA": 10}
        assert not rep.rigid

    def test_abcba_two_positions(self):
        rep = matrices("ABCBA", 5)
        assert rep.decompositions == (MatrixDecomposition("A", 0), MatrixDecomposition("A", 8))
        assert not rep.rigid
        assert rep.flush_flags == [Flush.LEFT, Flush.RIGHT]

    def test_exceptional_seven(self):
        rep = matrices("ABCACBA", 5)
        assert sorted(rep.preimages) == ["AB", "BA"]
        assert not is_rigid("ABCACBA", 5)

    @pytest.mark.parametrize("w", ["ACBABCA", "ABCACBAB", "ABCACBAC"])
    def test_rigid_words(self, w):
        assert is_rigid(w, 5)

    def test_not_a_factor(self):
        with pytest.raises(NotAFactorError):
            matrices("ACABACBC", 5)

    def test_needs_stabilization(self):
        with pytest.raises(StabilizationError):
            matrices("AB", 1)

    def test_round_trip(self):
        rep = matrices("BACAB", 5)
        assert RigidityReport.from_dict(rep.to_dict()) == rep

    def test_blush_report(self):
        rep = matrices(LEECH("ABCACBAB"), 5)
        assert rep.rigid and rep.blush
        d = rep.decompositions[0]
        assert d.offset == 0 and len(rep.subject) % 13 == 0

    @pytest.mark.parametrize("m", [4, 5, 6, 7, 8])
    def test_completeness_vs_oracle(self, m):
        text = leech_prefix(4)
        oracle = {}
        for p in range(len(text) - m + 1):
            oracle.setdefault(text[p : p + m], set()).add(trimmed_cover(p, m, 4))
        assert set(oracle) == factor_set(m, 4).members
        for w, decs in oracle.items():
            assert set(matrices(w, 4).decompositions) == decs

    @pytest.mark.parametrize("m", [4, 7])
    def test_rigidity_is_rotation_invariant(self, m):
        for w in factor_set(m, 4).members:
            assert is_rigid(w, 4) == is_rigid(rotate(w), 4)


class TestFlush:
    def test_examples(self):
        assert flush_status(MatrixDecomposition("A", 0), 5) is Flush.LEFT
        assert flush_status(MatrixDecomposition("A", 8), 5) is Flush.RIGHT
        assert flush_status(MatrixDecomposition("A", 0), 13) is Flush.BOTH
        assert flush_status(MatrixDecomposition("AB", 3), 5) is Flush.NONE


class TestDesubstitute:
    def test_examples(self):
        assert desubstitute(LEECH("ACB")) == "ACB"
        assert desubstitute(block_of("B")) == "B"

    def test_not_a_block(self):
        with pytest.raises(WordError):
            desubstitute("ABCBACBCABCBB")
        with pytest.raises(WordError):
            desubstitute("ABCB")

    def test_exhaustive_short(self):
        from itertools import product

        for n in range(1, 5):
            for t in product(ALPHABET, repeat=n):
                w = "".join(t)
                assert desubstitute(LEECH(w)) == w

    @given(st.text(alphabet=ALPHABET, min_size=1, max_size=100))
    def test_inverse_of_leech(self, w):
        assert desubstitute(LEECH(w)) == w


class TestLocalRigidity:
    def test_base_has_no_locally_rigid_keyword(self, base):
        for v in "abc":
            assert not is_locally_rigid(base, v)

    def test_nine_slots_distinct(self, base):
        pairs = [d for v in "abc" for d in slot_matrices(base, v)]
        assert len(pairs) == 9
        assert len(set(pairs)) == 9

    def test_expansion_is_locally_rigid(self, base):
        e = base.expand()
        assert e.is_valid()
        assert is_locally_rigid(e, "a")
        assert all(is_keyword_blush(e, v) for v in "abc")

    def test_depth_override(self, base):
        assert not is_locally_rigid(base, "c", depth=4)

    def test_invalid_instance(self, base):
        with pytest.raises(WordError):
            is_locally_rigid(replace(base, anchor=BASE_ANCHOR + 1), "a")


class TestShift:
    @pytest.mark.parametrize("gamma", range(1, 13))
    def test_plan_bound(self, gamma):
        for delta in range(1, 13):
            m, direction = plan_shift(gamma, delta)
            assert m == min(gamma, delta, 13 - gamma, 13 - delta)
            assert m <= 6
            assert direction in ("left", "right")

    def test_expansions_unchanged(self, base):
        e = base.expand()
        for inst in (e, e.expand()):
            shifted, plan = shift_to_flush(inst)
            assert shifted == inst
            assert plan.m == 0 and plan.direction == "none"

    def test_base_rejected(self, base):
        with pytest.raises(RigidityError):
            shift_to_flush(base)

    def test_single_slot_shift(self):
        w = "ACBABCA"
        pos = occurrences(w, leech_prefix(4))[0]
        inst = LocalInstance(Pattern("a"), Assignment(a=w), pos, 4)
        shifted, plan = shift_to_flush(inst)
        assert (plan.gamma_len, plan.delta_len, plan.m, plan.direction) == (3, 3, 3, "left")
        assert shifted.anchor == pos - 3
        assert shifted.assignment.a == "CABACBA"
        assert is_keyword_flush(shifted, "a")

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from(["ab", "abc", "abca", "acb"]), st.integers(0, 20000), st.integers(1, 9), st.integers(1, 9), st.integers(1, 9))
    def test_shift_postconditions(self, symbols, anchor, la, lb, lc):
        p = Pattern(symbols)
        text = leech_prefix(4)
        lens = dict(zip("abc", (la, lb, lc)))
        words, pos = {}, anchor
        for v in symbols:
            words.setdefault(v, text[pos : pos + lens[v]])
            if text[pos : pos + lens[v]] != words[v]:
                return
            pos += lens[v]
        inst = LocalInstance(p, Assignment(**words), anchor, 4)
        if not locally_rigid_keywords(inst):
            return
        try:
            shifted, plan = shift_to_flush(inst)
        except (InvariantError, WordError):
            # generic patterns may lose coherence across a block boundary
            return
        assert plan.m <= 6
        assert abs(shifted.anchor - inst.anchor) == plan.m
        assert shifted.assignment.lengths() == inst.assignment.lengths()
        assert shifted.is_valid()
        assert any(is_locally_rigid(shifted, v) and is_keyword_flush(shifted, v) for v in p.variables)


class TestReduce:
    def test_one_round(self, base):
        e = base.expand()
        r = reduce_instance(e)
        assert r == base
        assert len(r) * 13 == len(e)
        assert r.anchor <= (e.anchor + 6) // 13

    def test_two_rounds(self, base):
        e2 = base.expand().expand()
        chain = reduce_fully(e2)
        assert chain[-1] == base
        assert len(chain) - 1 == 2 <= round_bound(len(e2))

    def test_rotations_reduce_too(self):
        for k in range(3):
            s = BASE
            for _ in range(k):
                s = s.map(rotate)
            anchor = occurrences("".join(s[v] for v in KAPPA2.symbols), leech_prefix(3))[0]
            base = LocalInstance(KAPPA2, s, anchor, 3)
            assert reduce_instance(base.expand()) == base

    def test_base_rejected(self, base):
        with pytest.raises(RigidityError):
            reduce_instance(base)

    def test_generic_pattern_breaks_blush_invariant(self):
        w = "ACBABCA"
        pos = occurrences(w, leech_prefix(4))[0]
        with pytest.raises(InvariantError):
            reduce_instance(LocalInstance(Pattern("a"), Assignment(a=w), pos, 4))

    def test_round_bound(self):
        assert round_bound(12) == 0
        assert round_bound(13) == 1
        assert round_bound(168) == 1
        assert round_bound(169) == 2
        assert round_bound(21 * 13) == 2
