import json
import random

import pytest

from nclab import (
    InvalidPartitionError,
    ParseError,
    Partition,
    Permutation,
    act,
    block_cycles,
    catalan,
    classify_blocks,
    count_endpoint_coarsenings,
    count_endpoint_refinements,
    endpoint_coarsenings,
    endpoint_floor,
    endpoint_refinements,
    endpoint_refines,
    enumerate_nc,
    is_noncrossing,
    make_partition,
    make_permutation,
    refines,
)
from helpers import all_set_partitions, nc

# The worked n = 11 example used throughout: a linked partition whose
# generated partition, unlinking and cycled unlinking are all known.
BETA_11 = make_partition(11, [[1, 2, 3, 4, 5, 6, 7], [8, 9, 10, 11]])
UNLINK_11 = make_partition(11, [[1, 2, 4], [3], [5, 6], [7], [8, 9, 11], [10]])
ALPHA_11 = make_partition(11, [[1, 3, 7], [2], [4, 5], [6], [8, 10, 11], [9]])


class TestMakePartition:
    def test_canonicalizes(self):
        p = make_partition(3, [[2], [1, 3]])
        assert p.blocks == ((1, 3), (2,))

    def test_idempotent_on_canonical(self):
        p = make_partition(3, [[1, 3], [2]])
        assert make_partition(3, p.blocks) == p

    def test_worked_example_blocks(self):
        assert UNLINK_11.blocks == ((1, 2, 4), (3,), (5, 6), (7,), (8, 9, 11), (10,))

    def test_overlap_rejected(self):
        with pytest.raises(InvalidPartitionError, match="element 2 repeated"):
            make_partition(4, [[1, 2], [2, 3], [4]])

    def test_gap_rejected(self):
        with pytest.raises(InvalidPartitionError, match=r"elements \[3\] not covered"):
            make_partition(3, [[1, 2]])

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidPartitionError, match="element 5 out of range"):
            make_partition(4, [[1, 2, 3, 4, 5]])

    def test_empty_block_rejected(self):
        with pytest.raises(InvalidPartitionError, match="empty block"):
            make_partition(2, [[1, 2], []])

    def test_bad_n_rejected(self):
        with pytest.raises(InvalidPartitionError):
            make_partition(0, [])


class TestTextJson:
    def test_text_round_trip(self):
        text = "{1,2,4}{3}{5,6}{7}{8,9,11}{10}"
        assert Partition.from_text(text).to_text() == text

    def test_text_is_canonical(self):
        assert Partition.from_text("{3}{1,2}").to_text() == "{1,2}{3}"

    def test_text_rejects_garbage(self):
        for bad in ["", "{1,2", "{ 1 }", "{1}{2},{3}", "{}"]:
            with pytest.raises(ParseError):
                Partition.from_text(bad)

    def test_json_round_trip(self):
        d = ALPHA_11.to_json_dict()
        assert d == {"n": 11, "blocks": [[1, 3, 7], [2], [4, 5], [6], [8, 10, 11], [9]]}
        assert Partition.from_json_dict(json.loads(json.dumps(d))) == ALPHA_11

    def test_json_malformed(self):
        with pytest.raises(ParseError):
            Partition.from_json_dict({"blocks": [[1]]})


class TestNoncrossing:
    def test_extremes(self):
        for n in (1, 2, 5):
            assert is_noncrossing(Partition.discrete(n))
            assert is_noncrossing(Partition.full(n))

    def test_minimal_crossing(self):
        assert not is_noncrossing(make_partition(4, [[1, 3], [2, 4]]))

    def test_count_over_all_set_partitions_of_4(self):
        all4 = list(all_set_partitions(4))
        assert len(all4) == 15
        assert sum(1 for p in all4 if is_noncrossing(p)) == 14

    def test_matches_brute_force_to_n6(self):
        for n in range(1, 7):
            expected = {p for p in all_set_partitions(n) if is_noncrossing(p)}
            assert set(nc(n)) == expected


class TestRefines:
    def test_extremes(self):
        for p in nc(4):
            assert refines(Partition.discrete(4), p)
            assert refines(p, Partition.full(4))

    def test_worked_example(self):
        assert refines(UNLINK_11, BETA_11)

    def test_negative(self):
        a = make_partition(4, [[1, 2], [3, 4]])
        b = make_partition(4, [[1, 3], [2, 4]])
        assert not refines(a, b)

    def test_size_mismatch(self):
        with pytest.raises(ValueError, match="ground sets differ"):
            refines(Partition.full(3), Partition.full(4))


class TestEndpointRefines:
    def test_reflexive(self):
        for n in range(1, 6):
            for a in nc(n):
                assert endpoint_refines(a, a)

    def test_discrete_below_full_fails(self):
        assert not endpoint_refines(Partition.discrete(3), Partition.full(3))

    def test_worked_example(self):
        assert endpoint_refines(ALPHA_11, BETA_11)

    def test_crossing_input_rejected(self):
        crossing = make_partition(4, [[1, 3], [2, 4]])
        with pytest.raises(ValueError, match="crossing"):
            endpoint_refines(crossing, Partition.full(4))
        with pytest.raises(ValueError, match="crossing"):
            endpoint_refines(Partition.discrete(4), crossing)

    def test_size_mismatch(self):
        with pytest.raises(ValueError, match="ground sets differ"):
            endpoint_refines(Partition.full(3), Partition.full(4))

    def test_implies_refines_and_floor_interval(self):
        # endpoint_refines(a, b) is exactly: floor(b) <= a <= b
        for n in range(1, 8):
            for b in nc(n):
                floor = endpoint_floor(b)
                for a in nc(n):
                    lhs = endpoint_refines(a, b)
                    if lhs:
                        assert refines(a, b)
                    assert lhs == (refines(floor, a) and refines(a, b))

    def test_floor_interval_at_n8(self):
        nc8 = nc(8)
        for b in nc8:
            floor = endpoint_floor(b)
            for a in nc8:
                assert endpoint_refines(a, b) == (refines(floor, a) and refines(a, b))


class TestClassifyBlocks:
    def test_worked_example(self):
        cls = classify_blocks(ALPHA_11, BETA_11)
        blocks = ALPHA_11.blocks
        assert {blocks[i] for i in cls.special} == {(1, 3, 7), (8, 10, 11)}
        assert {blocks[i] for i in cls.outer} == {(1, 3, 7), (8, 10, 11)}
        assert {blocks[i] for i in cls.inner} == {(2,), (4, 5), (6,), (9,)}

    def test_self_pair_all_special(self):
        for a in nc(4):
            cls = classify_blocks(a, a)
            assert cls.special == frozenset(range(len(a.blocks)))

    def test_nested_doubleton(self):
        a = make_partition(4, [[1, 4], [2, 3]])
        cls = classify_blocks(a, Partition.full(4))
        assert {a.blocks[i] for i in cls.special} == {(1, 4)}
        assert {a.blocks[i] for i in cls.outer} == {(1, 4)}
        assert {a.blocks[i] for i in cls.inner} == {(2, 3)}

    def test_precondition_enforced(self):
        with pytest.raises(ValueError, match="does not endpoint-refine"):
            classify_blocks(Partition.discrete(3), Partition.full(3))

    def test_one_special_per_coarse_block(self):
        for n in range(1, 7):
            for b in nc(n):
                for a in endpoint_refinements(b):
                    cls = classify_blocks(a, b)
                    assert len(cls.special) == len(b.blocks)
                    assert cls.outer <= cls.special
                    assert cls.inner | cls.outer == frozenset(range(len(a.blocks)))
                    assert not (cls.inner & cls.outer)


class TestEndpointFloor:
    def test_full_4(self):
        assert endpoint_floor(Partition.full(4)).blocks == ((1, 4), (2,), (3,))

    def test_small_blocks_intact(self):
        b = make_partition(4, [[1, 2], [3], [4]])
        assert endpoint_floor(b) == b

    def test_worked_example(self):
        expected = make_partition(
            11, [[1, 7], [2], [3], [4], [5], [6], [8, 11], [9], [10]]
        )
        assert endpoint_floor(BETA_11) == expected

    def test_floor_endpoint_refines(self):
        for n in range(1, 7):
            for b in nc(n):
                floor = endpoint_floor(b)
                assert max(len(w) for w in floor.blocks) <= 2
                assert refines(floor, b)
                assert endpoint_refines(floor, b)


class TestEnumerateNC:
    def test_n1(self):
        assert list(enumerate_nc(1)) == [Partition.full(1)]

    def test_documented_order_n3(self):
        texts = [p.to_text() for p in enumerate_nc(3)]
        assert texts == ["{1}{2}{3}", "{1,3}{2}", "{1}{2,3}", "{1,2}{3}", "{1,2,3}"]

    def test_counts_are_catalan(self):
        for n in range(1, 9):
            assert len(nc(n)) == catalan(n)

    def test_distinct_and_noncrossing(self):
        for n in range(1, 8):
            seen = set(nc(n))
            assert len(seen) == len(nc(n))
            assert all(is_noncrossing(p) for p in seen)

    def test_rejects_bad_n(self):
        with pytest.raises(ValueError):
            list(enumerate_nc(0))


class TestEndpointRefinements:
    def test_discrete_is_fixed(self):
        for n in (1, 3, 5):
            assert list(endpoint_refinements(Partition.discrete(n))) == [
                Partition.discrete(n)
            ]

    def test_full_3(self):
        got = set(endpoint_refinements(Partition.full(3)))
        assert got == {Partition.full(3), make_partition(3, [[1, 3], [2]])}

    def test_worked_example_count(self):
        below = list(endpoint_refinements(BETA_11))
        assert len(below) == 660 == count_endpoint_refinements(BETA_11)
        assert len(set(below)) == 660

    def test_worked_example_against_filter(self):
        got = set(endpoint_refinements(BETA_11))
        expected = {a for a in enumerate_nc(11) if endpoint_refines(a, BETA_11)}
        assert got == expected

    def test_matches_filter_exhaustively(self):
        for n in range(1, 8):
            for b in nc(n):
                got = list(endpoint_refinements(b))
                expected = {a for a in nc(n) if endpoint_refines(a, b)}
                assert len(got) == len(set(got)) == count_endpoint_refinements(b)
                assert set(got) == expected

    def test_counts(self):
        assert count_endpoint_refinements(Partition.full(4)) == 5
        assert count_endpoint_refinements(Partition.discrete(6)) == 1
        assert count_endpoint_refinements(BETA_11) == 132 * 5


class TestEndpointCoarsenings:
    def test_full_is_fixed(self):
        for n in (1, 2, 4):
            got = list(endpoint_coarsenings(Partition.full(n)))
            assert len(got) == 1 == count_endpoint_coarsenings(Partition.full(n))
            assert got[0][0] == Partition.full(n)

    def test_nested_doubletons(self):
        a = make_partition(4, [[1, 4], [2, 3]])
        got = list(endpoint_coarsenings(a))
        assert [b for b, _ in got] == [a, Partition.full(4)]
        assert count_endpoint_coarsenings(a) == 2

    def test_discrete_3_by_oracle(self):
        # no block of the discrete partition spans another, so nothing is
        # inner and the only endpoint-coarsening is the partition itself
        a = Partition.discrete(3)
        got = list(endpoint_coarsenings(a))
        expected = {b for b in nc(3) if endpoint_refines(a, b)}
        assert {b for b, _ in got} == expected == {a}
        assert count_endpoint_coarsenings(a) == 1

    def test_matches_filter_exhaustively(self):
        for n in range(1, 8):
            for a in nc(n):
                got = list(endpoint_coarsenings(a))
                expected = {b for b in nc(n) if endpoint_refines(a, b)}
                assert {b for b, _ in got} == expected
                assert len(got) == count_endpoint_coarsenings(a)
                specials = [v for _, v in got]
                assert len(set(specials)) == len(specials)
                assert all(v >= a.outer_indices for v in specials)
                # the special sets are exactly the block subsets containing
                # every outer block
                assert {frozenset(v) for v in specials} == {
                    a.outer_indices | frozenset(extra)
                    for extra in _subsets(sorted(a.inner_indices))
                }

    def test_special_set_matches_classification(self):
        for n in range(1, 7):
            for a in nc(n):
                for b, special in endpoint_coarsenings(a):
                    assert classify_blocks(a, b).special == special

    def test_worked_example_count(self):
        assert count_endpoint_coarsenings(ALPHA_11) == 16


def _subsets(items):
    out = [frozenset()]
    for x in items:
        out += [s | {x} for s in out]
    return out


class TestPermutation:
    def test_block_cycles_worked_example(self):
        perm = block_cycles(BETA_11)
        assert perm.cycles() == ((1, 2, 3, 4, 5, 6, 7), (8, 9, 10, 11))
        assert perm.to_cycle_text() == "(1,2,3,4,5,6,7)(8,9,10,11)"

    def test_block_cycles_discrete_is_identity(self):
        assert block_cycles(Partition.discrete(5)) == Permutation.identity(5)

    def test_block_cycles_two_cycle(self):
        assert block_cycles(make_partition(3, [[1, 3], [2]])).image == (3, 2, 1)

    def test_one_cycle_per_block(self):
        for n in range(1, 7):
            for a in nc(n):
                assert len(block_cycles(a).cycles()) == len(a.blocks)

    def test_make_permutation_validates(self):
        with pytest.raises(ValueError, match="not a bijection"):
            make_permutation(3, [1, 1, 2])

    def test_inverse_and_compose(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(1, 9)
            img = list(range(1, n + 1))
            rng.shuffle(img)
            t = make_permutation(n, img)
            assert t * t.inverse() == Permutation.identity(n)
            assert t.inverse() * t == Permutation.identity(n)

    def test_json_round_trip(self):
        perm = block_cycles(BETA_11)
        assert Permutation.from_json_dict(perm.to_json_dict()) == perm


class TestAct:
    def test_identity(self):
        for a in nc(4):
            assert act(Permutation.identity(4), a) == a

    def test_worked_example(self):
        perm = block_cycles(BETA_11)
        assert act(perm.inverse(), UNLINK_11) == ALPHA_11

    def test_group_action_laws(self):
        rng = random.Random(11)
        partitions_5 = nc(5)
        for _ in range(100):
            a = rng.choice(partitions_5)
            s = make_permutation(5, rng.sample(range(1, 6), 5))
            t = make_permutation(5, rng.sample(range(1, 6), 5))
            assert act(t, act(t.inverse(), a)) == a
            assert act(s * t, a) == act(s, act(t, a))

    def test_size_mismatch(self):
        with pytest.raises(ValueError, match="sizes differ"):
            act(Permutation.identity(3), Partition.full(4))

    def test_cycle_action_preserves_order_ideal(self):
        # the inverse block-cycle permutation of b maps {a : a <= b} into itself
        for n in range(1, 8):
            for b in nc(n):
                inv = block_cycles(b).inverse()
                for a in nc(n):
                    if refines(a, b):
                        image = act(inv, a)
                        assert is_noncrossing(image)
                        assert refines(image, b)


class TestCatalan:
    def test_values(self):
        assert [catalan(k) for k in range(9)] == [1, 1, 2, 5, 14, 42, 132, 429, 1430]

    def test_matches_enumeration(self):
        for n in range(1, 8):
            assert catalan(n) == len(nc(n))

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            catalan(-1)


class TestCountDuality:
    def test_up_down_totals_agree(self):
        # both sides count the endpoint-refinement pairs
        for n in range(1, 11):
            below = 0
            above = 0
            for p in enumerate_nc(n):
                below += count_endpoint_refinements(p)
                above += count_endpoint_coarsenings(p)
            assert below == above


class TestRestrictRelabel:
    def test_restrict_keeps_labels(self):
        r = BETA_11.restrict(range(8, 12))
        assert r.ground == (8, 9, 10, 11)
        assert r.blocks == ((8, 9, 10, 11),)

    def test_restrict_rejects_split_block(self):
        with pytest.raises(ValueError, match=r"block \{1,2,4\} is not contained"):
            UNLINK_11.restrict([1, 2, 3])

    def test_relabel(self):
        r = UNLINK_11.restrict([8, 9, 10, 11]).relabel()
        assert r == make_partition(4, [[1, 2, 4], [3]])

    def test_foreign_elements_rejected(self):
        with pytest.raises(ValueError, match="element 0 is not in the ground set"):
            BETA_11.restrict([0, 1])

    def test_block_cycles_needs_standard_ground(self):
        r = BETA_11.restrict(range(8, 12))
        with pytest.raises(ValueError, match=r"\{1\.\.n\}"):
            block_cycles(r)

    def test_identity_cycle_text(self):
        assert Permutation.identity(4).to_cycle_text() == "()"
        assert block_cycles(make_partition(3, [[1, 3], [2]])).to_cycle_text() == "(1,3)"
