import pytest
from hypothesis import given, settings

import oracles
from conftest import posets
from triposet import (
    CapExceededError,
    CycleDetectedError,
    DownSet,
    DuplicateLabelError,
    HARD_STREAM_CAP,
    Poset,
    Subset,
    UnknownLabelError,
    build_poset,
    enumerate_posets,
)


class TestBuild:
    def test_singleton_is_reflexive_only(self, singleton):
        assert singleton.n == 1
        assert singleton.leq(0, 0)

    def test_chain_closes_transitively(self, chain3):
        a, b, c = (chain3.index(x) for x in "abc")
        assert chain3.leq(a, b) and chain3.leq(b, c)
        # a <= c is not among the input pairs; the builder must add it
        assert chain3.leq(a, c)
        assert not chain3.leq(c, a)

    def test_two_way_pair_is_a_cycle(self):
        with pytest.raises(CycleDetectedError):
            build_poset(["a", "b"], [("a", "b"), ("b", "a")])

    def test_indirect_cycle_detected_after_closure(self):
        with pytest.raises(CycleDetectedError):
            build_poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])

    def test_duplicate_label_rejected(self):
        with pytest.raises(DuplicateLabelError):
            build_poset(["a", "a"])

    def test_unknown_relation_endpoint_rejected(self):
        with pytest.raises(UnknownLabelError):
            build_poset(["a", "b"], [("a", "z")])

    def test_declaration_order_fixes_indices(self):
        p = build_poset(["z", "y", "x"])
        assert p.labels == ("z", "y", "x")
        assert p.index("y") == 1
        assert p.label(2) == "x"

    def test_raw_constructor_rejects_irreflexive_rows(self):
        with pytest.raises(ValueError):
            Poset(("a",), [0])

    def test_raw_constructor_rejects_unclosed_rows(self):
        # a below b, b below c, but a<c missing
        with pytest.raises(ValueError):
            Poset(("a", "b", "c"), [0b001, 0b011, 0b110])


class TestOrder:
    def test_leq_on_chain(self, chain2):
        a, b = chain2.index("a"), chain2.index("b")
        assert chain2.leq(a, b)
        assert not chain2.leq(b, a)

    def test_leq_on_antichain(self, antichain2):
        assert not antichain2.leq(0, 1)
        assert not antichain2.leq(1, 0)

    def test_principal_downset_chain(self, chain2):
        assert chain2.principal_downset(chain2.index("b")) == chain2.downset("ab")
        assert chain2.principal_downset(chain2.index("a")) == chain2.downset("a")

    def test_principal_downset_vee(self, vee):
        assert vee.principal_downset(vee.index("a")) == vee.downset(["a", "c"])

    def test_punctured_downset(self, chain2, chain3, vee):
        assert chain2.punctured_downset(chain2.index("b")) == chain2.downset("a")
        assert vee.punctured_downset(vee.index("c")) == vee.downset([])
        assert chain3.punctured_downset(chain3.index("c")) == chain3.downset("ab")

    def test_punctured_is_principal_minus_point(self, small_posets):
        for poset in small_posets:
            for p in range(poset.n):
                principal = poset.principal_downset(p)
                punct = poset.punctured_downset(p)
                assert punct.mask == principal.mask & ~(1 << p)
                assert isinstance(punct, DownSet)

    def test_directedness(self, chain2, antichain2, vee, empty):
        assert chain2.is_downward_directed()
        assert not antichain2.is_downward_directed()
        assert vee.is_downward_directed()
        assert not empty.is_downward_directed()

    def test_covers_skip_implied_pairs(self, chain3):
        a, b, c = (chain3.index(x) for x in "abc")
        assert chain3.covers() == ((a, b), (b, c))


class TestDownsets:
    def test_singleton_downsets(self, singleton):
        assert [d.labels() for d in singleton.downsets()] == [(), ("a",)]

    def test_chain_downsets(self, chain2):
        assert [d.labels() for d in chain2.downsets()] == [(), ("a",), ("a", "b")]

    def test_antichain_has_four_downsets(self, antichain2):
        assert len(antichain2.downsets()) == 4

    def test_canonical_order_is_cardinality_then_mask(self, diamond):
        masks = diamond.downset_masks()
        keys = [(m.bit_count(), m) for m in masks]
        assert keys == sorted(keys)

    def test_closed_under_meet_join_with_bounds(self, small_posets):
        for poset in small_posets:
            all_masks = set(poset.downset_masks())
            assert 0 in all_masks
            assert (1 << poset.n) - 1 in all_masks
            for a in poset.downsets():
                for b in poset.downsets():
                    assert (a & b).mask in all_masks
                    assert (a | b).mask in all_masks

    def test_sieves_on_chain_top(self, chain2):
        b = chain2.index("b")
        assert [s.labels() for s in chain2.sieves(b)] == [(), ("a",), ("a", "b")]

    def test_sieves_on_minimal_element(self, chain2, antichain2):
        assert [s.labels() for s in chain2.sieves(chain2.index("a"))] == [(), ("a",)]
        assert [s.labels() for s in antichain2.sieves(0)] == [(), ("a",)]

    def test_punctured_is_a_proper_sieve(self, small_posets):
        for poset in small_posets:
            for p in range(poset.n):
                punct = poset.punctured_downset(p)
                assert punct in poset.sieves(p)
                assert punct != poset.principal_downset(p)

    def test_sieve_count_matches_restricted_poset(self, small_posets):
        for poset in small_posets:
            for p in range(poset.n):
                restricted = poset.restrict(poset.principal_downset(p).indices())
                assert len(poset.sieves(p)) == len(restricted.downsets())

    def test_restrict_keeps_order(self, diamond):
        sub = diamond.restrict([diamond.index(x) for x in ("o", "a", "t")])
        assert sub.labels == ("o", "a", "t")
        assert sub.leq(sub.index("o"), sub.index("t"))
        assert not sub.leq(sub.index("t"), sub.index("o"))


class TestSubsets:
    def test_labels_sorted(self, vee):
        s = vee.subset(["c", "a"])
        assert s.labels() == ("a", "c")
        assert s.to_jsonable() == ["a", "c"]

    def test_membership_by_index_or_label(self, chain2):
        assert chain2.subset([1]) == chain2.subset(["b"])

    def test_extensional_equality_and_hash(self, chain2):
        assert chain2.subset("a") == chain2.downset("a")
        assert hash(chain2.subset("a")) == hash(chain2.downset("a"))
        assert chain2.subset("a") != chain2.subset("b")

    def test_subset_of_other_poset_differs(self, chain2, antichain2):
        assert chain2.subset("a") != antichain2.subset("a")

    def test_downset_constructor_rejects_open_set(self, chain2):
        with pytest.raises(ValueError):
            chain2.downset("b")

    def test_is_downset(self, chain2):
        assert chain2.subset([]).is_downset()
        assert chain2.subset("a").is_downset()
        assert not chain2.subset("b").is_downset()

    def test_unknown_member_label(self, chain2):
        with pytest.raises(UnknownLabelError):
            chain2.subset(["q"])

    def test_operators_preserve_downset_type(self, antichain2):
        a, b = antichain2.downset("a"), antichain2.downset("b")
        assert isinstance(a & b, DownSet)
        assert isinstance(a | b, DownSet)
        assert (a | b).labels() == ("a", "b")

    def test_order_is_inclusion(self, chain2):
        assert chain2.subset("a") <= chain2.subset("ab")
        assert not chain2.subset("b") <= chain2.subset("a")

    def test_render(self, chain2):
        assert str(chain2.downset("ab")) == "{a b}"
        assert str(chain2.downset([])) == "{}"

    def test_subsets_cover_the_powerset(self, vee):
        assert len(vee.subsets()) == 8
        assert len({s.mask for s in vee.subsets()}) == 8


class TestEnumeration:
    def test_tiny_counts(self):
        assert len(list(enumerate_posets(0))) == 1
        assert len(list(enumerate_posets(1))) == 1
        assert len(list(enumerate_posets(2))) == 3

    def test_two_point_posets_are_the_expected_three(self):
        seen = set()
        for p in enumerate_posets(2):
            seen.add((p.leq(0, 1), p.leq(1, 0)))
        assert seen == {(False, False), (True, False), (False, True)}

    @pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 3), (3, 19)])
    def test_counts_match_relation_filter(self, n, count):
        assert len(list(enumerate_posets(n))) == count
        assert oracles.count_posets_brute(n) == count

    def test_stream_is_deterministic(self):
        first = [p.down_mask(2) for p in enumerate_posets(3)]
        second = [p.down_mask(2) for p in enumerate_posets(3)]
        assert first == second

    def test_default_cap(self):
        with pytest.raises(CapExceededError):
            list(enumerate_posets(5))

    def test_hard_cap_wins_over_argument(self):
        with pytest.raises(CapExceededError):
            list(enumerate_posets(HARD_STREAM_CAP + 1, cap=HARD_STREAM_CAP + 1))

    def test_negative_size_rejected(self):
        with pytest.raises(ValueError):
            list(enumerate_posets(-1))


@given(posets())
@settings(max_examples=60)
def test_downsets_agree_with_subset_filter(poset):
    labels, le = oracles.order_pairs(poset)
    expected = oracles.downsets_by_filter(labels, le)
    got = {frozenset(d.labels()) for d in poset.downsets()}
    assert got == expected
    assert len(poset.downsets()) == len(expected)


@given(posets())
@settings(max_examples=60)
def test_sieves_agree_with_subset_filter(poset):
    labels, le = oracles.order_pairs(poset)
    for p in range(poset.n):
        expected = oracles.sieves_by_filter(labels, le, labels[p])
        got = {frozenset(s.labels()) for s in poset.sieves(p)}
        assert got == expected


@given(posets())
@settings(max_examples=60)
def test_covers_agree_with_betweenness_scan(poset):
    labels, le = oracles.order_pairs(poset)
    expected = oracles.covers_by_filter(labels, le)
    got = {(labels[p], labels[q]) for p, q in poset.covers()}
    assert got == expected


@given(posets())
@settings(max_examples=60)
def test_directedness_agrees_with_pairwise_scan(poset):
    labels, le = oracles.order_pairs(poset)
    assert poset.is_downward_directed() == oracles.directed_by_scan(labels, le)


@given(posets())
@settings(max_examples=60)
def test_every_downset_is_downward_closed(poset):
    for d in poset.downsets():
        for p in d.indices():
            for q in range(poset.n):
                if poset.leq(q, p):
                    assert q in d.indices()
