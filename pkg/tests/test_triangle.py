import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import posets
from triposet import (
    CapExceededError,
    enumerate_nuclei,
    enumerate_topologies,
    nucleus_to_subset,
    nucleus_to_subset_alt,
    nucleus_to_subset_via_topology,
    nucleus_to_topology,
    subset_to_nucleus,
    subset_to_topology,
    top,
    topology_to_nucleus,
    topology_to_subset,
    validate_nucleus,
    validate_topology,
    verify_triangle,
)

LAW_NAMES = [
    "subset_nucleus_roundtrip",
    "subset_topology_roundtrip",
    "nucleus_roundtrip",
    "topology_roundtrip",
    "nucleus_topology_roundtrip",
    "topology_nucleus_roundtrip",
    "triangle_commutes_via_nucleus",
    "triangle_commutes_via_topology",
    "identity_composite",
    "identity_alt",
    "composite_cross_check",
    "nucleus_count",
    "topology_count",
    "nucleus_bijection",
    "topology_bijection",
    "subset_to_nucleus_valid",
    "subset_to_topology_valid",
    "nucleus_to_topology_valid",
    "topology_to_nucleus_valid",
]


def identity_nucleus(poset):
    return validate_nucleus(poset, {d: d for d in poset.downsets()})


def constant_top_nucleus(poset):
    t = top(poset)
    return validate_nucleus(poset, {d: t for d in poset.downsets()})


def smallest_topology(poset):
    return validate_topology(
        poset, [[poset.principal_downset(p)] for p in range(poset.n)]
    )


def largest_topology(poset):
    return validate_topology(poset, [poset.sieves(p) for p in range(poset.n)])


class TestSubsetToNucleus:
    def test_full_subset_gives_identity(self, chain3):
        j = subset_to_nucleus(chain3.subset("abc"))
        assert j == identity_nucleus(chain3)

    def test_empty_subset_gives_constant_top(self, chain3):
        j = subset_to_nucleus(chain3.subset([]))
        assert j == constant_top_nucleus(chain3)

    def test_marked_top_of_chain(self, chain2):
        j = subset_to_nucleus(chain2.subset("b"))
        got = [(s.labels(), img.labels()) for s, img in j.pairs()]
        assert got == [((), ("a",)), (("a",), ("a",)), (("a", "b"), ("a", "b"))]


class TestNucleusToSubset:
    def test_identity_marks_everything(self, chain3):
        assert nucleus_to_subset(identity_nucleus(chain3)) == chain3.subset("abc")

    def test_constant_top_marks_nothing(self, chain3):
        assert nucleus_to_subset(constant_top_nucleus(chain3)) == chain3.subset([])

    def test_round_trip_through_nucleus(self, chain2):
        x = chain2.subset("b")
        assert nucleus_to_subset(subset_to_nucleus(x)) == x

    def test_alternate_reading_on_extremes(self, chain3):
        assert nucleus_to_subset_alt(identity_nucleus(chain3)) == chain3.subset("abc")
        assert nucleus_to_subset_alt(constant_top_nucleus(chain3)) == chain3.subset([])

    def test_via_covering_families_on_extremes(self, chain3):
        got = nucleus_to_subset_via_topology(identity_nucleus(chain3))
        assert got == chain3.subset("abc")
        got = nucleus_to_subset_via_topology(constant_top_nucleus(chain3))
        assert got == chain3.subset([])


class TestSubsetToTopology:
    def test_full_subset_gives_smallest(self, chain3):
        assert subset_to_topology(chain3.subset("abc")) == smallest_topology(chain3)

    def test_empty_subset_gives_largest(self, chain3):
        assert subset_to_topology(chain3.subset([])) == largest_topology(chain3)

    def test_marked_top_of_chain(self, chain2):
        J = subset_to_topology(chain2.subset("b"))
        a, b = chain2.index("a"), chain2.index("b")
        assert [s.labels() for s in J.sieves_at(a)] == [(), ("a",)]
        assert [s.labels() for s in J.sieves_at(b)] == [("a", "b")]


class TestTopologyToSubset:
    def test_smallest_marks_everything(self, chain3):
        assert topology_to_subset(smallest_topology(chain3)) == chain3.subset("abc")

    def test_largest_marks_nothing(self, chain3):
        assert topology_to_subset(largest_topology(chain3)) == chain3.subset([])

    def test_round_trip_through_topology(self, chain2):
        x = chain2.subset("b")
        assert topology_to_subset(subset_to_topology(x)) == x


class TestNucleusTopologyEdge:
    def test_identity_gives_smallest(self, chain3):
        assert nucleus_to_topology(identity_nucleus(chain3)) == smallest_topology(chain3)

    def test_constant_top_gives_largest(self, chain3):
        assert nucleus_to_topology(constant_top_nucleus(chain3)) == largest_topology(chain3)

    def test_commutes_with_direct_construction(self, chain2):
        x = chain2.subset("b")
        assert nucleus_to_topology(subset_to_nucleus(x)) == subset_to_topology(x)

    def test_smallest_gives_identity(self, chain3):
        assert topology_to_nucleus(smallest_topology(chain3)) == identity_nucleus(chain3)

    def test_largest_gives_constant_top(self, chain3):
        assert topology_to_nucleus(largest_topology(chain3)) == constant_top_nucleus(chain3)

    def test_empty_downset_lands_on_the_unmarked_part(self, chain2):
        J = subset_to_topology(chain2.subset("b"))
        j = topology_to_nucleus(J)
        assert j(chain2.downset([])) == chain2.downset("a")

    def test_edge_round_trips(self, vee):
        for j in enumerate_nuclei(vee):
            assert topology_to_nucleus(nucleus_to_topology(j)) == j
        for J in enumerate_topologies(vee):
            assert nucleus_to_topology(topology_to_nucleus(J)) == J


class TestExtractionIdentities:
    def test_three_readings_agree_on_fixtures(self, small_posets):
        for poset in small_posets:
            for j in enumerate_nuclei(poset):
                direct = nucleus_to_subset(j)
                assert nucleus_to_subset_alt(j) == direct
                assert nucleus_to_subset_via_topology(j) == direct

    def test_composite_matches_quantified_form(self, small_posets):
        for poset in small_posets:
            for j in enumerate_nuclei(poset):
                composed = topology_to_subset(nucleus_to_topology(j))
                assert composed == nucleus_to_subset_via_topology(j)


class TestVerify:
    def test_empty_poset_counts(self, empty):
        report = verify_triangle(empty)
        assert report.all_passed
        assert report.counts == {"subsets": 1, "nuclei": 1, "topologies": 1}

    def test_chain_counts(self, chain2):
        report = verify_triangle(chain2)
        assert report.all_passed
        assert report.counts == {"subsets": 4, "nuclei": 4, "topologies": 4}

    def test_all_laws_present_in_order(self, singleton):
        report = verify_triangle(singleton)
        assert [law.name for law in report.laws] == LAW_NAMES

    def test_passing_laws_carry_no_witness(self, vee):
        report = verify_triangle(vee)
        for law in report.laws:
            assert law.passed
            assert law.witness is None
        assert report.failures() == ()

    def test_non_directed_posets_still_verify(self, antichain2):
        report = verify_triangle(antichain2)
        assert not report.directed
        assert report.all_passed

    def test_directed_flag(self, chain2):
        assert verify_triangle(chain2).directed

    def test_elapsed_is_recorded(self, singleton):
        assert verify_triangle(singleton).elapsed_seconds >= 0

    def test_report_is_json_ready(self, chain2):
        report = verify_triangle(chain2)
        data = report.to_jsonable()
        text = json.dumps(data)
        parsed = json.loads(text)
        assert parsed["poset"]["labels"] == ["a", "b"]
        assert parsed["poset"]["n"] == 2
        assert parsed["poset"]["covers"] == [["a", "b"]]
        assert parsed["counts"] == {"subsets": 4, "nuclei": 4, "topologies": 4}
        assert parsed["directed"] is True
        assert parsed["passed"] is True
        assert {law["name"] for law in parsed["laws"]} == set(LAW_NAMES)

    def test_caps_are_forwarded(self, chain2):
        with pytest.raises(CapExceededError):
            verify_triangle(chain2, nucleus_cap=2)
        with pytest.raises(CapExceededError):
            verify_triangle(chain2, topology_cap=1)


class TestBijections:
    def test_nucleus_map_hits_the_census_exactly(self, small_posets):
        for poset in small_posets:
            images = {subset_to_nucleus(x) for x in poset.subsets()}
            census = set(enumerate_nuclei(poset))
            assert images == census
            assert len(images) == 2 ** poset.n

    def test_topology_map_hits_the_census_exactly(self, small_posets):
        for poset in small_posets:
            images = {subset_to_topology(x) for x in poset.subsets()}
            census = set(enumerate_topologies(poset))
            assert images == census
            assert len(images) == 2 ** poset.n


@given(posets(max_n=3), st.data())
@settings(max_examples=60)
def test_subset_round_trips_both_ways(poset, data):
    x = data.draw(st.sampled_from(poset.subsets()))
    assert nucleus_to_subset(subset_to_nucleus(x)) == x
    assert topology_to_subset(subset_to_topology(x)) == x


@given(posets(max_n=3), st.data())
@settings(max_examples=40)
def test_conversion_outputs_validate(poset, data):
    x = data.draw(st.sampled_from(poset.subsets()))
    j = subset_to_nucleus(x)
    validate_nucleus(poset, dict(j.pairs()))
    J = subset_to_topology(x)
    validate_topology(poset, [J.sieves_at(p) for p in range(poset.n)])
    J2 = nucleus_to_topology(j)
    validate_topology(poset, [J2.sieves_at(p) for p in range(poset.n)])
    j2 = topology_to_nucleus(J)
    validate_nucleus(poset, dict(j2.pairs()))
