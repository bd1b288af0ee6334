"""Conversions tying subsets, nuclei, and Grothendieck topologies together.

For a finite poset the three collections are in bijection.  The six edges
of the triangle:

* subset -> nucleus: j_X(S) = X -> S (Heyting implication);
* nucleus -> subset: the points p outside j(strictly-below p);
* subset -> topology: p is covered by the sieves containing X restricted
  to the cone of p;
* topology -> subset: the points whose only cover is the principal downset;
* nucleus -> topology: p is covered by the sieves S with p in j(S);
* topology -> nucleus: j(S) collects the points where S pulls back to a
  cover.

Two further extractions of the subset from a nucleus are provided because
they are provably equal to the direct one and make good cross-checks: the
composite route through topologies in closed form (for every sieve S on p,
p lands in j(S) exactly when S is the whole cone) and an alternate form
comparing j on the cone of p with and without p.

:func:`verify_triangle` runs the whole law suite on one poset and returns a
:class:`TriangleReport`; counts come only from the independent enumerators,
never from the conversions under test.
"""

from __future__ import annotations

from dataclasses import dataclass
from time import perf_counter
from typing import Any

from .errors import NucleusAxiomError, TopologyAxiomError, TriposetError
from .heyting import implication_mask
from .nucleus import DEFAULT_NUCLEUS_CAP, Nucleus, enumerate_nuclei, validate_nucleus
from .poset import DownSet, Poset, Subset
from .topology import (
    DEFAULT_TOPOLOGY_CAP,
    GrothendieckTopology,
    enumerate_topologies,
    validate_topology,
)

__all__ = [
    "LawResult",
    "TriangleReport",
    "nucleus_to_subset",
    "nucleus_to_subset_alt",
    "nucleus_to_subset_via_topology",
    "nucleus_to_topology",
    "subset_to_nucleus",
    "subset_to_topology",
    "topology_to_nucleus",
    "topology_to_subset",
    "verify_triangle",
]


# -- the six edges ---------------------------------------------------------


def subset_to_nucleus(x: Subset) -> Nucleus:
    """The nucleus S |-> (x -> S)."""
    poset = x.poset
    rank = poset.downset_rank
    table = tuple(
        rank(implication_mask(poset, x.mask, s)) for s in poset.downset_masks()
    )
    return Nucleus(poset, table)


def nucleus_to_subset(j: Nucleus) -> Subset:
    """The points p not swallowed by j applied to everything strictly below p."""
    poset = j.poset
    dmasks = poset.downset_masks()
    rank = poset.downset_rank
    out = 0
    for p in range(poset.n):
        punctured = poset._down[p] & ~(1 << p)
        if not dmasks[j.table[rank(punctured)]] >> p & 1:
            out |= 1 << p
    return Subset._wrap(poset, out)


def nucleus_to_subset_alt(j: Nucleus) -> Subset:
    """Alternate extraction: p where j separates the cone of p from the punctured cone."""
    poset = j.poset
    rank = poset.downset_rank
    out = 0
    for p in range(poset.n):
        cone = poset._down[p]
        if j.table[rank(cone)] != j.table[rank(cone & ~(1 << p))]:
            out |= 1 << p
    return Subset._wrap(poset, out)


def nucleus_to_subset_via_topology(j: Nucleus) -> Subset:
    """Composite extraction in closed form.

    Going nucleus -> topology -> subset asks, for each point p, that the
    principal downset be the only sieve S on p with p in j(S); this
    evaluates that condition directly.
    """
    poset = j.poset
    dmasks = poset.downset_masks()
    rank = poset.downset_rank
    out = 0
    for p in range(poset.n):
        cone = poset._down[p]
        bit = 1 << p
        if all(
            bool(dmasks[j.table[rank(s)]] & bit) == (s == cone)
            for s in poset.sieve_masks(p)
        ):
            out |= bit
    return Subset._wrap(poset, out)


def subset_to_topology(x: Subset) -> GrothendieckTopology:
    """Covers at p are the sieves containing x cut down to the cone of p."""
    poset = x.poset
    fams = []
    for p in range(poset.n):
        need = x.mask & poset._down[p]
        fams.append(tuple(s for s in poset.sieve_masks(p) if not need & ~s))
    return GrothendieckTopology(poset, fams)


def topology_to_subset(J: GrothendieckTopology) -> Subset:
    """The points covered by nothing but their own principal downset."""
    poset = J.poset
    out = 0
    for p in range(poset.n):
        if J.families[p] == (poset._down[p],):
            out |= 1 << p
    return Subset._wrap(poset, out)


def nucleus_to_topology(j: Nucleus) -> GrothendieckTopology:
    """Covers at p are the sieves sent over p by the nucleus."""
    poset = j.poset
    dmasks = poset.downset_masks()
    rank = poset.downset_rank
    fams = []
    for p in range(poset.n):
        bit = 1 << p
        fams.append(
            tuple(s for s in poset.sieve_masks(p) if dmasks[j.table[rank(s)]] & bit)
        )
    return GrothendieckTopology(poset, fams)


def topology_to_nucleus(J: GrothendieckTopology) -> Nucleus:
    """j(S) collects the points where S pulls back to a covering sieve."""
    poset = J.poset
    fam_sets = [set(f) for f in J.families]
    rank = poset.downset_rank
    table = []
    for s in poset.downset_masks():
        m = 0
        for p in range(poset.n):
            if s & poset._down[p] in fam_sets[p]:
                m |= 1 << p
        table.append(rank(m))
    return Nucleus(poset, table)


# -- the verifier ----------------------------------------------------------


@dataclass(frozen=True)
class LawResult:
    name: str
    passed: bool
    witness: dict[str, Any] | None = None

    def to_jsonable(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "witness": self.witness}


@dataclass(frozen=True)
class TriangleReport:
    """Outcome of the full law suite on one poset."""

    poset: Poset
    directed: bool
    counts: dict[str, int]
    laws: tuple[LawResult, ...]
    elapsed_seconds: float

    @property
    def all_passed(self) -> bool:
        return all(law.passed for law in self.laws)

    def failures(self) -> tuple[LawResult, ...]:
        return tuple(law for law in self.laws if not law.passed)

    def to_jsonable(self) -> dict[str, Any]:
        poset = self.poset
        return {
            "poset": {
                "n": poset.n,
                "labels": list(poset.labels),
                "covers": [
                    [poset.labels[p], poset.labels[q]] for p, q in poset.covers()
                ],
            },
            "directed": self.directed,
            "counts": dict(self.counts),
            "laws": [law.to_jsonable() for law in self.laws],
            "passed": self.all_passed,
            "elapsed_seconds": self.elapsed_seconds,
        }


def _law(name, finder) -> LawResult:
    witness = finder()
    return LawResult(name, witness is None, witness)


def verify_triangle(
    poset: Poset,
    *,
    nucleus_cap: int = DEFAULT_NUCLEUS_CAP,
    topology_cap: int = DEFAULT_TOPOLOGY_CAP,
) -> TriangleReport:
    """Exhaustively check every triangle law on one poset.

    Round trips and commutation are checked over all 2^n subsets; the
    identity laws over every enumerated nucleus; counts and bijections
    against the independent axiom-census enumerators.  A failing law
    records a minimal witness and the remaining laws still run.
    """
    t0 = perf_counter()
    n = poset.n
    subsets = poset.subsets()
    nuclei = enumerate_nuclei(poset, cap=nucleus_cap)
    topologies = enumerate_topologies(poset, cap=topology_cap)
    counts = {
        "subsets": len(subsets),
        "nuclei": len(nuclei),
        "topologies": len(topologies),
    }

    def roundtrip_subset_nucleus():
        for x in subsets:
            got = nucleus_to_subset(subset_to_nucleus(x))
            if got != x:
                return {"subset": x.to_jsonable(), "got": got.to_jsonable()}
        return None

    def roundtrip_subset_topology():
        for x in subsets:
            got = topology_to_subset(subset_to_topology(x))
            if got != x:
                return {"subset": x.to_jsonable(), "got": got.to_jsonable()}
        return None

    def roundtrip_nucleus():
        for j in nuclei:
            got = subset_to_nucleus(nucleus_to_subset(j))
            if got != j:
                return {"nucleus": j.to_jsonable(), "got": got.to_jsonable()}
        return None

    def roundtrip_topology():
        for J in topologies:
            got = subset_to_topology(topology_to_subset(J))
            if got != J:
                return {"topology": J.to_jsonable(), "got": got.to_jsonable()}
        return None

    def roundtrip_nucleus_topology():
        for j in nuclei:
            got = topology_to_nucleus(nucleus_to_topology(j))
            if got != j:
                return {"nucleus": j.to_jsonable(), "got": got.to_jsonable()}
        return None

    def roundtrip_topology_nucleus():
        for J in topologies:
            got = nucleus_to_topology(topology_to_nucleus(J))
            if got != J:
                return {"topology": J.to_jsonable(), "got": got.to_jsonable()}
        return None

    def commute_via_nucleus():
        for x in subsets:
            got = nucleus_to_topology(subset_to_nucleus(x))
            want = subset_to_topology(x)
            if got != want:
                return {
                    "subset": x.to_jsonable(),
                    "via_nucleus": got.to_jsonable(),
                    "direct": want.to_jsonable(),
                }
        return None

    def commute_via_topology():
        for x in subsets:
            got = topology_to_nucleus(subset_to_topology(x))
            want = subset_to_nucleus(x)
            if got != want:
                return {
                    "subset": x.to_jsonable(),
                    "via_topology": got.to_jsonable(),
                    "direct": want.to_jsonable(),
                }
        return None

    def _extraction_agreement(other):
        for i, j in enumerate(nuclei):
            direct = nucleus_to_subset(j)
            got = other(j)
            if got != direct:
                diff = direct.mask ^ got.mask
                p = (diff & -diff).bit_length() - 1
                return {
                    "nucleus": j.to_jsonable(),
                    "direct": direct.to_jsonable(),
                    "other": got.to_jsonable(),
                    "first_difference": poset.labels[p],
                    "nucleus_index": i,
                }
        return None

    def identity_composite():
        return _extraction_agreement(nucleus_to_subset_via_topology)

    def identity_alt():
        return _extraction_agreement(nucleus_to_subset_alt)

    def composite_cross_check():
        for j in nuclei:
            literal = topology_to_subset(nucleus_to_topology(j))
            closed = nucleus_to_subset_via_topology(j)
            if literal != closed:
                return {
                    "nucleus": j.to_jsonable(),
                    "literal": literal.to_jsonable(),
                    "closed_form": closed.to_jsonable(),
                }
        return None

    def nucleus_count():
        if len(nuclei) != 1 << n:
            return {"expected": 1 << n, "got": len(nuclei)}
        return None

    def topology_count():
        if len(topologies) != 1 << n:
            return {"expected": 1 << n, "got": len(topologies)}
        return None

    def nucleus_bijection():
        image = {subset_to_nucleus(x) for x in subsets}
        if len(image) != len(subsets):
            return {"reason": "not injective", "image_size": len(image)}
        if image != set(nuclei):
            return {"reason": "image differs from enumeration"}
        return None

    def topology_bijection():
        image = {subset_to_topology(x) for x in subsets}
        if len(image) != len(subsets):
            return {"reason": "not injective", "image_size": len(image)}
        if image != set(topologies):
            return {"reason": "image differs from enumeration"}
        return None

    def _validity(values, validator, serialize):
        for v in values:
            try:
                validator(v)
            except (NucleusAxiomError, TopologyAxiomError, TriposetError) as exc:
                return {"input": serialize(v), "error": str(exc), "kind": type(exc).__name__}
        return None

    def subset_to_nucleus_valid():
        return _validity(
            subsets,
            lambda x: validate_nucleus(poset, dict(subset_to_nucleus(x).pairs())),
            lambda x: x.to_jsonable(),
        )

    def subset_to_topology_valid():
        return _validity(
            subsets,
            lambda x: validate_topology(
                poset, [subset_to_topology(x).sieves_at(p) for p in range(n)]
            ),
            lambda x: x.to_jsonable(),
        )

    def nucleus_to_topology_valid():
        return _validity(
            nuclei,
            lambda j: validate_topology(
                poset, [nucleus_to_topology(j).sieves_at(p) for p in range(n)]
            ),
            lambda j: j.to_jsonable(),
        )

    def topology_to_nucleus_valid():
        return _validity(
            topologies,
            lambda J: validate_nucleus(poset, dict(topology_to_nucleus(J).pairs())),
            lambda J: J.to_jsonable(),
        )

    laws = (
        _law("subset_nucleus_roundtrip", roundtrip_subset_nucleus),
        _law("subset_topology_roundtrip", roundtrip_subset_topology),
        _law("nucleus_roundtrip", roundtrip_nucleus),
        _law("topology_roundtrip", roundtrip_topology),
        _law("nucleus_topology_roundtrip", roundtrip_nucleus_topology),
        _law("topology_nucleus_roundtrip", roundtrip_topology_nucleus),
        _law("triangle_commutes_via_nucleus", commute_via_nucleus),
        _law("triangle_commutes_via_topology", commute_via_topology),
        _law("identity_composite", identity_composite),
        _law("identity_alt", identity_alt),
        _law("composite_cross_check", composite_cross_check),
        _law("nucleus_count", nucleus_count),
        _law("topology_count", topology_count),
        _law("nucleus_bijection", nucleus_bijection),
        _law("topology_bijection", topology_bijection),
        _law("subset_to_nucleus_valid", subset_to_nucleus_valid),
        _law("subset_to_topology_valid", subset_to_topology_valid),
        _law("nucleus_to_topology_valid", nucleus_to_topology_valid),
        _law("topology_to_nucleus_valid", topology_to_nucleus_valid),
    )
    return TriangleReport(
        poset=poset,
        directed=poset.is_downward_directed(),
        counts=counts,
        laws=laws,
        elapsed_seconds=perf_counter() - t0,
    )
