"""Grothendieck topologies on a finite poset.

A topology assigns to every point ``p`` a family J(p) of sieves on ``p``
(downsets contained in the principal downset of ``p``) subject to:

* maximality: the principal downset itself is in J(p);
* stability: S in J(p) and q <= p imply S intersect (down q) in J(q);
* transitivity: if S in J(p) and R is a sieve on p whose pullback to every
  q in S lies in J(q), then R in J(p).

Families are stored per point as tuples of sieve masks in canonical order.
Like the nucleus module, the enumeration here works from the axioms alone
and is intentionally independent of any conversion routines.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence

from .errors import (
    CapExceededError,
    MissingMaximalError,
    NotASieveError,
    PosetMismatchError,
    StabilityFailError,
    TransitivityFailError,
)
from .poset import DownSet, Poset, Subset, _bits

__all__ = [
    "DEFAULT_TOPOLOGY_CAP",
    "GrothendieckTopology",
    "enumerate_topologies",
    "validate_topology",
]

DEFAULT_TOPOLOGY_CAP = 5  # poset size; the family product explodes beyond this


def _canon(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(masks), key=lambda m: (m.bit_count(), m)))


class GrothendieckTopology:
    """Per-point covering families over a fixed poset.

    ``families[p]`` holds the sieve masks covering point ``p``, canonically
    ordered.  Instances are normalized on construction; axiom checking
    lives in :func:`validate_topology`.
    """

    __slots__ = ("poset", "families")

    def __init__(self, poset: Poset, families: Sequence[Iterable[int]]):
        if len(families) != poset.n:
            raise ValueError(
                f"{len(families)} families for a poset with {poset.n} elements"
            )
        self.poset = poset
        self.families = tuple(_canon(f) for f in families)

    def family_masks(self, p: int) -> tuple[int, ...]:
        return self.families[p]

    def sieves_at(self, p: int) -> tuple[DownSet, ...]:
        """The covering family at ``p`` in canonical order."""
        return tuple(DownSet._wrap(self.poset, m) for m in self.families[p])

    def to_jsonable(self) -> dict[str, list[list[str]]]:
        return {
            self.poset.labels[p]: [
                DownSet._wrap(self.poset, m).to_jsonable() for m in self.families[p]
            ]
            for p in range(self.poset.n)
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrothendieckTopology):
            return NotImplemented
        return self.families == other.families and (
            self.poset is other.poset or self.poset == other.poset
        )

    def __hash__(self) -> int:
        return hash((self.poset._hash, self.families))

    def __repr__(self) -> str:
        parts = []
        for p in range(self.poset.n):
            sieves = " ".join(str(s) for s in self.sieves_at(p))
            parts.append(f"{self.poset.labels[p]}: {sieves}")
        return f"GrothendieckTopology({'; '.join(parts)})"


def validate_topology(
    poset: Poset,
    families: Sequence[Iterable[Subset]] | Mapping[str, Iterable[Subset]],
) -> GrothendieckTopology:
    """Check covering families against the topology axioms and wrap them.

    ``families`` is indexed by element, either positionally or as a mapping
    from labels; every element must be present (``ValueError`` otherwise).
    Axioms are checked in the order: sieve-hood of every listed set,
    maximality, stability, transitivity; the first violation raises with
    point and sieve witnesses, scanning points ascending and sieves in
    canonical order.
    """
    if isinstance(families, Mapping):
        seq: list[Iterable[Subset]] = [None] * poset.n  # type: ignore[list-item]
        for label, fam in families.items():
            i = poset.index(label)
            if seq[i] is not None:
                raise ValueError(f"family for {label!r} listed twice")
            seq[i] = fam
        missing = [poset.labels[i] for i, f in enumerate(seq) if f is None]
        if missing:
            raise ValueError(f"no covering family for {missing[0]!r}")
        families = seq
    elif len(families) != poset.n:
        raise ValueError(
            f"{len(families)} families for a poset with {poset.n} elements"
        )

    down = poset._down
    fam_masks: list[tuple[int, ...]] = []
    for p in range(poset.n):
        entries = []
        for s in families[p]:
            if s.poset is not poset and s.poset != poset:
                raise PosetMismatchError("sieve belongs to a different poset")
            entries.append(s.mask)
        entries = _canon(entries)
        for m in entries:
            if m & ~down[p] or not poset.is_downset_mask(m):
                raise NotASieveError(poset.labels[p], Subset._wrap(poset, m))
        fam_masks.append(entries)

    fam_sets = [set(f) for f in fam_masks]
    for p in range(poset.n):
        if down[p] not in fam_sets[p]:
            raise MissingMaximalError(poset.labels[p])
    for p in range(poset.n):
        for s in fam_masks[p]:
            for q in _bits(down[p]):
                if q != p and s & down[q] not in fam_sets[q]:
                    raise StabilityFailError(
                        poset.labels[p], poset.labels[q], DownSet._wrap(poset, s)
                    )
    for p in range(poset.n):
        for r in poset.sieve_masks(p):
            if r in fam_sets[p]:
                continue
            for s in fam_masks[p]:
                if all(r & down[q] in fam_sets[q] for q in _bits(s)):
                    raise TransitivityFailError(
                        poset.labels[p],
                        DownSet._wrap(poset, s),
                        DownSet._wrap(poset, r),
                    )
    return GrothendieckTopology(poset, fam_masks)


def enumerate_topologies(
    poset: Poset, cap: int = DEFAULT_TOPOLOGY_CAP
) -> list[GrothendieckTopology]:
    """Every Grothendieck topology on the poset, in canonical order.

    Points are processed along a linear extension (everything below a point
    first), so when a family is chosen for ``p`` all of its stability
    constraints point at already-fixed families and are enforced on the
    spot: only sieves whose pullbacks are all covered remain candidates.
    Within a point, families are the upward-closed subsets of the allowed
    sieves that contain the maximal sieve.  Upward closure is forced by the
    axioms (a superset of a covering sieve pulls back to whole principal
    downsets, which maximality covers), so restricting to it loses nothing;
    it just keeps the family count near the answer instead of near the
    powerset.  Transitivity does not localize, so it is checked globally on
    each completed assignment.
    """
    n = poset.n
    if n > cap:
        raise CapExceededError(
            f"{n} elements exceeds the topology enumeration cap {cap}"
        )
    down = poset._down
    order = sorted(range(n), key=lambda p: (down[p].bit_count(), p))
    sieves = [poset.sieve_masks(p) for p in range(n)]
    fam: list[set[int] | None] = [None] * n
    results: list[GrothendieckTopology] = []

    def families_at(p: int) -> list[frozenset[int]]:
        full = down[p]
        below = [q for q in _bits(full) if q != p]
        allowed = [
            s
            for s in sieves[p]
            if s == full or all(s & down[q] in fam[q] for q in below)
        ]
        # supersets first, so including a sieve can insist on its strict supersets
        elems = sorted(allowed, key=lambda m: (-m.bit_count(), m))
        m = len(elems)
        need = [
            [a for a in range(k) if elems[a] != elems[k] and not elems[k] & ~elems[a]]
            for k in range(m)
        ]
        chosen = [False] * m
        fams: list[frozenset[int]] = []

        def rec(k: int) -> None:
            if k == m:
                fams.append(frozenset(e for e, c in zip(elems, chosen) if c))
                return
            if all(chosen[a] for a in need[k]):
                chosen[k] = True
                rec(k + 1)
                chosen[k] = False
            if elems[k] != full:  # the maximal sieve is mandatory
                rec(k + 1)

        rec(0)
        return fams

    def transitive() -> bool:
        for p in range(n):
            fp = fam[p]
            for r in sieves[p]:
                if r in fp:
                    continue
                for s in fp:
                    if all(r & down[q] in fam[q] for q in _bits(s)):
                        return False
        return True

    def rec_points(idx: int) -> None:
        if idx == n:
            if transitive():
                results.append(
                    GrothendieckTopology(poset, [tuple(fam[p]) for p in range(n)])
                )
            return
        p = order[idx]
        for f in families_at(p):
            fam[p] = f
            rec_points(idx + 1)
        fam[p] = None

    rec_points(0)
    results.sort(key=lambda t: t.families)
    return results
