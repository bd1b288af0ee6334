"""Finite posets, their downsets, and exhaustive labeled-poset streams.

Elements carry dense integer indices ``0..n-1`` paired with distinct string
labels.  Subsets of the carrier live as bitmasks with element ``i`` at bit
``i``, so the set algebra is single integer instructions and every value has
exactly one encoding.  The canonical order on downsets (and on subsets,
where one is needed) is ascending by (cardinality, mask); every enumeration
in the package emits that order.

All objects here are immutable once built and safe to share across threads;
derived structure (the downset list, sieve lists, covers) is cached on the
poset the first time it is asked for.
"""

from __future__ import annotations

import itertools
import string
from collections.abc import Iterable, Iterator, Sequence

from .errors import (
    CapExceededError,
    CycleDetectedError,
    DuplicateLabelError,
    PosetMismatchError,
    UnknownLabelError,
)

__all__ = [
    "DEFAULT_STREAM_CAP",
    "DownSet",
    "HARD_STREAM_CAP",
    "LATTICE_CAP",
    "Poset",
    "Subset",
    "build_poset",
    "enumerate_posets",
]

LATTICE_CAP = 16        # elements; 2**16 masks is the most the lattice ops will scan
DEFAULT_STREAM_CAP = 4  # labeled-poset streaming default
HARD_STREAM_CAP = 5     # 3**10 candidate relations is the last tractable size


def _bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """A finite partial order on labeled elements.

    ``down[p]`` is the bitmask of the principal downset of ``p`` (everything
    below-or-equal to ``p``); the whole relation is recoverable from it.  The
    constructor insists the data already is a partial order: reflexivity and
    transitivity failures are programming errors (``ValueError``), while a
    broken antisymmetry is reported as :class:`CycleDetectedError` because it
    is what a cyclic user relation closes into.  Use :func:`build_poset` to
    go from raw generating pairs to a poset.
    """

    __slots__ = (
        "n",
        "labels",
        "_down",
        "_up",
        "_index",
        "_hash",
        "_downsets",
        "_dmask_pos",
        "_downset_objs",
        "_sieves",
        "_covers",
    )

    def __init__(self, labels: Sequence[str], down: Sequence[int]):
        labels = tuple(labels)
        down = tuple(down)
        if len(labels) != len(down):
            raise ValueError("labels and relation rows disagree in length")
        index: dict[str, int] = {}
        for i, lab in enumerate(labels):
            if not isinstance(lab, str):
                raise TypeError(f"label {lab!r} is not a string")
            if lab in index:
                raise DuplicateLabelError(lab)
            index[lab] = i
        n = len(labels)
        full = (1 << n) - 1
        for p in range(n):
            row = down[p]
            if row & ~full:
                raise ValueError(f"relation row for {labels[p]!r} is out of range")
            if not row >> p & 1:
                raise ValueError(f"relation is not reflexive at {labels[p]!r}")
        for p in range(n):
            for q in _bits(down[p]):
                if q != p and down[q] >> p & 1:
                    raise CycleDetectedError(labels[min(p, q)], labels[max(p, q)])
                if down[q] & ~down[p]:
                    raise ValueError(
                        f"relation is not transitive at {labels[q]!r} <= {labels[p]!r}"
                    )
        up = [0] * n
        for q in range(n):
            for p in _bits(down[q]):
                up[p] |= 1 << q
        self.n = n
        self.labels = labels
        self._down = down
        self._up = tuple(up)
        self._index = index
        self._hash = hash((labels, down))
        self._downsets = None
        self._dmask_pos = None
        self._downset_objs = None
        self._sieves = {}
        self._covers = None

    # -- basic queries ----------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(label) from None

    def label(self, p: int) -> str:
        return self.labels[p]

    def leq(self, p: int, q: int) -> bool:
        """True iff element ``p`` is below-or-equal to element ``q``."""
        return bool(self._down[q] >> p & 1)

    def down_mask(self, p: int) -> int:
        return self._down[p]

    def up_mask(self, p: int) -> int:
        return self._up[p]

    def principal_downset(self, p: int) -> DownSet:
        return DownSet._wrap(self, self._down[p])

    def punctured_downset(self, p: int) -> DownSet:
        """Everything strictly below ``p``; downward closed by antisymmetry."""
        return DownSet._wrap(self, self._down[p] & ~(1 << p))

    def is_downward_directed(self) -> bool:
        """Nonempty, and every two elements share a lower bound."""
        if self.n == 0:
            return False
        down = self._down
        return all(
            down[p] & down[q]
            for p in range(self.n)
            for q in range(p + 1, self.n)
        )

    def is_downset_mask(self, mask: int) -> bool:
        m = mask
        while m:
            low = m & -m
            if self._down[low.bit_length() - 1] & ~mask:
                return False
            m ^= low
        return True

    # -- derived structure (cached) ---------------------------------------

    def _require_lattice_cap(self) -> None:
        if self.n > LATTICE_CAP:
            raise CapExceededError(
                f"{self.n} elements exceeds the lattice-operation cap {LATTICE_CAP}"
            )

    def downset_masks(self) -> tuple[int, ...]:
        """All downset bitmasks in canonical (cardinality, mask) order."""
        if self._downsets is None:
            self._require_lattice_cap()
            masks = [m for m in range(1 << self.n) if self.is_downset_mask(m)]
            masks.sort(key=lambda m: (m.bit_count(), m))
            self._downsets = tuple(masks)
            self._dmask_pos = {m: i for i, m in enumerate(masks)}
        return self._downsets

    def downset_rank(self, mask: int) -> int:
        """Position of a downset mask in the canonical order."""
        self.downset_masks()
        return self._dmask_pos[mask]

    def downsets(self) -> tuple[DownSet, ...]:
        if self._downset_objs is None:
            self._downset_objs = tuple(
                DownSet._wrap(self, m) for m in self.downset_masks()
            )
        return self._downset_objs

    def sieve_masks(self, p: int) -> tuple[int, ...]:
        """Masks of the sieves on ``p``: downsets contained in its principal downset."""
        cached = self._sieves.get(p)
        if cached is None:
            top = self._down[p]
            cached = tuple(m for m in self.downset_masks() if not m & ~top)
            self._sieves[p] = cached
        return cached

    def sieves(self, p: int) -> tuple[DownSet, ...]:
        return tuple(DownSet._wrap(self, m) for m in self.sieve_masks(p))

    def subsets(self) -> tuple[Subset, ...]:
        """Every subset of the carrier in canonical (cardinality, mask) order."""
        self._require_lattice_cap()
        order = sorted(range(1 << self.n), key=lambda m: (m.bit_count(), m))
        return tuple(Subset._wrap(self, m) for m in order)

    def covers(self) -> tuple[tuple[int, int], ...]:
        """The covering relation (transitive reduction) as index pairs (lower, upper)."""
        if self._covers is None:
            out = []
            for p in range(self.n):
                for q in range(self.n):
                    if p != q and self._down[q] >> p & 1:
                        if self._up[p] & self._down[q] == (1 << p) | (1 << q):
                            out.append((p, q))
            self._covers = tuple(out)
        return self._covers

    def restrict(self, elements: Iterable[int]) -> Poset:
        """The induced sub-poset on the given element indices."""
        elems = sorted(set(elements))
        for e in elems:
            if not 0 <= e < self.n:
                raise ValueError(f"element index {e} out of range")
        labels = tuple(self.labels[e] for e in elems)
        down = []
        for q in elems:
            row = 0
            for i, p in enumerate(elems):
                if self._down[q] >> p & 1:
                    row |= 1 << i
            down.append(row)
        return Poset(labels, down)

    # -- member construction ----------------------------------------------

    def _resolve_mask(self, members: Iterable[str | int]) -> int:
        mask = 0
        for m in members:
            p = self._index.get(m) if isinstance(m, str) else m
            if p is None:
                raise UnknownLabelError(m)
            if not isinstance(p, int) or not 0 <= p < self.n:
                raise ValueError(f"element {m!r} out of range")
            mask |= 1 << p
        return mask

    def subset(self, members: Iterable[str | int] = ()) -> Subset:
        return Subset(self, self._resolve_mask(members))

    def downset(self, members: Iterable[str | int] = ()) -> DownSet:
        return DownSet(self, self._resolve_mask(members))

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Poset):
            return NotImplemented
        return self.labels == other.labels and self._down == other._down

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        rels = " ".join(
            f"{self.labels[p]}<{self.labels[q]}" for p, q in self.covers()
        )
        return f"Poset({' '.join(self.labels)}{'; ' + rels if rels else ''})"


class Subset:
    """A subset of a poset's carrier, stored as a bitmask.

    Equality is extensional: a :class:`Subset` and a :class:`DownSet` over
    the same poset with the same members compare equal.
    """

    __slots__ = ("poset", "mask")

    def __init__(self, poset: Poset, mask: int):
        if not 0 <= mask <= poset.full_mask:
            raise ValueError(f"mask {mask:#x} out of range for n={poset.n}")
        self.poset = poset
        self.mask = mask

    @classmethod
    def _wrap(cls, poset: Poset, mask: int):
        """Trusted constructor: skips validation."""
        obj = object.__new__(cls)
        obj.poset = poset
        obj.mask = mask
        return obj

    @classmethod
    def from_members(cls, poset: Poset, members: Iterable[str | int]):
        return cls(poset, poset._resolve_mask(members))

    def _check(self, other: Subset) -> None:
        if self.poset is not other.poset and self.poset != other.poset:
            raise PosetMismatchError()

    def labels(self) -> tuple[str, ...]:
        """Member labels, sorted lexicographically."""
        return tuple(sorted(self.poset.labels[p] for p in _bits(self.mask)))

    def indices(self) -> tuple[int, ...]:
        return tuple(_bits(self.mask))

    def is_downset(self) -> bool:
        return self.poset.is_downset_mask(self.mask)

    def to_jsonable(self) -> list[str]:
        return list(self.labels())

    def __contains__(self, p: int) -> bool:
        return bool(self.mask >> p & 1)

    def __iter__(self) -> Iterator[int]:
        return _bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __and__(self, other: Subset) -> Subset:
        self._check(other)
        cls = DownSet if isinstance(self, DownSet) and isinstance(other, DownSet) else Subset
        return cls._wrap(self.poset, self.mask & other.mask)

    def __or__(self, other: Subset) -> Subset:
        self._check(other)
        cls = DownSet if isinstance(self, DownSet) and isinstance(other, DownSet) else Subset
        return cls._wrap(self.poset, self.mask | other.mask)

    def __le__(self, other: Subset) -> bool:
        self._check(other)
        return not self.mask & ~other.mask

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subset):
            return NotImplemented
        return self.mask == other.mask and (
            self.poset is other.poset or self.poset == other.poset
        )

    def __hash__(self) -> int:
        return hash((self.poset._hash, self.mask))

    def __str__(self) -> str:
        return "{" + " ".join(self.labels()) + "}"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


class DownSet(Subset):
    """A downward closed subset; the constructor enforces closure."""

    __slots__ = ()

    def __init__(self, poset: Poset, mask: int):
        super().__init__(poset, mask)
        if not poset.is_downset_mask(mask):
            raise ValueError(f"{Subset._wrap(poset, mask)} is not downward closed")


def build_poset(
    labels: Iterable[str], relations: Iterable[tuple[str, str]] = ()
) -> Poset:
    """Build a poset from labels and generating pairs ``(x, y)`` meaning x <= y.

    The relation is closed reflexively and transitively; a pair of distinct
    elements that ends up below each other raises :class:`CycleDetectedError`.
    """
    labels = tuple(labels)
    index: dict[str, int] = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise DuplicateLabelError(lab)
        index[lab] = i
    n = len(labels)
    up = [1 << i for i in range(n)]
    for x, y in relations:
        try:
            i = index[x]
        except KeyError:
            raise UnknownLabelError(x) from None
        try:
            j = index[y]
        except KeyError:
            raise UnknownLabelError(y) from None
        up[i] |= 1 << j
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if up[i] & bit:
                up[i] |= up[k]
    down = [0] * n
    for p in range(n):
        for q in _bits(up[p]):
            down[q] |= 1 << p
    return Poset(labels, down)


def _is_transitive(down: Sequence[int]) -> bool:
    for q in range(len(down)):
        m = down[q]
        t = m
        while t:
            low = t & -t
            if down[low.bit_length() - 1] & ~m:
                return False
            t ^= low
    return True


def enumerate_posets(n: int, cap: int = DEFAULT_STREAM_CAP) -> Iterator[Poset]:
    """Stream every labeled poset on ``n`` elements exactly once.

    Each unordered pair of elements is independently incomparable, ordered
    one way, or ordered the other way; candidates failing transitivity are
    dropped.  The iteration order of those 3**(n choose 2) states is fixed,
    so the stream is deterministic.  Labels are the first ``n`` lowercase
    letters.
    """
    if n < 0:
        raise ValueError("poset size must be nonnegative")
    if n > cap or n > HARD_STREAM_CAP:
        raise CapExceededError(
            f"streaming posets on {n} elements exceeds the cap "
            f"{min(cap, HARD_STREAM_CAP)}"
        )
    labels = tuple(string.ascii_lowercase[:n])
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    base = [1 << i for i in range(n)]
    for states in itertools.product((0, 1, 2), repeat=len(pairs)):
        down = base.copy()
        for (i, j), s in zip(pairs, states):
            if s == 1:
                down[j] |= 1 << i  # i below j
            elif s == 2:
                down[i] |= 1 << j  # j below i
        if _is_transitive(down):
            yield Poset(labels, down)
