"""Explicit hitting set machinery: subset families, feasibility, exact and greedy solvers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class HittingSet:
    """A candidate hitting set as a sorted tuple of element ids."""

    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    @staticmethod
    def of(elements: Iterable[int]) -> "HittingSet":
        return HittingSet(tuple(sorted(set(elements))))


class SubsetFamily:
    """A growing, duplicate-free list of nonempty subsets of ``0..universe_size-1``.

    Duplicate insertions are silently ignored; an empty subset is rejected
    because it would make every instance infeasible.
    """

    def __init__(self, universe_size: int, subsets: Iterable[Iterable[int]] = ()):
        if universe_size < 0:
            raise ValueError("universe size must be nonnegative")
        self.universe_size = universe_size
        self.subsets: list[tuple[int, ...]] = []
        self._seen: set[tuple[int, ...]] = set()
        for s in subsets:
            self.add(s)

    def add(self, subset: Iterable[int]) -> bool:
        """Append ``subset``; returns False when it was already present."""
        canon = tuple(sorted(set(subset)))
        if not canon:
            raise ValueError("empty subsets are infeasible and cannot be inserted")
        if canon[0] < 0 or canon[-1] >= self.universe_size:
            raise ValueError(f"element out of range [0, {self.universe_size})")
        if canon in self._seen:
            return False
        self._seen.add(canon)
        self.subsets.append(canon)
        return True

    def __len__(self) -> int:
        return len(self.subsets)

    def __iter__(self):
        return iter(self.subsets)

    def __contains__(self, subset) -> bool:
        return tuple(sorted(set(subset))) in self._seen

    def masks(self) -> list[int]:
        return [_mask(s) for s in self.subsets]


def _mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def _unmask(m: int) -> tuple[int, ...]:
    out = []
    e = 0
    while m:
        if m & 1:
            out.append(e)
        m >>= 1
        e += 1
    return tuple(out)


def hits_all(h: Iterable[int], fam: SubsetFamily) -> bool:
    """True iff ``h`` intersects every subset in the family (vacuously true when empty)."""
    hs = set(h)
    return all(not hs.isdisjoint(s) for s in fam.subsets)


def greedy_hitting_set(fam: SubsetFamily, order: Sequence[int] | None = None) -> HittingSet:
    """Process subsets in ``order`` (defaults to insertion order); whenever the
    current subset is unhit, take all of its elements.

    The result hits every processed subset, and when every subset has at most
    k elements it is within a factor k of optimal.
    """
    idxs = range(len(fam)) if order is None else order
    chosen: set[int] = set()
    for i in idxs:
        s = fam.subsets[i]
        if chosen.isdisjoint(s):
            chosen.update(s)
    return HittingSet.of(chosen)


def _drop_supersets(masks: list[int]) -> list[int]:
    # hitting a subset also hits its supersets, so only minimal subsets matter
    masks = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in masks:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def _greedy_cover_size(masks: list[int]) -> int:
    remaining = list(masks)
    size = 0
    while remaining:
        counts: dict[int, int] = {}
        for m in remaining:
            mm = m
            while mm:
                low = mm & -mm
                e = low.bit_length() - 1
                counts[e] = counts.get(e, 0) + 1
                mm ^= low
        best = max(counts.items(), key=lambda kv: (kv[1], -kv[0]))[0]
        remaining = [m for m in remaining if not (m >> best) & 1]
        size += 1
    return size


def _disjoint_lower_bound(masks: list[int]) -> int:
    used = 0
    lb = 0
    for m in masks:
        if not m & used:
            lb += 1
            used |= m
    return lb


def _element_order(masks: list[int], pick_mask: int) -> list[int]:
    # elements of the branching subset, most-covering first, ties by id
    counts: dict[int, int] = {}
    for e in _unmask(pick_mask):
        counts[e] = sum(1 for m in masks if (m >> e) & 1)
    return sorted(counts, key=lambda e: (-counts[e], e))


def _min_cover_size(masks: list[int], depth: int, best: int) -> int:
    if not masks:
        return depth
    if depth + _disjoint_lower_bound(masks) >= best:
        return best
    pick = min(masks, key=lambda m: m.bit_count())
    for e in _element_order(masks, pick):
        rest = [m for m in masks if not (m >> e) & 1]
        best = _min_cover_size(rest, depth + 1, best)
    return best


def _cover_exists(masks: list[int], budget: int) -> bool:
    if not masks:
        return True
    if budget <= 0 or any(m == 0 for m in masks):
        return False
    if _disjoint_lower_bound(masks) > budget:
        return False
    pick = min(masks, key=lambda m: m.bit_count())
    for e in _element_order(masks, pick):
        rest = [m for m in masks if not (m >> e) & 1]
        if _cover_exists(rest, budget - 1):
            return True
    return False


def exact_min_hitting_set(fam: SubsetFamily) -> HittingSet:
    """Minimum-cardinality hitting set; among optima, the lexicographically
    smallest sorted member list.

    Branch and bound over element inclusion with a greedy upper bound and a
    pairwise-disjoint lower bound, followed by a lexicographic reconstruction
    at the proven optimum size.
    """
    masks = _drop_supersets(fam.masks())
    if not masks:
        return HittingSet(())
    ub = _greedy_cover_size(masks)
    opt = _min_cover_size(masks, 0, ub)

    chosen: list[int] = []
    remaining = masks
    budget = opt
    floor_elem = 0
    while remaining:
        placed = False
        for e in range(floor_elem, fam.universe_size):
            if not any((m >> e) & 1 for m in remaining):
                continue
            rest = [m for m in remaining if not (m >> e) & 1]
            low_bits = (1 << (e + 1)) - 1
            if _cover_exists([m & ~low_bits for m in rest], budget - 1):
                chosen.append(e)
                remaining = rest
                budget -= 1
                floor_elem = e + 1
                placed = True
                break
        if not placed:  # cannot happen at the proven optimum
            raise RuntimeError("lexicographic reconstruction failed")
    return HittingSet(tuple(chosen))
