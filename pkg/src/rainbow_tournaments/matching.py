"""Bipartite matching between arc slots and colors.

Availability is passed as one bitmask per slot (bit c set = color c usable).
Kuhn's augmenting-path algorithm is enough at the sizes this package works
with; the incremental variant keeps per-depth snapshots so backtracking
search can push and pop slots in O(current matching size).
"""

from __future__ import annotations

from typing import Optional, Sequence

__all__ = [
    "max_matching",
    "perfect_matching",
    "matching_with_forced_colors",
    "IncrementalMatcher",
]


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _try_augment(
    slot: int,
    avail: Sequence[int],
    match_of_slot: list[int],
    match_of_color: dict[int, int],
    visited: set[int],
) -> bool:
    for c in _iter_bits(avail[slot]):
        if c in visited:
            continue
        visited.add(c)
        holder = match_of_color.get(c)
        if holder is None or _try_augment(
            holder, avail, match_of_slot, match_of_color, visited
        ):
            match_of_color[c] = slot
            match_of_slot[slot] = c
            return True
    return False


def max_matching(avail: Sequence[int]) -> list[int]:
    """Maximum matching; returns color per slot (-1 = unmatched)."""
    match_of_slot = [-1] * len(avail)
    match_of_color: dict[int, int] = {}
    for s in range(len(avail)):
        _try_augment(s, avail, match_of_slot, match_of_color, set())
    return match_of_slot

def perfect_matching(avail: Sequence[int]) -> Optional[list[int]]:
    """A matching saturating every slot, or None."""
    match_of_slot = [-1] * len(avail)
    match_of_color: dict[int, int] = {}
    for s in range(len(avail)):
        if not _try_augment(s, avail, match_of_slot, match_of_color, set()):
            return None
    return match_of_slot


def matching_with_forced_colors(
    avail: Sequence[int], forced: Sequence[int]
) -> Optional[list[int]]:
    """A slot-saturating matching that uses every forced color.

    Phase 1 augments from the forced colors (color side), phase 2 from the
    still-unmatched slots.  Augmenting paths never unmatch a matched vertex,
    so forced colors stay used; by the transversal-matroid exchange property
    the two phases find a witness whenever one exists.
    """
    nslots = len(avail)
    forced = list(dict.fromkeys(forced))
    if len(forced) > nslots:
        return None
    match_of_slot = [-1] * nslots
    match_of_color: dict[int, int] = {}

    slots_of_color: dict[int, list[int]] = {c: [] for c in forced}
    for s, mask in enumerate(avail):
        for c in forced:
            if (mask >> c) & 1:
                slots_of_color[c].append(s)

    def augment_color(c: int, visited_slots: set[int]) -> bool:
        # Kuhn from the color side; during phase 1 every occupied slot is
        # held by another forced color, which may itself be relocated.
        for s in slots_of_color[c]:
            if s in visited_slots:
                continue
            visited_slots.add(s)
            occupant = match_of_slot[s]
            if occupant == -1 or augment_color(occupant, visited_slots):
                match_of_slot[s] = c
                match_of_color[c] = s
                return True
        return False

    for c in forced:
        if not augment_color(c, set()):
            return None

    for s in range(nslots):
        if match_of_slot[s] == -1:
            if not _try_augment(s, avail, match_of_slot, match_of_color, set()):
                return None
    return match_of_slot


class IncrementalMatcher:
    """Arcs-vs-colors matching with push/pop for backtracking search.

    ``push(mask)`` adds a slot and reports whether the enlarged slot set
    still has a perfect matching; ``pop()`` restores the previous state.
    Snapshots are plain copies, which is the right trade at oracle sizes
    (at most ~a dozen slots).
    """

    def __init__(self):
        self.avail: list[int] = []
        self._stack: list[tuple[list[int], dict[int, int]]] = []
        self.match_of_slot: list[int] = []
        self.match_of_color: dict[int, int] = {}

    def push(self, mask: int) -> bool:
        self._stack.append(
            (list(self.match_of_slot), dict(self.match_of_color))
        )
        self.avail.append(mask)
        self.match_of_slot.append(-1)
        s = len(self.avail) - 1
        ok = _try_augment(
            s, self.avail, self.match_of_slot, self.match_of_color, set()
        )
        if not ok:
            self._revert()
        return ok

    def _revert(self) -> None:
        self.avail.pop()
        self.match_of_slot, self.match_of_color = self._stack.pop()

    def pop(self) -> None:
        self._revert()

    def colors_in_use(self) -> list[int]:
        return list(self.match_of_slot)
