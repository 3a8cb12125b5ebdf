"""Maximal subset chains, canonical completion, and chain lifts.

A chain is stored as a tuple of skeleton set indices in ascending index
order, which by the skeleton's total order means descending cardinality:
the full state set first, a singleton last.  Lifting a transformation moves
every member, drops duplicates, and completes the result to the canonical
dominating chain by repeatedly inserting the least insertable set.  Because
the total order sorts larger sets first, the completion above any fixed
member never depends on the members below it, which makes every lift (and
every composite of lifts) consistent with chain structure: chains agreeing
down to P map to chains agreeing down to P moved.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import BudgetExceededError
from .skeleton import Skeleton
from .transformation import Transformation, Word

Chain = tuple[int, ...]
# positioned form: one slot per level, holding a set index or None for "*"
PositionedChain = tuple[int | None, ...]


def is_chain(sk: Skeleton, members: Iterable[int]) -> bool:
    """True when the sets are pairwise comparable by inclusion."""
    ms = list(members)
    bits = 0
    for u in ms:
        bits |= 1 << u
    return all(bits & ~sk.comparable_mask(u) == 0 for u in ms)


def dominate(sk: Skeleton, members: Iterable[int]) -> Chain:
    """Canonical maximal chain containing the given chain.

    Repeatedly inserts the least insertable set of the total order until
    nothing fits; idempotent on maximal chains.
    """
    ms = sorted(set(members))
    if not ms:
        raise ValueError("cannot dominate an empty chain")
    bits = 0
    allcomp = (1 << len(sk.sets)) - 1
    for u in ms:
        if bits & ~sk.comparable_mask(u):
            raise ValueError("input sets are not totally ordered by inclusion")
        bits |= 1 << u
        allcomp &= sk.comparable_mask(u)
    candidates = allcomp & ~bits
    while candidates:
        low = candidates & -candidates
        u = low.bit_length() - 1
        bits |= low
        allcomp &= sk.comparable_mask(u)
        candidates = allcomp & ~bits
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return tuple(out)


def is_maximal_chain(sk: Skeleton, chain: Chain) -> bool:
    if not chain or chain[0] != sk.index[sk.full_mask]:
        return False
    if sk.card(chain[-1]) != 1:
        return False
    return all(b in sk.tiles_of(a) for a, b in zip(chain, chain[1:]))


def maximal_chains(sk: Skeleton, limit: int | None = None) -> list[Chain]:
    """All maximal chains, depth-first with tiles in total order."""
    top = sk.index[sk.full_mask]
    out: list[Chain] = []
    if sk.card(top) == 1:
        return [(top,)]
    stack: list[tuple[int, ...]] = [(top,)]
    while stack:
        prefix = stack.pop()
        if sk.card(prefix[-1]) == 1:
            out.append(prefix)
            if limit is not None and len(out) > limit:
                raise BudgetExceededError("maximal chain enumeration", limit)
            continue
        # push in reverse so the least tile is explored first
        for t in reversed(sk.tiles_of(prefix[-1])):
            stack.append(prefix + (t,))
    return out


def eta(sk: Skeleton, chain: Chain) -> int:
    """The 0-based point of the chain's singleton member."""
    return sk.sets[chain[-1]].bit_length() - 1


class Lift:
    """Chain-to-chain map covering a transformation.

    Applies the transformation to every member, deduplicates, and completes
    canonically.  Results are memoized per input chain: replay-heavy
    verification reduces to dictionary walks.
    """

    def __init__(self, sk: Skeleton, t: Transformation, label: str | None = None):
        self.sk = sk
        self.t = t
        self.label = label if label is not None else str(t)
        self._memo: dict[Chain, Chain] = {}

    def __call__(self, chain: Chain) -> Chain:
        result = self._memo.get(chain)
        if result is None:
            sk = self.sk
            moved = {sk.index[self.t.act_mask(sk.sets[u])] for u in chain}
            result = dominate(sk, moved)
            self._memo[chain] = result
        return result

    def __repr__(self) -> str:
        return f"Lift({self.label})"


def lift_generator(sk: Skeleton, a: int) -> Lift:
    """The canonical lift of generator ``a``."""
    return Lift(sk, sk.ts.generators[a], label=sk.ts.names[a])


def apply_lift_word(lifts: Sequence[Lift], word: Word, chain: Chain) -> Chain:
    """Left-to-right application of per-generator lifts along a word."""
    for a in word:
        chain = lifts[a](chain)
    return chain


def position(sk: Skeleton, chain: Chain) -> PositionedChain:
    """Depth-aligned vector form: slot depth(P) holds P's successor tile."""
    slots: list[int | None] = [None] * sk.levels
    for a, b in zip(chain, chain[1:]):
        slots[sk.depth[a] - 1] = b
    return tuple(slots)


def unposition(sk: Skeleton, slots: PositionedChain) -> Chain:
    """Inverse of ``position``: re-prepend the full state set."""
    members = [sk.index[sk.full_mask]]
    members.extend(s for s in slots if s is not None)
    return tuple(sorted(set(members)))


def alpha(sk: Skeleton, slots: PositionedChain) -> tuple[int, ...]:
    """State of approximation per level: the deepest content strictly above."""
    out: list[int] = []
    current = sk.index[sk.full_mask]
    for i in range(sk.levels):
        out.append(current)
        if slots[i] is not None:
            current = slots[i]  # type: ignore[assignment]
    return tuple(out)


def alpha_at(sk: Skeleton, partial_slots: Sequence[int | None], level: int) -> int:
    """``alpha`` at one level, from any prefix of at least ``level - 1`` slots."""
    current = sk.index[sk.full_mask]
    for i in range(level - 1):
        if partial_slots[i] is not None:
            current = partial_slots[i]  # type: ignore[assignment]
    return current
