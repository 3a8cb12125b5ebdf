"""Permutator and holonomy groups, and the per-depth cascade components.

The permutator group of a representative set R collects the bijective
restrictions to R induced by round trips through its equivalence class:
descend to a member P, move P exactly onto a member Q by one generator,
return to R.  Acting on the tiles of R and merging elements with the same
tile action makes the group faithful; that faithful image is the holonomy
group.  A depth component joins the tile sets of all representatives of one
depth into a tagged disjoint union with a sentinel ``*``, acted on by
blockwise permutations and by constant maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .errors import InvariantViolation
from .skeleton import Skeleton
from .transformation import Word, mask_str, points_from_mask

STAR = "*"
# a component state is (representative ordinal, tile ordinal) or STAR
State = tuple[int, int] | str


@dataclass(frozen=True, slots=True)
class ComponentElement:
    """One transformation of a depth component.

    ``perm`` permutes the tiles of a single representative block and fixes
    everything else (including ``*``); ``const`` resets every state to the
    target, which may be ``*``; ``identity`` fixes all states.
    """

    kind: str  # "identity" | "perm" | "const"
    block: int = -1
    mapping: tuple[int, ...] = ()
    target: State | None = None
    word: Word | None = None

    def apply(self, state: State) -> State:
        if self.kind == "const":
            return self.target  # type: ignore[return-value]
        if self.kind == "identity" or state == STAR:
            return state
        j, t = state  # type: ignore[misc]
        if j != self.block:
            return state
        return (j, self.mapping[t])

    def is_star_constant(self) -> bool:
        return self.kind == "const" and self.target == STAR


CONST_STAR = ComponentElement("const", target=STAR)
IDENTITY = ComponentElement("identity")


class PermutatorGroup:
    """Bijective restrictions to a base set, generated by class round trips.

    Permutations are image tuples over the positions of the base set's
    ascending point list.  Every element carries one witness word.
    """

    def __init__(self, base: int, points: tuple[int, ...],
                 generators: list[tuple[tuple[int, ...], Word]],
                 elements: dict[tuple[int, ...], Word]):
        self.base = base
        self.points = points
        self.generators = generators
        self.elements = elements

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1


def _roundtrip_restrictions(sk: Skeleton, base: int,
                            base_to: dict[int, Word],
                            base_from: dict[int, Word]):
    """Deduplicated round-trip restrictions to ``base``, in discovery order.

    ``base_to[P]`` / ``base_from[P]`` move base onto class member P and back,
    composing to the identity on base.
    """
    ts = sk.ts
    cid = sk.class_of[base]
    members = sk.classes[cid]
    points = points_from_mask(sk.sets[base])
    pos = {p: i for i, p in enumerate(points)}
    identity = tuple(range(len(points)))
    seen: dict[tuple[int, ...], Word] = {identity: ()}
    generators: list[tuple[tuple[int, ...], Word]] = []
    for p_idx in members:
        for j in range(len(ts.generators)):
            q_idx = sk.edges[p_idx][j]
            if sk.class_of[q_idx] != cid:
                continue
            word = base_to[p_idx] + (j,) + base_from[q_idx]
            t = ts.evaluate(word)
            try:
                perm = tuple(pos[t(p)] for p in points)
            except KeyError as exc:
                raise InvariantViolation(
                    f"round trip through {mask_str(sk.sets[p_idx])} leaves "
                    f"{mask_str(sk.sets[base])}") from exc
            if sorted(perm) != list(range(len(points))):
                raise InvariantViolation(
                    f"round trip restriction is not a bijection on "
                    f"{mask_str(sk.sets[base])}")
            if perm not in seen:
                seen[perm] = word
                generators.append((perm, word))
    return points, generators, seen


def permutator_group(sk: Skeleton, base: int) -> PermutatorGroup:
    """Permutator group of a non-singleton set, rooted at that set.

    For the class representative the round trips use the skeleton's stored
    witness words; for other members the trips are re-rooted through the
    representative.
    """
    if sk.card(base) <= 1:
        raise ValueError(f"{sk.set_str(base)} is a singleton")
    cid = sk.class_of[base]
    members = sk.classes[cid]
    base_to: dict[int, Word] = {}
    base_from: dict[int, Word] = {}
    for p_idx in members:
        if p_idx == base:
            base_to[p_idx] = ()
            base_from[p_idx] = ()
        else:
            # base -> rep -> member and back; round trips stay identities
            # because both stored legs compose to identities on their sets
            base_to[p_idx] = sk.to_rep[base] + sk.from_rep[p_idx]
            base_from[p_idx] = sk.to_rep[p_idx] + sk.from_rep[base]
    points, generators, seen = _roundtrip_restrictions(sk, base, base_to, base_from)
    # close under composition (left-to-right products with the generators)
    frontier = [perm for perm, _ in generators]
    while frontier:
        nxt = []
        for f in frontier:
            fword = seen[f]
            for gperm, gword in generators:
                h = tuple(gperm[x] for x in f)
                if h not in seen:
                    seen[h] = fword + gword
                    nxt.append(h)
        frontier = nxt
    return PermutatorGroup(base, points, generators, seen)


class HolonomyGroup:
    """Faithful action of a permutator group on the tiles of its base set."""

    def __init__(self, sk: Skeleton, perm_group: PermutatorGroup):
        self.base = perm_group.base
        self.tiles = sk.tiles_of(self.base)
        tile_index = {t: i for i, t in enumerate(self.tiles)}
        points = perm_group.points
        pos = {p: i for i, p in enumerate(points)}
        elements: dict[tuple[int, ...], Word] = {}
        generators: list[tuple[tuple[int, ...], Word]] = []
        gen_perms = {perm for perm, _ in perm_group.generators}
        for perm, word in perm_group.elements.items():
            moved = []
            for t in self.tiles:
                img = 0
                mask = sk.sets[t]
                while mask:
                    low = mask & -mask
                    img |= 1 << points[perm[pos[low.bit_length() - 1]]]
                    mask ^= low
                idx = sk.index.get(img, -1)
                if idx < 0 or idx not in tile_index:
                    raise InvariantViolation(
                        f"permutator element moves tile {mask_str(sk.sets[t])} "
                        f"outside the tiles of {sk.set_str(self.base)}")
                moved.append(tile_index[idx])
            action = tuple(moved)
            if action not in elements:
                elements[action] = word
                if perm in gen_perms and any(a != i for i, a in enumerate(action)):
                    generators.append((action, word))
        self.elements = elements
        self.generators = generators

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1


class HolonomyComponent:
    """Permutation-reset semigroup of one depth of the decomposition.

    States are the tiles of every representative at this depth, tagged by
    (representative ordinal, tile ordinal) so equal subsets under different
    representatives stay distinct, plus the sentinel ``*``.
    """

    def __init__(self, sk: Skeleton, depth: int, reps: tuple[int, ...],
                 groups: dict[int, HolonomyGroup]):
        self.depth = depth
        self.reps = reps
        self.groups = tuple(groups[r] for r in reps)
        self.tile_sets = tuple(sk.tiles_of(r) for r in reps)
        self.states: tuple[State, ...] = tuple(
            (j, t) for j, tiles in enumerate(self.tile_sets)
            for t in range(len(tiles))) + (STAR,)
        self._sk = sk

    @property
    def group_order(self) -> int:
        return prod(g.order for g in self.groups)

    def constant(self, target: State) -> ComponentElement:
        if target != STAR and target not in self.states:
            raise InvariantViolation(f"{target!r} is not a state of depth {self.depth}")
        return ComponentElement("const", target=target)

    def block_permutation(self, block: int, mapping: tuple[int, ...],
                          word: Word | None = None) -> ComponentElement:
        if not 0 <= block < len(self.reps):
            raise InvariantViolation(f"no representative ordinal {block} at depth {self.depth}")
        if mapping not in self.groups[block].elements:
            raise InvariantViolation(
                "tile permutation is not an element of the holonomy group of "
                f"{self._sk.set_str(self.reps[block])}")
        return ComponentElement("perm", block=block, mapping=mapping, word=word)

    def state_str(self, state: State) -> str:
        if state == STAR:
            return STAR
        j, t = state  # type: ignore[misc]
        return mask_str(self._sk.sets[self.tile_sets[j][t]])


class HolonomyDecomposition:
    """Groups and components for every depth level of a skeleton."""

    def __init__(self, sk: Skeleton):
        self.sk = sk
        self.permutators: dict[int, PermutatorGroup] = {}
        self.groups: dict[int, HolonomyGroup] = {}
        for members in sk.classes:
            rep = members[0]
            if sk.card(rep) <= 1:
                continue
            pg = permutator_group(sk, rep)
            self.permutators[rep] = pg
            self.groups[rep] = HolonomyGroup(sk, pg)
        self.depth_reps: list[tuple[int, ...]] = [
            tuple(sorted(rep for rep in self.groups if sk.depth[rep] == d))
            for d in range(1, sk.levels + 1)
        ]
        self._rep_ordinal: list[dict[int, int]] = [
            {rep: j for j, rep in enumerate(reps)} for reps in self.depth_reps]
        self.components: list[HolonomyComponent] = [
            HolonomyComponent(sk, d + 1, reps, self.groups)
            for d, reps in enumerate(self.depth_reps)
        ]

    def component(self, depth: int) -> HolonomyComponent:
        if not 1 <= depth <= self.sk.levels:
            raise ValueError(f"depth {depth} outside 1..{self.sk.levels}")
        return self.components[depth - 1]

    def rep_ordinal(self, depth: int, rep: int) -> int:
        ordinal = self._rep_ordinal[depth - 1].get(rep, -1)
        if ordinal < 0:
            raise InvariantViolation(
                f"{self.sk.set_str(rep)} is not a representative at depth {depth}")
        return ordinal

    def holonomy_group_order_at(self, member: int) -> int:
        """Holonomy group order computed at an arbitrary non-singleton member."""
        pg = permutator_group(self.sk, member)
        return HolonomyGroup(self.sk, pg).order
