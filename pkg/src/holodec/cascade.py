"""Coordinate encoding of positioned chains and the cascade of a semigroup.

``encode`` pushes each nonempty slot of a positioned chain through the
witness word onto the corresponding representative's tiles, producing a
coordinate vector over the depth components.  ``decode`` inverts it level by
level, recovering the state of approximation as it goes.  Each generator
yields a cascade transformation: per level, a lazily evaluated dependency
function from coordinate prefixes to component elements (a tile permutation
when the approximation is moved bijectively, a constant reset to a tile when
it shrinks into a deeper set, and the constant ``*`` off the active level).
Prefixes that no chain realizes evaluate to constant ``*`` by convention.

The two verifiers replay random (or exhaustive) generator words against all
maximal chains: ``verify_embedding`` checks that acting in coordinates
matches encoding the lifted chain, and ``verify_division`` checks that
projecting coordinates to the underlying state emulates the original action.
"""

from __future__ import annotations

import random
import time

from .chains import (Chain, Lift, PositionedChain, alpha_at, dominate, eta,
                     is_maximal_chain, maximal_chains, position, unposition)
from .errors import DecodeError, InvariantViolation
from .holonomy import (CONST_STAR, STAR, ComponentElement,
                       HolonomyDecomposition, State)
from .skeleton import Skeleton
from .transformation import Transformation, TransformationSemigroup, Word

Coordinates = tuple[State, ...]


class CascadeTransformation:
    """Per-level dependency functions of one lifted transformation.

    Dependency values are computed on demand from the coordinate prefix and
    memoized, as is the full coordinatewise action.
    """

    def __init__(self, system: "HolonomyCascade", t: Transformation,
                 letter: int | None, label: str):
        self.system = system
        self.t = t
        self.letter = letter
        self.label = label
        self.lift = Lift(system.sk, t, label=label)
        self._dep: dict[tuple[int, tuple[State, ...]], ComponentElement] = {}
        self._apply_memo: dict[Coordinates, Coordinates] = {}
        self._fault_level: int | None = None

    def dependency(self, level: int, prefix: tuple[State, ...]) -> ComponentElement:
        """Component element at ``level`` for a coordinate prefix (length level-1)."""
        key = (level, prefix)
        value = self._dep.get(key)
        if value is None:
            value = self._compute_dependency(level, prefix)
            if self._fault_level == level:
                value = self._corrupt(level, value)
            self._dep[key] = value
        return value

    def _compute_dependency(self, level: int,
                            prefix: tuple[State, ...]) -> ComponentElement:
        system = self.system
        sk = system.sk
        partial = system.decode_prefix(prefix)
        if partial is None:
            return CONST_STAR
        p_idx = alpha_at(sk, partial, level)
        chain = system.dominate_partial(partial)
        image = self.lift(chain)
        image_slots = position(sk, image)
        q_idx = alpha_at(sk, image_slots, level)
        if sk.depth[q_idx] != level:
            return CONST_STAR
        component = system.dec.component(level)
        moved = sk.index[self.t.act_mask(sk.sets[p_idx])]
        rep = sk.rep_of[q_idx]
        block = system.dec.rep_ordinal(level, rep)
        if moved == q_idx:
            # bijective step: a tile permutation of the shared representative
            before = system.transformation_of(sk.from_rep[p_idx])
            after = system.transformation_of(sk.to_rep[q_idx])
            tiles = sk.tiles_of(rep)
            tile_index = {t: i for i, t in enumerate(tiles)}
            mapping = []
            for t in tiles:
                img = after.act_mask(self.t.act_mask(before.act_mask(sk.sets[t])))
                idx = tile_index.get(sk.index.get(img, -1), -1)
                if idx < 0:
                    raise InvariantViolation(
                        f"lifted step does not permute the tiles of {sk.set_str(rep)}")
                mapping.append(idx)
            word = None
            if self.letter is not None:
                word = sk.from_rep[p_idx] + (self.letter,) + sk.to_rep[q_idx]
            return component.block_permutation(block, tuple(mapping), word=word)
        if sk.sets[moved] & ~sk.sets[q_idx]:
            raise InvariantViolation(
                "chain action left the approximating set of its image")
        # strict shrink: reset every state to the encoded tile of the image
        target = system.encode_slot(image_slots, level)
        return component.constant(target)

    def _corrupt(self, level: int, value: ComponentElement) -> ComponentElement:
        """Deterministically damage a dependency value (fault-injection hook)."""
        component = self.system.dec.component(level)
        states = [s for s in component.states if s != STAR]
        if value.kind == "const" and value.target != STAR:
            pos = states.index(value.target)
            return ComponentElement("const",
                                    target=states[(pos + 1) % len(states)])
        if value.kind == "perm":
            m = len(value.mapping)
            rotated = tuple(value.mapping[(i + 1) % m] for i in range(m))
            return ComponentElement("perm", block=value.block, mapping=rotated,
                                    word=value.word)
        if states:
            return ComponentElement("const", target=states[0])
        return value

    def apply(self, coords: Coordinates) -> Coordinates:
        """Coordinatewise action; every level reads the original prefix."""
        result = self._apply_memo.get(coords)
        if result is None:
            out = []
            for i in range(len(coords)):
                element = self.dependency(i + 1, coords[:i])
                out.append(element.apply(coords[i]))
            result = tuple(out)
            self._apply_memo[coords] = result
        return result


class HolonomyCascade:
    """The full decomposition pipeline of one transformation semigroup."""

    def __init__(self, ts: TransformationSemigroup,
                 max_chains: int | None = None):
        self.ts = ts
        self.sk = Skeleton(ts)
        self.dec = HolonomyDecomposition(self.sk)
        self.cascades = [
            CascadeTransformation(self, g, j, ts.names[j])
            for j, g in enumerate(ts.generators)
        ]
        self.lifts = [c.lift for c in self.cascades]
        self._max_chains = max_chains
        self._chains: list[Chain] | None = None
        self._tcache: dict[Word, Transformation] = {}
        self._enc: dict[PositionedChain, Coordinates] = {}
        self._decpre: dict[tuple[State, ...], tuple[int | None, ...] | None] = {}
        self._domin: dict[tuple[int, ...], Chain] = {}

    # -- chain plumbing --------------------------------------------------------

    def chains(self) -> list[Chain]:
        if self._chains is None:
            self._chains = maximal_chains(self.sk, limit=self._max_chains)
        return self._chains

    def transformation_of(self, word: Word) -> Transformation:
        t = self._tcache.get(word)
        if t is None:
            t = self.ts.evaluate(word)
            self._tcache[word] = t
        return t

    def cascade_of_transformation(self, t: Transformation,
                                  label: str | None = None) -> CascadeTransformation:
        """Cascade of an arbitrary transformation (not just a generator)."""
        return CascadeTransformation(self, t, None, label or str(t))

    def dominate_partial(self, partial: tuple[int | None, ...]) -> Chain:
        members = tuple([self.sk.index[self.sk.full_mask]]
                        + [s for s in partial if s is not None])
        chain = self._domin.get(members)
        if chain is None:
            chain = dominate(self.sk, members)
            self._domin[members] = chain
        return chain

    # -- encoding --------------------------------------------------------------

    def encode_slot(self, slots: PositionedChain, level: int) -> State:
        """Encoded value of one slot; levels are independent of each other."""
        content = slots[level - 1]
        if content is None:
            return STAR
        sk = self.sk
        p_idx = alpha_at(sk, slots, level)
        moved = self.transformation_of(sk.to_rep[p_idx]).act_mask(sk.sets[content])
        rep = sk.rep_of[p_idx]
        tiles = sk.tiles_of(rep)
        idx = sk.index.get(moved, -1)
        if idx < 0 or idx not in tiles:
            raise InvariantViolation(
                f"{sk.set_str(content)} does not encode to a tile of {sk.set_str(rep)}")
        return (self.dec.rep_ordinal(level, rep), tiles.index(idx))

    def encode(self, slots: PositionedChain) -> Coordinates:
        coords = self._enc.get(slots)
        if coords is None:
            coords = tuple(self.encode_slot(slots, level)
                           for level in range(1, self.sk.levels + 1))
            self._enc[slots] = coords
        return coords

    def _decode_level(self, level: int, value: State,
                      current: int) -> int | None:
        """Slot content recovered from one coordinate; ``current`` is alpha."""
        sk = self.sk
        if value == STAR:
            if sk.depth[current] == level:
                raise DecodeError(level, "missing tile at the active level")
            return None
        if sk.depth[current] != level:
            raise DecodeError(level, "tile present off the active level")
        j, t = value  # type: ignore[misc]
        reps = self.dec.depth_reps[level - 1]
        if not 0 <= j < len(reps):
            raise DecodeError(level, f"no representative ordinal {j}")
        rep = reps[j]
        if rep != sk.rep_of[current]:
            raise DecodeError(level, "tile belongs to a different representative")
        tiles = sk.tiles_of(rep)
        if not 0 <= t < len(tiles):
            raise DecodeError(level, f"no tile ordinal {t}")
        back = self.transformation_of(sk.from_rep[current])
        content = sk.index.get(back.act_mask(sk.sets[tiles[t]]), -1)
        if content < 0 or content not in sk.tiles_of(current):
            raise DecodeError(level, "decoded set is not a tile of the approximation")
        return content

    def decode(self, coords: Coordinates) -> PositionedChain:
        """Total inverse of ``encode`` on its range; raises DecodeError otherwise."""
        sk = self.sk
        slots: list[int | None] = []
        current = sk.index[sk.full_mask]
        for level in range(1, sk.levels + 1):
            content = self._decode_level(level, coords[level - 1], current)
            slots.append(content)
            if content is not None:
                current = content
        result = tuple(slots)
        if not is_maximal_chain(sk, unposition(sk, result)):
            raise DecodeError(sk.levels, "decoded slots do not form a maximal chain")
        return result

    def decode_prefix(self, prefix: tuple[State, ...]) -> tuple[int | None, ...] | None:
        """Partial slots for a coordinate prefix, or None when unrealizable."""
        if prefix in self._decpre:
            return self._decpre[prefix]
        sk = self.sk
        slots: list[int | None] = []
        current = sk.index[sk.full_mask]
        result: tuple[int | None, ...] | None
        try:
            for level in range(1, len(prefix) + 1):
                content = self._decode_level(level, prefix[level - 1], current)
                slots.append(content)
                if content is not None:
                    current = content
            result = tuple(slots)
        except DecodeError:
            result = None
        self._decpre[prefix] = result
        return result

    # -- word replay -----------------------------------------------------------

    def apply_word(self, word: Word, coords: Coordinates) -> Coordinates:
        for a in word:
            coords = self.cascades[a].apply(coords)
        return coords

    def lift_word(self, word: Word, chain: Chain) -> Chain:
        for a in word:
            chain = self.lifts[a](chain)
        return chain

    def inject_fault(self, generator: int = 0, level: int = 1) -> None:
        """Corrupt one generator's dependency values (for fault testing)."""
        cascade = self.cascades[generator]
        cascade._fault_level = level
        cascade._dep.clear()
        cascade._apply_memo.clear()

    # -- verification ----------------------------------------------------------

    def _random_words(self, n_words: int, seed: int, max_len: int):
        rng = random.Random(seed)
        k = len(self.ts.generators)
        for _ in range(n_words):
            length = rng.randint(1, max_len)
            yield tuple(rng.randrange(k) for _ in range(length))

    def verify_embedding(self, n_words: int = 1000, seed: int = 0,
                         max_len: int | None = None,
                         max_violations: int = 50) -> dict:
        """Replay: acting in coordinates equals encoding the lifted chain."""
        start = time.perf_counter()
        if max_len is None:
            max_len = 2 * self.ts.degree + 2
        chains = self.chains()
        encoded = [self.encode(position(self.sk, c)) for c in chains]
        violations: list[dict] = []
        words_tested = 0
        for word in self._random_words(n_words, seed, max_len):
            words_tested += 1
            for chain, coords in zip(chains, encoded):
                lhs = self.apply_word(word, coords)
                rhs = self.encode(position(self.sk, self.lift_word(word, chain)))
                if lhs != rhs:
                    if len(violations) < max_violations:
                        level = next(i + 1 for i in range(len(lhs))
                                     if lhs[i] != rhs[i])
                        violations.append({
                            "word": [a + 1 for a in word],
                            "chain": self.chain_str(chain),
                            "level": level,
                        })
        return {
            "words_tested": words_tested,
            "chains_tested": len(chains),
            "violations": violations,
            "elapsed": time.perf_counter() - start,
        }

    def verify_division(self, n_words: int = 1000, seed: int = 0,
                        max_len: int | None = None,
                        exhaustive_len: int | None = None,
                        max_violations: int = 50) -> dict:
        """Replay: projecting coordinates to states emulates the semigroup."""
        start = time.perf_counter()
        sk = self.sk
        chains = self.chains()
        encoded = [self.encode(position(sk, c)) for c in chains]
        points = [eta(sk, c) for c in chains]
        surjective = set(points) == set(range(self.ts.degree))
        if exhaustive_len is not None:
            k = len(self.ts.generators)
            words = [()]
            layer: list[Word] = [()]
            for _ in range(exhaustive_len):
                layer = [w + (a,) for w in layer for a in range(k)]
                words.extend(layer)
        else:
            if max_len is None:
                max_len = 2 * self.ts.degree + 2
            words = list(self._random_words(n_words, seed, max_len))
        violations: list[dict] = []
        for word in words:
            t = self.transformation_of(tuple(word))
            for chain, coords, x in zip(chains, encoded, points):
                moved = self.apply_word(tuple(word), coords)
                entry = {"word": [a + 1 for a in word], "chain": self.chain_str(chain)}
                try:
                    target = unposition(sk, self.decode(moved))
                except DecodeError as exc:
                    if len(violations) < max_violations:
                        entry["error"] = str(exc)
                        violations.append(entry)
                    continue
                if eta(sk, target) != t(x):
                    if len(violations) < max_violations:
                        entry["expected"] = t(x) + 1
                        entry["got"] = eta(sk, target) + 1
                        violations.append(entry)
        return {
            "words_tested": len(words),
            "chains_tested": len(chains),
            "theta1_surjective": surjective,
            "violations": violations,
            "elapsed": time.perf_counter() - start,
        }

    # -- rendering helpers -----------------------------------------------------

    def chain_str(self, chain: Chain) -> str:
        return " > ".join(self.sk.set_str(u) for u in chain)

    def coords_str(self, coords: Coordinates) -> str:
        parts = []
        for level, value in enumerate(coords, start=1):
            if value == STAR:
                parts.append(STAR)
            else:
                j, t = value  # type: ignore[misc]
                parts.append(f"({level},{j},{t})")
        return "[" + ", ".join(parts) + "]"


def decompose(ts: TransformationSemigroup,
              max_chains: int | None = None) -> HolonomyCascade:
    """Build the full decomposition pipeline for a semigroup."""
    return HolonomyCascade(ts, max_chains=max_chains)
