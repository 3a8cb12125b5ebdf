"""Subset skeleton of a transformation semigroup.

Collects every image of the full state set plus the state set itself and all
singletons, closes the family under the generator action, and equips it with:

* the reachability preorder ("can P be covered by a moved copy of Q?"),
* its mutual-reachability classes with a canonical representative each,
* witness words to and from the representatives, fixed up so that the
  round trip ``to_rep`` then ``from_rep`` is the identity on the member,
* tiles (maximal proper subsets within the family), and
* height/depth values from longest strict chains in the class order.

Indices follow a fixed total order on subsets: descending cardinality, then
ascending lexicographic order on the sorted point list.  Index 0 is always
the full state set.  The height convention counts chain nodes, so a minimal
non-singleton class has height 1 and singletons have height 0; the depth of
a set is ``height(X) - height(set) + 1`` and the top level is depth 1.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import InvariantViolation
from .transformation import (TransformationSemigroup, Word, mask_str,
                             points_from_mask)


def _perm_order(perm: tuple[int, ...]) -> int:
    """Order of a permutation given as an image tuple on 0..len-1."""
    order = 1
    current = perm
    identity = tuple(range(len(perm)))
    while current != identity:
        current = tuple(perm[i] for i in current)
        order += 1
    return order


def _tarjan(n_nodes: int, adjacency: list[list[int]]) -> list[list[int]]:
    """Strongly connected components, iterative; deterministic output."""
    counter = 0
    index = [-1] * n_nodes
    low = [0] * n_nodes
    on_stack = [False] * n_nodes
    stack: list[int] = []
    components: list[list[int]] = []
    for root in range(n_nodes):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            neighbours = adjacency[v]
            while pi < len(neighbours):
                w = neighbours[pi]
                pi += 1
                if index[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            if low[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    component.append(w)
                    if w == v:
                        break
                components.append(component)
            work.pop()
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return components


class Skeleton:
    """Ordered subset structure underlying the decomposition of a semigroup."""

    def __init__(self, ts: TransformationSemigroup):
        self.ts = ts
        n = ts.degree
        self.full_mask = (1 << n) - 1
        gen_arr = np.array([g.images for g in ts.generators], dtype=np.int64)
        starts = np.array([self.full_mask] + [1 << p for p in range(n)],
                          dtype=np.int64)
        raw_masks, raw_edges = _kernels.subset_orbit(gen_arr, starts)
        order = sorted(range(len(raw_masks)),
                       key=lambda i: self._order_key(int(raw_masks[i])))
        rank = {old: new for new, old in enumerate(order)}
        self.sets: tuple[int, ...] = tuple(int(raw_masks[i]) for i in order)
        self.index: dict[int, int] = {m: i for i, m in enumerate(self.sets)}
        self.edges: list[list[int]] = [
            [rank[int(raw_edges[old, j])] for j in range(len(ts.generators))]
            for old in order
        ]
        # image set = everything reachable by at least one action step from X
        self.image_set: frozenset[int] = self._compute_image_set()
        self._comp_mask: list[int] = self._comparability_masks()
        self._orbits: dict[int, frozenset[int]] = {}
        self._orbit_words: dict[int, dict[int, Word]] = {}
        self._tiles: dict[int, tuple[int, ...]] = {}
        self._compute_classes()
        self._compute_witnesses()
        self._compute_heights()

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def _order_key(mask: int):
        pts = points_from_mask(mask)
        return (-len(pts), pts)

    def card(self, i: int) -> int:
        return self.sets[i].bit_count()

    def _compute_image_set(self) -> frozenset[int]:
        x = self.index[self.full_mask]
        reached = {x}
        queue = [x]
        images: set[int] = set()
        while queue:
            u = queue.pop()
            for v in self.edges[u]:
                images.add(v)
                if v not in reached:
                    reached.add(v)
                    queue.append(v)
        return frozenset(images)

    def _comparability_masks(self) -> list[int]:
        m = len(self.sets)
        comp = [0] * m
        for i in range(m):
            a = self.sets[i]
            for j in range(i, m):
                b = self.sets[j]
                if a & ~b == 0 or b & ~a == 0:
                    comp[i] |= 1 << j
                    comp[j] |= 1 << i
        return comp

    def comparable_mask(self, i: int) -> int:
        """Bitmask over set indices comparable (by inclusion) with set ``i``."""
        return self._comp_mask[i]

    def _compute_classes(self) -> None:
        components = _tarjan(len(self.sets), self.edges)
        classes = sorted(sorted(c) for c in components)
        self.classes: tuple[tuple[int, ...], ...] = tuple(tuple(c) for c in classes)
        class_of = [0] * len(self.sets)
        for cid, members in enumerate(self.classes):
            for u in members:
                class_of[u] = cid
        self.class_of: tuple[int, ...] = tuple(class_of)
        self.rep_of_class: tuple[int, ...] = tuple(c[0] for c in self.classes)
        self.rep_of: tuple[int, ...] = tuple(
            self.rep_of_class[class_of[i]] for i in range(len(self.sets)))

    def _class_bfs(self, start: int, goal: int, cid: int) -> Word:
        """Shortest-then-lex word moving ``start`` onto ``goal`` inside a class."""
        if start == goal:
            return ()
        words: dict[int, Word] = {start: ()}
        queue = [start]
        while queue:
            nxt = []
            for u in queue:
                for j, v in enumerate(self.edges[u]):
                    if self.class_of[v] != cid or v in words:
                        continue
                    words[v] = words[u] + (j,)
                    if v == goal:
                        return words[v]
                    nxt.append(v)
            queue = nxt
        raise InvariantViolation(
            f"no word maps {mask_str(self.sets[start])} onto "
            f"{mask_str(self.sets[goal])} inside its class")

    def _compute_witnesses(self) -> None:
        ts = self.ts
        m = len(self.sets)
        to_rep: list[Word] = [()] * m
        from_rep: list[Word] = [()] * m
        for cid, members in enumerate(self.classes):
            rep = members[0]
            for u in members:
                if u == rep:
                    continue
                from_rep[u] = self._class_bfs(rep, u, cid)
                to_rep[u] = self._class_bfs(u, rep, cid)
                # force the round trip u -> rep -> u to be the identity on u
                pts = points_from_mask(self.sets[u])
                pos = {p: i for i, p in enumerate(pts)}
                t = ts.evaluate(to_rep[u] + from_rep[u])
                try:
                    perm = tuple(pos[t(p)] for p in pts)
                except KeyError as exc:
                    raise InvariantViolation(
                        f"round trip does not stabilize {mask_str(self.sets[u])}"
                    ) from exc
                if sorted(perm) != list(range(len(pts))):
                    raise InvariantViolation(
                        f"round trip is not a bijection on {mask_str(self.sets[u])}")
                k = _perm_order(perm)
                if k > 1:
                    to_rep[u] = to_rep[u] + (from_rep[u] + to_rep[u]) * (k - 1)
            for u in members:
                fwd = ts.evaluate(to_rep[u])
                back = ts.evaluate(from_rep[u])
                if fwd.act_mask(self.sets[u]) != self.sets[rep]:
                    raise InvariantViolation(
                        f"witness word does not map {mask_str(self.sets[u])} "
                        f"onto its representative")
                if back.act_mask(self.sets[rep]) != self.sets[u]:
                    raise InvariantViolation(
                        f"witness word does not map the representative back "
                        f"onto {mask_str(self.sets[u])}")
        self.to_rep: tuple[Word, ...] = tuple(to_rep)
        self.from_rep: tuple[Word, ...] = tuple(from_rep)

    def _compute_heights(self) -> None:
        non_singleton = [cid for cid, members in enumerate(self.classes)
                         if self.card(members[0]) > 1]
        height: dict[int, int] = {cid: 0 for cid in range(len(self.classes))}
        state: dict[int, int] = {}  # 1 = in progress, 2 = done

        def visit(cid: int) -> int:
            if state.get(cid) == 2:
                return height[cid]
            if state.get(cid) == 1:
                raise InvariantViolation("cycle in the strict subduction order")
            state[cid] = 1
            rep = self.rep_of_class[cid]
            best = 0
            for other in non_singleton:
                if other == cid:
                    continue
                if self.subduction_holds(self.rep_of_class[other], rep):
                    best = max(best, visit(other))
            height[cid] = best + 1
            state[cid] = 2
            return height[cid]

        for cid in non_singleton:
            visit(cid)
        self.class_height: tuple[int, ...] = tuple(
            height[cid] for cid in range(len(self.classes)))
        top = self.class_of[self.index[self.full_mask]]
        self.levels: int = self.class_height[top]
        self.height: tuple[int, ...] = tuple(
            self.class_height[self.class_of[i]] for i in range(len(self.sets)))
        self.depth: tuple[int, ...] = tuple(
            self.levels - h + 1 for h in self.height)

    # -- queries ---------------------------------------------------------------

    def orbit(self, q: int) -> frozenset[int]:
        """Indices of all sets reachable from ``q`` under the action (incl. q)."""
        cached = self._orbits.get(q)
        if cached is None:
            reached = {q}
            queue = [q]
            while queue:
                u = queue.pop()
                for v in self.edges[u]:
                    if v not in reached:
                        reached.add(v)
                        queue.append(v)
            cached = frozenset(reached)
            self._orbits[q] = cached
        return cached

    def subduction_holds(self, p: int, q: int) -> bool:
        """True when some moved copy of set ``q`` contains set ``p``."""
        target = self.sets[p]
        return any(target & ~self.sets[r] == 0 for r in self.orbit(q))

    def equivalent(self, p: int, q: int) -> bool:
        return self.class_of[p] == self.class_of[q]

    def tiles_of(self, i: int) -> tuple[int, ...]:
        """Maximal proper subsets of set ``i`` within the family, by index."""
        cached = self._tiles.get(i)
        if cached is None:
            mask = self.sets[i]
            if mask.bit_count() <= 1:
                raise ValueError(f"{mask_str(mask)} is a singleton and has no tiles")
            subs = [q for q in range(len(self.sets))
                    if q != i and self.sets[q] & ~mask == 0]
            cached = tuple(
                q for q in subs
                if not any(r != q and self.sets[q] & ~self.sets[r] == 0
                           for r in subs))
            self._tiles[i] = cached
        return cached

    def word_to(self, source: int, target: int) -> Word | None:
        """Shortest-then-lex word moving ``source`` exactly onto ``target``."""
        words = self._orbit_words.get(source)
        if words is None:
            words = {source: ()}
            queue = [source]
            while queue:
                nxt = []
                for u in queue:
                    for j, v in enumerate(self.edges[u]):
                        if v not in words:
                            words[v] = words[u] + (j,)
                            nxt.append(v)
                queue = nxt
            self._orbit_words[source] = words
        return words.get(target)

    def set_str(self, i: int) -> str:
        return mask_str(self.sets[i])
