"""Finite transformations, generator words, and semigroup enumeration.

Points are 0-based internally; the 1-based image-list notation appears only
at the I/O boundary (``from_one_based`` / ``one_based``).  Actions compose
left to right: ``x . (s t) == (x . s) . t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import BudgetExceededError

# a word is a tuple of generator indices; () is the formal identity of S^1
Word = tuple[int, ...]

DEFAULT_BUDGET = 1_000_000


def mask_from_points(points: Iterable[int]) -> int:
    """Bitmask of a set of 0-based points."""
    m = 0
    for p in points:
        m |= 1 << p
    return m


def points_from_mask(mask: int) -> tuple[int, ...]:
    """Ascending 0-based points of a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def mask_str(mask: int) -> str:
    """Render a bitmask as a 1-based set, e.g. ``{1,2}``."""
    return "{" + ",".join(str(p + 1) for p in points_from_mask(mask)) + "}"


@dataclass(frozen=True, slots=True)
class Transformation:
    """A total map on n points, stored as the tuple of 0-based images."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise ValueError("a transformation needs at least one point")
        for j in self.images:
            if not 0 <= j < n:
                raise ValueError(f"image {j} out of range for degree {n}")

    @classmethod
    def identity(cls, degree: int) -> "Transformation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> "Transformation":
        return cls(tuple(j - 1 for j in images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def then(self, other: "Transformation") -> "Transformation":
        """Composite map: self first, then other."""
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        return Transformation(tuple(other.images[j] for j in self.images))

    def __mul__(self, other: "Transformation") -> "Transformation":
        return self.then(other)

    def act_mask(self, mask: int) -> int:
        """Image of a point-set bitmask under the map."""
        out = 0
        while mask:
            low = mask & -mask
            out |= 1 << self.images[low.bit_length() - 1]
            mask ^= low
        return out

    def is_permutation(self) -> bool:
        return len(set(self.images)) == self.degree

    def one_based(self) -> tuple[int, ...]:
        return tuple(j + 1 for j in self.images)

    def __str__(self) -> str:
        return "[" + ",".join(str(j) for j in self.one_based()) + "]"


def evaluate_word(word: Sequence[int], generators: Sequence[Transformation],
                  degree: int) -> Transformation:
    """Left-to-right product of the indexed generators; () gives the identity."""
    result = Transformation.identity(degree)
    for a in word:
        if not 0 <= a < len(generators):
            raise ValueError(f"generator index {a} out of range")
        result = result.then(generators[a])
    return result


class TransformationSemigroup:
    """Closure of a generating set, with one witness word per element.

    Elements are kept in breadth-first discovery order, which makes every
    witness the shortest, then lexicographically least word (by generator
    index) evaluating to its element.  Duplicate generators do not change
    the element order or the witnesses.  Instances are immutable once built
    and safe to share across threads.
    """

    def __init__(self, generators: Sequence[Transformation],
                 names: Sequence[str] | None = None,
                 budget: int = DEFAULT_BUDGET):
        gens = tuple(generators)
        if not gens:
            raise ValueError("at least one generator is required")
        degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"degree mismatch among generators: {g.degree} vs {degree}")
        self.degree = degree
        self.generators = gens
        if names is None:
            names = tuple(f"s{i + 1}" for i in range(len(gens)))
        else:
            names = tuple(names)
            if len(names) != len(gens):
                raise ValueError("one name per generator is required")
        self.names = names
        arr = np.array([g.images for g in gens], dtype=np.int64)
        rows, parent, letter, complete = _kernels.closure(arr, budget)
        if not complete:
            raise BudgetExceededError("semigroup enumeration", budget)
        self._rows = rows
        self._parent = parent
        self._letter = letter
        self._words: list[Word | None] = [None] * len(rows)
        self._index: dict[tuple[int, ...], int] | None = None

    @classmethod
    def from_one_based(cls, rows: Sequence[Sequence[int]],
                       names: Sequence[str] | None = None,
                       budget: int = DEFAULT_BUDGET) -> "TransformationSemigroup":
        return cls([Transformation.from_one_based(r) for r in rows],
                   names=names, budget=budget)

    def __len__(self) -> int:
        return len(self._rows)

    def element(self, i: int) -> Transformation:
        return Transformation(tuple(int(x) for x in self._rows[i]))

    def __iter__(self) -> Iterator[Transformation]:
        for i in range(len(self)):
            yield self.element(i)

    def witness(self, i: int) -> Word:
        """Shortest-then-lex generator word evaluating to element ``i``."""
        if self._words[i] is None:
            trail = []
            j = i
            while j >= 0 and self._words[j] is None:
                trail.append(j)
                j = int(self._parent[j])
            for j in reversed(trail):
                p = int(self._parent[j])
                prefix: Word = () if p < 0 else self._words[p]  # type: ignore[assignment]
                self._words[j] = prefix + (int(self._letter[j]),)
        return self._words[i]  # type: ignore[return-value]

    def _lookup(self) -> dict[tuple[int, ...], int]:
        if self._index is None:
            self._index = {tuple(int(x) for x in row): i
                           for i, row in enumerate(self._rows)}
        return self._index

    def index_of(self, t: Transformation) -> int:
        """Position of an element, or -1 when absent."""
        return self._lookup().get(t.images, -1)

    def __contains__(self, t: Transformation) -> bool:
        return self.index_of(t) >= 0

    @property
    def is_monoid(self) -> bool:
        return Transformation.identity(self.degree) in self

    def evaluate(self, word: Sequence[int]) -> Transformation:
        """Product of the indexed generators; the empty word is the identity."""
        return evaluate_word(word, self.generators, self.degree)

    def word_str(self, word: Sequence[int]) -> str:
        """Human-readable word, e.g. ``s2 s1``; the empty word prints as ``id``."""
        if not word:
            return "id"
        return " ".join(self.names[a] for a in word)
