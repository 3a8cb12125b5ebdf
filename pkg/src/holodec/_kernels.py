"""Hot enumeration kernels, numba-jitted with pure-Python/NumPy fallbacks.

Two loops dominate runtime on large inputs: the breadth-first
right-multiplication closure of a generating set, and the orbit of subset
bitmasks under the generator action.  Both have a jitted implementation and
a fallback with identical output.  The fallback is selected by setting
``HOLODEC_DISABLE_NUMBA=1`` in the environment, and automatically when numba
is not importable or an input exceeds a jit limit (element rows are keyed by
mixed-radix int64, so the jitted closure needs degree <= 15; masks are int64,
so degree <= 62 throughout).

Run ``python benchmarks/bench_kernels.py`` to compare the two paths.
"""

from __future__ import annotations

import os

import numpy as np

# mixed-radix int64 row keys need degree**degree < 2**63
MAX_NJIT_DEGREE = 15
# subset bitmasks are int64
MAX_MASK_DEGREE = 62


def _numba_requested() -> bool:
    flag = os.environ.get("HOLODEC_DISABLE_NUMBA", "").strip().lower()
    return flag in ("", "0", "false")


_numba = None
if _numba_requested():
    try:
        import numba as _numba
    except ImportError:
        _numba = None


def backend() -> str:
    """Name of the active kernel backend, ``"numba"`` or ``"python"``."""
    return "numba" if _numba is not None else "python"


def closure_python(gens: np.ndarray, cap: int):
    """Breadth-first closure of the generator rows under composition.

    ``gens`` is a (k, n) int64 array of image rows; row composition is
    ``child[x] = gens[j][base[x]]`` (base applied first).  Returns
    ``(elements, parent, letter, complete)`` where elements appear in
    discovery order, so the backpointer word of each element is its
    shortest, lexicographically least generator word.  ``complete`` is
    False when more than ``cap`` elements exist.
    """
    k, n = gens.shape
    seen: dict[bytes, int] = {}
    rows: list[np.ndarray] = []
    parent: list[int] = []
    letter: list[int] = []
    complete = True
    for j in range(k):
        key = gens[j].tobytes()
        if key in seen:
            continue
        if len(rows) >= cap:
            complete = False
            break
        seen[key] = len(rows)
        rows.append(gens[j].copy())
        parent.append(-1)
        letter.append(j)
    i = 0
    while complete and i < len(rows):
        base = rows[i]
        for j in range(k):
            child = gens[j][base]
            key = child.tobytes()
            if key in seen:
                continue
            if len(rows) >= cap:
                complete = False
                break
            seen[key] = len(rows)
            rows.append(child)
            parent.append(i)
            letter.append(j)
        i += 1
    if rows:
        elements = np.vstack(rows)
    else:
        elements = np.empty((0, n), dtype=np.int64)
    return (
        elements,
        np.array(parent, dtype=np.int64),
        np.array(letter, dtype=np.int64),
        complete,
    )


def subset_orbit_python(gens: np.ndarray, starts: np.ndarray):
    """Closure of the start bitmasks under the set action of each generator.

    Returns ``(masks, edges)``: masks in discovery order and
    ``edges[i, j]`` = index of ``masks[i]`` moved by generator ``j``.
    """
    k, n = gens.shape
    point_masks = [[1 << int(gens[j, p]) for p in range(n)] for j in range(k)]
    index: dict[int, int] = {}
    masks: list[int] = []
    edges: list[list[int]] = []
    for s in starts:
        s = int(s)
        if s not in index:
            index[s] = len(masks)
            masks.append(s)
    i = 0
    while i < len(masks):
        m0 = masks[i]
        row = []
        for j in range(k):
            pm = point_masks[j]
            t = 0
            mm = m0
            while mm:
                low = mm & -mm
                t |= pm[low.bit_length() - 1]
                mm ^= low
            if t not in index:
                index[t] = len(masks)
                masks.append(t)
            row.append(index[t])
        edges.append(row)
        i += 1
    return (
        np.array(masks, dtype=np.int64),
        np.array(edges, dtype=np.int64).reshape(len(masks), k),
    )


if _numba is not None:
    from numba import njit, types
    from numba.typed import Dict as _TypedDict

    _I8 = types.int64

    @njit(cache=True)
    def _closure_njit(gens, cap):  # pragma: no cover - exercised via dispatch
        k = gens.shape[0]
        n = gens.shape[1]
        weights = np.empty(n, dtype=np.int64)
        acc = np.int64(1)
        for x in range(n):
            weights[x] = acc
            acc = acc * n
        seen = _TypedDict.empty(key_type=_I8, value_type=_I8)
        capacity = 256
        rows = np.empty((capacity, n), dtype=np.int64)
        parent = np.empty(capacity, dtype=np.int64)
        letter = np.empty(capacity, dtype=np.int64)
        m = 0
        complete = True
        for j in range(k):
            key = np.int64(0)
            for x in range(n):
                key += gens[j, x] * weights[x]
            if key in seen:
                continue
            if m >= cap:
                complete = False
                break
            if m == capacity:
                capacity *= 2
                nrows = np.empty((capacity, n), dtype=np.int64)
                nrows[:m] = rows[:m]
                rows = nrows
                nparent = np.empty(capacity, dtype=np.int64)
                nparent[:m] = parent[:m]
                parent = nparent
                nletter = np.empty(capacity, dtype=np.int64)
                nletter[:m] = letter[:m]
                letter = nletter
            seen[key] = m
            rows[m] = gens[j]
            parent[m] = -1
            letter[m] = j
            m += 1
        child = np.empty(n, dtype=np.int64)
        i = 0
        while complete and i < m:
            for j in range(k):
                key = np.int64(0)
                for x in range(n):
                    child[x] = gens[j, rows[i, x]]
                    key += child[x] * weights[x]
                if key in seen:
                    continue
                if m >= cap:
                    complete = False
                    break
                if m == capacity:
                    capacity *= 2
                    nrows = np.empty((capacity, n), dtype=np.int64)
                    nrows[:m] = rows[:m]
                    rows = nrows
                    nparent = np.empty(capacity, dtype=np.int64)
                    nparent[:m] = parent[:m]
                    parent = nparent
                    nletter = np.empty(capacity, dtype=np.int64)
                    nletter[:m] = letter[:m]
                    letter = nletter
                seen[key] = m
                rows[m] = child
                parent[m] = i
                letter[m] = j
                m += 1
            i += 1
        return rows[:m].copy(), parent[:m].copy(), letter[:m].copy(), complete

    @njit(cache=True)
    def _subset_orbit_njit(gens, starts):  # pragma: no cover - via dispatch
        k = gens.shape[0]
        n = gens.shape[1]
        pm = np.empty((k, n), dtype=np.int64)
        for j in range(k):
            for p in range(n):
                pm[j, p] = np.int64(1) << gens[j, p]
        seen = _TypedDict.empty(key_type=_I8, value_type=_I8)
        capacity = 256
        masks = np.empty(capacity, dtype=np.int64)
        edges = np.empty((capacity, k), dtype=np.int64)
        m = 0
        for idx in range(starts.shape[0]):
            s = starts[idx]
            if s in seen:
                continue
            if m == capacity:
                capacity *= 2
                nmasks = np.empty(capacity, dtype=np.int64)
                nmasks[:m] = masks[:m]
                masks = nmasks
                nedges = np.empty((capacity, k), dtype=np.int64)
                nedges[:m] = edges[:m]
                edges = nedges
            seen[s] = m
            masks[m] = s
            m += 1
        i = 0
        while i < m:
            m0 = masks[i]
            for j in range(k):
                t = np.int64(0)
                for p in range(n):
                    if (m0 >> p) & 1:
                        t |= pm[j, p]
                if t not in seen:
                    if m == capacity:
                        capacity *= 2
                        nmasks = np.empty(capacity, dtype=np.int64)
                        nmasks[:m] = masks[:m]
                        masks = nmasks
                        nedges = np.empty((capacity, k), dtype=np.int64)
                        nedges[:m] = edges[:m]
                        edges = nedges
                    seen[t] = m
                    masks[m] = t
                    m += 1
                edges[i, j] = seen[t]
            i += 1
        return masks[:m].copy(), edges[:m].copy()


def closure(gens: np.ndarray, cap: int):
    """Dispatching wrapper around the closure kernel."""
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    if gens.shape[1] > MAX_MASK_DEGREE:
        raise ValueError(f"degree {gens.shape[1]} exceeds supported maximum {MAX_MASK_DEGREE}")
    if _numba is not None and gens.shape[1] <= MAX_NJIT_DEGREE:
        rows, parent, letter, complete = _closure_njit(gens, cap)
        return rows, parent, letter, bool(complete)
    return closure_python(gens, cap)


def subset_orbit(gens: np.ndarray, starts):
    """Dispatching wrapper around the subset-orbit kernel."""
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    starts = np.ascontiguousarray(starts, dtype=np.int64)
    if gens.shape[1] > MAX_MASK_DEGREE:
        raise ValueError(f"degree {gens.shape[1]} exceeds supported maximum {MAX_MASK_DEGREE}")
    if _numba is not None:
        return _subset_orbit_njit(gens, starts)
    return subset_orbit_python(gens, starts)
