"""Brute-force ground truth on finite tori and finite windows.

Nothing here depends on cube normalization or on the strip matrices, so the
results can be used to check both.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import _slabs
from .caps import N_MAX, STATE_CAP, Caps
from .errors import CapExceeded, DimensionMismatch
from .patterns import FinitePattern, SftSpec, match_map


@dataclass(frozen=True)
class TorusConfig:
    periods: tuple
    cells: tuple  # flattened in C order

    def __post_init__(self):
        periods = tuple(int(q) for q in self.periods)
        if not periods or any(q < 1 for q in periods):
            raise ValueError("periods must be positive")
        cells = tuple(int(c) for c in self.cells)
        if len(cells) != math.prod(periods):
            raise ValueError(f"{len(cells)} cells do not fill periods {periods}")
        object.__setattr__(self, "periods", periods)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr)
        return cls(arr.shape, tuple(arr.reshape(-1).tolist()))

    @property
    def dim(self):
        return len(self.periods)

    @property
    def array(self):
        return np.array(self.cells, dtype=np.int64).reshape(self.periods)


@dataclass(frozen=True)
class PeriodicPoint:
    torus: TorusConfig
    verified: bool = False

    @property
    def periods(self):
        return self.torus.periods

    @property
    def array(self):
        return self.torus.array


@dataclass(frozen=True)
class Emptiness:
    status: str  # "EMPTY" or "INCONCLUSIVE"
    witness: Optional[int]
    tested: int  # largest window side actually counted
    counts: tuple = ()
    note: str = ""


def _unrolled(arr, extra):
    """The torus read modulo its periods over a box ``extra`` cells larger."""
    reps = tuple(-(-(q + e) // q) for q, e in zip(arr.shape, extra))
    big = np.tile(arr, reps)
    return big[tuple(slice(0, q + e) for q, e in zip(arr.shape, extra))]


def is_admissible_on_torus(spec: SftSpec, t: TorusConfig) -> bool:
    if t.dim != spec.dim:
        raise DimensionMismatch(f"torus has dimension {t.dim}, spec {spec.dim}")
    arr = t.array
    for p in spec.forbidden:
        ext = p.extents
        big = _unrolled(arr, tuple(e - 1 for e in ext))
        hits = match_map(p, big)[tuple(slice(0, q) for q in t.periods)]
        if hits.any():
            return False
    return True


def verify(spec: SftSpec, t: TorusConfig) -> PeriodicPoint:
    return PeriodicPoint(t, is_admissible_on_torus(spec, t))


def _constraints(spec, periods):
    """Per-cell lists of (cells, symbols) that must not all match.

    Each forbidden placement is read modulo the periods and filed under the
    last cell (in fill order) that it touches.
    """
    index = np.arange(math.prod(periods)).reshape(periods)
    by_cell = [[] for _ in range(index.size)]
    seen = set()
    for p in spec.forbidden:
        q = p.normalized()
        for base in itertools.product(*(range(n) for n in periods)):
            need = {}
            clash = False
            for coord, symbol in q.cells:
                cell = int(index[tuple((b + c) % n for b, c, n in zip(base, coord, periods))])
                if need.setdefault(cell, symbol) != symbol:
                    clash = True
                    break
            if clash:
                continue
            key = tuple(sorted(need.items()))
            if key in seen:
                continue
            seen.add(key)
            by_cell[max(need)].append(key)
    return by_cell


def iter_torus_configs(spec: SftSpec, periods, caps: Caps = None) -> Iterator[PeriodicPoint]:
    """Yield admissible configurations of the given periods in canonical order."""
    caps = caps or Caps()
    periods = tuple(int(q) for q in periods)
    if len(periods) != spec.dim:
        raise DimensionMismatch(f"{len(periods)} periods for a {spec.dim}-dimensional spec")
    size = math.prod(periods)
    if size > caps.torus_cells:
        raise CapExceeded("torus cells", size, caps.torus_cells)
    checks = _constraints(spec, periods)
    k = len(spec.alphabet)
    values = [0] * size

    def fine(i):
        return not any(all(values[c] == s for c, s in key) for key in checks[i])

    def walk(i):
        if i == size:
            yield PeriodicPoint(TorusConfig(periods, tuple(values)), True)
            return
        for s in range(k):
            values[i] = s
            if fine(i):
                yield from walk(i + 1)

    yield from walk(0)


def enumerate_torus_configs(spec: SftSpec, periods, caps: Caps = None, limit=None):
    found = iter_torus_configs(spec, periods, caps)
    if limit is not None:
        found = itertools.islice(found, limit)
    return list(found)


def count_admissible_squares(spec: SftSpec, n: int, cap: int = STATE_CAP) -> int:
    """Number of total n^d windows (no wraparound) free of forbidden patterns."""
    if n < 0:
        raise ValueError("window side must be non-negative")
    d = spec.dim
    k = len(spec.alphabet)
    slab_shape = (n,) * (d - 1)
    slab_index = np.arange(n ** (d - 1)).reshape(slab_shape)
    fitting = [p.normalized() for p in spec.forbidden if max(p.extents) <= n]
    h = max([p.extents[-1] for p in fitting], default=1)

    # layer masks: for pattern p at slab offset o, which slabs match layer j
    def layer_masks(slabs, q, off):
        masks = []
        for j in range(q.extents[-1]):
            m = np.ones(len(slabs), dtype=bool)
            for coord, symbol in q.cells:
                if coord[-1] == j:
                    col = slab_index[tuple(c + o for c, o in zip(coord[:-1], off))]
                    m &= slabs[:, col] == symbol
            masks.append(m)
        return masks

    def placements(q):
        return itertools.product(*(range(n - e + 1) for e in q.extents[:-1]))

    slabs = _slabs.slab_digits(k, n ** (d - 1), cap)
    keep = np.ones(len(slabs), dtype=bool)
    for q in fitting:
        if q.extents[-1] == 1:
            for off in placements(q):
                keep &= ~layer_masks(slabs, q, off)[0]
    slabs = slabs[keep]
    n_slabs = len(slabs)
    table = {q: [(off, layer_masks(slabs, q, off)) for off in placements(q)]
             for q in fitting if q.extents[-1] > 1}

    def window_ok(length):
        bad = np.zeros((n_slabs,) * length, dtype=bool)
        full = np.arange(n_slabs)
        for q, entries in table.items():
            e = q.extents[-1]
            if e > length:
                continue
            for _, masks in entries:
                picks = [full] * (length - e) + [np.flatnonzero(m) for m in masks]
                if any(len(x) == 0 for x in picks):
                    continue
                bad[np.ix_(*picks)] = True
        return ~bad

    if n_slabs == 0:
        return 0 if n > 0 else 1
    return _slabs.fold(n, h, n_slabs, window_ok, cap, bound=k ** (n ** d))


def emptiness_semidecision(spec: SftSpec, n_max: int = N_MAX, cap: int = STATE_CAP) -> Emptiness:
    """EMPTY with the least window side admitting no locally admissible window,
    or INCONCLUSIVE when every tested side admits one."""
    counts = []
    for n in range(1, n_max + 1):
        try:
            c = count_admissible_squares(spec, n, cap)
        except CapExceeded as exc:
            return Emptiness("INCONCLUSIVE", None, n - 1, tuple(counts), str(exc))
        counts.append(c)
        if c == 0:
            return Emptiness("EMPTY", n, n, tuple(counts))
    return Emptiness("INCONCLUSIVE", None, n_max, tuple(counts))


def shift_point(pt: PeriodicPoint, a) -> PeriodicPoint:
    """The point ``k -> x[k + a]``."""
    if len(a) != pt.torus.dim:
        raise DimensionMismatch(f"shift vector of length {len(a)} on a {pt.torus.dim}-torus")
    arr = np.roll(pt.array, shift=tuple(-int(v) for v in a), axis=tuple(range(len(a))))
    return PeriodicPoint(TorusConfig.from_array(arr), pt.verified)


def extract_pattern(pt: PeriodicPoint, lower, shape) -> FinitePattern:
    """Restriction of the point to the box ``lower + [0, shape)``."""
    arr = pt.array
    cells = []
    for rel in np.ndindex(*shape):
        coord = tuple(a + b for a, b in zip(lower, rel))
        cells.append((coord, int(arr[tuple(c % q for c, q in zip(coord, arr.shape))])))
    return FinitePattern(len(shape), tuple(cells))


def primitive(pt: PeriodicPoint) -> PeriodicPoint:
    """Shrink each period to the least one along its axis."""
    arr = pt.array
    for axis, q in enumerate(arr.shape):
        for d in range(1, q + 1):
            if q % d == 0 and np.array_equal(np.roll(arr, d, axis=axis), arr):
                arr = np.take(arr, range(d), axis=axis)
                break
    return PeriodicPoint(TorusConfig.from_array(arr), pt.verified)
