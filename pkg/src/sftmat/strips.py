"""Horizontally periodic strips of height l standing in for infinite strips."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .caps import Caps
from .errors import CapExceeded, DimensionMismatch
from .patterns import SftSpec, batch_has_occurrence, has_occurrence


@dataclass(frozen=True)
class PeriodicStrip:
    height: int
    period: int
    cells: tuple  # flattened arr[x, y] of shape (period, height)
    canonical: bool = False

    def __post_init__(self):
        if len(self.cells) != self.height * self.period:
            raise ValueError("cell count does not match height * period")

    @classmethod
    def from_array(cls, arr, canonical=False):
        arr = np.asarray(arr)
        return cls(arr.shape[1], arr.shape[0], tuple(int(v) for v in arr.reshape(-1)), canonical)

    @property
    def array(self):
        return np.array(self.cells, dtype=np.int64).reshape(self.period, self.height)

    def rotated(self, phase):
        """The strip read from column ``phase`` onward: ``s'[x] = s[x + phase]``."""
        return PeriodicStrip.from_array(np.roll(self.array, -phase, axis=0))

    def rows(self):
        """Symbol indices row by row, top row first."""
        arr = self.array
        return [arr[:, y].tolist() for y in reversed(range(self.height))]

    def sort_key(self):
        return (self.period, self.cells)


def canonicalize_strip(s: PeriodicStrip) -> PeriodicStrip:
    arr = s.array
    q = s.period
    for d in range(1, q + 1):
        if q % d == 0 and np.array_equal(np.roll(arr, d, axis=0), arr):
            arr = arr[:d]
            break
    best = min(tuple(np.roll(arr, -r, axis=0).reshape(-1).tolist()) for r in range(len(arr)))
    return PeriodicStrip(s.height, len(arr), best, True)


def wrapped(arr, extra):
    """Columns of ``arr`` continued periodically by ``extra`` more columns."""
    reps = -(-(arr.shape[0] + extra) // arr.shape[0])
    return np.tile(arr, (reps, 1))[: arr.shape[0] + extra]


def strip_is_admissible(spec: SftSpec, s: PeriodicStrip, extra=None) -> bool:
    if extra is None:
        extra = max([p.extents[0] for p in spec.forbidden], default=1) - 1
    return not has_occurrence(spec.forbidden, wrapped(s.array, extra))


def block_adjacency(spec: SftSpec, blocks):
    """Boolean matrix: block v may sit immediately right of block u."""
    k = len(blocks)
    if k == 0:
        return np.zeros((0, 0), dtype=bool)
    arrs = np.stack([b.array for b in blocks])
    out = np.zeros((k, k), dtype=bool)
    rows_per_chunk = max(1, 20000 // k)
    for lo in range(0, k, rows_per_chunk):
        hi = min(k, lo + rows_per_chunk)
        left = np.repeat(arrs[lo:hi], k, axis=0)
        right = np.tile(arrs, (hi - lo, 1, 1))
        windows = np.concatenate([left, right], axis=1)
        out[lo:hi] = ~batch_has_occurrence(spec.forbidden, windows).reshape(hi - lo, k)
    return out


def closed_walks(adj, max_length, cap):
    """Closed walks up to rotation, each written from its least rotation.

    Only primitive walks are returned (no walk is a repetition of a shorter one).
    """
    k = len(adj)
    succ = [np.flatnonzero(adj[u]).tolist() for u in range(k)]
    found = []
    visited = 0

    def least_primitive(walk):
        n = len(walk)
        rots = [tuple(walk[r:] + walk[:r]) for r in range(n)]
        t = tuple(walk)
        return t == min(rots) and rots.count(t) == 1

    def extend(walk):
        nonlocal visited
        visited += 1
        if visited > cap:
            raise CapExceeded("closed walk search", visited, cap)
        u = walk[-1]
        if adj[u, walk[0]] and least_primitive(walk):
            found.append(tuple(walk))
        if len(walk) == max_length:
            return
        for v in succ[u]:
            if v >= walk[0]:
                walk.append(v)
                extend(walk)
                walk.pop()

    for s in range(k):
        extend([s])
    return found


def enumerate_strips(spec: SftSpec, blocks, max_period: int, caps: Caps = None):
    """Canonical periodic strips coming from closed walks of at most
    ``max_period`` blocks in the horizontal block graph."""
    if spec.dim != 2:
        raise DimensionMismatch(f"strips need d = 2, got {spec.dim}")
    caps = caps or Caps()
    blocks = list(blocks)
    if not blocks or max_period < 1:
        return []
    adj = block_adjacency(spec, blocks)
    seen = set()
    out = []
    walks = closed_walks(adj, max_period, caps.walks)
    if len(walks) > caps.strips:
        raise CapExceeded("periodic strips", len(walks), caps.strips)
    for walk in walks:
        arr = np.concatenate([blocks[i].array for i in walk], axis=0)
        strip = PeriodicStrip.from_array(arr)
        if not strip_is_admissible(spec, strip):
            continue
        c = canonicalize_strip(strip)
        if c not in seen:
            seen.add(c)
            out.append(c)
    return sorted(out, key=PeriodicStrip.sort_key)


def stack(a: PeriodicStrip, b: PeriodicStrip, phase=0):
    """``a`` (rotated by ``phase``) above ``b``, over one common period."""
    if a.height != b.height:
        raise ValueError("strips of different heights")
    width = math.lcm(a.period, b.period)
    top = np.tile(np.roll(a.array, -phase, axis=0), (width // a.period, 1))
    bottom = np.tile(b.array, (width // b.period, 1))
    return np.concatenate([bottom, top], axis=1)


def strip_vertical_compatible(spec: SftSpec, a: PeriodicStrip, b: PeriodicStrip, phase=0) -> bool:
    """Whether ``a`` above ``b`` (``a`` shifted left by ``phase``) is free of
    forbidden patterns, reading columns modulo the common period."""
    extra = max([p.extents[0] for p in spec.forbidden], default=1) - 1
    return not has_occurrence(spec.forbidden, wrapped(stack(a, b, phase), extra))


def compatible_phases(spec: SftSpec, a: PeriodicStrip, b: PeriodicStrip):
    """All relative phases (mod gcd of the periods) at which ``a`` sits on ``b``."""
    g = math.gcd(a.period, b.period)
    return tuple(p for p in range(g) if strip_vertical_compatible(spec, a, b, p))


def compatibility_table(spec: SftSpec, strips, batch=4096):
    """``{(i, j): phases}`` for every ordered pair with strip j above strip i.

    Same answers as :func:`compatible_phases`, checked in batches of windows
    of equal width.
    """
    extra = max([p.extents[0] for p in spec.forbidden], default=1) - 1
    arrays = [s.array for s in strips]
    groups = {}
    for i, below in enumerate(strips):
        for j, above in enumerate(strips):
            width = math.lcm(below.period, above.period)
            for ph in range(math.gcd(below.period, above.period)):
                groups.setdefault(width, []).append((i, j, ph))
    found = {}
    for width, items in groups.items():
        xs = np.arange(width + extra)
        for lo in range(0, len(items), batch):
            chunk = items[lo:lo + batch]
            windows = np.stack([
                np.concatenate([arrays[i][xs % strips[i].period],
                                arrays[j][(xs + ph) % strips[j].period]], axis=1)
                for i, j, ph in chunk])
            bad = batch_has_occurrence(spec.forbidden, windows)
            for (i, j, ph), b in zip(chunk, bad):
                if not b:
                    found.setdefault((i, j), []).append(ph)
    return {key: tuple(sorted(ph)) for key, ph in sorted(found.items())}
