"""Alphabets, finite patterns, forbidden sets and their reduction to cubes.

Coordinates are integer tuples ``(x0, x1, ..., x_{d-1})``.  Arrays holding
total assignments are indexed the same way, so ``arr[x, y]`` for d = 2 with
axis 1 pointing up.  Canonical cell order inside a box is lexicographic in the
coordinate (last axis fastest), which is numpy's C order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import _slabs
from .caps import CUBE_CAP, STATE_CAP
from .errors import CapExceeded, DimensionMismatch


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        if not symbols:
            raise ValueError("alphabet must contain at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"alphabet symbols are not distinct: {symbols}")
        object.__setattr__(self, "symbols", symbols)

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def index(self, symbol):
        return self.symbols.index(symbol)


@dataclass(frozen=True)
class FinitePattern:
    """A partial assignment of symbol indices on a finite support."""

    dim: int
    cells: tuple  # sorted ((coord, symbol_index), ...)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        cells = tuple(sorted((tuple(int(c) for c in coord), int(s))
                             for coord, s in self.cells))
        if not cells:
            raise ValueError("a pattern needs at least one cell")
        coords = [coord for coord, _ in cells]
        if any(len(c) != self.dim for c in coords):
            raise DimensionMismatch(f"coordinates must have length {self.dim}")
        if len(set(coords)) != len(coords):
            raise ValueError("a pattern assigns each cell at most once")
        if any(s < 0 for _, s in cells):
            raise ValueError("symbol indices are non-negative")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_mapping(cls, mapping: Mapping[Sequence[int], int], dim=None):
        items = [(tuple(k), v) for k, v in mapping.items()]
        if dim is None:
            dim = len(items[0][0]) if items else 0
        return cls(dim, tuple(items))

    @classmethod
    def from_array(cls, arr, origin=None):
        arr = np.asarray(arr)
        origin = origin or (0,) * arr.ndim
        return cls(arr.ndim, tuple(
            (tuple(o + i for o, i in zip(origin, idx)), int(arr[idx]))
            for idx in np.ndindex(arr.shape)))

    def as_dict(self):
        return dict(self.cells)

    @property
    def lower(self):
        return tuple(min(c[i] for c, _ in self.cells) for i in range(self.dim))

    @property
    def extents(self):
        lo = self.lower
        return tuple(max(c[i] for c, _ in self.cells) - lo[i] + 1
                     for i in range(self.dim))

    def translated(self, vector):
        return FinitePattern(self.dim, tuple(
            (tuple(a + b for a, b in zip(c, vector)), s) for c, s in self.cells))

    def normalized(self):
        """Translate so the minimal corner of the bounding box is the origin."""
        return self.translated(tuple(-v for v in self.lower))

    def is_total(self):
        return len(self.cells) == int(np.prod(self.extents))


@dataclass(frozen=True)
class SftSpec:
    alphabet: Alphabet
    dim: int
    forbidden: tuple = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        seen = []
        for p in self.forbidden:
            if p.dim != self.dim:
                raise DimensionMismatch(
                    f"pattern of dimension {p.dim} in a {self.dim}-dimensional spec")
            if any(s >= len(self.alphabet) for _, s in p.cells):
                raise ValueError("pattern uses a symbol outside the alphabet")
            q = p.normalized()
            if q not in seen:
                seen.append(q)
        object.__setattr__(self, "forbidden", tuple(seen))


@dataclass(frozen=True)
class CubeSystem:
    side: int
    dim: int
    n_symbols: int
    allowed: tuple  # flattened cubes, canonical order
    forbidden_count: int
    _codes: np.ndarray = field(repr=False, compare=False, default=None)

    @property
    def shape(self):
        return (self.side,) * self.dim

    def cube(self, i):
        return np.array(self.allowed[i], dtype=np.uint8).reshape(self.shape)

    def allowed_table(self):
        """Boolean lookup indexed by the base-k code of a flattened cube."""
        table = np.zeros(self.n_symbols ** (self.side ** self.dim), dtype=bool)
        table[self.codes()] = True
        return table

    def codes(self):
        if self._codes is not None:
            return self._codes
        cells = self.side ** self.dim
        weights = self.n_symbols ** np.arange(cells - 1, -1, -1, dtype=np.int64)
        if not self.allowed:
            return np.zeros(0, dtype=np.int64)
        return np.array(self.allowed, dtype=np.int64) @ weights


def from_rows(rows):
    """Build a 2-d array ``arr[x, y]`` from rows listed bottom-up."""
    return np.asarray(rows).T.copy()


def width(p: FinitePattern) -> int:
    return max(p.extents)


def normalization_length(spec: SftSpec) -> int:
    if not spec.forbidden:
        return 1
    return max(width(p) for p in spec.forbidden)


def occurs(p: FinitePattern, window, offset) -> bool:
    window = np.asarray(window)
    if len(offset) != p.dim or window.ndim != p.dim:
        raise DimensionMismatch("offset, pattern and window dimensions differ")
    for coord, symbol in p.cells:
        pos = tuple(c + o for c, o in zip(coord, offset))
        if any(v < 0 or v >= n for v, n in zip(pos, window.shape)):
            raise ValueError(f"offset {tuple(offset)} places cell {coord} outside the window")
    return all(window[tuple(c + o for c, o in zip(coord, offset))] == symbol
               for coord, symbol in p.cells)


def match_map(p: FinitePattern, arr):
    """Boolean array over placements of ``p``'s minimal corner inside ``arr``.

    Entry ``o`` is True when ``p`` translated so that its minimal corner sits
    at ``o`` agrees with ``arr`` on every support cell.
    """
    arr = np.asarray(arr)
    q = p.normalized()
    ext = q.extents
    span = tuple(n - e + 1 for n, e in zip(arr.shape, ext))
    if any(s <= 0 for s in span):
        return np.zeros(tuple(max(s, 0) for s in span), dtype=bool)
    hit = np.ones(span, dtype=bool)
    for coord, symbol in q.cells:
        view = arr[tuple(slice(c, c + s) for c, s in zip(coord, span))]
        hit &= view == symbol
    return hit


def has_occurrence(patterns, arr) -> bool:
    return any(match_map(p, arr).any() for p in patterns)


def all_cubes(k, side, dim, cap=CUBE_CAP):
    """Every total cube as a ``(k**(side**dim), side**dim)`` array, canonical order."""
    cells = side ** dim
    return _slabs.slab_digits(k, cells, cap)


def _excluded(spec, side, digits, anchored):
    shape = (side,) * spec.dim
    flat = np.arange(side ** spec.dim).reshape(shape)
    out = np.zeros(len(digits), dtype=bool)
    for p in spec.forbidden:
        q = p.normalized()
        ext = q.extents
        if anchored:
            offsets = [(0,) * spec.dim]
        else:
            offsets = itertools.product(*(range(side - e + 1) for e in ext))
        for off in offsets:
            hit = np.ones(len(digits), dtype=bool)
            for coord, symbol in q.cells:
                col = flat[tuple(c + o for c, o in zip(coord, off))]
                hit &= digits[:, col] == symbol
            out |= hit
    return out


def normalize_to_cubes(spec: SftSpec, cap: int = CUBE_CAP, anchored=False) -> CubeSystem:
    """Replace the forbidden set by the allowed cubes of side ``l``.

    A cube is excluded when some forbidden pattern occurs anywhere inside it.
    ``anchored=True`` instead excludes only extensions of a pattern placed at
    the cube's corner; both give the same shift space.
    """
    side = normalization_length(spec)
    k = len(spec.alphabet)
    total = k ** (side ** spec.dim)
    if total > cap:
        raise CapExceeded("cube enumeration", total, cap)
    digits = all_cubes(k, side, spec.dim, cap)
    keep = ~_excluded(spec, side, digits, anchored)
    allowed = tuple(tuple(int(v) for v in row) for row in digits[keep])
    codes = np.flatnonzero(keep).astype(np.int64)
    return CubeSystem(side, spec.dim, k, allowed, int(total - keep.sum()), codes)


def count_windows_by_cubes(cubes: CubeSystem, n: int, cap: int = STATE_CAP) -> int:
    """Count total n^d windows all of whose side-l sub-cubes are allowed.

    Only meaningful for ``n >= side``; smaller windows contain no cube.
    """
    side, dim, k = cubes.side, cubes.dim, cubes.n_symbols
    if n < side:
        raise ValueError(f"window side {n} is smaller than the cube side {side}")
    table = cubes.allowed_table()
    slab_shape = (n,) * (dim - 1)
    slabs = _slabs.slab_digits(k, n ** (dim - 1), cap)
    n_slabs = len(slabs)
    cube_cells = side ** dim
    # weight of cube cell (u, j): u in the slab directions, j the layer
    weights = (k ** np.arange(cube_cells - 1, -1, -1, dtype=np.int64)).reshape(
        (side,) * dim)
    slab_index = np.arange(max(1, n ** (dim - 1))).reshape(slab_shape) if dim > 1 else None
    offsets = list(itertools.product(*(range(n - side + 1) for _ in range(dim - 1))))

    # partial code each slab contributes when it is layer j of a cube at offset o
    def partial(j, off):
        acc = np.zeros(n_slabs, dtype=np.int64)
        for u in itertools.product(range(side), repeat=dim - 1):
            col = slab_index[tuple(a + b for a, b in zip(u, off))] if dim > 1 else 0
            acc += slabs[:, col].astype(np.int64) * weights[u + (j,)]
        return acc

    def window_ok(length):
        if length < side:
            return np.ones((n_slabs,) * length, dtype=bool)
        ok = np.ones((n_slabs,) * length, dtype=bool)
        for off in offsets:
            code = np.zeros((1,) * length, dtype=np.int64)
            for j in range(side):
                shape = [1] * length
                shape[length - side + j] = n_slabs
                code = code + partial(j, off).reshape(shape)
            ok &= table[code]
        return ok

    return _slabs.fold(n, side, n_slabs, window_ok, cap, bound=k ** (n ** dim))


def batch_has_occurrence(patterns, windows):
    """Per-window flag for a stack of equally shaped windows ``(N, *shape)``."""
    windows = np.asarray(windows)
    out = np.zeros(len(windows), dtype=bool)
    shape = windows.shape[1:]
    for p in patterns:
        q = p.normalized()
        span = tuple(n - e + 1 for n, e in zip(shape, q.extents))
        if any(s <= 0 for s in span):
            continue
        for off in itertools.product(*(range(s) for s in span)):
            hit = np.ones(len(windows), dtype=bool)
            for coord, symbol in q.cells:
                hit &= windows[(slice(None),) + tuple(c + o for c, o in zip(coord, off))] == symbol
            out |= hit
    return out
