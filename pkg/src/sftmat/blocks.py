"""Planar blocks, vertically stacked block pairs, and their horizontal matrix."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .patterns import CubeSystem, SftSpec, batch_has_occurrence


@dataclass(frozen=True, order=True)
class Block:
    side: int
    cells: tuple  # flattened arr[x, y], y fastest

    @property
    def array(self):
        return np.array(self.cells, dtype=np.int64).reshape(self.side, self.side)


@dataclass(frozen=True, order=True)
class VPair:
    top: Block
    bottom: Block

    @property
    def array(self):
        """The 2l x l column ``arr[x, y]``, bottom block at y < l."""
        return np.concatenate([self.bottom.array, self.top.array], axis=1)


@dataclass(frozen=True)
class HMatrix:
    indices: tuple
    entries: np.ndarray

    def __eq__(self, other):
        return (isinstance(other, HMatrix) and self.indices == other.indices
                and np.array_equal(self.entries, other.entries))

    def window(self, i, j):
        return np.concatenate([self.indices[i].array, self.indices[j].array], axis=0)


def _require_planar(spec):
    if spec.dim != 2:
        raise DimensionMismatch(f"block construction needs d = 2, got {spec.dim}")


def build_blocks(spec: SftSpec, cubes: CubeSystem):
    _require_planar(spec)
    return [Block(cubes.side, c) for c in cubes.allowed]


def side_by_side(left: Block, right: Block):
    return np.concatenate([left.array, right.array], axis=0)


def build_vpairs(spec: SftSpec, blocks):
    _require_planar(spec)
    candidates = [VPair(top, bottom) for top in blocks for bottom in blocks]
    if not candidates:
        return []
    bad = batch_has_occurrence(spec.forbidden, [p.array for p in candidates])
    return sorted(p for p, b in zip(candidates, bad) if not b)


def build_hmatrix(spec: SftSpec, vpairs) -> HMatrix:
    """Entry (i, j) is 1 when pair j placed right of pair i leaves the
    2l x 2l window free of forbidden patterns."""
    _require_planar(spec)
    vpairs = tuple(vpairs)
    k = len(vpairs)
    if k == 0:
        return HMatrix(vpairs, np.zeros((0, 0), dtype=bool))
    cols = np.stack([p.array for p in vpairs])
    windows = np.concatenate([np.repeat(cols, k, axis=0), np.tile(cols, (k, 1, 1))], axis=1)
    entries = ~batch_has_occurrence(spec.forbidden, windows).reshape(k, k)
    return HMatrix(vpairs, entries)


def assemble_walk(m: HMatrix, walk):
    """The 2l x (len(walk) * l) strip spelled by a walk of pair indices."""
    return np.concatenate([m.indices[i].array for i in walk], axis=0)
