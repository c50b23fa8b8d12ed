"""Enumeration bounds.

``SFT_MAX_CELLS`` in the environment overrides the torus cell bound.
"""
import os
from dataclasses import dataclass, field

CUBE_CAP = 2 ** 20
TORUS_CELLS = 64
# largest slab-state tensor the window counters will materialize; the
# analysis pipeline uses the smaller PIPELINE_STATES
STATE_CAP = 2 ** 24
PIPELINE_STATES = 2 ** 20
WALK_CAP = 200_000
STRIP_CAP = 1500
N_MAX = 8
MAX_PERIOD = 3


def _env_cells():
    raw = os.environ.get("SFT_MAX_CELLS")
    if raw is None:
        return TORUS_CELLS
    value = int(raw)
    if value < 1:
        raise ValueError("SFT_MAX_CELLS must be positive")
    return value


@dataclass(frozen=True)
class Caps:
    cubes: int = CUBE_CAP
    torus_cells: int = field(default_factory=_env_cells)
    states: int = PIPELINE_STATES
    walks: int = WALK_CAP
    strips: int = STRIP_CAP

    def as_dict(self):
        return {"cubes": self.cubes, "torus_cells": self.torus_cells,
                "states": self.states, "walks": self.walks, "strips": self.strips}
