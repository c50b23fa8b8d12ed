"""Finite truncations of the strip matrix: construction, pruning, cycles,
periodic points, and the end-to-end nonemptiness analysis."""
from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .blocks import build_blocks
from .caps import MAX_PERIOD, N_MAX, Caps
from .errors import CapExceeded, VerificationFailed
from .patterns import SftSpec, normalization_length, normalize_to_cubes
from .strips import compatibility_table, enumerate_strips
from .torus import PeriodicPoint, TorusConfig, emptiness_semidecision, is_admissible_on_torus, primitive

NONEMPTY = "NONEMPTY"
EMPTY = "EMPTY"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class StripMatrix:
    """0/1 matrix over strips; ``entries[i, j]`` means strip j may sit on strip i.

    ``phases[(i, j)]`` lists the relative horizontal offsets that make the
    stacking admissible.  Matrices built from bare arrays carry no phases.
    """

    indices: tuple
    entries: np.ndarray
    phases: dict = field(default_factory=dict)
    pruned: bool = False

    @classmethod
    def from_array(cls, arr, indices=None):
        arr = np.asarray(arr, dtype=bool)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("expected a square matrix")
        if indices is None:
            indices = tuple(range(len(arr)))
        return cls(tuple(indices), arr.copy())

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        return (isinstance(other, StripMatrix) and self.indices == other.indices
                and np.array_equal(self.entries, other.entries)
                and self.phases == other.phases and self.pruned == other.pruned)

    def restrict(self, keep, pruned=None):
        keep = list(keep)
        where = {old: new for new, old in enumerate(keep)}
        phases = {(where[i], where[j]): ph for (i, j), ph in self.phases.items()
                  if i in where and j in where}
        return StripMatrix(tuple(self.indices[i] for i in keep),
                           self.entries[np.ix_(keep, keep)],
                           phases, self.pruned if pruned is None else pruned)


@dataclass(frozen=True)
class Cycle:
    indices: tuple
    phases: tuple  # phases[t]: offset of indices[t+1] relative to indices[t]


@dataclass(frozen=True)
class Budgets:
    max_period: int = MAX_PERIOD
    n_max: int = N_MAX
    caps: Caps = field(default_factory=Caps)

    def doubled(self):
        return Budgets(2 * self.max_period, 2 * self.n_max, self.caps)

    def as_dict(self):
        return {"max_period": self.max_period, "n_max": self.n_max, "caps": self.caps.as_dict()}


@dataclass
class AnalysisReport:
    status: str
    certificate: Optional[PeriodicPoint] = None
    witness: Optional[int] = None
    budgets: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    diagnostic: str = ""
    timings: dict = field(default_factory=dict)
    matrix: Optional[StripMatrix] = None


def _check_index(m, i):
    if not 0 <= i < len(m):
        raise IndexError(f"index {i} out of range for a {len(m)}x{len(m)} matrix")


def build_strip_matrix(spec: SftSpec, strips) -> StripMatrix:
    """Entry (i, j) is 1 when strip j can sit on strip i at some phase."""
    strips = tuple(strips)
    k = len(strips)
    entries = np.zeros((k, k), dtype=bool)
    phases = compatibility_table(spec, strips)
    for i, j in phases:
        entries[i, j] = True
    return StripMatrix(strips, entries, phases)


def u_related(m: StripMatrix, i: int):
    """Indices j with entry (j, i) = 1: the strips ``i`` can sit on."""
    _check_index(m, i)
    return np.flatnonzero(m.entries[:, i]).tolist()


def d_related(m: StripMatrix, i: int):
    """Indices j with entry (i, j) = 1: the strips that can sit on ``i``."""
    _check_index(m, i)
    return np.flatnonzero(m.entries[i, :]).tolist()


def is_complementary(m: StripMatrix, subset) -> bool:
    subset = sorted(set(subset))
    for i in subset:
        _check_index(m, i)
    if not subset:
        return True
    sub = m.entries[np.ix_(subset, subset)]
    return bool(sub.any(axis=0).all() and sub.any(axis=1).all())


def survivors(entries, order=None):
    """Indices left after repeatedly deleting any index whose row or column
    is zero, scanning candidates in ``order``."""
    n = len(entries)
    order = list(range(n)) if order is None else list(order)
    alive = np.ones(n, dtype=bool)
    changed = True
    while changed:
        changed = False
        for i in order:
            if not alive[i]:
                continue
            if not (entries[i] & alive).any() or not (entries[:, i] & alive).any():
                alive[i] = False
                changed = True
                break
    return np.flatnonzero(alive).tolist()


def prune(m: StripMatrix, order=None) -> StripMatrix:
    return m.restrict(survivors(m.entries, order), pruned=True)


def find_cycle(m: StripMatrix) -> Optional[Cycle]:
    """Shortest directed cycle, ties broken by the smallest start index."""
    n = len(m)
    best = None
    for s in range(n):
        if best is not None and s > 0 and len(best) == 1:
            break
        parent = {}
        queue = deque([s])
        seen = {s}
        hit = None
        while queue and hit is None:
            u = queue.popleft()
            for v in np.flatnonzero(m.entries[u]).tolist():
                if v == s:
                    hit = u
                    break
                if v not in seen:
                    seen.add(v)
                    parent[v] = u
                    queue.append(v)
        if hit is None:
            continue
        path = [hit]
        while path[-1] != s:
            path.append(parent[path[-1]])
        path.reverse()
        if best is None or len(path) < len(best):
            best = path
    if best is None:
        return None
    phases = tuple(min(m.phases.get((best[t], best[(t + 1) % len(best)]), (0,)))
                   for t in range(len(best)))
    return Cycle(tuple(best), phases)


def synthesize_periodic_point(spec: SftSpec, m: StripMatrix, cycle: Cycle) -> PeriodicPoint:
    """Stack the cycle's strips at their phases and close up into a torus."""
    strips = [m.indices[i] for i in cycle.indices]
    k = len(strips)
    height = strips[0].height
    offsets = [0]
    for ph in cycle.phases:
        offsets.append(offsets[-1] + ph)
    drift = offsets[-1]
    width = math.lcm(*(s.period for s in strips))
    turns = width // math.gcd(drift, width)
    arr = np.zeros((width, turns * k * height), dtype=np.int64)
    xs = np.arange(width)
    for r in range(turns):
        for t, s in enumerate(strips):
            rows = s.array[(xs + r * drift + offsets[t]) % s.period]
            y0 = (r * k + t) * height
            arr[:, y0:y0 + height] = rows
    torus = TorusConfig.from_array(arr)
    if not is_admissible_on_torus(spec, torus):
        raise VerificationFailed(f"cycle {cycle.indices} produced an inadmissible torus")
    return primitive(PeriodicPoint(torus, True))


def find_periodic(spec: SftSpec, budgets: Budgets = None, report: AnalysisReport = None) -> AnalysisReport:
    """Search the strip matrices for a periodic point; NONEMPTY or UNKNOWN."""
    budgets = budgets or Budgets()
    caps = budgets.caps
    if report is None:
        report = AnalysisReport(UNKNOWN, budgets=budgets.as_dict())
        report.details["side"] = normalization_length(spec)
    if spec.dim != 2:
        report.diagnostic = f"strip matrices are built only for d = 2 (got d = {spec.dim})"
        return report
    clock = time.perf_counter()
    try:
        cubes = normalize_to_cubes(spec, caps.cubes)
        report.details["allowed_cubes"] = len(cubes.allowed)
        blocks = build_blocks(spec, cubes)
        # deepen the period budget one step at a time so a certificate found
        # at some budget is found again, unchanged, at every larger budget
        for period in range(1, budgets.max_period + 1):
            strips = enumerate_strips(spec, blocks, period, caps)
            m = build_strip_matrix(spec, strips)
            pm = prune(m)
            report.details.update(period_reached=period, strips=len(strips),
                                  complementary=len(pm))
            report.matrix = pm
            cycle = find_cycle(pm)
            if cycle is not None:
                report.certificate = synthesize_periodic_point(spec, pm, cycle)
                report.details["cycle"] = list(cycle.indices)
                report.details["cycle_phases"] = list(cycle.phases)
                report.status = NONEMPTY
                break
    except CapExceeded as exc:
        report.diagnostic = str(exc)
    report.timings["matrix"] = time.perf_counter() - clock
    return report


def analyze(spec: SftSpec, budgets: Budgets = None) -> AnalysisReport:
    """Decide nonemptiness within the given budgets.

    EMPTY comes with the least window side that has no admissible window;
    NONEMPTY with a verified periodic point; otherwise UNKNOWN.
    """
    budgets = budgets or Budgets()
    report = AnalysisReport(UNKNOWN, budgets=budgets.as_dict())
    report.details["side"] = normalization_length(spec)
    clock = time.perf_counter()
    em = emptiness_semidecision(spec, budgets.n_max, budgets.caps.states)
    report.details["window_counts"] = list(em.counts)
    report.timings["emptiness"] = time.perf_counter() - clock
    if em.status == EMPTY:
        report.status = EMPTY
        report.witness = em.witness
        return report
    if em.note:
        report.details["emptiness_note"] = em.note
    return find_periodic(spec, budgets, report)
