import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import bruteforce as bf
from sftmat.corpus import random_spec
from sftmat.errors import CapExceeded, DimensionMismatch
from sftmat.patterns import (Alphabet, FinitePattern, SftSpec, count_windows_by_cubes,
                             from_rows, normalization_length, normalize_to_cubes, occurs, width)
from sftmat.torus import TorusConfig, count_admissible_squares, is_admissible_on_torus

P = FinitePattern.from_mapping
BITS = Alphabet(("0", "1"))


def test_alphabet_rejects_duplicates():
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(())


def test_pattern_invariants():
    with pytest.raises(ValueError):
        FinitePattern(2, ())
    with pytest.raises(DimensionMismatch):
        FinitePattern(2, (((0,), 1),))
    with pytest.raises(ValueError):
        FinitePattern(2, (((0, 0), 1), ((0, 0), 0)))


@pytest.mark.parametrize("cells, expected", [
    ({(0, 0): 1, (1, 0): 1}, 2),
    ({(5, 7): 0}, 1),
    ({(0, 0): 0, (0, 1): 1, (0, 2): 0, (1, 0): 1}, 3),
])
def test_width(cells, expected):
    assert width(P(cells)) == expected


def test_normalization_length(hardsquare, fullshift):
    assert normalization_length(hardsquare) == 2
    assert normalization_length(fullshift) == 1
    spec = SftSpec(BITS, 2, (P({(0, 0): 1, (1, 0): 0, (2, 0): 1}), P({(0, 0): 0, (0, 1): 0})))
    assert normalization_length(spec) == 3


def test_spec_dedups_translates():
    a = P({(0, 0): 1, (1, 0): 1})
    spec = SftSpec(BITS, 2, (a, a.translated((4, -2))))
    assert len(spec.forbidden) == 1
    assert spec.forbidden[0].lower == (0, 0)


def test_spec_rejects_foreign_symbols_and_dims():
    with pytest.raises(ValueError):
        SftSpec(BITS, 2, (P({(0, 0): 2}),))
    with pytest.raises(DimensionMismatch):
        SftSpec(BITS, 2, (P({(0, 0, 0): 1}),))


def test_occurs():
    domino = P({(0, 0): 1, (1, 0): 1})
    assert occurs(domino, from_rows([[1, 1], [0, 0]]), (0, 0))
    assert not occurs(domino, from_rows([[1, 0], [0, 1]]), (0, 0))
    zero = P({(0, 0): 0})
    window = np.zeros((3, 3), dtype=int)
    assert all(occurs(zero, window, (x, y)) for x in range(3) for y in range(3))
    with pytest.raises(ValueError):
        occurs(domino, window, (2, 0))


def test_cube_counts(hardsquare, checkerboard, fullshift):
    hs = normalize_to_cubes(hardsquare)
    assert (hs.side, len(hs.allowed), hs.forbidden_count) == (2, 7, 9)
    assert len(normalize_to_cubes(checkerboard).allowed) == 2
    full = normalize_to_cubes(fullshift)
    assert (full.side, len(full.allowed)) == (1, 2)


def test_cubes_sorted_and_clean(hardsquare):
    cs = normalize_to_cubes(hardsquare)
    assert list(cs.allowed) == sorted(set(cs.allowed))
    for i in range(len(cs.allowed)):
        cube = cs.cube(i)
        assert bf.admissible(hardsquare, {idx: int(cube[idx]) for idx in np.ndindex(cube.shape)},
                             cube.shape)


def test_cube_cap(hardsquare):
    with pytest.raises(CapExceeded):
        normalize_to_cubes(hardsquare, cap=15)


def test_determinism(hardsquare):
    assert normalize_to_cubes(hardsquare) == normalize_to_cubes(hardsquare)


@pytest.mark.parametrize("seed", range(8))
def test_language_preserved_small(seed):
    """Cube-system counts equal exhaustive counts for l <= n <= 2l (small sizes)."""
    rng = random.Random(seed)
    spec = random_spec(rng, max_symbols=2, max_patterns=3, max_width=2)
    cubes = normalize_to_cubes(spec)
    for n in range(cubes.side, 2 * cubes.side + 1):
        assert count_windows_by_cubes(cubes, n) == bf.count_windows(spec, n)


@pytest.mark.parametrize("seed", range(6))
def test_anchored_exclusion(seed):
    rng = random.Random(100 + seed)
    spec = random_spec(rng, max_symbols=2, max_patterns=3, max_width=2)
    anchored = normalize_to_cubes(spec, anchored=True)
    full = normalize_to_cubes(spec)
    # occurrence-based exclusion removes at least the anchored extensions
    assert set(full.allowed) <= set(anchored.allowed)
    # and both cube sets admit the same periodic configurations
    side = full.side
    for periods in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        for g in bf.all_grids(len(spec.alphabet), periods):
            arr = np.zeros(periods, dtype=int)
            for c, v in g.items():
                arr[c] = v
            cells = {}
            big = np.tile(arr, (side + 1, side + 1))
            for x in range(periods[0]):
                for y in range(periods[1]):
                    cells[(x, y)] = tuple(big[x:x + side, y:y + side].reshape(-1).tolist())
            ok_full = all(c in set(full.allowed) for c in cells.values())
            ok_anch = all(c in set(anchored.allowed) for c in cells.values())
            assert ok_full == ok_anch == is_admissible_on_torus(spec, TorusConfig.from_array(arr))


patterns = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(0, 1), min_size=1, max_size=4)


@given(st.lists(patterns, min_size=1, max_size=3), st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_width_translation_invariant(pats, shift):
    ps = [P(d) for d in pats]
    moved = [p.translated(shift) for p in ps]
    assert [width(p) for p in ps] == [width(p) for p in moved]
    assert normalization_length(SftSpec(BITS, 2, tuple(ps))) == \
        normalization_length(SftSpec(BITS, 2, tuple(moved)))


@settings(max_examples=25, deadline=None)
@given(st.lists(patterns, min_size=1, max_size=3))
def test_cube_counter_matches_oracle(pats):
    spec = SftSpec(BITS, 2, tuple(P(d) for d in pats))
    cubes = normalize_to_cubes(spec)
    for n in range(cubes.side, 5):
        assert count_windows_by_cubes(cubes, n) == count_admissible_squares(spec, n)


def test_cube_counter_rejects_small_windows(hardsquare):
    with pytest.raises(ValueError):
        count_windows_by_cubes(normalize_to_cubes(hardsquare), 1)


def test_three_dimensional_normalization():
    spec = SftSpec(BITS, 3, (P({(0, 0, 0): 1, (0, 0, 1): 1}),))
    cubes = normalize_to_cubes(spec)
    assert cubes.side == 2
    assert len(cubes.allowed) == bf.count_windows(spec, 2) == 81
    assert count_windows_by_cubes(cubes, 2) == 81
