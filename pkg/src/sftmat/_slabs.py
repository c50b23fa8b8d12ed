"""Layer-by-layer window counting shared by the two admissibility counters.

A window of side n is cut into n slabs (codimension-one layers) stacked along
the last axis.  A caller supplies ``window_ok(L)``: a boolean tensor over L
consecutive slabs that is True when no constraint whose top layer is the last
slab is violated.  Constraints may span at most ``h`` slabs.
"""
import itertools

import numpy as np

from .errors import CapExceeded

_CHUNK = 4096


def slab_digits(k, cells, cap):
    """Every assignment of ``cells`` slab cells over ``k`` symbols, in
    lexicographic order, as an ``(k**cells, cells)`` uint8 array."""
    total = k ** cells
    if total > cap:
        raise CapExceeded("slab assignments", total, cap)
    if cells == 0:
        return np.zeros((1, 0), dtype=np.uint8)
    return np.array(list(itertools.product(range(k), repeat=cells)),
                    dtype=np.uint8).reshape(total, cells)


def fold(n, h, n_slabs, window_ok, cap, bound):
    """Count sequences of n slabs accepted by ``window_ok``.

    ``bound`` is an upper bound on the answer and picks the accumulator type.
    """
    if n == 0:
        return 1
    if n_slabs ** min(h, n) > cap:
        raise CapExceeded("slab state tensor", n_slabs ** min(h, n), cap)
    dtype = np.int64 if bound < 2 ** 62 else object
    single = window_ok(1)
    if h == 1:
        return int(np.count_nonzero(single)) ** n
    state = single.astype(dtype)
    m = 1
    cache = {}
    for _ in range(n - 1):
        length = m + 1
        if length not in cache:
            cache[length] = window_ok(length)
        ok = cache[length]
        if length < h:
            state = state[..., None] * ok.astype(dtype)
            m = length
            continue
        # drop the oldest slab: new[rest, c] = sum_a state[a, rest] * ok[a, rest, c]
        rest = n_slabs ** (h - 2)
        flat_state = state.reshape(n_slabs, rest)
        flat_ok = ok.reshape(n_slabs, rest, n_slabs)
        out = np.zeros((rest, n_slabs), dtype=dtype)
        for lo in range(0, rest, _CHUNK):
            hi = min(rest, lo + _CHUNK)
            out[lo:hi] = np.einsum("am,ams->ms", flat_state[:, lo:hi],
                                   flat_ok[:, lo:hi, :].astype(dtype))
        state = out.reshape((n_slabs,) * (h - 1))
    return int(state.sum())
