"""Optional compiled kernels for the large-instance fast path.

Fuses the per-candidate pipeline (insertion-point search, block-minimum
walk, closed-form optimum) into single passes so big arrays stream through
memory once instead of once per numpy operation. The numpy implementations
remain the fallback and the reference; results are bit-identical.
"""
from __future__ import annotations

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

HAVE_KERNELS = numba is not None

if HAVE_KERNELS:

    @numba.njit(cache=True)
    def walk_min(flat, offsets, start, stop, init):
        """Minimum over 0-based [start, stop) of the level-0 values, via the
        grow-then-shrink walk over maximal aligned blocks; `init` caps it.

        The walked values are slacks, which cannot go below zero, so the walk
        stops early once the running minimum hits zero.
        """
        m = init
        j = start
        k = 0
        while True:
            while j & ((2 << k) - 1) == 0 and j + (2 << k) <= stop:
                k += 1
            if j + (1 << k) > stop:
                break
            v = flat[offsets[k] + (j >> k)]
            if v < m:
                m = v
                if m <= 0:
                    return m
            j += 1 << k
            if j == stop:
                return m
        while j < stop:
            if j + (1 << k) > stop:
                k -= 1
            else:
                v = flat[offsets[k] + (j >> k)]
                if v < m:
                    m = v
                    if m <= 0:
                        return m
                j += 1 << k
        return m

    @numba.njit(cache=True)
    def schedule_profile(rs, ps):
        """Completions, slack and trailing idle of the release-sorted order."""
        n = rs.size
        comp = np.empty(n, np.int64)
        slack = np.empty(n, np.int64)
        idle_after = np.empty(n, np.int64)
        prev = np.int64(0)
        for i in range(n):
            start = prev if prev > rs[i] else rs[i]
            slack[i] = start - rs[i]
            prev = start + ps[i]
            comp[i] = prev
        acc = np.int64(0)
        idle_after[n - 1] = 0
        for i in range(n - 1, 0, -1):
            acc += comp[i] - ps[i] - comp[i - 1]
            idle_after[i - 1] = acc
        return comp, slack, idle_after

    @numba.njit(cache=True)
    def candidate_optima(rs, ps, rh, flat, offsets, comp, idle_after):
        """Optimal makespan of each single-raise scenario, in sorted labels."""
        n = rs.size
        base = comp[n - 1]
        out = np.empty(n, np.int64)
        for j in range(n):
            v = rh[j]
            lo = 0
            hi = n
            while lo < hi:  # count of releases <= v
                mid = (lo + hi) >> 1
                if rs[mid] <= v:
                    lo = mid + 1
                else:
                    hi = mid
            pull = walk_min(flat, offsets, j + 1, lo, ps[j])
            bump = v - comp[lo - 1] + pull
            if bump < 0:
                bump = 0
            delay = ps[j] - pull + bump - idle_after[lo - 1]
            if delay < 0:
                delay = 0
            out[j] = base + delay
        return out

else:  # pragma: no cover - exercised only without numba
    walk_min = None
    schedule_profile = None
    candidate_optima = None
