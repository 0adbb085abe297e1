"""Static range-minimum queries over an aligned power-of-two block table.

The table stores, for each level k, the minimum of every full block of
length 2**k that starts at a multiple of 2**k; fewer than 2n entries in
total. A query decomposes its range into maximal aligned blocks by walking
left to right: block lengths grow while alignment and fit allow, then
shrink to cover the tail. Each query touches O(log n) blocks.

This is deliberately the compact, logarithmic-query variant rather than the
overlapping-interval table with O(1) queries.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

_EMPTY_SENTINEL = np.iinfo(np.int64).max


class IntervalMinTable:
    """Immutable block-minima table over an int64 value vector."""

    def __init__(self, values: Sequence[int] | np.ndarray):
        arr = np.asarray(values, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("values must be one-dimensional")
        self.n = int(arr.size)
        # narrow storage when the values allow: level gathers dominate the
        # bulk-query cost and 32-bit entries halve that traffic
        if self.n and np.iinfo(np.int32).min < arr.min() and arr.max() < np.iinfo(np.int32).max:
            arr = arr.astype(np.int32)
        else:
            arr = arr.copy()
        # levels[k][i] = min(values[i * 2**k : (i + 1) * 2**k]); partial tail
        # blocks are not stored, the query walk never needs them
        levels = [arr]
        cur = levels[0]
        while cur.size >= 2:
            full = (cur.size // 2) * 2
            cur = np.minimum(cur[0:full:2], cur[1:full:2])
            levels.append(cur)
        self.levels = levels
        self._flat: tuple[np.ndarray, np.ndarray] | None = None

    def flattened(self) -> tuple[np.ndarray, np.ndarray]:
        """(all levels concatenated, start offset of each level), for bulk walkers."""
        if self._flat is None:
            offsets = np.zeros(len(self.levels), dtype=np.int64)
            np.cumsum([lv.size for lv in self.levels[:-1]], out=offsets[1:])
            self._flat = (np.concatenate(self.levels), offsets)
        return self._flat

    def consumed_blocks(self, lo: int, hi: int) -> list[tuple[int, int]]:
        """Blocks (start, level) the two-phase walk visits for [lo, hi] (1-based, inclusive).

        Exposed for instrumentation: callers can check the O(log n) block
        count and the grow-then-shrink shape of the block lengths.
        """
        if not 1 <= lo <= hi <= self.n:
            raise ValueError(f"range [{lo}, {hi}] out of bounds for n={self.n}")
        j = lo - 1
        u = hi
        k = 0
        blocks: list[tuple[int, int]] = []
        # growing phase: widen the block while it stays aligned and fits
        while True:
            while j & ((2 << k) - 1) == 0 and j + (2 << k) <= u:
                k += 1
            if j + (1 << k) > u:
                break
            blocks.append((j, k))
            j += 1 << k
            if j == u:
                return blocks
        # shrinking phase: halve until each block fits the remainder
        while j < u:
            if j + (1 << k) > u:
                k -= 1
            else:
                blocks.append((j, k))
                j += 1 << k
        return blocks

    def range_min(self, lo: int, hi: int) -> int:
        """Minimum of values[lo..hi], 1-based inclusive; the range must be non-empty."""
        levels = self.levels
        return int(min(levels[k][j >> k] for j, k in self.consumed_blocks(lo, hi)))

    def range_min_many(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        """Minima for many 1-based inclusive ranges in one vectorized pass.

        Consumes exactly the same aligned blocks as the per-query walk, but
        level-synchronously across all queries (both ends move inward).
        Empty ranges (lo > hi) yield the int64 maximum.
        """
        lo = np.asarray(lo, dtype=np.int64)
        hi = np.asarray(hi, dtype=np.int64)
        if lo.shape != hi.shape:
            raise ValueError("lo and hi must have the same shape")
        nonempty = lo <= hi
        if nonempty.any() and (
            lo[nonempty].min() < 1 or hi[nonempty].max() > self.n
        ):
            raise ValueError(f"query ranges out of bounds for n={self.n}")
        out = np.full(lo.shape, _EMPTY_SENTINEL, dtype=np.int64)
        # minima accumulate in a compact working set (one scatter into `out`
        # at the end); finished queries are flushed out in batches
        idx = np.nonzero(lo <= hi)[0]
        cur_lo = lo[idx] - 1
        cur_hi = hi[idx]  # fancy indexing copies; safe to mutate
        # every non-empty range consumes at least one block, so this working
        # sentinel never leaks into `out`
        dtype = self.levels[0].dtype if self.levels else np.int64
        res = np.full(idx.size, np.iinfo(dtype).max, dtype=dtype)
        for level in self.levels:
            if not idx.size:
                break
            alive = cur_lo < cur_hi
            take = np.nonzero(alive & ((cur_lo & 1) == 1))[0]
            if take.size:
                res[take] = np.minimum(res[take], level[cur_lo[take]])
                cur_lo[take] += 1
            take = np.nonzero((cur_lo < cur_hi) & ((cur_hi & 1) == 1))[0]
            if take.size:
                cur_hi[take] -= 1
                res[take] = np.minimum(res[take], level[cur_hi[take]])
            np.less(cur_lo, cur_hi, out=alive)
            survivors = int(np.count_nonzero(alive))
            if survivors == 0:
                break
            if survivors < idx.size - (idx.size >> 2):
                done = np.nonzero(~alive)[0]
                out[idx[done]] = res[done]
                keep = np.nonzero(alive)[0]
                idx = idx[keep]
                cur_lo = cur_lo[keep]
                cur_hi = cur_hi[keep]
                res = res[keep]
            cur_lo >>= 1
            cur_hi >>= 1
        if idx.size:
            out[idx] = res
        return out


def build(values: Sequence[int] | np.ndarray) -> IntervalMinTable:
    """Preprocess a value vector for repeated range-minimum queries."""
    return IntervalMinTable(values)
