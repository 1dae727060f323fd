"""Static range-minimum index over a fixed sequence of values.

Sparse-table layout: O(n log n) space, two table probes per query.
Values only need a total order (floats or (y, id) key tuples both
work); ties resolve to the smallest position.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

__all__ = ["RmqIndex", "rmq_build", "rmq_query"]


class RmqIndex:
    __slots__ = ("values", "_n", "_levels", "_logs", "probe_count")

    def __init__(self, values: Sequence):
        vals = list(values)
        self.values = vals
        self._n = n = len(vals)
        self.probe_count = 0
        self._levels = []
        if n == 0:
            self._logs = np.zeros(1, dtype=np.int64)
            return
        codes = self._rank_codes(vals)
        # combined code: value rank in the high part, position in the low
        # part, so an integer min is a lexicographic (value, position) min.
        base = codes.astype(np.int64) * n + np.arange(n, dtype=np.int64)
        self._levels.append(base)
        size, level = 1, base
        while 2 * size <= n:
            nxt = np.minimum(level[: n - 2 * size + 1], level[size : n - size + 1])
            self._levels.append(nxt)
            size *= 2
            level = nxt
        logs = np.zeros(n + 1, dtype=np.int64)
        for i in range(2, n + 1):
            logs[i] = logs[i // 2] + 1
        self._logs = logs

    @staticmethod
    def _rank_codes(vals) -> np.ndarray:
        first = vals[0]
        if isinstance(first, (int, float, np.integer, np.floating)):
            arr = np.asarray(vals, dtype=np.float64)
            _, inverse = np.unique(arr, return_inverse=True)
            return inverse
        if isinstance(first, tuple) and len(first) == 2:
            # dense lexicographic ranks for (primary, tiebreak) pairs
            n = len(vals)
            a = np.asarray([v[0] for v in vals], dtype=np.float64)
            b = np.asarray([v[1] for v in vals], dtype=np.float64)
            order = np.lexsort((b, a))
            a_s, b_s = a[order], b[order]
            fresh = np.empty(n, dtype=bool)
            fresh[0] = True
            fresh[1:] = (a_s[1:] != a_s[:-1]) | (b_s[1:] != b_s[:-1])
            codes = np.empty(n, dtype=np.int64)
            codes[order] = np.cumsum(fresh) - 1
            return codes
        order = {v: i for i, v in enumerate(sorted(set(vals)))}
        return np.asarray([order[v] for v in vals], dtype=np.int64)

    def __len__(self):
        return self._n

    def query(self, i: int, j: int) -> int:
        """Position of the minimum of values[i..j], leftmost on ties."""
        if not (0 <= i <= j < self._n):
            raise IndexError(f"rmq range ({i}, {j}) out of bounds for length {self._n}")
        k = int(self._logs[j - i + 1])
        left = int(self._levels[k][i])
        right = int(self._levels[k][j - (1 << k) + 1])
        self.probe_count += 2
        return min(left, right) % self._n


def rmq_build(values: Sequence) -> RmqIndex:
    return RmqIndex(values)


def rmq_query(idx: RmqIndex, i: int, j: int) -> int:
    return idx.query(i, j)
