"""Predecessor dictionary over x-keys with interpolation-guided search.

Two levels: a sorted array of bucket separators, then a sorted bucket.
Both are searched with budgeted interpolation: a doubly-logarithmic
number of interpolation probes (enough for convergence on smooth-ish
inputs), then plain bisection on whatever window remains, which caps
the worst case at O(log n) probes on adversarial inputs.

Keys may be raw floats or effective-key tuples ``(x, id)``; only the
numeric first component feeds the interpolation arithmetic, full keys
drive the comparisons.
"""

from __future__ import annotations

import math
from bisect import bisect_right, insort

__all__ = ["XIndex", "xi_build", "xi_search", "xi_insert", "xi_delete"]


def _num(key) -> float:
    return float(key[0]) if isinstance(key, tuple) else float(key)


class _Bucket:
    __slots__ = ("keys", "handles")

    def __init__(self, keys=None, handles=None):
        self.keys = keys or []
        self.handles = handles or []


class XIndex:
    def __init__(self):
        self.seps = []  # first key of each bucket
        self.buckets = []
        self.count = 0
        self.probe_count = 0
        self._rebuild_size = 0

    # target bucket load scales with log of the current population
    @property
    def target(self) -> int:
        return max(1, math.ceil(math.log2(self.count + 2)))

    # -- guarded interpolation: rightmost position with keys[pos] <= key ----

    def _locate(self, keys, key) -> int:
        """Index of the predecessor of key in a sorted list, -1 if none."""
        n = len(keys)
        if n == 0 or key < keys[0]:
            self.probe_count += 1 if n else 0
            return -1
        lo, hi = 0, n - 1  # invariant: keys[lo] <= key
        x = _num(key)
        budget = math.ceil(math.log2(max(2.0, math.log2(max(2, n))))) + 2
        while lo < hi and budget > 0:
            flo, fhi = _num(keys[lo]), _num(keys[hi])
            if fhi <= flo:
                break  # flat numeric range (key ties); bisection finishes
            g = lo + int((x - flo) / (fhi - flo) * (hi - lo))
            g = min(max(g, lo + 1), hi)
            budget -= 1
            self.probe_count += 1
            if keys[g] <= key:
                lo = g
            else:
                hi = g - 1
        while lo < hi:
            m = (lo + hi + 1) // 2
            self.probe_count += 1
            if keys[m] <= key:
                lo = m
            else:
                hi = m - 1
        return lo

    def search(self, key):
        """Handle of the greatest key <= key, or None."""
        bi = self._locate(self.seps, key)
        if bi < 0:
            return None
        bucket = self.buckets[bi]
        ki = self._locate(bucket.keys, key)
        assert ki >= 0, "separator invariant guarantees an in-bucket predecessor"
        return bucket.handles[ki]

    # -- updates -------------------------------------------------------------

    def insert(self, key, handle):
        bi = self._locate(self.seps, key)
        if bi < 0:
            if not self.buckets:
                self.buckets.append(_Bucket([key], [handle]))
                self.seps.append(key)
                self.count = 1
                self._rebuild_size = 1
                return
            bi = 0
            bucket = self.buckets[0]
            bucket.keys.insert(0, key)
            bucket.handles.insert(0, handle)
            self.seps[0] = key
        else:
            bucket = self.buckets[bi]
            pos = bisect_right(bucket.keys, key)
            if pos > 0 and bucket.keys[pos - 1] == key:
                raise KeyError(f"duplicate key {key!r}")
            bucket.keys.insert(pos, key)
            bucket.handles.insert(pos, handle)
        self.count += 1
        if len(bucket.keys) > 2 * self.target:
            self._split(bi)
        self._maybe_rebuild()

    def delete(self, key):
        bi = self._locate(self.seps, key)
        if bi < 0:
            raise KeyError(f"key {key!r} not present")
        bucket = self.buckets[bi]
        pos = bisect_right(bucket.keys, key) - 1
        if pos < 0 or bucket.keys[pos] != key:
            raise KeyError(f"key {key!r} not present")
        bucket.keys.pop(pos)
        bucket.handles.pop(pos)
        self.count -= 1
        if not bucket.keys:
            self.buckets.pop(bi)
            self.seps.pop(bi)
        elif pos == 0:
            self.seps[bi] = bucket.keys[0]
        self._maybe_rebuild()

    def _split(self, bi):
        bucket = self.buckets[bi]
        mid = len(bucket.keys) // 2
        right = _Bucket(bucket.keys[mid:], bucket.handles[mid:])
        bucket.keys = bucket.keys[:mid]
        bucket.handles = bucket.handles[:mid]
        self.buckets.insert(bi + 1, right)
        self.seps.insert(bi + 1, right.keys[0])

    def _maybe_rebuild(self):
        if self.count == 0:
            self.seps, self.buckets, self._rebuild_size = [], [], 0
            return
        if self._rebuild_size and self._rebuild_size / 2 < self.count < self._rebuild_size * 2:
            return
        pairs = [
            (k, h)
            for b in self.buckets
            for k, h in zip(b.keys, b.handles)
        ]
        self._load(pairs)

    def _load(self, pairs):
        self.count = len(pairs)
        self._rebuild_size = self.count
        self.seps, self.buckets = [], []
        step = self.target
        for i in range(0, len(pairs), step):
            chunk = pairs[i : i + step]
            self.buckets.append(_Bucket([k for k, _ in chunk], [h for _, h in chunk]))
            self.seps.append(chunk[0][0])

    # -- audit ----------------------------------------------------------------

    def audit(self) -> list[str]:
        problems = []
        total = 0
        prev = None
        for sep, bucket in zip(self.seps, self.buckets):
            if not bucket.keys:
                problems.append("empty bucket retained")
                continue
            if sep != bucket.keys[0]:
                problems.append("separator is not the bucket minimum")
            if any(bucket.keys[i] >= bucket.keys[i + 1] for i in range(len(bucket.keys) - 1)):
                problems.append("bucket keys not strictly sorted")
            if prev is not None and prev >= bucket.keys[0]:
                problems.append("buckets out of order")
            if len(bucket.keys) > 2 * self.target:
                problems.append(f"bucket load {len(bucket.keys)} above 2*target {2 * self.target}")
            prev = bucket.keys[-1]
            total += len(bucket.keys)
        if total != self.count:
            problems.append(f"count {self.count} != stored {total}")
        return problems


def xi_build(pairs) -> XIndex:
    """Build from sorted, duplicate-free (key, handle) pairs."""
    pairs = list(pairs)
    for i in range(len(pairs) - 1):
        if pairs[i][0] >= pairs[i + 1][0]:
            raise ValueError("keys must be sorted and distinct")
    ix = XIndex()
    if pairs:
        ix._load(pairs)
    return ix


def xi_search(ix: XIndex, key):
    return ix.search(key)


def xi_insert(ix: XIndex, key, handle):
    ix.insert(key, handle)


def xi_delete(ix: XIndex, key):
    ix.delete(key)
