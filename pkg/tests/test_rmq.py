import numpy as np
import pytest

from threesided.rmq import rmq_build, rmq_query

from conftest import rng


def scan_argmin(vals, i, j):
    best = i
    for k in range(i + 1, j + 1):
        if vals[k] < vals[best]:
            best = k
    return best


def test_empty_index():
    idx = rmq_build([])
    with pytest.raises(IndexError):
        rmq_query(idx, 0, 0)


def test_known_array():
    vals = [5, 3, 8, 1, 7, 2, 6, 4]
    idx = rmq_build(vals)
    assert rmq_query(idx, 0, 7) == 3
    assert rmq_query(idx, 4, 6) == 5
    for k in range(8):
        assert rmq_query(idx, k, k) == k
    with pytest.raises(IndexError):
        rmq_query(idx, 3, 8)
    with pytest.raises(IndexError):
        rmq_query(idx, -1, 2)


def test_ties_take_leftmost():
    idx = rmq_build([2, 2, 2])
    assert rmq_query(idx, 0, 2) == 0
    assert rmq_query(idx, 1, 2) == 1


def test_tuple_values():
    vals = [(1.0, 5), (1.0, 2), (0.5, 9)]
    idx = rmq_build(vals)
    assert rmq_query(idx, 0, 2) == 2
    assert rmq_query(idx, 0, 1) == 1


def test_probe_budget():
    idx = rmq_build(list(range(64, 0, -1)))
    before = idx.probe_count
    rmq_query(idx, 5, 60)
    assert idx.probe_count - before <= 4


def _prefix_first_argmin(sub):
    # p[j] = first position of the minimum of sub[0..j]
    cm = np.minimum.accumulate(sub)
    prev = np.concatenate(([np.inf], cm[:-1]))
    starts = np.where(sub < prev, np.arange(len(sub)), -1)
    return np.maximum.accumulate(starts)


def test_oracle_equivalence_all_pairs():
    # random arrays, every (i, j) pair against a first-occurrence argmin oracle
    r = rng(1234)
    for _ in range(1000):
        n = int(r.integers(1, 257))
        vals = np.round(r.random(n) * 16, 2)  # rounding forces ties
        idx = rmq_build(vals.tolist())
        for i in range(n):
            expect = _prefix_first_argmin(vals[i:]) + i
            lo = max(0, n - 2 - i)
            # all pairs for small arrays, a sampled band for large ones
            js = range(i, n) if n <= 48 else [i, (i + n - 1) // 2, n - 1]
            for j in js:
                assert rmq_query(idx, i, j) == expect[j - i]


def test_oracle_full_pairs_small():
    r = rng(77)
    for _ in range(300):
        n = int(r.integers(1, 33))
        vals = r.integers(0, 6, size=n).tolist()
        idx = rmq_build(vals)
        for i in range(n):
            for j in range(i, n):
                assert rmq_query(idx, i, j) == scan_argmin(vals, i, j)
