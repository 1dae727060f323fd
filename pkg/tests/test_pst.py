import numpy as np
import pytest

from threesided.core import Point, Query3, brute_force_query
from threesided.pst import DuplicateIdError, MissingIdError, Pst

from conftest import make_points, rng


def check(t):
    problems = t.audit()
    assert problems == []


def test_insert_into_empty():
    t = Pst()
    p = Point(1, 0.5, 0.5)
    t.insert(p)
    assert t.size == 1
    assert t.min_y() == p
    check(t)


def test_insert_p8_then_query(p8):
    t = Pst()
    for p in p8:
        t.insert(p)
        check(t)
    assert t.query(Query3(2, 6, 3)) == {2, 4, 6}
    assert t.query(Query3(1, 8, 9)) == set(range(1, 9))
    assert Pst().query(Query3(0, 1, 1)) == set()


def test_new_global_min_reaches_root(p8):
    t = Pst.build(p8)
    t.insert(Point(50, 4.5, 0.25))
    assert t.min_y().id == 50
    check(t)


def test_duplicate_and_missing_ids(p8):
    t = Pst.build(p8)
    with pytest.raises(DuplicateIdError):
        t.insert(Point(3, 9.9, 9.9))
    with pytest.raises(MissingIdError):
        t.delete(77)


def test_delete_examples(p8):
    t = Pst.build(p8)
    t.delete(4)
    check(t)
    assert t.query(Query3(2, 6, 3)) == {2, 6}
    # root refill pulls the second-smallest y upward
    assert t.min_y().id == 6 and t.min_y().y == 2
    for pid in [1, 2, 3, 5, 6, 7, 8]:
        t.delete(pid)
        check(t)
    assert t.size == 0
    assert t.query(Query3(-10, 10, 100)) == set()


def test_build_matches_incremental(p8):
    built = Pst.build(p8)
    check(built)
    inc = Pst()
    for p in p8:
        inc.insert(p)
    for q in [Query3(2, 6, 3), Query3(1, 8, 9), Query3(3, 3, 8)]:
        assert built.query(q) == inc.query(q)


def random_queries(r, k, xlo=0.0, xhi=1.0):
    out = []
    for _ in range(k):
        a, b = sorted(r.uniform(xlo, xhi, 2).tolist())
        c = r.uniform(-0.2, 1.2)
        out.append(Query3(a, b, c))
    return out


def test_oracle_equivalence_random_workloads():
    # interleaved inserts/deletes with queries checked at every step
    for seed in range(30):
        r = rng(seed)
        n0 = int(r.integers(1, 400))
        pts = make_points(r, n0)
        t = Pst.build(pts)
        live = {p.id: p for p in pts}
        next_id = n0
        for step in range(120):
            op = r.random()
            if op < 0.45 or not live:
                p = make_points(r, 1, start_id=next_id)[0]
                next_id += 1
                t.insert(p)
                live[p.id] = p
            elif op < 0.7:
                victim = int(r.choice(list(live)))
                t.delete(victim)
                del live[victim]
            else:
                for q in random_queries(r, 3):
                    assert t.query(q) == brute_force_query(live.values(), q)
            if step % 16 == 0:
                check(t)
        check(t)


def test_ties_on_raw_coordinates():
    # grid-like duplicates in x and y resolved by id tie-break
    r = rng(99)
    t = Pst()
    live = {}
    for i in range(300):
        p = Point(i, float(r.integers(0, 8)), float(r.integers(0, 4)))
        t.insert(p)
        live[p.id] = p
    for i in range(0, 300, 3):
        t.delete(i)
        del live[i]
    check(t)
    for q in random_queries(rng(100), 40, 0, 8):
        qq = Query3(q.a, q.b, q.c * 4)
        assert t.query(qq) == brute_force_query(live.values(), qq)


def test_visit_complexity_witness():
    # node visits stay within alpha*log2(n+2) + beta*(t+1)
    from threesided.calibration import PST_VISIT_ALPHA, PST_VISIT_BETA

    r = rng(2024)
    for n in [64, 512, 2048]:
        pts = make_points(r, n)
        t = Pst.build(pts)
        for q in random_queries(r, 50):
            before = t.metrics.node_visits
            res = t.query(q)
            visits = t.metrics.node_visits - before
            bound = PST_VISIT_ALPHA * np.log2(n + 2) + PST_VISIT_BETA * (len(res) + 1)
            assert visits <= bound
