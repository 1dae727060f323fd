import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threesided.core import (
    Grid,
    Mixture,
    Point,
    PointSet,
    PowerLaw,
    Query3,
    Uniform,
    Zipf,
    brute_force_query,
    generate,
    load_points_csv,
    powerlaw_ccdf,
    save_points_csv,
    zipf_pmf,
)

from conftest import make_points, rng


def test_point_validation():
    with pytest.raises(ValueError):
        Point(-1, 0.0, 0.0)
    with pytest.raises(ValueError):
        Point(0, math.nan, 0.0)
    with pytest.raises(ValueError):
        Point(0, 0.0, math.inf)
    p = Point(3, 1.5, -2.0)
    assert p.xkey == (1.5, 3) and p.ykey == (-2.0, 3)


def test_query3_validation():
    with pytest.raises(ValueError):
        Query3(2.0, 1.0, 0.0)
    q = Query3(1.0, 1.0, 5.0)
    assert q.contains(Point(0, 1.0, 5.0))
    assert not q.contains(Point(0, 1.0, 5.1))


def test_pointset_rejects_duplicate_ids():
    with pytest.raises(ValueError):
        PointSet([Point(1, 0, 0), Point(1, 1, 1)])


def test_brute_force_p8(p8):
    ps = PointSet(p8)
    assert brute_force_query(ps, Query3(2, 6, 3)) == {2, 4, 6}
    assert brute_force_query(ps, Query3(0, 9, 0)) == set()
    assert brute_force_query(ps, Query3(4, 4, 1)) == {4}
    # plain-iterable path agrees with the vectorized one
    assert brute_force_query(p8, Query3(2, 6, 3)) == {2, 4, 6}


@given(
    c1=st.floats(-2, 2),
    c2=st.floats(-2, 2),
    seed=st.integers(0, 2**32 - 1),
)
@settings(max_examples=50, deadline=None)
def test_brute_force_monotone_in_c(c1, c2, seed):
    pts = PointSet(make_points(rng(seed), 40))
    lo, hi = min(c1, c2), max(c1, c2)
    r_lo = brute_force_query(pts, Query3(0.2, 0.8, lo))
    r_hi = brute_force_query(pts, Query3(0.2, 0.8, hi))
    assert r_lo <= r_hi


def test_zipf_pmf_values():
    assert zipf_pmf(1, 7.3, 1) == 1.0
    assert zipf_pmf(1, 1.0, 2) == pytest.approx(2.0 / 3.0)
    assert zipf_pmf(3, 0.0, 4) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        zipf_pmf(0, 1.0, 4)
    with pytest.raises(ValueError):
        zipf_pmf(5, 1.0, 4)


@pytest.mark.parametrize("s", [0.0, 0.5, 1.0, 1.2, 2.0])
@pytest.mark.parametrize("n", [1, 10, 1000, 10_000])
def test_zipf_pmf_sums_to_one(s, n):
    total = sum(zipf_pmf(k, s, n) for k in range(1, n + 1)) if n <= 10 else None
    if total is None:
        ks = np.arange(1, n + 1, dtype=np.float64)
        h = np.sum(1.0 / ks**s)
        total = float(np.sum((1.0 / ks**s) / h))
    assert total == pytest.approx(1.0, abs=1e-12)


def test_powerlaw_ccdf_values():
    assert powerlaw_ccdf(1.0, 1.0, 1.0) == 1.0
    assert powerlaw_ccdf(10.0, 1.0, 2.0) == pytest.approx(0.01)
    assert powerlaw_ccdf(4.0, 1.0, 1.0) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        powerlaw_ccdf(0.5, 1.0, 1.0)


def test_generate_empty_and_validation():
    assert len(generate(Uniform(0, 1), 0, rng(0))) == 0
    with pytest.raises(ValueError):
        generate(Uniform(1, 1), 5, rng(0))
    with pytest.raises(ValueError):
        generate(Grid(0), 5, rng(0))
    with pytest.raises(ValueError):
        generate(Zipf(0, 1.0), 5, rng(0))
    with pytest.raises(ValueError):
        generate(PowerLaw(-1, 1), 5, rng(0))
    with pytest.raises(ValueError):
        generate(Mixture(((0.5, Uniform(0, 1)),)), 5, rng(0))


def test_generate_ranges():
    u = generate(Uniform(-2, 3), 5000, rng(1))
    assert np.all((u >= -2) & (u < 3))
    g = generate(Grid(5), 1000, rng(2))
    assert np.all(g == np.round(g))
    assert np.all((g >= 1) & (g <= 5))
    pl = generate(PowerLaw(2.0, 1.5), 5000, rng(3))
    assert np.all(pl >= PowerLaw(2.0, 1.5).xmin - 1e-12)


def test_generate_zipf_matches_pmf():
    # rank-1 frequency for Zipf(n=2, s=1) converges on 2/3
    vals = generate(Zipf(2, 1.0), 1_000_000, rng(4))
    freq = float(np.mean(vals == 1.0))
    assert abs(freq - 2.0 / 3.0) < 0.01


def test_generate_mixture_components():
    spec = Mixture(((0.5, Uniform(0, 1)), (0.5, Uniform(10, 11))))
    vals = generate(spec, 4000, rng(5))
    lo = np.mean(vals < 5)
    assert 0.4 < lo < 0.6


def test_generate_deterministic():
    spec = Mixture(((0.3, Grid(7)), (0.7, Zipf(100, 1.2))))
    a = generate(spec, 1000, rng(42))
    b = generate(spec, 1000, rng(42))
    assert np.array_equal(a, b)


def test_points_csv_roundtrip(tmp_path, p8):
    path = tmp_path / "pts.csv"
    exotic = p8 + [Point(99, 1 / 3, math.pi * 1e-7)]
    save_points_csv(path, exotic)
    back = load_points_csv(path)
    assert list(back) == exotic
