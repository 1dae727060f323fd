"""Shared domain types, coordinate generators and the brute-force oracle.

Everything else in the package stores `Point` objects and answers
3-sided queries `[a, b] x (-inf, c]`.  All internal ordering uses the
*effective keys* ``(x, id)`` / ``(y, id)`` so that ties on raw
coordinates (which Grid and Zipf produce on purpose) never make two
stored keys compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Point",
    "Query3",
    "PointSet",
    "Uniform",
    "Grid",
    "Zipf",
    "PowerLaw",
    "Mixture",
    "DistributionSpec",
    "StructureMetrics",
    "generate",
    "zipf_pmf",
    "powerlaw_ccdf",
    "brute_force_query",
    "save_points_csv",
    "load_points_csv",
]


class Point:
    """A planar point with a unique non-negative integer identity.

    ``xkey``/``ykey`` are the effective comparison keys: coordinate
    first, id as the tie-breaker, so all keys inside one structure are
    pairwise distinct.
    """

    __slots__ = ("id", "x", "y", "xkey", "ykey")

    def __init__(self, id: int, x: float, y: float):
        if not isinstance(id, (int, np.integer)) or id < 0:
            raise ValueError(f"point id must be a non-negative integer, got {id!r}")
        x = float(x)
        y = float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"point coordinates must be finite, got ({x}, {y})")
        self.id = int(id)
        self.x = x
        self.y = y
        self.xkey = (x, self.id)
        self.ykey = (y, self.id)

    def __repr__(self):
        return f"Point({self.id}, {self.x}, {self.y})"

    def __eq__(self, other):
        return (
            isinstance(other, Point)
            and self.id == other.id
            and self.x == other.x
            and self.y == other.y
        )

    def __hash__(self):
        return hash((self.id, self.x, self.y))


@dataclass(frozen=True)
class Query3:
    """A 3-sided query region ``[a, b] x (-inf, c]``."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        for v in (self.a, self.b, self.c):
            if isinstance(v, float) and math.isnan(v):
                raise ValueError("query bounds must not be NaN")
        if self.a > self.b:
            raise ValueError(f"query requires a <= b, got a={self.a}, b={self.b}")

    def contains(self, p: Point) -> bool:
        return self.a <= p.x <= self.b and p.y <= self.c


class PointSet:
    """An id-unique collection of points, the universal build input.

    Keeps parallel numpy arrays so the brute-force oracle is a couple of
    vectorized comparisons instead of a Python loop.
    """

    def __init__(self, points: Iterable[Point]):
        pts = list(points)
        ids = [p.id for p in pts]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate point ids in PointSet")
        self.points = pts
        self._ids = np.asarray(ids, dtype=np.int64)
        self._xs = np.asarray([p.x for p in pts], dtype=np.float64)
        self._ys = np.asarray([p.y for p in pts], dtype=np.float64)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def sorted_by_x(self) -> list[Point]:
        return sorted(self.points, key=lambda p: p.xkey)

    def query_ids(self, q: Query3) -> set[int]:
        mask = (self._xs >= q.a) & (self._xs <= q.b) & (self._ys <= q.c)
        return set(self._ids[mask].tolist())


def brute_force_query(points, q: Query3) -> set[int]:
    """Ground-truth 3-sided reporting by linear scan.

    Accepts a PointSet or any iterable of Point.  Pure: same inputs,
    same answer set.
    """
    if isinstance(points, PointSet):
        return points.query_ids(q)
    return {p.id for p in points if q.contains(p)}


# ---------------------------------------------------------------------------
# distribution specs


@dataclass(frozen=True)
class Uniform:
    lo: float
    hi: float

    def validate(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise ValueError(f"Uniform requires lo < hi, got ({self.lo}, {self.hi})")


@dataclass(frozen=True)
class Grid:
    """Integers drawn uniformly from [1, m]; collisions are intended."""

    m: int

    def validate(self):
        if self.m < 1:
            raise ValueError(f"Grid requires m >= 1, got {self.m}")


@dataclass(frozen=True)
class Zipf:
    """Zipf ranks 1..n with exponent s; rank k has mass (1/k^s)/H."""

    n: int
    s: float

    def validate(self):
        if self.n < 1:
            raise ValueError(f"Zipf requires n >= 1, got {self.n}")
        if self.s < 0:
            raise ValueError(f"Zipf requires s >= 0, got {self.s}")


@dataclass(frozen=True)
class PowerLaw:
    """Heavy-tailed values with Pr[X >= x] = c * x^-b on [xmin, inf).

    xmin is pinned by c * xmin^-b = 1 so the tail function is a proper
    CCDF over the support.
    """

    c: float
    b: float

    def validate(self):
        if self.c <= 0 or self.b <= 0:
            raise ValueError(f"PowerLaw requires c > 0 and b > 0, got ({self.c}, {self.b})")

    @property
    def xmin(self) -> float:
        return self.c ** (1.0 / self.b)


@dataclass(frozen=True)
class Mixture:
    components: tuple  # of (weight, spec) pairs

    def validate(self):
        if not self.components:
            raise ValueError("Mixture needs at least one component")
        total = 0.0
        for w, spec in self.components:
            if w <= 0:
                raise ValueError(f"Mixture weights must be positive, got {w}")
            if isinstance(spec, Mixture):
                raise ValueError("nested Mixture specs are not supported")
            spec.validate()
            total += w
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"Mixture weights must sum to 1, got {total}")


DistributionSpec = Uniform | Grid | Zipf | PowerLaw | Mixture


def zipf_pmf(k: int, s: float, n: int) -> float:
    """Probability of rank k under Zipf(s) over ranks 1..n."""
    if not 1 <= k <= n:
        raise ValueError(f"rank k must be in [1, {n}], got {k}")
    h = float(np.sum(1.0 / np.arange(1, n + 1, dtype=np.float64) ** s))
    return (1.0 / k**s) / h


def powerlaw_ccdf(x: float, c: float, b: float) -> float:
    """Tail probability Pr[X >= x] = c * x^-b, defined for x >= xmin."""
    spec = PowerLaw(c, b)
    spec.validate()
    if x < spec.xmin:
        raise ValueError(f"x={x} below support start xmin={spec.xmin}")
    return min(1.0, c * x ** (-b))


def _zipf_cumulative(spec: Zipf) -> np.ndarray:
    p = 1.0 / np.arange(1, spec.n + 1, dtype=np.float64) ** spec.s
    p /= p.sum()
    return np.cumsum(p)


def generate(spec: DistributionSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw n i.i.d. samples from the family, inverse-CDF style.

    Deterministic for a given rng state.  Zipf and PowerLaw are sampled
    by inverting the cumulative table / the closed-form tail.
    """
    if n < 0:
        raise ValueError(f"sample count must be >= 0, got {n}")
    spec.validate()
    if n == 0:
        return np.empty(0, dtype=np.float64)
    if isinstance(spec, Uniform):
        return spec.lo + (spec.hi - spec.lo) * rng.random(n)
    if isinstance(spec, Grid):
        return rng.integers(1, spec.m + 1, size=n).astype(np.float64)
    if isinstance(spec, Zipf):
        cum = _zipf_cumulative(spec)
        u = rng.random(n)
        return (np.searchsorted(cum, u, side="right") + 1).astype(np.float64)
    if isinstance(spec, PowerLaw):
        u = rng.random(n)
        return (spec.c / (1.0 - u)) ** (1.0 / spec.b)
    if isinstance(spec, Mixture):
        weights = np.cumsum([w for w, _ in spec.components])
        choice = np.searchsorted(weights, rng.random(n), side="right")
        choice = np.minimum(choice, len(spec.components) - 1)
        out = np.empty(n, dtype=np.float64)
        for k, (_, sub) in enumerate(spec.components):
            idx = np.nonzero(choice == k)[0]
            if len(idx):
                out[idx] = generate(sub, len(idx), rng)
        return out
    raise TypeError(f"unknown distribution spec {spec!r}")


# ---------------------------------------------------------------------------
# instrumentation


@dataclass
class StructureMetrics:
    """Counters shared by all structures; each one uses the relevant subset."""

    node_visits: int = 0
    violations: int = 0
    rebuilds: int = 0
    io_reads: int = 0
    io_writes: int = 0
    cache_hits: int = 0
    rmq_probes: int = 0
    scanned_entries: int = 0
    rebalance_work: int = 0

    def snapshot(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    def reset(self):
        for k in self.__dataclass_fields__:
            setattr(self, k, 0)


# ---------------------------------------------------------------------------
# point-set CSV interchange (bench I/O)

_FLOAT_FMT = "{:.17g}"


def save_points_csv(path, points: Iterable[Point]):
    with open(path, "w") as fh:
        fh.write("id,x,y\n")
        for p in points:
            fh.write(f"{p.id},{_FLOAT_FMT.format(p.x)},{_FLOAT_FMT.format(p.y)}\n")


def load_points_csv(path) -> PointSet:
    pts = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "id,x,y":
            raise ValueError(f"unexpected point CSV header: {header!r}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            sid, sx, sy = line.split(",")
            pts.append(Point(int(sid), float(sx), float(sy)))
    return PointSet(pts)
