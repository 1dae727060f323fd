"""Dynamic 3-sided planar range reporting structures and benchmarks."""

from .core import (
    Grid,
    Mixture,
    Point,
    PointSet,
    PowerLaw,
    Query3,
    StructureMetrics,
    Uniform,
    Zipf,
    brute_force_query,
    generate,
    powerlaw_ccdf,
    zipf_pmf,
)

__all__ = [
    "Point",
    "Query3",
    "PointSet",
    "Uniform",
    "Grid",
    "Zipf",
    "PowerLaw",
    "Mixture",
    "StructureMetrics",
    "brute_force_query",
    "generate",
    "zipf_pmf",
    "powerlaw_ccdf",
]
