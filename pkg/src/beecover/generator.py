"""One-test-at-a-time construction of a complete test set.

Each iteration runs a fresh swarm search for a maximum-coverage row, breaks
coverage ties by distance from the rows already chosen (most-distant wins),
appends the winner and marks its tuples covered.  A synthesized guard row
keeps progress strictly decreasing even if a search degenerates to weight 0.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .coverage import TupleUniverse, build_universe, mark_covered, tuple_assignment
from .model import (ParameterSystem, StrengthSpec, TestCase, TestSet,
                    check_spec_against_system)
from .rng import SplitMix64
from .swarm import SearchConfig, search_best_candidate


@dataclass
class GenerationReport:
    """One finished run: the rows plus per-row provenance."""

    test_set: TestSet
    newly_covered: list[int]
    cycles: list[int]
    seed: int
    wall_time: float

    @property
    def size(self) -> int:
        return len(self.test_set)


def hamming_distance(a: TestCase, b: TestCase) -> int:
    """Number of positions at which two rows differ."""
    if len(a.values) != len(b.values):
        raise ValueError(f"length mismatch: {len(a.values)} vs {len(b.values)}")
    return sum(1 for x, y in zip(a.values, b.values) if x != y)


def numeric_distance(a: TestCase, b: TestCase) -> int:
    """Sum of absolute value-index differences.  Value indices are nominal,
    so this is only meaningful for experiments; hamming is the default."""
    if len(a.values) != len(b.values):
        raise ValueError(f"length mismatch: {len(a.values)} vs {len(b.values)}")
    return sum(abs(x - y) for x, y in zip(a.values, b.values))


def total_hamming(candidate: TestCase, ts: TestSet) -> int:
    """Summed hamming distance from a candidate to every existing row."""
    return sum(hamming_distance(candidate, row) for row in ts.rows)


def _aggregate_distance(candidate: TestCase, ts: TestSet,
                        metric: str, aggregate: str) -> int:
    dist = hamming_distance if metric == "hamming" else numeric_distance
    per_row = [dist(candidate, row) for row in ts.rows]
    if not per_row:
        return 0
    return sum(per_row) if aggregate == "sum" else min(per_row)


def tiebreak_select(tied: list[TestCase], ts: TestSet,
                    metric: str = "hamming", aggregate: str = "sum") -> TestCase:
    """Among equally-covering candidates, keep the one farthest from the
    rows already selected; residual ties go to the lowest index."""
    if not tied:
        raise ValueError("no candidates to select from")
    best = 0
    best_d = _aggregate_distance(tied[0], ts, metric, aggregate)
    for i in range(1, len(tied)):
        d = _aggregate_distance(tied[i], ts, metric, aggregate)
        if d > best_d:
            best, best_d = i, d
    return tied[best]


def synthesize_fallback(universe: TupleUniverse, system: ParameterSystem,
                        rng: SplitMix64) -> TestCase:
    """Build a row guaranteed to cover at least one tuple: fix the columns
    of the first still-uncovered tuple, fill the rest uniformly."""
    zeros = np.flatnonzero(universe.flags == 0)
    if zeros.size == 0:
        raise ValueError("universe is fully covered")
    g = int(zeros[0])
    c = int(np.searchsorted(universe.flag_base, g, side="right")) - 1
    comb = universe.combinations[c]
    assignment = tuple_assignment(comb, g - int(universe.flag_base[c]), system)
    fixed = dict(zip(comb.columns, assignment))
    vals = []
    for j, v in enumerate(system.cardinalities):
        vals.append(fixed[j] if j in fixed else rng.randint(v))
    return TestCase(tuple(vals))


def generate_test_set(system: ParameterSystem, spec: StrengthSpec,
                      cfg: SearchConfig, backend: str | None = None) -> GenerationReport:
    """Generate a complete test set covering every required tuple."""
    check_spec_against_system(system, spec)
    universe = build_universe(system, spec)
    rng = SplitMix64(cfg.seed)
    ts = TestSet()
    newly_covered: list[int] = []
    cycles: list[int] = []
    start = time.perf_counter()
    while universe.uncovered_total > 0:
        tied, weight, used = search_best_candidate(system, universe, cfg, rng, backend)
        if weight > 0:
            choice = tiebreak_select(tied, ts, cfg.distance_metric, cfg.distance_aggregate)
        else:
            choice = synthesize_fallback(universe, system, rng)
        newly = mark_covered(choice, universe)
        ts.append(choice)
        newly_covered.append(newly)
        cycles.append(used)
    return GenerationReport(
        test_set=ts,
        newly_covered=newly_covered,
        cycles=cycles,
        seed=cfg.seed,
        wall_time=time.perf_counter() - start,
    )
