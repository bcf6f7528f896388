"""Brute-force coverage oracle.

Deliberately naive and independent: combinations and assignments are
re-enumerated with itertools, and flag positions are found by walking the
enumeration rather than by arithmetic.  This module shares nothing with the
fast coverage tables beyond the domain types, so agreement between the two
is meaningful evidence of correctness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .coverage import TupleUniverse
from .model import ParameterSystem, StrengthSpec, TestCase, TestSet


def brute_force_weight(tc: TestCase, universe: TupleUniverse) -> int:
    """Recount the uncovered tuples tc hits, deriving each flag position by
    enumerating assignments in storage order instead of indexing math."""
    system = universe.system
    w = 0
    for ci, comb in enumerate(universe.combinations):
        projection = tuple(tc.values[j] for j in comb.columns)
        base = int(universe.flag_base[ci])
        offset = 0
        ranges = [range(system.cardinalities[j]) for j in comb.columns]
        for assignment in itertools.product(*ranges):
            if assignment == projection:
                if universe.flags[base + offset] == 0:
                    w += 1
                break
            offset += 1
    return w


@dataclass
class VerificationReport:
    complete: bool
    missing: list[tuple[tuple[int, ...], tuple[int, ...]]]
    total_required: int

    def describe(self, limit: int = 20) -> str:
        if self.complete:
            return f"complete: all {self.total_required} required tuples covered"
        lines = [f"incomplete: {len(self.missing)} of {self.total_required} tuples missing"]
        for cols, vals in self.missing[:limit]:
            lines.append(f"  columns {list(cols)} values {list(vals)}")
        if len(self.missing) > limit:
            lines.append(f"  ... and {len(self.missing) - limit} more")
        return "\n".join(lines)


def _required_combinations(system: ParameterSystem, spec: StrengthSpec):
    seen = set()
    for cols in itertools.combinations(range(system.p), spec.main_strength):
        seen.add(cols)
        yield cols
    for sub in spec.subs:
        for cols in itertools.combinations(sub.columns, sub.strength):
            if cols not in seen:
                seen.add(cols)
                yield cols


def verify_coverage(ts: TestSet, system: ParameterSystem,
                    spec: StrengthSpec) -> VerificationReport:
    """Check from scratch that every required tuple appears in some row."""
    missing = []
    total = 0
    for cols in _required_combinations(system, spec):
        realized = {tuple(row.values[j] for j in cols) for row in ts.rows}
        ranges = [range(system.cardinalities[j]) for j in cols]
        for assignment in itertools.product(*ranges):
            total += 1
            if assignment not in realized:
                missing.append((cols, assignment))
    return VerificationReport(complete=not missing, missing=missing, total_required=total)
