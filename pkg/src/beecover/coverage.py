"""Interaction-tuple enumeration and coverage bookkeeping.

Every required interaction is one (column combination, value assignment)
pair.  Per combination the assignments are encoded mixed-radix (last column
varies fastest) into a block of a single flat flag array, which gives O(1)
per-combination coverage queries; the brute-force module re-derives the same
answers without this encoding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .model import ParameterSystem, SpecSemanticError, StrengthSpec, TestCase


@dataclass(frozen=True)
class ColumnCombination:
    """A strictly increasing column tuple; sub_id is None for main-strength
    combinations, else the index of the sub-configuration that produced it."""

    columns: tuple[int, ...]
    sub_id: int | None = None

    @property
    def strength(self) -> int:
        return len(self.columns)


def enumerate_combinations(p: int, t: int, sub_id: int | None = None,
                           columns: tuple[int, ...] | None = None) -> list[ColumnCombination]:
    """All C(|pool|, t) column combinations in lexicographic order.  The pool
    is 0..p-1 unless an explicit column tuple restricts it."""
    pool = columns if columns is not None else tuple(range(p))
    if not 2 <= t <= len(pool):
        raise SpecSemanticError(f"strength {t} invalid for {len(pool)} columns")
    return [ColumnCombination(columns=c, sub_id=sub_id)
            for c in itertools.combinations(pool, t)]


@dataclass
class TupleUniverse:
    """All required tuples for one (system, spec) pair plus their flags.

    The flat layout arrays are shared with the compiled kernels; see
    :mod:`beecover._kernels` for their meaning.
    """

    system: ParameterSystem
    combinations: list[ColumnCombination]
    cols_flat: np.ndarray
    col_offsets: np.ndarray
    strides_flat: np.ndarray
    flag_base: np.ndarray
    flags: np.ndarray
    total: int
    uncovered_total: int = field(init=False)

    def __post_init__(self):
        self.uncovered_total = self.total - int(np.count_nonzero(self.flags))

    def copy(self) -> "TupleUniverse":
        return TupleUniverse(
            system=self.system,
            combinations=self.combinations,
            cols_flat=self.cols_flat,
            col_offsets=self.col_offsets,
            strides_flat=self.strides_flat,
            flag_base=self.flag_base,
            flags=self.flags.copy(),
            total=self.total,
        )


def build_universe(system: ParameterSystem, spec: StrengthSpec) -> TupleUniverse:
    """Enumerate the main-strength combinations over all columns plus each
    sub's combinations over its columns, deduplicated by column set, and
    allocate their (all-uncovered) flag blocks."""
    if spec.main_strength > system.p:
        raise SpecSemanticError(
            f"main strength {spec.main_strength} exceeds parameter count {system.p}"
        )
    combos: list[ColumnCombination] = []
    seen: set[tuple[int, ...]] = set()
    for c in enumerate_combinations(system.p, spec.main_strength):
        combos.append(c)
        seen.add(c.columns)
    for si, sub in enumerate(spec.subs):
        if sub.columns[-1] >= system.p:
            raise SpecSemanticError(f"sub column {sub.columns[-1]} out of range")
        for c in enumerate_combinations(system.p, sub.strength, sub_id=si,
                                        columns=sub.columns):
            if c.columns in seen:
                continue
            combos.append(c)
            seen.add(c.columns)

    cards = system.cardinalities
    cols_flat: list[int] = []
    strides_flat: list[int] = []
    col_offsets = [0]
    flag_base = []
    total = 0
    for c in combos:
        flag_base.append(total)
        stride = math.prod(cards[j] for j in c.columns)
        for j in c.columns:
            stride //= cards[j]
            cols_flat.append(j)
            strides_flat.append(stride)
        col_offsets.append(len(cols_flat))
        total += math.prod(cards[j] for j in c.columns)

    return TupleUniverse(
        system=system,
        combinations=combos,
        cols_flat=np.asarray(cols_flat, dtype=np.int64),
        col_offsets=np.asarray(col_offsets, dtype=np.int64),
        strides_flat=np.asarray(strides_flat, dtype=np.int64),
        flag_base=np.asarray(flag_base, dtype=np.int64),
        flags=np.zeros(total, dtype=np.uint8),
        total=total,
    )


def coverage_weight(tc: TestCase, universe: TupleUniverse) -> int:
    """How many currently-uncovered tuples this row would cover.  Read-only."""
    return int(_kernels.coverage_weight_impl(
        tc.as_array(), universe.cols_flat, universe.col_offsets,
        universe.strides_flat, universe.flag_base, universe.flags))


def mark_covered(tc: TestCase, universe: TupleUniverse) -> int:
    """Flip every flag this row hits; returns the newly covered count."""
    newly = int(_kernels.mark_covered_impl(
        tc.as_array(), universe.cols_flat, universe.col_offsets,
        universe.strides_flat, universe.flag_base, universe.flags))
    universe.uncovered_total -= newly
    return newly


def tuple_index(comb: ColumnCombination, values, system: ParameterSystem) -> int:
    """Mixed-radix index of a value assignment within its combination's
    block; row-major, last column varying fastest."""
    if len(values) != len(comb.columns):
        raise ValueError(f"{len(values)} values for {len(comb.columns)} columns")
    idx = 0
    for j, x in zip(comb.columns, values):
        v = system.cardinalities[j]
        if not 0 <= x < v:
            raise ValueError(f"value {x} out of range for column {j} (cardinality {v})")
        idx = idx * v + x
    return idx


def tuple_assignment(comb: ColumnCombination, index: int,
                     system: ParameterSystem) -> tuple[int, ...]:
    """Inverse of tuple_index."""
    out = []
    for j in reversed(comb.columns):
        v = system.cardinalities[j]
        out.append(index % v)
        index //= v
    if index:
        raise ValueError("index out of range for combination")
    return tuple(reversed(out))
