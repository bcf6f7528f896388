"""Hybrid bee-colony / particle-swarm search for a maximum-coverage row.

Food sources are candidate test cases carried as continuous positions.
Employed bees move every source with the particle-swarm velocity rule,
onlooker bees reinforce sources chosen by fitness-proportional roulette, and
scout bees abandon sources that stagnate past the trial limit, re-scattering
them uniformly.  Personal bests track strict coverage improvements; the
search's objective is the number of still-uncovered tuples a candidate row
hits.

The module-level phase functions are the readable reference implementation;
:func:`search_best_candidate` dispatches to the fused compiled kernel by
default and falls back to these phases, with bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .coverage import TupleUniverse, coverage_weight
from .model import ParameterSystem, TestCase
from .rng import SplitMix64

VMAX_POLICIES = ("full-range",)
DISTANCE_METRICS = ("hamming", "numeric")
DISTANCE_AGGREGATES = ("sum", "min")


@dataclass(frozen=True)
class SearchConfig:
    """Tuned search knobs.  Defaults are the settings that produced the best
    sizes in tuning: 5 bees, 1000 cycles, c1 = c2 = 2.0, inertia 0.9,
    trial limit 100.  n_food defaults to n_bee // 2 (integer half); the
    remaining n_bee - n_food bees act as onlookers."""

    n_bee: int = 5
    n_food: int | None = None
    mcn: int = 1000
    limit: int = 100
    c1: float = 2.0
    c2: float = 2.0
    w: float = 0.9
    vmax_policy: str = "full-range"
    seed: int = 0
    distance_metric: str = "hamming"
    distance_aggregate: str = "sum"

    def __post_init__(self):
        if self.n_food is None:
            object.__setattr__(self, "n_food", max(1, self.n_bee // 2))
        if self.n_bee < 2:
            raise ValueError(f"n_bee must be >= 2, got {self.n_bee}")
        if not 1 <= self.n_food <= self.n_bee:
            raise ValueError(f"n_food must be in [1, n_bee], got {self.n_food}")
        if self.mcn < 1:
            raise ValueError(f"mcn must be >= 1, got {self.mcn}")
        if self.limit < 1:
            raise ValueError(f"limit must be >= 1, got {self.limit}")
        if self.c1 < 0 or self.c2 < 0:
            raise ValueError("c1 and c2 must be >= 0")
        if not 0 <= self.w <= 1:
            raise ValueError(f"w must be in [0, 1], got {self.w}")
        if self.vmax_policy not in VMAX_POLICIES:
            raise ValueError(f"unknown vmax policy {self.vmax_policy!r}")
        if self.distance_metric not in DISTANCE_METRICS:
            raise ValueError(f"unknown distance metric {self.distance_metric!r}")
        if self.distance_aggregate not in DISTANCE_AGGREGATES:
            raise ValueError(f"unknown distance aggregate {self.distance_aggregate!r}")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative 64-bit integer")

    @property
    def n_onlookers(self) -> int:
        return self.n_bee - self.n_food


@dataclass
class FoodSource:
    """One candidate: continuous position/velocity, its discretized row, and
    the greedily-kept personal best."""

    position: np.ndarray
    velocity: np.ndarray
    test_case: TestCase
    weight: int
    pbest_position: np.ndarray
    pbest_test_case: TestCase
    pbest_weight: int
    trial: int = 0


@dataclass
class SwarmState:
    sources: list[FoodSource]
    gbest_position: np.ndarray
    gbest_test_case: TestCase
    gbest_weight: int
    rng: SplitMix64
    uncovered: int = field(default=0)


def discretize(position: np.ndarray, system: ParameterSystem) -> TestCase:
    """Round half up, then clamp into each parameter's value range."""
    vals = []
    for j, v in enumerate(system.cardinalities):
        x = int(math.floor(position[j] + 0.5))
        vals.append(min(max(x, 0), v - 1))
    return TestCase(tuple(vals))


def fitness_transform(f: float) -> float:
    """Map an objective value onto positive nectar amounts: 1/(1+f) for
    f >= 0, else 1 + |f|."""
    if f >= 0:
        return 1.0 / (1.0 + f)
    return 1.0 + abs(f)


def selection_probabilities(fits) -> list[float]:
    """Fitness-proportional probabilities (sum to 1)."""
    fits = list(fits)
    if not fits:
        raise ValueError("no fitness values to select from")
    total = 0.0
    for f in fits:
        if f <= 0:
            raise ValueError(f"fitness values must be positive, got {f}")
        total += f
    return [f / total for f in fits]


def roulette_select(probs, rng: SplitMix64) -> int:
    """One roulette-wheel draw over a probability vector."""
    r = rng.uniform()
    acc = 0.0
    for i, p in enumerate(probs):
        acc += p
        if r < acc:
            return i
    return len(probs) - 1


def compute_limit(c: float, ne: int, d: int) -> int:
    """Scout trial threshold c * ne * d, rounded half up."""
    if c <= 0 or ne <= 0 or d <= 0:
        raise ValueError("compute_limit expects positive inputs")
    return int(math.floor(c * ne * d + 0.5))


def _evaluate(fs: FoodSource, system: ParameterSystem, universe: TupleUniverse) -> None:
    fs.test_case = discretize(fs.position, system)
    fs.weight = coverage_weight(fs.test_case, universe)


def init_swarm(system: ParameterSystem, universe: TupleUniverse,
               cfg: SearchConfig, rng: SplitMix64) -> SwarmState:
    """Scatter n_food sources uniformly over the box [0, v_j - 1]^P with
    zero velocity; personal bests start at the sources themselves."""
    sources = []
    for _ in range(cfg.n_food):
        pos = np.empty(system.p, dtype=np.float64)
        for j in range(system.p):
            pos[j] = rng.uniform() * float(system.cardinalities[j] - 1)
        fs = FoodSource(
            position=pos,
            velocity=np.zeros(system.p, dtype=np.float64),
            test_case=TestCase(()),
            weight=0,
            pbest_position=pos.copy(),
            pbest_test_case=TestCase(()),
            pbest_weight=0,
        )
        _evaluate(fs, system, universe)
        fs.pbest_position = fs.position.copy()
        fs.pbest_test_case = fs.test_case
        fs.pbest_weight = fs.weight
        sources.append(fs)

    best = 0
    for i in range(1, len(sources)):
        if sources[i].pbest_weight > sources[best].pbest_weight:
            best = i
    return SwarmState(
        sources=sources,
        gbest_position=sources[best].pbest_position.copy(),
        gbest_test_case=sources[best].pbest_test_case,
        gbest_weight=sources[best].pbest_weight,
        rng=rng,
        uncovered=universe.uncovered_total,
    )


def pso_update(fs: FoodSource, gbest_position: np.ndarray,
               universe: TupleUniverse, cfg: SearchConfig, rng: SplitMix64) -> FoodSource:
    """One velocity/position step toward pbest and gbest, with per-dimension
    velocity clamping to the full value range, then re-evaluation."""
    system = universe.system
    for j in range(system.p):
        r1 = rng.uniform()
        r2 = rng.uniform()
        v = cfg.w * fs.velocity[j] + cfg.c1 * r1 * (fs.pbest_position[j] - fs.position[j]) \
            + cfg.c2 * r2 * (gbest_position[j] - fs.position[j])
        vmax = float(system.cardinalities[j] - 1)
        if v > vmax:
            v = vmax
        elif v < -vmax:
            v = -vmax
        fs.velocity[j] = v
        x = fs.position[j] + v
        if x < 0.0:
            x = 0.0
        elif x > vmax:
            x = vmax
        fs.position[j] = x
    _evaluate(fs, system, universe)
    return fs


def _greedy_keep(state: SwarmState, fs: FoodSource) -> None:
    """Greedy pbest rule (strict improvement) plus gbest refresh (on >)."""
    if fs.weight > fs.pbest_weight:
        fs.pbest_position = fs.position.copy()
        fs.pbest_test_case = fs.test_case
        fs.pbest_weight = fs.weight
        fs.trial = 0
        if fs.pbest_weight > state.gbest_weight:
            state.gbest_weight = fs.pbest_weight
            state.gbest_position = fs.pbest_position.copy()
            state.gbest_test_case = fs.pbest_test_case
    else:
        fs.trial += 1


def employed_phase(state: SwarmState, universe: TupleUniverse, cfg: SearchConfig) -> SwarmState:
    """Every source takes one swarm step; personal bests update greedily."""
    for fs in state.sources:
        pso_update(fs, state.gbest_position, universe, cfg, state.rng)
        _greedy_keep(state, fs)
    return state


def onlooker_phase(state: SwarmState, universe: TupleUniverse, cfg: SearchConfig) -> SwarmState:
    """Each onlooker reinforces a roulette-chosen source with another step."""
    for _ in range(cfg.n_onlookers):
        fits = [fitness_transform(float(state.uncovered - fs.weight))
                for fs in state.sources]
        probs = selection_probabilities(fits)
        sel = roulette_select(probs, state.rng)
        fs = state.sources[sel]
        pso_update(fs, state.gbest_position, universe, cfg, state.rng)
        _greedy_keep(state, fs)
    return state


def scout_phase(state: SwarmState, universe: TupleUniverse, cfg: SearchConfig) -> SwarmState:
    """Sources stagnant past the trial limit are abandoned: re-scattered
    uniformly with cleared velocity.  A fresh point at least as good as the
    personal best replaces it; trial resets either way."""
    system = universe.system
    for fs in state.sources:
        if fs.trial <= cfg.limit:
            continue
        for j in range(system.p):
            fs.position[j] = state.rng.uniform() * float(system.cardinalities[j] - 1)
            fs.velocity[j] = 0.0
        _evaluate(fs, system, universe)
        if fs.weight >= fs.pbest_weight:
            fs.pbest_position = fs.position.copy()
            fs.pbest_test_case = fs.test_case
            fs.pbest_weight = fs.weight
            if fs.pbest_weight > state.gbest_weight:
                state.gbest_weight = fs.pbest_weight
                state.gbest_position = fs.pbest_position.copy()
                state.gbest_test_case = fs.pbest_test_case
        fs.trial = 0
    return state


def _tied_from(cases: list[TestCase], weights: list[int], gbest_weight: int) -> list[TestCase]:
    tied = []
    seen = set()
    for tc, w in zip(cases, weights):
        if w == gbest_weight and tc.values not in seen:
            seen.add(tc.values)
            tied.append(tc)
    return tied


def default_backend() -> str:
    return "numba" if _kernels.NUMBA_ENABLED else "numpy"


def search_best_candidate(system: ParameterSystem, universe: TupleUniverse,
                          cfg: SearchConfig, rng: SplitMix64,
                          backend: str | None = None,
                          ) -> tuple[list[TestCase], int, int]:
    """Run one full swarm search against the frozen coverage state.

    Returns (tied best rows in stable source order, their shared coverage
    weight, cycles executed).  Exits early once a candidate covers every
    remaining tuple.
    """
    if universe.uncovered_total <= 0:
        raise ValueError("nothing left to cover")
    if backend is None:
        backend = default_backend()

    if backend == "numba":
        if not _kernels.NUMBA_ENABLED:
            raise RuntimeError("numba backend requested but unavailable "
                               "(disabled by BEECOVER_DISABLE_NUMBA or not installed)")
        pb_case, pb_w, gb_w, cycles, state = _kernels.run_search_njit(
            system.cards_array(), universe.cols_flat, universe.col_offsets,
            universe.strides_flat, universe.flag_base, universe.flags,
            universe.uncovered_total, cfg.n_food, cfg.n_onlookers, cfg.mcn,
            cfg.limit, cfg.c1, cfg.c2, cfg.w, np.uint64(rng.state))
        rng.state = int(state)
        cases = [TestCase.from_array(pb_case[i]) for i in range(cfg.n_food)]
        return _tied_from(cases, [int(x) for x in pb_w], int(gb_w)), int(gb_w), int(cycles)

    if backend != "numpy":
        raise ValueError(f"unknown backend {backend!r}")

    state = init_swarm(system, universe, cfg, rng)
    cycles = 0
    if state.gbest_weight < universe.uncovered_total:
        for cycle in range(cfg.mcn):
            employed_phase(state, universe, cfg)
            onlooker_phase(state, universe, cfg)
            scout_phase(state, universe, cfg)
            cycles = cycle + 1
            if state.gbest_weight >= universe.uncovered_total:
                break
    cases = [fs.pbest_test_case for fs in state.sources]
    weights = [fs.pbest_weight for fs in state.sources]
    return _tied_from(cases, weights, state.gbest_weight), state.gbest_weight, cycles
