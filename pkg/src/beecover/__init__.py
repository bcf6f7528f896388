"""beecover: minimal t-way covering array generation.

A hybrid bee-colony/particle-swarm search picks one maximum-coverage row at
a time, with a Hamming-distance tie-break among equally good candidates,
until every required interaction tuple is covered.  Supports uniform and
mixed cardinalities plus variable-strength sub-configurations, and ships an
independent brute-force verifier and a benchmark harness.
"""

from .coverage import (ColumnCombination, TupleUniverse, build_universe,
                       coverage_weight, enumerate_combinations, mark_covered,
                       tuple_assignment, tuple_index)
from .generator import (GenerationReport, generate_test_set, hamming_distance,
                        synthesize_fallback, tiebreak_select, total_hamming)
from .model import (ParameterSystem, SpecError, SpecSemanticError,
                    SpecSyntaxError, StrengthSpec, SubConfiguration, TestCase,
                    TestSet, canonical_spec, parse_spec, validate_test_case)
from .oracle import VerificationReport, brute_force_weight, verify_coverage
from .swarm import (FoodSource, SearchConfig, SwarmState, compute_limit,
                    discretize, fitness_transform, search_best_candidate,
                    selection_probabilities)
from .cli import BenchmarkResult, run_benchmark

__version__ = "0.1.0"

__all__ = [
    "BenchmarkResult",
    "ColumnCombination",
    "FoodSource",
    "GenerationReport",
    "ParameterSystem",
    "SearchConfig",
    "SpecError",
    "SpecSemanticError",
    "SpecSyntaxError",
    "StrengthSpec",
    "SubConfiguration",
    "SwarmState",
    "TestCase",
    "TestSet",
    "TupleUniverse",
    "VerificationReport",
    "brute_force_weight",
    "build_universe",
    "canonical_spec",
    "compute_limit",
    "coverage_weight",
    "discretize",
    "enumerate_combinations",
    "fitness_transform",
    "generate_test_set",
    "hamming_distance",
    "mark_covered",
    "parse_spec",
    "run_benchmark",
    "search_best_candidate",
    "selection_probabilities",
    "synthesize_fallback",
    "tiebreak_select",
    "total_hamming",
    "tuple_assignment",
    "tuple_index",
    "validate_test_case",
    "verify_coverage",
]
