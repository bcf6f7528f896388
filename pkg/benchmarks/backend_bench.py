"""Compare the compiled kernels against the pure-numpy fallback.

Two measurements:
  * micro: the coverage-weight kernel alone, numba vs numpy, same inputs
  * macro: full test-set generation, this process (numba, unless disabled)
    vs a subprocess running with BEECOVER_DISABLE_NUMBA=1

Run:  python benchmarks/backend_bench.py [--spec SPEC] [--runs N]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from beecover import SearchConfig, build_universe, generate_test_set, parse_spec
from beecover import _kernels


def micro_bench(spec_text: str, evals: int) -> None:
    system, spec = parse_spec(spec_text)
    u = build_universe(system, spec)
    rng = np.random.default_rng(0)
    rows = np.stack([rng.integers(0, v, size=evals) for v in system.cardinalities],
                    axis=1).astype(np.int64)
    args = (u.cols_flat, u.col_offsets, u.strides_flat, u.flag_base, u.flags)

    t0 = time.perf_counter()
    acc = 0
    for i in range(evals):
        acc += _kernels.weight_numpy(rows[i], *args)
    t_np = time.perf_counter() - t0

    if _kernels.NUMBA_ENABLED:
        _kernels.weight_njit(rows[0], *args)  # compile outside the timing
        t0 = time.perf_counter()
        acc2 = 0
        for i in range(evals):
            acc2 += _kernels.weight_njit(rows[i], *args)
        t_nb = time.perf_counter() - t0
        assert acc == acc2
        print(f"micro  weight kernel x{evals} on {spec_text}: "
              f"numpy {t_np:.3f}s  numba {t_nb:.3f}s  speedup {t_np / t_nb:.1f}x")
    else:
        print(f"micro  weight kernel x{evals} on {spec_text}: numpy {t_np:.3f}s "
              f"(numba disabled)")


def _time_generations(spec_text: str, runs: int) -> float:
    system, spec = parse_spec(spec_text)
    start = time.perf_counter()
    for i in range(runs):
        generate_test_set(system, spec, SearchConfig(seed=i))
    return time.perf_counter() - start


def macro_bench(spec_text: str, runs: int) -> None:
    here = _time_generations(spec_text, runs)
    label = "numba" if _kernels.NUMBA_ENABLED else "numpy"
    print(f"macro  {runs} generations of {spec_text}: {label} {here:.2f}s")
    if not _kernels.NUMBA_ENABLED:
        return
    code = (
        "import sys; sys.path.insert(0, 'benchmarks'); "
        "from backend_bench import _time_generations; "
        f"print(_time_generations({spec_text!r}, {runs}))"
    )
    env = dict(os.environ, BEECOVER_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    fallback = float(out.stdout.strip().splitlines()[-1])
    print(f"macro  {runs} generations of {spec_text}: numpy {fallback:.2f}s  "
          f"speedup {fallback / here:.1f}x")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--spec", default="CA(N;2,3^7)")
    parser.add_argument("--runs", type=int, default=3)
    parser.add_argument("--evals", type=int, default=200_000)
    args = parser.parse_args()
    micro_bench(args.spec, args.evals)
    macro_bench(args.spec, args.runs)


if __name__ == "__main__":
    main()
