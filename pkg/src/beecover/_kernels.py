"""Hot numeric kernels: coverage-table lookups and the fused swarm search.

Two interchangeable backends live here.  The numba ``@njit`` path is the
default; setting the environment variable ``BEECOVER_DISABLE_NUMBA`` to a
truthy value (or numba being absent) selects the pure-numpy path.  Both
consume the same SplitMix64 stream, so results are bit-identical either way;
``benchmarks/backend_bench.py`` times one against the other.

Coverage state layout (shared with :mod:`beecover.coverage`):

    cols_flat[k]    column index, combinations concatenated
    col_offsets[c]  start of combination c in cols_flat (length C+1)
    strides_flat[k] mixed-radix stride of cols_flat[k] inside its block
    flag_base[c]    start of combination c's block in flags
    flags[f]        1 once the tuple with that encoded index is covered
"""

import os

import numpy as np

from .rng import splitmix64_next


def _truthy(value: str) -> bool:
    return value.strip().lower() not in ("", "0", "false", "no")


NUMBA_DISABLED = _truthy(os.environ.get("BEECOVER_DISABLE_NUMBA", ""))

NUMBA_ENABLED = False
if not NUMBA_DISABLED:
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False


# --- numpy backend ----------------------------------------------------------

def weight_numpy(values, cols_flat, col_offsets, strides_flat, flag_base, flags):
    """Count currently-uncovered tuples hit by one row."""
    terms = values[cols_flat] * strides_flat
    idx = np.add.reduceat(terms, col_offsets[:-1])
    return int(np.count_nonzero(flags[flag_base + idx] == 0))


def mark_numpy(values, cols_flat, col_offsets, strides_flat, flag_base, flags):
    """Set the flags one row hits; returns how many were newly covered."""
    terms = values[cols_flat] * strides_flat
    idx = np.add.reduceat(terms, col_offsets[:-1])
    pos = flag_base + idx
    fresh = flags[pos] == 0
    flags[pos[fresh]] = 1
    return int(np.count_nonzero(fresh))


# --- numba backend ----------------------------------------------------------

if NUMBA_ENABLED:
    _GAMMA = np.uint64(0x9E3779B97F4A7C15)
    _MIX1 = np.uint64(0xBF58476D1CE4E5B9)
    _MIX2 = np.uint64(0x94D049BB133111EB)
    _S30 = np.uint64(30)
    _S27 = np.uint64(27)
    _S31 = np.uint64(31)
    _S11 = np.uint64(11)
    _U01 = 2.0**-53

    @njit(cache=True, nogil=True)
    def _next_f(state):
        state = state + _GAMMA
        z = state
        z = (z ^ (z >> _S30)) * _MIX1
        z = (z ^ (z >> _S27)) * _MIX2
        z = z ^ (z >> _S31)
        return state, np.float64(z >> _S11) * _U01

    @njit(cache=True, nogil=True)
    def weight_njit(values, cols_flat, col_offsets, strides_flat, flag_base, flags):
        w = 0
        for c in range(flag_base.shape[0]):
            idx = 0
            for k in range(col_offsets[c], col_offsets[c + 1]):
                idx += values[cols_flat[k]] * strides_flat[k]
            if flags[flag_base[c] + idx] == 0:
                w += 1
        return w

    @njit(cache=True, nogil=True)
    def mark_njit(values, cols_flat, col_offsets, strides_flat, flag_base, flags):
        newly = 0
        for c in range(flag_base.shape[0]):
            idx = 0
            for k in range(col_offsets[c], col_offsets[c + 1]):
                idx += values[cols_flat[k]] * strides_flat[k]
            f = flag_base[c] + idx
            if flags[f] == 0:
                flags[f] = 1
                newly += 1
        return newly

    @njit(cache=True, nogil=True)
    def _discretize_row(pos_row, cards, out_row):
        for j in range(cards.shape[0]):
            x = np.int64(np.floor(pos_row[j] + 0.5))
            if x < 0:
                x = 0
            hi = cards[j] - 1
            if x > hi:
                x = hi
            out_row[j] = x

    @njit(cache=True, nogil=True)
    def _pso_move(state, pos_row, vel_row, pb_row, gb_pos, cards, c1, c2, w):
        # velocity clamp is the full per-dimension value range
        for j in range(cards.shape[0]):
            state, r1 = _next_f(state)
            state, r2 = _next_f(state)
            v = w * vel_row[j] + c1 * r1 * (pb_row[j] - pos_row[j]) \
                + c2 * r2 * (gb_pos[j] - pos_row[j])
            vmax = np.float64(cards[j] - 1)
            if v > vmax:
                v = vmax
            elif v < -vmax:
                v = -vmax
            vel_row[j] = v
            x = pos_row[j] + v
            if x < 0.0:
                x = 0.0
            elif x > vmax:
                x = vmax
            pos_row[j] = x
        return state

    @njit(cache=True, nogil=True)
    def run_search_njit(cards, cols_flat, col_offsets, strides_flat, flag_base,
                        flags, uncovered, n_food, n_onlookers, mcn, limit,
                        c1, c2, w, state):
        """One full swarm search against a frozen coverage state.

        Returns (pbest rows, pbest weights, gbest weight, cycles run,
        advanced rng state).
        """
        n_params = cards.shape[0]
        pos = np.empty((n_food, n_params), np.float64)
        vel = np.zeros((n_food, n_params), np.float64)
        case = np.empty((n_food, n_params), np.int64)
        cur_w = np.empty(n_food, np.int64)
        pb_pos = np.empty((n_food, n_params), np.float64)
        pb_case = np.empty((n_food, n_params), np.int64)
        pb_w = np.empty(n_food, np.int64)
        trial = np.zeros(n_food, np.int64)

        for i in range(n_food):
            for j in range(n_params):
                state, r = _next_f(state)
                pos[i, j] = r * np.float64(cards[j] - 1)
            _discretize_row(pos[i], cards, case[i])
            cur_w[i] = weight_njit(case[i], cols_flat, col_offsets,
                                   strides_flat, flag_base, flags)
            pb_pos[i] = pos[i]
            pb_case[i] = case[i]
            pb_w[i] = cur_w[i]

        best = 0
        for i in range(1, n_food):
            if pb_w[i] > pb_w[best]:
                best = i
        gb_pos = pb_pos[best].copy()
        gb_w = pb_w[best]

        cycles = 0
        if gb_w < uncovered:
            for _cycle in range(mcn):
                # employed bees: every source moves; pbest keeps strict improvements
                for i in range(n_food):
                    state = _pso_move(state, pos[i], vel[i], pb_pos[i],
                                      gb_pos, cards, c1, c2, w)
                    _discretize_row(pos[i], cards, case[i])
                    cur_w[i] = weight_njit(case[i], cols_flat, col_offsets,
                                           strides_flat, flag_base, flags)
                    if cur_w[i] > pb_w[i]:
                        pb_pos[i] = pos[i]
                        pb_case[i] = case[i]
                        pb_w[i] = cur_w[i]
                        trial[i] = 0
                        if pb_w[i] > gb_w:
                            gb_w = pb_w[i]
                            gb_pos[:] = pb_pos[i]
                    else:
                        trial[i] += 1

                # onlooker bees: roulette over transformed objectives
                for _k in range(n_onlookers):
                    total = 0.0
                    for i in range(n_food):
                        total += 1.0 / (1.0 + np.float64(uncovered - cur_w[i]))
                    state, r = _next_f(state)
                    sel = n_food - 1
                    acc = 0.0
                    for i in range(n_food):
                        acc += (1.0 / (1.0 + np.float64(uncovered - cur_w[i]))) / total
                        if r < acc:
                            sel = i
                            break
                    state = _pso_move(state, pos[sel], vel[sel], pb_pos[sel],
                                      gb_pos, cards, c1, c2, w)
                    _discretize_row(pos[sel], cards, case[sel])
                    cur_w[sel] = weight_njit(case[sel], cols_flat, col_offsets,
                                             strides_flat, flag_base, flags)
                    if cur_w[sel] > pb_w[sel]:
                        pb_pos[sel] = pos[sel]
                        pb_case[sel] = case[sel]
                        pb_w[sel] = cur_w[sel]
                        trial[sel] = 0
                        if pb_w[sel] > gb_w:
                            gb_w = pb_w[sel]
                            gb_pos[:] = pb_pos[sel]
                    else:
                        trial[sel] += 1

                # scout bees: stagnant sources are abandoned for a fresh
                # uniform point; personal bests survive on better-or-equal
                for i in range(n_food):
                    if trial[i] > limit:
                        for j in range(n_params):
                            state, r = _next_f(state)
                            pos[i, j] = r * np.float64(cards[j] - 1)
                            vel[i, j] = 0.0
                        _discretize_row(pos[i], cards, case[i])
                        cur_w[i] = weight_njit(case[i], cols_flat, col_offsets,
                                               strides_flat, flag_base, flags)
                        if cur_w[i] >= pb_w[i]:
                            pb_pos[i] = pos[i]
                            pb_case[i] = case[i]
                            pb_w[i] = cur_w[i]
                            if pb_w[i] > gb_w:
                                gb_w = pb_w[i]
                                gb_pos[:] = pb_pos[i]
                        trial[i] = 0

                cycles = _cycle + 1
                if gb_w >= uncovered:
                    break

        return pb_case, pb_w, gb_w, cycles, state
else:
    run_search_njit = None


# active implementations
if NUMBA_ENABLED:
    coverage_weight_impl = weight_njit
    mark_covered_impl = mark_njit
else:
    coverage_weight_impl = weight_numpy
    mark_covered_impl = mark_numpy


__all__ = [
    "NUMBA_ENABLED",
    "coverage_weight_impl",
    "mark_covered_impl",
    "mark_numpy",
    "run_search_njit",
    "splitmix64_next",
    "weight_numpy",
]
