"""Deterministic 64-bit random stream shared by every stochastic component.

SplitMix64 is used instead of numpy's generators so the compiled kernels and
the pure-Python fallback consume bit-identical streams: the generator is plain
unsigned 64-bit arithmetic, reproduced exactly in both backends.
"""

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def splitmix64_next(state: int) -> tuple[int, int]:
    """Advance one step; returns (new_state, output word)."""
    state = (state + _GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    z = z ^ (z >> 31)
    return state, z


class SplitMix64:
    """Stateful wrapper around the raw step function."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state, z = splitmix64_next(self.state)
        return z

    def uniform(self) -> float:
        # 53 high bits -> float64 in [0, 1)
        return (self.next_u64() >> 11) * 2.0**-53

    def randint(self, n: int) -> int:
        """Uniform integer in [0, n). n must be small enough that the
        float truncation bias is irrelevant (n << 2^53)."""
        return int(self.uniform() * n)
