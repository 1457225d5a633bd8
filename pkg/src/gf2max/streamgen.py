"""State sequences of a matrix acting on nonzero vectors, s -> A*s.

A matrix of order 2^n - 1 behaves like a maximal-length shift register: the
orbit of any nonzero state runs through all 2^n - 1 nonzero states.
"""

from __future__ import annotations

from typing import Iterator

from .errors import CapExceededError
from .gf2mat import Gf2Mat, format_vector

FULL_PERIOD_MAX_N = 20
ORBIT_CAP = 1 << 21


class StateStream:
    """Iterate s -> A*s from a nonzero seed."""

    def __init__(self, matrix: Gf2Mat, state: int):
        if state == 0:
            raise ValueError("seed must be nonzero")
        if not 0 < state < 1 << matrix.n:
            raise ValueError(f"seed does not fit in {matrix.n} bits")
        self.matrix = matrix
        self.state = state
        self.steps_emitted = 0

    def next_state(self) -> int:
        self.state = self.matrix.apply(self.state)
        self.steps_emitted += 1
        return self.state

    def __iter__(self) -> Iterator[int]:
        while True:
            yield self.next_state()

    def take(self, steps: int) -> list[int]:
        return [self.next_state() for _ in range(steps)]


def next_state(matrix: Gf2Mat, state: int) -> int:
    if state == 0:
        raise ValueError("seed must be nonzero")
    return matrix.apply(state)


def orbit_length(a: Gf2Mat, seed: int, cap: int = ORBIT_CAP) -> int:
    """Least k >= 1 with A^k seed = seed."""
    if seed == 0:
        raise ValueError("seed must be nonzero")
    s = a.apply(seed)
    k = 1
    while s != seed:
        if k >= cap:
            raise CapExceededError("orbit cap exceeded")
        s = a.apply(s)
        k += 1
    return k


def full_period_check(a: Gf2Mat) -> bool:
    """True iff the orbit of e_0 visits all 2^n - 1 nonzero states."""
    n = a.n
    if n > FULL_PERIOD_MAX_N:
        raise CapExceededError(f"full-period check limited to n <= {FULL_PERIOD_MAX_N}")
    target = (1 << n) - 1
    seen = bytearray(1 << n)
    s = 1
    visited = 0
    while not seen[s]:
        if s == 0:
            return False
        seen[s] = 1
        visited += 1
        s = a.apply(s)
    # a singular matrix can fall into a cycle that misses the start
    return visited == target and s == 1


def format_states(states: list[int], n: int, fmt: str = "bits") -> list[str]:
    """One line per state: a 0/1 string (index 0 leftmost), or packed hex after an ``n=`` header."""
    if fmt == "bits":
        return [format_vector(s, n) for s in states]
    if fmt == "hex":
        width = (n + 3) // 4
        return [f"n={n}"] + [f"{s:0{width}x}" for s in states]
    raise ValueError(f"unknown state format {fmt!r}")
