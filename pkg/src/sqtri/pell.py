"""Solutions of t**2 - 2*s**2 = 1.

Index 1 is the fundamental solution (3, 2); the trivial (1, 0) is not
exposed. All arithmetic is on exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, List, Tuple

from sqtri.errors import DomainError, IntegrityError


def _check_pell(t: int, s: int) -> None:
    if t * t - 2 * s * s != 1:
        raise IntegrityError(f"({t}, {s}) does not solve t^2 - 2s^2 = 1")
    if t % 2 != 1 or s % 2 != 0:
        raise IntegrityError(f"({t}, {s}) needs t odd and s even")


@dataclass(frozen=True)
class PellSolution:
    index: int
    t: int
    s: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise IntegrityError(f"solution index starts at 1, got {self.index}")
        _check_pell(self.t, self.s)


@dataclass(frozen=True)
class Convergent:
    numerator: int
    denominator: int
    depth: int

    def __post_init__(self) -> None:
        if gcd(self.numerator, self.denominator) != 1:
            raise IntegrityError(
                f"convergent {self.numerator}/{self.denominator} not in lowest terms"
            )


def sqrt2_convergents(depth: int) -> List[Convergent]:
    """Convergents of [1; 2, 2, 2, ...] for depths 0..depth inclusive."""
    if depth < 0:
        raise DomainError(f"depth must be non-negative, got {depth}")
    out = [Convergent(1, 1, 0)]
    p_prev, q_prev, p, q = 1, 0, 1, 1
    for k in range(1, depth + 1):
        p_prev, p = p, 2 * p + p_prev
        q_prev, q = q, 2 * q + q_prev
        out.append(Convergent(p, q, k))
    return out


def fundamental_solution() -> PellSolution:
    """Smallest non-trivial solution, read off the first convergent 3/2."""
    c = sqrt2_convergents(1)[1]
    return PellSolution(1, c.numerator, c.denominator)


def next_solution(prev: PellSolution) -> PellSolution:
    """Multiply by 3 + 2*sqrt(2): (t, s) -> (3t + 4s, 2t + 3s)."""
    _check_pell(prev.t, prev.s)
    t, s = prev.t, prev.s
    return PellSolution(prev.index + 1, 3 * t + 4 * s, 2 * t + 3 * s)


def _mul(x: Tuple[int, int], y: Tuple[int, int]) -> Tuple[int, int]:
    # (a + b*r2)(c + d*r2)
    a, b = x
    c, d = y
    return a * c + 2 * b * d, a * d + b * c


def solution(i: int) -> PellSolution:
    """The i-th solution, via binary powering of 3 + 2*sqrt(2) in Z[sqrt(2)]."""
    if i < 1:
        raise DomainError(f"solution index starts at 1, got {i}")
    result = (1, 0)
    base = (3, 2)
    n = i
    while n:
        if n & 1:
            result = _mul(result, base)
        base = _mul(base, base)
        n >>= 1
    return PellSolution(i, *result)


def iter_solutions() -> Iterator[PellSolution]:
    sol = fundamental_solution()
    while True:
        yield sol
        sol = next_solution(sol)


def solutions(count: int) -> List[PellSolution]:
    """The first ``count`` solutions by recurrence."""
    if count < 0:
        raise DomainError(f"count must be non-negative, got {count}")
    it = iter_solutions()
    return [next(it) for _ in range(count)]
