"""Square-triangular numbers and polygonal families.

Three independent generators produce the same sequence 1, 36, 1225, ...:

* :func:`square_triangular` maps Pell solutions through t = 2m+1, s = 2n;
* :func:`square_triangular_closed` rounds (alpha**j + alpha**-j - 2)/32;
* :func:`scan_square_triangulars` tests every triangular number directly.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Decimal
from typing import IO, Iterable, Iterator, List, Optional, Union

from sqtri import kernels
from sqtri.errors import DomainError, IntegrityError, PrecisionError
from sqtri.numeric import (
    Number,
    PrecisionConfig,
    is_perfect_square,
    isqrt,
    round_half_away,
    sqrt_decimal,
    triangular,
)
from sqtri.pell import PellSolution, iter_solutions, solution

#: log10 of alpha = (1 + sqrt 2)**4; digits gained per sequence index.
LOG10_ALPHA = math.log10(17 + 12 * math.sqrt(2))
CLOSED_FORM_GUARD_DIGITS = 10


class Source(str, enum.Enum):
    RECURRENCE = "recurrence"
    CLOSED_FORM = "closed_form"
    SCAN = "scan"


@dataclass(frozen=True)
class SquareTriangular:
    """a = n**2 = m(m+1)/2, the j-th such number (j starts at 1)."""

    j: int
    a: int
    m: int
    n: int
    source: Source = Source.RECURRENCE

    def __post_init__(self) -> None:
        if self.a != self.n * self.n:
            raise IntegrityError(f"{self.a} != {self.n}^2")
        if 2 * self.a != self.m * (self.m + 1):
            raise IntegrityError(f"{self.a} is not T_{self.m}")

    @property
    def pell(self) -> PellSolution:
        return PellSolution(self.j, 2 * self.m + 1, 2 * self.n)

    @classmethod
    def from_pell(cls, sol: PellSolution, source: Source = Source.RECURRENCE):
        n = sol.s // 2
        return cls(sol.index, n * n, (sol.t - 1) // 2, n, source)


@dataclass(frozen=True)
class PolygonalSpec:
    sides: int

    def __post_init__(self) -> None:
        if self.sides < 3:
            raise DomainError(f"a polygon needs at least 3 sides, got {self.sides}")


TRIANGULAR = PolygonalSpec(3)
SQUARE = PolygonalSpec(4)
PENTAGONAL = PolygonalSpec(5)


@dataclass(frozen=True)
class ScanRow:
    k: int
    triangular: int
    root: Number
    integer_part: int
    decimal_part: Number


def _as_spec(spec: Union[PolygonalSpec, int]) -> PolygonalSpec:
    return spec if isinstance(spec, PolygonalSpec) else PolygonalSpec(spec)


def square_triangular(j: int) -> SquareTriangular:
    if j < 1:
        raise DomainError(f"index starts at 1, got {j}")
    return SquareTriangular.from_pell(solution(j))


def iter_square_triangulars() -> Iterator[SquareTriangular]:
    for sol in iter_solutions():
        yield SquareTriangular.from_pell(sol)


def square_triangulars(count: int) -> List[SquareTriangular]:
    """First ``count`` records via the Pell recurrence."""
    if count < 0:
        raise DomainError(f"count must be non-negative, got {count}")
    it = iter_square_triangulars()
    return [next(it) for _ in range(count)]


def closed_form_digits(j: int) -> int:
    """Digits needed so the closed form rounds to the right integer."""
    return math.ceil(j * LOG10_ALPHA) + CLOSED_FORM_GUARD_DIGITS


def square_triangular_closed(j: int, cfg: PrecisionConfig) -> int:
    """Round (alpha**j + alpha**-j - 2)/32 with alpha = 17 + 12*sqrt(2)."""
    if j < 1:
        raise DomainError(f"index starts at 1, got {j}")
    need = closed_form_digits(j)
    if cfg.effective_digits < need:
        raise PrecisionError(
            f"closed form for j={j} needs {need} digits, have {cfg.effective_digits}"
        )
    with cfg.arith():
        alpha = 17 + 12 * sqrt_decimal(2, cfg)
        aj = alpha ** j
        value = (aj + 1 / aj - 2) / 32
    rounded = round_half_away(value)
    gap = abs((value if isinstance(value, Decimal) else Decimal(value)) - rounded)
    if gap >= Decimal("0.25"):
        raise PrecisionError(f"closed form for j={j} too far from an integer: {value}")
    return rounded


def polygonal(spec: Union[PolygonalSpec, int], n: int) -> int:
    """P(m, n) = n((m-2)n - (m-4))/2."""
    m = _as_spec(spec).sides
    if n < 0:
        raise DomainError(f"polygonal index must be non-negative, got {n}")
    return n * ((m - 2) * n - (m - 4)) // 2


def _scan_chunk(bounds):
    return kernels.scan_triangular_squares(*bounds)


def scan_square_triangulars(limit: int, workers: int = 1) -> List[SquareTriangular]:
    """Every k in [1, limit] with T_k a perfect square, in index order.

    With ``workers > 1`` the range is split into contiguous chunks scanned
    in separate processes; results are concatenated in chunk order.
    """
    if limit < 1:
        raise DomainError(f"limit must be positive, got {limit}")
    if workers <= 1:
        ks = kernels.scan_triangular_squares(1, limit)
    else:
        step = -(-limit // workers)
        chunks = [(lo, min(lo + step - 1, limit)) for lo in range(1, limit + 1, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            ks = [k for part in pool.map(_scan_chunk, chunks) for k in part]
    out = []
    for j, k in enumerate(ks, start=1):
        a = triangular(k)
        out.append(SquareTriangular(j, a, k, isqrt(a), Source.SCAN))
    return out


def decimal_part_table(start: int, stop: int, cfg: PrecisionConfig) -> List[ScanRow]:
    """Rows k, T_k, sqrt(T_k), floor, fractional part for k in [start, stop]."""
    if not 1 <= start <= stop:
        raise DomainError(f"need 1 <= start <= stop, got {start}, {stop}")
    rows = []
    with cfg.arith():
        for k in range(start, stop + 1):
            tri = triangular(k)
            root = sqrt_decimal(tri, cfg)
            whole = isqrt(tri)
            frac = root - whole
            if frac >= 1:
                # root of (r+1)**2 - eps rounded up to r+1
                raise PrecisionError(
                    f"{cfg.effective_digits} digits cannot resolve sqrt(T_{k})"
                )
            rows.append(ScanRow(k, tri, root, whole, frac))
    return rows


def intersect_polygonal(
    s1: Union[PolygonalSpec, int], s2: Union[PolygonalSpec, int], limit: int
) -> List[int]:
    """Ascending values in [1, limit] that belong to both polygonal families."""
    s1, s2 = _as_spec(s1), _as_spec(s2)
    if limit < 1:
        raise DomainError(f"limit must be positive, got {limit}")
    return kernels.merge_polygonal(s1.sides, s2.sides, limit)


def polygonal_index(spec: Union[PolygonalSpec, int], value: int) -> Optional[int]:
    """Return n with P(m, n) == value, or None."""
    m = _as_spec(spec).sides
    if value < 0:
        return None
    # (m-2)n^2 - (m-4)n - 2v = 0
    a, b = m - 2, -(m - 4)
    disc = b * b + 8 * a * value
    ok, root = is_perfect_square(disc)
    if not ok or (root - b) % (2 * a):
        return None
    return (root - b) // (2 * a)


def write_bfile(values: Iterable[int], fp: IO[str], offset: int = 1) -> None:
    """Write ``index value`` lines, one per term, indices from ``offset``."""
    for i, v in enumerate(values, start=offset):
        fp.write(f"{i} {v}\n")
