"""Ratio cascade over a positive increasing integer sequence.

Level 1 holds the sequence itself, a[1][j]. Each higher level is

    a[h][j] = a[h-1][j+1] / a[h-1][j] - a[h-1][j] / a[h-1][j-1]

so level h is defined for j in [h, N-h+1]. For the square-triangular
numbers every level's successive ratios approach alpha = 17 + 12*sqrt(2)
(proved for h <= 2; open beyond). Level-2 values are the negatives of the
tabulated b_n = a_n/a_(n-1) - a_(n+1)/a_n; tables show absolute values.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sqtri.errors import (
    ArityError,
    DegenerateSequenceError,
    DivergentTailError,
    DomainError,
    PrecisionError,
)
from sqtri.numeric import Number, PrecisionConfig, sqrt_decimal, to_decimal_string
from sqtri.pell import solutions

#: Digits lost per index per level when differencing near-equal ratios.
DIGITS_PER_INDEX = 1.532
BUDGET_GUARD_DIGITS = 30


def alpha(cfg: PrecisionConfig) -> Number:
    """(1 + sqrt 2)**4 = 17 + 12*sqrt(2) at the working precision."""
    with cfg.arith():
        return 17 + 12 * sqrt_decimal(2, cfg)


@dataclass(frozen=True)
class CascadeTable:
    levels: Tuple[Tuple[Number, ...], ...]
    cfg: PrecisionConfig
    base_count: int
    #: per level, the j of the first zero entry that cut the level short
    truncated_at: Tuple[Optional[int], ...] = ()

    @property
    def h_max(self) -> int:
        return len(self.levels)

    def level(self, h: int) -> Tuple[Number, ...]:
        return self.levels[h - 1]

    def first_index(self, h: int) -> int:
        """The sequence index j of ``level(h)[0]``."""
        return h

    def entry(self, h: int, j: int) -> Optional[Number]:
        i = j - self.first_index(h)
        lv = self.level(h)
        return lv[i] if 0 <= i < len(lv) else None

    def ratios(self, h: int) -> List[Number]:
        """Successive ratios of level h, oriented to approach alpha.

        Level 1 grows, so a[1][j+1]/a[1][j]; higher levels decay, so
        a[h][j-1]/a[h][j]. Element i pairs entries i and i+1 of the level.
        """
        return successive_ratios(self.level(h), self.cfg, growing=(h == 1))

    def deviations(self, h: int) -> List[Number]:
        al = alpha(self.cfg)
        with self.cfg.arith():
            return [abs(r - al) for r in self.ratios(h)]

    def to_csv(self) -> str:
        """One column per level (header ``h=1,h=2,...``), row r is j = r."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"h={h}" for h in range(1, self.h_max + 1)])
        for j in range(1, self.base_count + 1):
            row = []
            for h in range(1, self.h_max + 1):
                v = self.entry(h, j)
                row.append("" if v is None else to_decimal_string(v))
            w.writerow(row)
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "digits": self.cfg.digits,
            "float_mode": self.cfg.float_mode,
            "base_count": self.base_count,
            "first_index": [self.first_index(h) for h in range(1, self.h_max + 1)],
            "levels": [[to_decimal_string(v) for v in lv] for lv in self.levels],
        }
        return json.dumps(doc, indent=2)


def _next_level(prev: Sequence[Number]) -> List[Number]:
    return [prev[j + 1] / prev[j] - prev[j] / prev[j - 1] for j in range(1, len(prev) - 1)]


def build_cascade(base: Sequence[int], h_max: int, cfg: PrecisionConfig) -> CascadeTable:
    """Compute levels 1..h_max from a strictly increasing positive sequence.

    A level containing an exact zero is cut just before it; the cut is
    recorded in ``truncated_at`` and later levels build on what remains.
    """
    if h_max < 1:
        raise DomainError(f"h_max must be positive, got {h_max}")
    if len(base) < 2 * h_max + 1:
        raise ArityError(
            f"{h_max} levels need at least {2 * h_max + 1} terms, got {len(base)}"
        )
    if base[0] <= 0 or any(b <= a for a, b in zip(base, base[1:])):
        raise DomainError("base must be strictly increasing and positive")
    truncated: List[Optional[int]] = [None]
    with cfg.arith():
        levels = [tuple(cfg.num(x) for x in base)]
        for h in range(2, h_max + 1):
            lv = _next_level(levels[-1])
            cut = next((i for i, v in enumerate(lv) if v == 0), None)
            if cut is not None:
                lv = lv[:cut]
                truncated.append(h + cut)
            else:
                truncated.append(None)
            levels.append(tuple(lv))
            if len(lv) < 3:
                # the next level would have no entries
                break
    return CascadeTable(tuple(levels), cfg, len(base), tuple(truncated))


def successive_ratios(
    level: Sequence[Number],
    cfg: Optional[PrecisionConfig] = None,
    growing: Optional[bool] = None,
) -> List[Number]:
    """Ratios of consecutive terms, larger over smaller in magnitude trend.

    ``growing`` picks later/earlier (True) or earlier/later (False); when
    omitted it is inferred from the magnitudes of the end terms. Without a
    ``cfg`` the caller's active decimal context applies.
    """
    if len(level) < 2:
        raise ArityError(f"need at least 2 terms, got {len(level)}")
    if growing is None:
        growing = abs(level[-1]) >= abs(level[0])
    if cfg is None:
        return _ratios(level, growing)
    with cfg.arith():
        return _ratios(level, growing)


def _ratios(level: Sequence[Number], growing: bool) -> List[Number]:
    out = []
    for x, y in zip(level, level[1:]):
        num, den = (y, x) if growing else (x, y)
        if den == 0:
            raise DegenerateSequenceError("zero term in ratio sequence")
        out.append(num / den)
    return out


@dataclass(frozen=True)
class LimitEstimate:
    value: Number
    tail_bound: Number
    terms_used: int


def limit_estimate(
    ratios: Sequence[Number], q: Number, cfg: Optional[PrecisionConfig] = None
) -> LimitEstimate:
    """Extrapolate a geometrically converging sequence.

    With d the last difference and later differences assumed to shrink by
    q each step, the remaining movement sums to d/(q-1). The estimate is
    the last term moved by that amount in the direction of travel.
    """
    if len(ratios) < 2:
        raise ArityError(f"need at least 2 terms, got {len(ratios)}")
    if q <= 1:
        raise DivergentTailError(f"tail ratio must exceed 1, got {q}")
    if cfg is None:
        return _extrapolate(ratios, q)
    with cfg.arith():
        return _extrapolate(ratios, q)


def _extrapolate(ratios: Sequence[Number], q: Number) -> LimitEstimate:
    step = ratios[-1] - ratios[-2]
    return LimitEstimate(ratios[-1] + step / (q - 1), abs(step) / (q - 1), len(ratios))


@dataclass(frozen=True)
class DiagnosticSequence:
    """k_j = t_j/s_j and l_j = k_j - sqrt 2 for the Pell solutions."""

    k: Tuple[Number, ...]
    l: Tuple[Number, ...]
    #: (l[j-1] - l[j]) / (l[j] - l[j+1]), defined for interior j
    l_ratios: Tuple[Number, ...]


def diagnostics(count: int, cfg: PrecisionConfig) -> DiagnosticSequence:
    if count < 2:
        raise ArityError(f"need at least 2 terms, got {count}")
    root2 = sqrt_decimal(2, cfg)
    with cfg.arith():
        k = [cfg.num(sol.t) / cfg.num(sol.s) for sol in solutions(count)]
        l = [x - root2 for x in k]
        lr = [(l[j - 1] - l[j]) / (l[j] - l[j + 1]) for j in range(1, count - 1)]
    return DiagnosticSequence(tuple(k), tuple(l), tuple(lr))


def required_digits(depth: int, h_max: int) -> int:
    return math.ceil(DIGITS_PER_INDEX * depth * h_max) + BUDGET_GUARD_DIGITS


@dataclass(frozen=True)
class LevelVerdict:
    h: int
    last_ratio: Number
    deviation: Number
    passed: bool
    #: deviations |ratio - alpha| over the reported window, oldest first
    tail_deviations: Tuple[Number, ...]
    #: |last_ratio - same ratio at the check precision|
    precision_drift: Number

    @property
    def monotone(self) -> bool:
        d = self.tail_deviations
        return all(b < a for a, b in zip(d, d[1:]))


@dataclass(frozen=True)
class ConjectureReport:
    depth: int
    digits: int
    check_digits: int
    tol: Number
    levels: Tuple[LevelVerdict, ...] = field(default_factory=tuple)

    @property
    def all_passed(self) -> bool:
        return all(v.passed for v in self.levels)


def square_triangular_base(depth: int) -> List[int]:
    return [(sol.s // 2) ** 2 for sol in solutions(depth)]


def verify_conjecture(
    h_max: int,
    depth: int,
    cfg: PrecisionConfig,
    tol: Number,
    window: int = 10,
) -> ConjectureReport:
    """Measure how close each level's last successive ratio is to alpha.

    The cascade of the first ``depth`` square-triangular numbers is built
    twice, at ``cfg.digits`` and with extra guard digits. Any reported
    deviation the two runs do not agree on to 1% raises PrecisionError
    rather than producing a verdict. This is evidence, not proof.
    """
    if h_max < 1:
        raise DomainError(f"h_max must be positive, got {h_max}")
    if depth < 2 * h_max + 3:
        raise ArityError(f"depth must be at least {2 * h_max + 3}, got {depth}")
    if cfg.float_mode:
        raise PrecisionError("conjecture checks need decimal arithmetic")
    need = required_digits(depth, h_max)
    if cfg.digits < need:
        raise PrecisionError(
            f"depth {depth} with {h_max} levels needs {need} digits, have {cfg.digits}"
        )
    check = cfg.with_digits(cfg.digits + max(20, cfg.digits // 4))
    base = square_triangular_base(depth)
    lo = build_cascade(base, h_max, cfg)
    hi = build_cascade(base, h_max, check)
    al = alpha(cfg)
    verdicts = []
    with check.arith():
        for h in range(1, h_max + 1):
            if h > lo.h_max or len(lo.level(h)) < 2:
                raise PrecisionError(f"level {h} degenerated at {cfg.digits} digits")
            r_lo = lo.ratios(h)
            r_hi = hi.ratios(h)
            dev_lo = [abs(r - al) for r in r_lo][-window:]
            dev_hi = [abs(r - al) for r in r_hi][-window:]
            for a, b in zip(dev_lo, dev_hi):
                if abs(a - b) > b / 100:
                    raise PrecisionError(
                        f"level {h}: deviation {a:.3e} not stable at {cfg.digits} digits"
                    )
            drift = abs(r_lo[-1] - r_hi[-1])
            dev = dev_lo[-1]
            verdicts.append(
                LevelVerdict(h, r_lo[-1], dev, bool(dev < tol), tuple(dev_lo), drift)
            )
    return ConjectureReport(depth, cfg.digits, check.digits, tol, tuple(verdicts))


def deviations_csv(table: CascadeTable) -> str:
    """Rows ``h,j,ratio,deviation``; j indexes the later entry of each pair."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["h", "j", "ratio", "deviation"])
    for h in range(1, table.h_max + 1):
        first = table.first_index(h)
        for i, (r, d) in enumerate(zip(table.ratios(h), table.deviations(h))):
            w.writerow([h, first + i + 1, to_decimal_string(r), to_decimal_string(d)])
    return buf.getvalue()


def deviation_summary(table: CascadeTable) -> Dict[int, Number]:
    """|last successive ratio - alpha| for each level with at least 2 terms."""
    return {
        h: table.deviations(h)[-1]
        for h in range(1, table.h_max + 1)
        if len(table.level(h)) >= 2
    }
