"""Extrapolating the next square-triangular number from a ratio table.

From consecutive known terms a_1..a_n:

    r_k  = a_(k+1) / a_k              ratios
    b_k  = r_(k-1) - r_k              differences of ratios
    q    = b_(n-2) / b_(n-1)          latest ratio of differences

One step divides the latest b by q, subtracts that from the latest ratio
and multiplies by a_n. The product is rounded and checked exactly; a
verified value can seed the next step (forward completion).
"""

from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

from sqtri.errors import ArityError, DomainError, PrecisionError
from sqtri.figurate import square_triangular
from sqtri.numeric import (
    Number,
    PrecisionConfig,
    display,
    is_square_triangular,
    quantize,
    round_half_away,
    to_decimal_string,
)

# Terms from a_1 needed before the first verified prediction.
MIN_KNOWN = 4


class CompletionMode(str, enum.Enum):
    BACKWARD = "backward"
    FORWARD = "forward"


@dataclass(frozen=True)
class DisplayPrecision:
    """Decimal places shown for each column of the ratio table."""

    ratio: int = 11
    difference: int = 13
    difference_ratio: int = 5
    value: int = 5


#: Places used by the hand-worked tables the predictor was modelled on.
TABLE_DISPLAY = DisplayPrecision()
NARROW_DISPLAY = DisplayPrecision(ratio=5, difference=5, difference_ratio=5, value=5)


@dataclass(frozen=True)
class PredictionStep:
    known_count: int
    last_known: int
    last_ratio: Number
    b_last: Number
    b_ratio: Number
    divided: Number
    new_ratio: Number
    predicted_real: Number
    rounded: int
    verified: bool
    residual: Number
    #: first-order bound on the arithmetic error in predicted_real
    error_bound: Number
    b_ratio_overridden: bool = False
    transcribed: bool = False
    mode: CompletionMode = CompletionMode.BACKWARD

    @property
    def reliable(self) -> bool:
        """Verified, and rounding error could not have moved the integer."""
        return self.verified and self.residual + self.error_bound < 0.5

    def trace_lines(self, places: DisplayPrecision = TABLE_DISPLAY) -> List[str]:
        p = places
        src = "given" if self.b_ratio_overridden else "latest"
        return [
            f"divide b = {display(self.b_last, p.difference)} by {src} b-ratio "
            f"{display(self.b_ratio, p.difference_ratio)} -> {display(self.divided, p.difference)}",
            f"subtract from ratio {display(self.last_ratio, p.ratio)} -> "
            f"{display(self.new_ratio, p.ratio)}",
            f"multiply by {self.last_known} -> {display(self.predicted_real, p.value)}",
            f"round -> {self.rounded} (residual {display(self.residual, p.value)}, "
            f"error bound {float(self.error_bound):.3g}) "
            f"{'verified' if self.verified else 'NOT square-triangular'}"
            f"{'' if self.reliable or not self.verified else ', unreliable'}",
        ]

    def to_dict(self) -> dict:
        d = asdict(self)
        for k, v in d.items():
            if isinstance(v, enum.Enum):
                d[k] = v.value
            elif not isinstance(v, (bool, int)):
                d[k] = to_decimal_string(v)
        d["reliable"] = self.reliable
        return d


def predict_next(
    known: Sequence[int],
    cfg: PrecisionConfig,
    b_ratio: Optional[Number] = None,
    transcribe: Optional[DisplayPrecision] = None,
) -> PredictionStep:
    """One backward-completion step from consecutive known terms.

    ``b_ratio`` replaces the latest ratio of differences (for instance by
    the level-1 limit). ``transcribe`` rounds every operand to the given
    display places before use, reproducing a computation carried out by
    hand from a printed table.
    """
    if len(known) < MIN_KNOWN:
        raise ArityError(f"need at least {MIN_KNOWN} known terms, got {len(known)}")
    if any(b <= a for a, b in zip(known, known[1:])) or known[0] <= 0:
        raise DomainError("known terms must be positive and increasing")
    u = cfg.unit_roundoff
    half = _half_units(transcribe, cfg)

    def shown(x, places):
        return x if transcribe is None else quantize(x, places, cfg)

    with cfg.arith():
        vals = [cfg.num(a) for a in known]
        conv = [0 if v == a else u for v, a in zip(vals, known)]
        r = [vals[k + 1] / vals[k] for k in range(len(vals) - 1)]
        er = [abs(r[k]) * (conv[k] + conv[k + 1] + u) for k in range(len(r))]
        b = [r[k - 1] - r[k] for k in range(1, len(r))]
        eb = [er[k - 1] + er[k] + u * abs(b[k - 1]) for k in range(1, len(r))]
        if b[-1] == 0 or b[-2] == 0:
            raise PrecisionError("ratio differences cancel to zero at this precision")

        b_last, e_b = shown(b[-1], _p(transcribe).difference), eb[-1] + half["difference"]
        rel_b = e_b / abs(b_last)
        if b_ratio is None:
            q = shown(b[-2] / b[-1], _p(transcribe).difference_ratio)
            rel_q = eb[-2] / abs(b[-2]) + eb[-1] / abs(b[-1]) + u
            rel_q += half["difference_ratio"] / abs(q)
        else:
            q = cfg.num(b_ratio)
            rel_q = 0
        divided = shown(b_last / q, _p(transcribe).difference)
        e_div = abs(divided) * (rel_b + rel_q + u) + half["difference"]
        last_ratio = shown(r[-1], _p(transcribe).ratio)
        e_last = er[-1] + half["ratio"]
        new_ratio = shown(last_ratio - divided, _p(transcribe).ratio)
        e_new = e_last + e_div + u * abs(new_ratio) + half["ratio"]
        predicted = new_ratio * vals[-1]
        e_pred = abs(vals[-1]) * e_new + abs(predicted) * (u + conv[-1])

        rounded = round_half_away(predicted)
        residual = abs(predicted - rounded)
    return PredictionStep(
        known_count=len(known),
        last_known=known[-1],
        last_ratio=last_ratio,
        b_last=b_last,
        b_ratio=q,
        divided=divided,
        new_ratio=new_ratio,
        predicted_real=predicted,
        rounded=rounded,
        verified=is_square_triangular(rounded),
        residual=residual,
        error_bound=e_pred,
        b_ratio_overridden=b_ratio is not None,
        transcribed=transcribe is not None,
    )


def _p(transcribe: Optional[DisplayPrecision]) -> DisplayPrecision:
    return transcribe or TABLE_DISPLAY


def _half_units(transcribe: Optional[DisplayPrecision], cfg: PrecisionConfig) -> dict:
    """Half a unit in the last displayed place, per column (0 if exact)."""
    names = ("ratio", "difference", "difference_ratio")
    if transcribe is None:
        return {n: 0 for n in names}
    return {n: cfg.num(f"5e-{getattr(transcribe, n) + 1}") for n in names}


def iterate_predictions(
    seed: Sequence[int],
    steps: int,
    cfg: PrecisionConfig,
    b_ratio: Optional[Number] = None,
    transcribe: Optional[DisplayPrecision] = None,
) -> List[PredictionStep]:
    """Predict, verify and append, ``steps`` times.

    Each verified value joins the known terms exactly. The first step that
    fails verification is returned as the last element and ends the run.
    """
    if steps < 0:
        raise DomainError(f"steps must be non-negative, got {steps}")
    known = list(seed)
    out: List[PredictionStep] = []
    for _ in range(steps):
        step = predict_next(known, cfg, b_ratio=b_ratio, transcribe=transcribe)
        out.append(step)
        if not step.verified:
            break
        known.append(step.rounded)
    return out


@dataclass(frozen=True)
class TableRow:
    a: Number
    ratio: Optional[Number] = None
    difference: Optional[Number] = None
    difference_ratio: Optional[Number] = None
    mode: CompletionMode = CompletionMode.FORWARD


def ratio_table(
    known: Sequence[int],
    cfg: PrecisionConfig,
    pending: Optional[PredictionStep] = None,
) -> List[TableRow]:
    """Rows a_n, a_(n+1)/a_n, b_n, b_(n-1)/b_n for the known terms.

    Rows derived from known integers are forward-completed. With a
    ``pending`` prediction the last known row is completed backward from
    it and a final row carries the unrounded predicted value.
    """
    with cfg.arith():
        vals = [cfg.num(a) for a in known]
        r = [vals[k + 1] / vals[k] for k in range(len(vals) - 1)]
        b = [None] + [r[k - 1] - r[k] for k in range(1, len(r))]
        rows = []
        for k, v in enumerate(vals):
            ratio = r[k] if k < len(r) else None
            diff = b[k] if 0 < k < len(r) else None
            q = b[k - 1] / b[k] if 1 < k < len(r) else None
            rows.append(TableRow(v, ratio, diff, q))
    if pending is not None:
        rows[-1] = TableRow(
            rows[-1].a,
            pending.new_ratio,
            pending.divided,
            pending.b_ratio,
            CompletionMode.BACKWARD,
        )
        rows.append(TableRow(pending.predicted_real, mode=CompletionMode.BACKWARD))
    return rows


@dataclass(frozen=True)
class FloatModeReport:
    j_target: int
    true_value: int
    float_step: PredictionStep
    decimal_step: PredictionStep
    digits: int = field(default=50)

    @property
    def float_differs(self) -> bool:
        return self.float_step.rounded != self.true_value

    @property
    def float_reliable(self) -> bool:
        return self.float_step.reliable and not self.float_differs

    @property
    def decimal_reliable(self) -> bool:
        return self.decimal_step.reliable and self.decimal_step.rounded == self.true_value

    def lines(self) -> List[str]:
        out = [f"target a_{self.j_target} = {self.true_value}"]
        for name, step, ok in (
            ("binary64", self.float_step, self.float_reliable),
            (f"decimal({self.digits})", self.decimal_step, self.decimal_reliable),
        ):
            out.append(
                f"{name}: predicted {display(step.predicted_real, 5)} -> {step.rounded}, "
                f"error bound {float(step.error_bound):.3g}, "
                f"{'reliable' if ok else 'UNRELIABLE'}"
            )
        return out

    def to_json(self) -> str:
        return json.dumps(
            {
                "j_target": self.j_target,
                "true_value": self.true_value,
                "float_differs": self.float_differs,
                "float_reliable": self.float_reliable,
                "decimal_reliable": self.decimal_reliable,
                "float_step": self.float_step.to_dict(),
                "decimal_step": self.decimal_step.to_dict(),
            },
            indent=2,
        )


def float_mode_demo(j_target: int, digits: int = 50) -> FloatModeReport:
    """Predict a_j from a_1..a_(j-1) in binary64 and in decimal arithmetic."""
    if j_target < 10:
        raise DomainError(f"j_target must be at least 10, got {j_target}")
    known = [square_triangular(j).a for j in range(1, j_target)]
    true_value = square_triangular(j_target).a
    fstep = predict_next(known, PrecisionConfig.binary64())
    dstep = predict_next(known, PrecisionConfig(digits=digits))
    return FloatModeReport(j_target, true_value, fstep, dstep, digits)
