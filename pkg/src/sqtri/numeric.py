"""Exact integer helpers and the two arithmetic backends.

Exact quantities are plain Python ``int``. Approximate quantities are
``decimal.Decimal`` evaluated in a :class:`PrecisionConfig` context
(round-half-even), or native binary64 ``float`` when the config is in
float mode.
"""

from __future__ import annotations

import contextlib
import decimal
import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Iterator, Optional, Tuple, Union

from sqtri.errors import DomainError

Number = Union[Decimal, float]

MIN_DIGITS = 10
#: Significant decimal digits a binary64 value can carry reliably.
BINARY64_DIGITS = 15
BINARY64_UNIT_ROUNDOFF = 2.0 ** -53


def isqrt(x: int) -> int:
    """Floor of the square root of a non-negative integer.

    Newton iteration on integers, started above the root so the iterates
    decrease monotonically; the first non-decreasing step marks the floor.

    >>> isqrt(48024900)
    6930
    >>> isqrt(2)
    1
    """
    x = int(x)
    if x < 0:
        raise DomainError(f"isqrt of negative number {x}")
    if x < 2:
        return x
    # 2**ceil(bits/2) >= sqrt(x)
    r = 1 << ((x.bit_length() + 1) // 2)
    while True:
        y = (r + x // r) >> 1
        if y >= r:
            return r
        r = y


def is_perfect_square(x: int) -> Tuple[bool, Optional[int]]:
    """Return ``(True, root)`` when ``x`` is a square, else ``(False, None)``."""
    if x < 0:
        return False, None
    r = isqrt(x)
    if r * r == x:
        return True, r
    return False, None


def triangular(m: int) -> int:
    """The m-th triangular number m(m+1)/2."""
    if m < 0:
        raise DomainError(f"triangular index must be non-negative, got {m}")
    return m * (m + 1) // 2


def triangular_index(c: int) -> Optional[int]:
    """Return m with m(m+1)/2 == c, or None when c is not triangular.

    Solves m**2 + m - 2c = 0; the discriminant 1 + 8c must be a perfect
    square for an integral positive root.
    """
    if c < 0:
        return None
    ok, root = is_perfect_square(8 * c + 1)
    if not ok:
        return None
    return (root - 1) // 2


def is_square_triangular(a: int) -> bool:
    return is_perfect_square(a)[0] and triangular_index(a) is not None


@dataclass(frozen=True)
class PrecisionConfig:
    """Selects the arithmetic backend for approximate values.

    Decimal mode (the default) carries ``digits`` significant digits with
    round-half-even. Float mode uses IEEE binary64 and has no ``digits``.
    """

    digits: Optional[int] = 50
    float_mode: bool = False

    def __post_init__(self) -> None:
        if self.float_mode:
            if self.digits is not None:
                raise DomainError("float_mode and digits are mutually exclusive")
            return
        if self.digits is None or int(self.digits) != self.digits:
            raise DomainError(f"digits must be an integer, got {self.digits!r}")
        if self.digits < MIN_DIGITS:
            raise DomainError(
                f"at least {MIN_DIGITS} digits required, got {self.digits}"
            )

    @classmethod
    def binary64(cls) -> "PrecisionConfig":
        return cls(digits=None, float_mode=True)

    @property
    def effective_digits(self) -> int:
        return BINARY64_DIGITS if self.float_mode else self.digits

    @property
    def unit_roundoff(self) -> Number:
        """Maximum relative error of one rounded operation."""
        if self.float_mode:
            return BINARY64_UNIT_ROUNDOFF
        return Decimal(5).scaleb(-self.digits)

    def context(self) -> decimal.Context:
        if self.float_mode:
            raise DomainError("float-mode configs have no decimal context")
        return decimal.Context(
            prec=self.digits,
            rounding=decimal.ROUND_HALF_EVEN,
            Emax=decimal.MAX_EMAX,
            Emin=decimal.MIN_EMIN,
            traps=[decimal.DivisionByZero, decimal.InvalidOperation, decimal.Overflow],
        )

    @contextlib.contextmanager
    def arith(self) -> Iterator[None]:
        """Activate this backend for the operators used inside the block."""
        if self.float_mode:
            yield
        else:
            with decimal.localcontext(self.context()):
                yield

    def num(self, x: Union[int, str, Decimal, float]) -> Number:
        """Convert ``x`` into a backend number, rounding once if needed."""
        if self.float_mode:
            return float(x)
        return self.context().create_decimal(x)

    def with_digits(self, digits: int) -> "PrecisionConfig":
        return PrecisionConfig(digits=digits)


def sqrt_decimal(x: int, cfg: PrecisionConfig) -> Number:
    """Square root of a non-negative integer, correctly rounded in ``cfg``."""
    if x < 0:
        raise DomainError(f"square root of negative number {x}")
    if cfg.float_mode:
        return math.sqrt(x)
    ctx = cfg.context()
    return ctx.create_decimal(x).sqrt(ctx)


def round_half_away(x: Number) -> int:
    """Nearest integer, ties away from zero."""
    d = x if isinstance(x, Decimal) else Decimal(x)
    return int(d.to_integral_value(rounding=decimal.ROUND_HALF_UP))


def display(x: Union[Number, int], places: int) -> str:
    """Fixed-point rendering with ``places`` decimals, half-even.

    Floats are converted exactly before quantizing, so the text shows the
    binary64 value itself rather than its shortest repr.
    """
    d = x if isinstance(x, Decimal) else Decimal(x)
    q = Decimal(1).scaleb(-places)
    ctx = decimal.Context(prec=max(d.adjusted() + places + 5, places + 5))
    return format(d.quantize(q, rounding=decimal.ROUND_HALF_EVEN, context=ctx), "f")


def quantize(x: Number, places: int, cfg: PrecisionConfig) -> Number:
    """Round ``x`` to ``places`` decimals and return it as a backend number."""
    return cfg.num(display(x, places))


def to_decimal_string(x: Union[int, Number]) -> str:
    """Base-10 text for an exact integer or a backend number."""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def parse_integer(text: str) -> int:
    """Parse base-10 integer text; also accepts exact forms such as ``1e14``."""
    text = text.strip().replace("_", "")
    try:
        return int(text)
    except ValueError:
        pass
    try:
        d = Decimal(text)
    except decimal.InvalidOperation:
        raise DomainError(f"not an integer: {text!r}") from None
    if not d.is_finite() or d != d.to_integral_value():
        raise DomainError(f"not an integer: {text!r}")
    return int(d)
