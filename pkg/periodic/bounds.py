"""
Uniform period-bound constants.

  c1(d, 2) = 2 d^4,   c1(d, n) = c1(d, n-1) * 2 * d^(4 c1(d, n-1))
  c(d, 1)  = 1,       c(d, n)  = max(c(d, n-1)^(n-1), d^c1(d, n) / 2)

Values stay exact while they fit under the bit threshold; beyond it they are
kept as expression trees with a log2 estimate, and a log2(log2) estimate for
towers whose log2 no longer fits a float. Halving an odd value (d odd) gives
an exact half-integer; `parity` and `is_integral` report which case a tree is in.
"""

import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from errors import InputError
from settings import BOUND_CONFIG

Number = Union[int, Fraction]

LIT, ADD, MUL, POW, MAX, HALF = "lit", "add", "mul", "pow", "max", "half"


def _log2(value: Number) -> float:
    if value <= 0:
        return -math.inf
    if isinstance(value, Fraction):
        return _log2(value.numerator) - _log2(value.denominator)
    bits = value.bit_length()
    if bits <= 1000:
        return math.log2(value)
    return bits - 1000 + math.log2(value >> (bits - 1000))


@dataclass(frozen=True)
class ConstantExpr:
    op: str
    args: Tuple["ConstantExpr", ...] = ()
    value: Optional[Number] = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def lit(cls, value: Number) -> "ConstantExpr":
        return cls(LIT, (), value)

    @staticmethod
    def _fits(log2_estimate: float) -> bool:
        return log2_estimate + 1 <= BOUND_CONFIG["exact_bits_threshold"]

    @classmethod
    def add(cls, a: "ConstantExpr", b: "ConstantExpr") -> "ConstantExpr":
        if a.is_exact and b.is_exact:
            return cls.lit(a.value + b.value)
        return cls(ADD, (a, b))

    @classmethod
    def mul(cls, a: "ConstantExpr", b: "ConstantExpr") -> "ConstantExpr":
        if a.is_exact and b.is_exact and cls._fits(a.log2 + b.log2):
            return cls.lit(a.value * b.value)
        return cls(MUL, (a, b))

    @classmethod
    def power(cls, base: "ConstantExpr", exponent: "ConstantExpr") -> "ConstantExpr":
        if base.is_exact and exponent.is_exact and isinstance(exponent.value, int) and exponent.value >= 0:
            e = exponent.value
            if base.value in (0, 1) or e == 0:
                return cls.lit(base.value ** e)
            # exponents past 64 bits cannot fit the threshold for any base >= 2
            if e.bit_length() <= 64 and cls._fits(abs(base.log2) * e):
                return cls.lit(base.value ** e)
        return cls(POW, (base, exponent))

    @classmethod
    def maximum(cls, a: "ConstantExpr", b: "ConstantExpr") -> "ConstantExpr":
        if a.is_exact and b.is_exact:
            return cls.lit(max(a.value, b.value))
        return cls(MAX, (a, b))

    @classmethod
    def half(cls, a: "ConstantExpr") -> "ConstantExpr":
        if a.is_exact:
            halved = Fraction(a.value, 2)
            return cls.lit(halved.numerator if halved.denominator == 1 else halved)
        return cls(HALF, (a,))

    # -- queries ------------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.op == LIT

    @property
    def kind(self) -> str:
        return "exact" if self.is_exact else "symbolic"

    @property
    def log2(self) -> float:
        if self.op == LIT:
            return _log2(self.value)
        values = [a.log2 for a in self.args]
        if self.op == MUL:
            return values[0] + values[1]
        if self.op == ADD:
            hi, lo = max(values), min(values)
            if hi == math.inf or lo == -math.inf:
                return hi
            return hi + math.log2(1 + 2 ** (lo - hi))
        if self.op == MAX:
            return max(values)
        if self.op == HALF:
            return values[0] - 1
        # POW: log2(base) * exponent
        try:
            return values[0] * 2 ** values[1]
        except OverflowError:
            return math.inf

    @property
    def log2_log2(self) -> float:
        """Estimate of log2(log2(value)), finite for towers whose log2 is not."""
        if self.op == POW:
            base_log2 = self.args[0].log2
            if base_log2 <= 0:
                return -math.inf
            return math.log2(base_log2) + self.args[1].log2
        if self.op in (ADD, MUL, MAX):
            return max(a.log2_log2 for a in self.args)
        if self.op == HALF:
            return self.args[0].log2_log2
        estimate = self.log2
        return math.log2(estimate) if estimate > 0 else -math.inf

    @property
    def parity(self) -> Optional[int]:
        """0 or 1 when the value is provably an even or odd integer, else None."""
        if self.op == LIT:
            if isinstance(self.value, Fraction) and self.value.denominator != 1:
                return None
            return int(self.value) % 2
        if self.op == HALF:
            return None
        parities = [a.parity for a in self.args]
        if self.op == POW:
            if self.args[1].log2 < 0:
                return None
            return parities[0]
        if self.op == MUL:
            if 0 in parities:
                return 0
            return 1 if parities == [1, 1] else None
        if None in parities:
            return None
        if self.op == ADD:
            return (parities[0] + parities[1]) % 2
        # MAX of two values with the same parity
        return parities[0] if parities[0] == parities[1] else None

    @property
    def is_integral(self) -> bool:
        if self.op == LIT:
            return not isinstance(self.value, Fraction) or self.value.denominator == 1
        if self.op == HALF:
            return self.args[0].parity == 0
        if self.op == POW:
            return self.args[0].is_integral
        return all(a.is_integral for a in self.args)

    def evaluate(self) -> Number:
        """Exact value; only sensible for small trees."""
        if self.op == LIT:
            return self.value
        values = [a.evaluate() for a in self.args]
        if self.op == ADD:
            return values[0] + values[1]
        if self.op == MUL:
            return values[0] * values[1]
        if self.op == POW:
            return values[0] ** values[1]
        if self.op == MAX:
            return max(values)
        halved = Fraction(values[0], 2)
        return halved.numerator if halved.denominator == 1 else halved

    def __str__(self) -> str:
        if self.op == LIT:
            return str(self.value)
        a = [str(x) if x.op == LIT else f"({x})" for x in self.args]
        if self.op == ADD:
            return f"{a[0]} + {a[1]}"
        if self.op == MUL:
            return f"{a[0]}*{a[1]}"
        if self.op == POW:
            return f"{a[0]}^{a[1]}"
        if self.op == MAX:
            return f"max{{{self.args[0]}, {self.args[1]}}}"
        return f"{a[0]}/2"


@dataclass
class BoundResult:
    value: ConstantExpr
    trace: List[str] = dataclass_field(default_factory=list)


def _check(d: int, n: int, n_min: int):
    if d < 2 or n < n_min:
        raise InputError(f"bounds need d >= 2 and n >= {n_min}, got d={d}, n={n}")


def bound_c1(d: int, n: int) -> BoundResult:
    _check(d, n, 2)
    lit = ConstantExpr.lit
    current = ConstantExpr.mul(lit(2), ConstantExpr.power(lit(d), lit(4)))
    trace = [f"c1({d},2) = 2*{d}^4 = {current}"]
    for k in range(3, n + 1):
        exponent = ConstantExpr.mul(lit(4), current)
        current = ConstantExpr.mul(ConstantExpr.mul(current, lit(2)), ConstantExpr.power(lit(d), exponent))
        trace.append(f"c1({d},{k}) = c1({d},{k - 1})*2*{d}^(4*c1({d},{k - 1})) = {current}")
    return BoundResult(current, trace)


def bound_c(d: int, n: int) -> BoundResult:
    _check(d, n, 1)
    lit = ConstantExpr.lit
    current = lit(1)
    trace = [f"c({d},1) = 1"]
    for k in range(2, n + 1):
        c1 = bound_c1(d, k).value
        left = ConstantExpr.power(current, lit(k - 1))
        right = ConstantExpr.half(ConstantExpr.power(lit(d), c1))
        current = ConstantExpr.maximum(left, right)
        trace.append(f"c({d},{k}) = max{{c({d},{k - 1})^{k - 1}, {d}^c1({d},{k})/2}} = {current}")
    return BoundResult(current, trace)


def closed_form_c2(d: int) -> ConstantExpr:
    """d^(2 d^4) / 2."""
    lit = ConstantExpr.lit
    return ConstantExpr.half(ConstantExpr.power(lit(d), ConstantExpr.mul(lit(2), ConstantExpr.power(lit(d), lit(4)))))
