"""Closed-form rate upper bounds for codes with (r, t)-availability.

Rational formulas are evaluated exactly with :class:`fractions.Fraction`;
formulas involving logarithms or roots use mpmath at ``PRECISION_BITS``
bits of working precision. Crossing detection compares values exactly
when both sides are rational.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

import mpmath

from .errors import InvalidParameter, MissingParameter, UnknownName

PRECISION_BITS = 128

Number = Union[Fraction, mpmath.mpf]


@dataclass(frozen=True)
class BoundParams:
    r: int | None = None
    t: int | None = None
    n: int | None = None

    def __post_init__(self):
        if self.r is not None and self.r < 1:
            raise InvalidParameter(f"r must be >= 1, got {self.r}")
        if self.t is not None and self.t < 1:
            raise InvalidParameter(f"t must be >= 1, got {self.t}")
        if self.n is not None and self.r is not None and self.n < self.r + 1:
            raise InvalidParameter(f"n = {self.n} must be >= r + 1 = {self.r + 1}")

    def require(self, *names: str) -> tuple[int, ...]:
        vals = []
        for nm in names:
            v = getattr(self, nm)
            if v is None:
                raise MissingParameter(f"parameter {nm!r} is required")
            vals.append(v)
        return tuple(vals)

    def with_value(self, variable: str, value: int) -> BoundParams:
        return replace(self, **{variable: value})


@dataclass(frozen=True)
class BoundValue:
    name: str
    value: Number
    params: BoundParams

    @property
    def exact(self) -> bool:
        return isinstance(self.value, Fraction)

    def __float__(self) -> float:
        return float(self.value)

    def decimal(self, digits: int = 12) -> str:
        return format_decimal(self.value, digits)

    def to_json(self) -> dict:
        v = self.value
        shown = f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else mpmath.nstr(v, 30)
        return {"name": self.name, "value": shown, "exact": self.exact,
                "params": {k: getattr(self.params, k) for k in ("r", "t", "n") if getattr(self.params, k) is not None}}


def format_decimal(v: Number, digits: int = 12) -> str:
    with mpmath.workprec(PRECISION_BITS):
        x = mpmath.mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else mpmath.mpf(v)
        return mpmath.nstr(x, digits, strip_zeros=True)


def _mp(v: Number) -> mpmath.mpf:
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def binary_entropy(x: Number) -> mpmath.mpf:
    x = _mp(x)
    if x == 0 or x == 1:
        return mpmath.mpf(0)
    return -x * mpmath.log(x, 2) - (1 - x) * mpmath.log(1 - x, 2)


def _exact_log2(m: int) -> Number:
    """log2(m), exact when m is a power of two."""
    if m > 0 and m & (m - 1) == 0:
        return Fraction(m.bit_length() - 1)
    return mpmath.log(m, 2)


def _scale(v: Number, f: Fraction) -> Number:
    return v * f if isinstance(v, Fraction) else v * _mp(f)


# -- registry ----------------------------------------------------------------


def tbf1(p: BoundParams) -> Number:
    r, t = p.require("r", "t")
    prod = Fraction(1)
    for j in range(1, t + 1):
        prod *= 1 + Fraction(1, j * r)
    return 1 / prod


def _integer_root(m: int, r: int) -> int | None:
    """The integer x with x**r == m, if there is one."""
    x = round(m ** (1.0 / r))
    for y in (x - 1, x, x + 1):
        if y > 0 and y ** r == m:
            return y
    return None


def tbf2(p: BoundParams) -> Number:
    r, t = p.require("r", "t")
    root = _integer_root(t + 1, r)
    if root is not None:
        return Fraction(1, root)
    return mpmath.power(t + 1, -mpmath.mpf(1) / r)


def wang_r2(p: BoundParams) -> Number:
    r, n = p.require("r", "n")
    return Fraction(2 * r - 1, 2 * r + 1) + Fraction(1, n * (2 * r + 1))


def strong_local(p: BoundParams) -> Number:
    r, t = p.require("r", "t")
    return Fraction(r, r + t)


def prakash_t2(p: BoundParams) -> Number:
    (r,) = p.require("r")
    return Fraction(r, r + 2)


def thm1(p: BoundParams) -> Number:
    (r,) = p.require("r")
    return Fraction(r, r + 2)


def thm2(p: BoundParams) -> Number:
    return Fraction(3, 7)


def thm3_entropy(p: BoundParams) -> Number:
    (t,) = p.require("t")
    return binary_entropy(Fraction(1, t + 1))


def thm4_simplex(p: BoundParams) -> Number:
    (n,) = p.require("n")
    return _exact_log2(n + 1) / n


def cor3(p: BoundParams) -> Number:
    (r,) = p.require("r")
    return _mp(Fraction(r - 2, r + 1)) + _mp(Fraction(3, r + 1)) * binary_entropy(Fraction(1, r + 2))


def cor4(p: BoundParams) -> Number:
    (r,) = p.require("r")
    if ((r + 1) * (2 * r + 3)) % 3:
        raise InvalidParameter(f"cor4 needs 3 | (r+1)(2r+3); r = {r}")
    lg = _exact_log2(2 * r + 4)
    tail = _scale(lg, Fraction(3, (r + 1) * (2 * r + 3)))
    head = 1 - Fraction(3, r + 1)
    return head + tail if isinstance(tail, Fraction) else _mp(head) + tail


def bk1(p: BoundParams) -> Number:
    r, t = p.require("r", "t")
    if t < 2:
        raise InvalidParameter("bk1 needs t >= 2")
    prod = Fraction(1)
    for j in range(1, r + 2):
        prod *= 1 + Fraction(1, j * (t - 1))
    return 1 - Fraction(t, r + 1) + Fraction(t, r + 1) / prod


@dataclass(frozen=True)
class BK2Terms:
    m: int
    L1_prime: int
    L2: int
    L1: int
    value: Fraction


def bk2_terms(p: BoundParams) -> BK2Terms:
    r, n = p.require("r", "n")
    if (3 * n) % (r + 1):
        raise InvalidParameter(f"bk2 needs (r+1) | 3n; r = {r}, n = {n}")
    m = 3 * n // (r + 1)
    L1p = math.ceil(Fraction((2 * r - 1) * m, 3 * (r + 2)) - Fraction(1, r + 1) - 1)
    L2 = (m - 3 - L1p) // 2
    L1 = m - 3 - 2 * L2
    value = 1 - Fraction(3 * (1 + L1 + L2), (r + 1) * (3 + L1 + 2 * L2))
    return BK2Terms(m, L1p, L2, L1, value)


def bk2(p: BoundParams) -> Number:
    return bk2_terms(p).value


def tamo_derived_23(p: BoundParams) -> Number:
    """8/15 + 1/n, the distance-derived bound specialised to (r, t) = (2, 3)."""
    (n,) = p.require("n")
    return Fraction(8, 15) + Fraction(1, n)


def wang_derived_23(p: BoundParams) -> Number:
    """4/7 + 2/(7n), the distance-derived bound specialised to (r, t) = (2, 3)."""
    (n,) = p.require("n")
    return Fraction(4, 7) + Fraction(2, 7 * n)


REGISTRY: dict[str, Callable[[BoundParams], Number]] = {
    "tbf1": tbf1,
    "tbf2": tbf2,
    "wang_r2": wang_r2,
    "strong_local": strong_local,
    "prakash_t2": prakash_t2,
    "thm1": thm1,
    "thm2": thm2,
    "thm3_entropy": thm3_entropy,
    "thm4_simplex": thm4_simplex,
    "cor3": cor3,
    "cor4": cor4,
    "bk1": bk1,
    "bk2": bk2,
    "tamo_derived_23": tamo_derived_23,
    "wang_derived_23": wang_derived_23,
}

DESCRIPTIONS = {
    "tbf1": "1 / prod_{j=1..t} (1 + 1/(j r))",
    "tbf2": "(t+1)^(-1/r)",
    "wang_r2": "(2r-1)/(2r+1) + 1/(n(2r+1)), t = 2",
    "strong_local": "r / (r + t)",
    "prakash_t2": "r / (r + 2), sequential recovery of 2 erasures",
    "thm1": "r / (r + 2), (r,2) exact covering",
    "thm2": "3/7, (2,3) exact covering with 7 | n",
    "thm3_entropy": "H2(1/(t+1)), (2,t) exact covering",
    "thm4_simplex": "log2(n+1)/n, (2,(n-1)/2) exact covering",
    "cor3": "(r-2)/(r+1) + 3/(r+1) H2(1/(r+2)), (r,3) exact covering",
    "cor4": "1 - 3/(r+1) + 3 log2(2r+4)/((r+1)(2r+3)), length (r+1)(2r+3)/3",
    "bk1": "1 - t/(r+1) + t/(r+1) / prod_{j=1..r+1} (1 + 1/(j(t-1)))",
    "bk2": "1 - 3(1+L1+L2)/((r+1)(3+L1+2L2)), m = 3n/(r+1)",
    "tamo_derived_23": "8/15 + 1/n",
    "wang_derived_23": "4/7 + 2/(7n)",
}


def evaluate_bound(name: str, p: BoundParams) -> BoundValue:
    try:
        fn = REGISTRY[name]
    except KeyError:
        raise UnknownName(f"unknown bound {name!r}; known: {', '.join(REGISTRY)}") from None
    with mpmath.workprec(PRECISION_BITS):
        value = fn(p)
        if not isinstance(value, Fraction):
            value = +mpmath.mpf(value)
    return BoundValue(name, value, p)


def less_than(a: Number, b: Number) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a < b
    with mpmath.workprec(PRECISION_BITS):
        return _mp(a) < _mp(b)


# -- sweeps ------------------------------------------------------------------


@dataclass(frozen=True)
class BoundTable:
    variable: str
    names: tuple[str, ...]
    rows: tuple[tuple[int, dict[str, BoundValue]], ...] = field(default=())

    def to_csv(self, digits: int = 12) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["param", *self.names])
        for val, vals in self.rows:
            w.writerow([val, *(vals[nm].decimal(digits) for nm in self.names)])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "variable": self.variable,
            "names": list(self.names),
            "rows": [
                {"param": val, "values": {nm: vals[nm].to_json()["value"] for nm in self.names}}
                for val, vals in self.rows
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _check_variable(variable: str) -> None:
    if variable not in ("r", "t", "n"):
        raise InvalidParameter(f"sweep variable must be r, t or n, got {variable!r}")


def sweep(names: Sequence[str], variable: str, values: Iterable[int], fixed: BoundParams = BoundParams()) -> BoundTable:
    _check_variable(variable)
    vals = sorted(set(values))
    rows = []
    for v in vals:
        p = fixed.with_value(variable, v)
        rows.append((v, {nm: evaluate_bound(nm, p) for nm in names}))
    return BoundTable(variable, tuple(names), tuple(rows))


def find_crossing(a: str, b: str, variable: str, values: Iterable[int],
                  fixed: BoundParams = BoundParams()) -> int | None:
    """Smallest value of the swept parameter at which bound a is strictly below bound b."""
    _check_variable(variable)
    for v in sorted(set(values)):
        p = fixed.with_value(variable, v)
        if less_than(evaluate_bound(a, p).value, evaluate_bound(b, p).value):
            return v
    return None
