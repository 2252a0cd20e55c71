"""Pythagorean triple parametrization and the Type 1 / Type 2 checks.

Every Pythagorean triple is (delta*(m^2 - n^2), delta*2mn, delta*(m^2 + n^2))
for coprime m > n >= 1 of opposite parity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .bigmath import Natural, exact_sqrt, gcd, gcd_many, isqrt
from .errors import ConstraintError
from .repdigit import RepdigitSpec, digit_power, repdigit_value


class TriangleType(str, enum.Enum):
    T1 = "t1"  # leg d^k, hypotenuse d_{k,b}
    T2 = "t2"  # legs d^k and d_{k,b}

    @classmethod
    def parse(cls, text: str) -> "TriangleType":
        key = text.strip().lower()
        aliases = {"t1": cls.T1, "type1": cls.T1, "1": cls.T1,
                   "t2": cls.T2, "type2": cls.T2, "2": cls.T2}
        try:
            return aliases[key]
        except KeyError:
            raise ConstraintError(f"unknown triangle type {text!r} (use t1 or t2)") from None


@dataclass(frozen=True)
class TripleParams:
    delta: int
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.delta < 1:
            raise ConstraintError(f"delta must be >= 1 (got {self.delta})")
        if not self.m > self.n >= 1:
            raise ConstraintError(f"need m > n >= 1 (got m={self.m}, n={self.n})")
        if gcd(self.m, self.n) != 1:
            raise ConstraintError(f"m and n must be coprime (got m={self.m}, n={self.n})")
        if (self.m + self.n) % 2 == 0:
            raise ConstraintError(
                f"m and n must have opposite parity (got m={self.m}, n={self.n})"
            )


@dataclass(frozen=True)
class TriangleWitness:
    """A verified triangle; the digit-power side is always ``leg_a``."""

    leg_a: Natural
    leg_b: Natural
    hypotenuse: Natural
    type_tag: TriangleType
    spec: RepdigitSpec
    params: TripleParams | None = None

    def __post_init__(self) -> None:
        if self.leg_a**2 + self.leg_b**2 != self.hypotenuse**2:
            raise ConstraintError("witness sides are not a Pythagorean triple")
        power_side = digit_power(self.spec)
        rep = repdigit_value(self.spec)
        legs = {self.leg_a, self.leg_b}
        if self.type_tag is TriangleType.T1:
            ok = power_side in legs and self.hypotenuse == rep
        else:
            ok = legs == {power_side, rep}
        if not ok:
            raise ConstraintError(f"sides do not match a {self.type_tag.name} triangle for {self.spec}")

    @property
    def sides(self) -> tuple[Natural, Natural, Natural]:
        return (self.leg_a, self.leg_b, self.hypotenuse)

    def sort_key(self) -> tuple[int, int, int, str]:
        return (self.spec.b, self.spec.d, self.spec.k, self.type_tag.value)


def compose_triple(params: TripleParams) -> tuple[Natural, Natural, Natural]:
    """(delta(m^2-n^2), 2*delta*m*n, delta(m^2+n^2)); the last entry is the hypotenuse."""
    delta, m, n = params.delta, params.m, params.n
    return (delta * (m * m - n * n), delta * 2 * m * n, delta * (m * m + n * n))


def decompose_triple(a: Natural, b_side: Natural, c: Natural) -> TripleParams:
    """Recover (delta, m, n) from a Pythagorean triple with hypotenuse ``c``.

    Leg order does not matter; the odd leg of the primitive triple is found
    internally.
    """
    if min(a, b_side, c) <= 0:
        raise ConstraintError(f"degenerate triple ({a}, {b_side}, {c}): sides must be positive")
    if a * a + b_side * b_side != c * c:
        raise ConstraintError(f"({a}, {b_side}, {c}) is not a Pythagorean triple")
    delta = gcd_many(a, b_side, c)
    a1, b1, c1 = a // delta, b_side // delta, c // delta
    odd_leg = a1 if a1 % 2 else b1
    m = isqrt((c1 + odd_leg) // 2)
    n = isqrt((c1 - odd_leg) // 2)
    params = TripleParams(delta, m, n)
    x, y, z = compose_triple(params)
    if z != c or {x, y} != {a, b_side}:
        raise ArithmeticError(f"recovered {params} does not reproduce ({a}, {b_side}, {c})")
    return params


def check_type1(spec: RepdigitSpec) -> TriangleWitness | None:
    """Witness for leg d^k with hypotenuse d_{k,b}, or None."""
    hyp = repdigit_value(spec)
    leg = digit_power(spec)
    diff = hyp * hyp - leg * leg
    # a repdigit always exceeds the digit power, so the triangle is never isosceles
    assert diff > 0
    other = exact_sqrt(diff)
    if other is None:
        return None
    return TriangleWitness(leg, other, hyp, TriangleType.T1, spec,
                           decompose_triple(leg, other, hyp))


def check_type2(spec: RepdigitSpec) -> TriangleWitness | None:
    """Witness for legs d^k and d_{k,b}, or None."""
    rep = repdigit_value(spec)
    leg = digit_power(spec)
    hyp = exact_sqrt(rep * rep + leg * leg)
    if hyp is None:
        return None
    return TriangleWitness(leg, rep, hyp, TriangleType.T2, spec,
                           decompose_triple(leg, rep, hyp))


def check(spec: RepdigitSpec, kind: TriangleType) -> TriangleWitness | None:
    return check_type1(spec) if kind is TriangleType.T1 else check_type2(spec)
