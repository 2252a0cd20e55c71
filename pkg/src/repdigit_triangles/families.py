"""Constructive two-digit (k = 2) families of Type 1 and Type 2 triangles.

All of them rest on the identity (r^2 - q^2)^2 + (2rq)^2 = (r^2 + q^2)^2:

* F1, F2 give Type 2 triangles, with r = q + l.
* S1, S2, U give Type 1 triangles.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from .errors import ConstraintError, UnsupportedDigitError
from .repdigit import RepdigitSpec
from .triples import TriangleType, TriangleWitness, check_type1, check_type2


class Family(str, enum.Enum):
    F1 = "F1"
    F2 = "F2"
    S1 = "S1"
    S2 = "S2"
    U = "U"

    @property
    def parameter_names(self) -> tuple[str, ...]:
        return _PARAMETER_NAMES[self]

    @property
    def triangle_type(self) -> TriangleType:
        return TriangleType.T2 if self in (Family.F1, Family.F2) else TriangleType.T1

    @classmethod
    def parse(cls, text: str) -> "Family":
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise ConstraintError(
                f"unknown family {text!r} (choose from {', '.join(f.value for f in cls)})"
            ) from None


_PARAMETER_NAMES = {
    Family.F1: ("l", "q"),
    Family.F2: ("l", "q"),
    Family.S1: ("r", "q"),
    Family.S2: ("r", "q"),
    Family.U: ("t",),
}

_CONDITIONS = {
    Family.F1: "l**2 <= 2*q**2 - 2",
    Family.F2: "l**2 >= 2*q**2 + 2",
    Family.S1: "r > q >= 1",
    Family.S2: "r >= q + 2",
    Family.U: "t >= 2",
}


def _condition_holds(family: Family, p: dict[str, int]) -> bool:
    if family is Family.F1:
        return p["l"] ** 2 <= 2 * p["q"] ** 2 - 2
    if family is Family.F2:
        return p["l"] ** 2 >= 2 * p["q"] ** 2 + 2
    if family is Family.S1:
        return p["r"] > p["q"] >= 1
    if family is Family.S2:
        return p["r"] >= p["q"] + 2
    return p["t"] >= 2


@dataclass(frozen=True)
class FamilyParams:
    """A family together with its parameter values, in the family's own order."""

    family: Family
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        names = self.family.parameter_names
        if len(self.values) != len(names):
            raise ConstraintError(
                f"family {self.family.value} takes parameters {', '.join(names)}"
            )
        for name, value in zip(names, self.values):
            if not isinstance(value, int) or value < 1:
                raise ConstraintError(f"parameter {name} must be a positive integer (got {value!r})")
        if not _condition_holds(self.family, self.as_dict()):
            raise ConstraintError(
                f"family {self.family.value} requires {_CONDITIONS[self.family]} "
                f"(got {self.describe()})"
            )

    @classmethod
    def of(cls, family: Family | str, **kwargs: int) -> "FamilyParams":
        family = Family.parse(family) if isinstance(family, str) else family
        names = family.parameter_names
        extra = set(kwargs) - set(names)
        missing = [n for n in names if kwargs.get(n) is None]
        if extra or missing:
            raise ConstraintError(
                f"family {family.value} takes parameters {', '.join(names)}"
            )
        return cls(family, tuple(kwargs[n] for n in names))

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.family.parameter_names, self.values))

    def describe(self) -> str:
        return ", ".join(f"{k}={v}" for k, v in self.as_dict().items())

    @property
    def condition(self) -> str:
        return _CONDITIONS[self.family]


def basic_principle_check(r: int, q: int) -> bool:
    if r < 1 or q < 1:
        raise ConstraintError("r and q must be positive")
    return (r * r - q * q) ** 2 + (2 * r * q) ** 2 == (r * r + q * q) ** 2


def family_spec(params: FamilyParams) -> RepdigitSpec:
    """The two-digit spec (2, b, d) built by a family."""
    p = params.as_dict()
    fam = params.family
    if fam in (Family.F1, Family.F2):
        q = p["q"]
        r = q + p["l"]
        if fam is Family.F1:
            b, d = 2 * r * q - 1, r * r - q * q
        else:
            b, d = r * r - q * q - 1, 2 * r * q
    elif fam in (Family.S1, Family.S2):
        r, q = p["r"], p["q"]
        b = r * r + q * q - 1
        d = r * r - q * q if fam is Family.S1 else 2 * r * q
    else:
        t = p["t"]
        b, d = t * t, t * t - 1
    # the family conditions are exactly what keeps 2 <= d <= b - 1
    return RepdigitSpec(2, b, d)


def generate_family(params: FamilyParams) -> tuple[RepdigitSpec, TriangleWitness]:
    spec = family_spec(params)
    kind = params.family.triangle_type
    witness = check_type2(spec) if kind is TriangleType.T2 else check_type1(spec)
    if witness is None:
        raise ArithmeticError(f"{params.family.value}({params.describe()}) produced no triangle for {spec}")
    return spec, witness


def enumerate_family(
    family: Family | str, bound: int
) -> Iterator[tuple[FamilyParams, RepdigitSpec, TriangleWitness]]:
    """Every valid instance with all parameters <= ``bound``, in lexicographic order."""
    family = Family.parse(family) if isinstance(family, str) else family
    names = family.parameter_names
    if len(names) == 1:
        grid = ((x,) for x in range(1, bound + 1))
    else:
        grid = ((x, y) for x in range(1, bound + 1) for y in range(1, bound + 1))
    for values in grid:
        if not _condition_holds(family, dict(zip(names, values))):
            continue
        params = FamilyParams(family, values)
        spec, witness = generate_family(params)
        yield params, spec, witness


def corollary_base(d: int, kind: TriangleType) -> tuple[int, FamilyParams]:
    """Base b admitting a two-digit triangle of the given type for digit ``d``.

    Type 1: odd d >= 3 gives b = (d^2 - 1)/2 via S1, even d >= 6 gives
    b = d^2/4 via S2.  Type 2: odd d >= 5 gives b = (d^2 - 3)/2 via F1, even
    d >= 6 gives b = (d^2 - 8)/4 via F2.
    """
    if kind is TriangleType.T1:
        if d >= 3 and d % 2:
            params = FamilyParams.of(Family.S1, r=(d + 1) // 2, q=(d - 1) // 2)
            b = (d * d - 1) // 2
        elif d >= 6 and d % 2 == 0:
            params = FamilyParams.of(Family.S2, r=d // 2, q=1)
            b = d * d // 4
        else:
            raise UnsupportedDigitError(
                f"no base b gives a Type 1 triangle T1(2,b,{d}); "
                "d must be odd >= 3 or even >= 6 (none exists for d = 2 or 4)"
            )
    else:
        if d >= 5 and d % 2:
            params = FamilyParams.of(Family.F1, l=1, q=(d - 1) // 2)
            b = (d * d - 3) // 2
        elif d >= 6 and d % 2 == 0:
            params = FamilyParams.of(Family.F2, l=d // 2 - 1, q=1)
            b = (d * d - 8) // 4
        else:
            raise UnsupportedDigitError(
                f"no base b gives a Type 2 triangle T2(2,b,{d}); "
                "d must be odd >= 5 or even >= 6 (none exists for d = 2, 3 or 4)"
            )
    spec, _ = generate_family(params)
    if spec.b != b or spec.d != d:
        raise ArithmeticError(f"corollary for d={d} built {spec}, expected base {b}")
    return b, params
