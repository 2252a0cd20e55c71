"""Base-b repdigits ``d_{k,b}`` and digit rendering."""

from __future__ import annotations

from dataclasses import dataclass

from .bigmath import Natural, power
from .errors import ConstraintError


@dataclass(frozen=True, order=True)
class RepdigitSpec:
    """The (k, b, d) triple naming a candidate triangle.

    ``k`` copies of digit ``d`` in base ``b``; validated on construction.
    """

    k: int
    b: int
    d: int

    def __post_init__(self) -> None:
        for name in ("k", "b", "d"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ConstraintError(f"{name} must be an integer, got {value!r}")
        if self.b < 3:
            raise ConstraintError(f"base b must satisfy b >= 3 (got b={self.b})")
        if self.d < 2:
            raise ConstraintError(f"digit d must satisfy d >= 2 (got d={self.d})")
        if self.d > self.b - 1:
            raise ConstraintError(
                f"digit d must satisfy d <= b - 1 (got d={self.d}, b={self.b})"
            )
        if self.k < 2:
            raise ConstraintError(f"digit count k must satisfy k >= 2 (got k={self.k})")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.k, self.b, self.d)


def repdigit_value(spec: RepdigitSpec) -> Natural:
    """d * (b^(k-1) + ... + b + 1), evaluated with Horner's scheme."""
    value = spec.d
    for _ in range(spec.k - 1):
        value = value * spec.b + spec.d
    return value


def digit_power(spec: RepdigitSpec) -> Natural:
    return power(spec.d, spec.k)


def digits(n: Natural, base: int) -> list[int]:
    """Digits of ``n`` in ``base``, most significant first."""
    if base < 2:
        raise ConstraintError(f"base must be >= 2, got {base}")
    if n < 0:
        raise ValueError(f"cannot render negative value {n}")
    if n == 0:
        return [0]
    out = []
    while n:
        n, r = divmod(n, base)
        out.append(r)
    out.reverse()
    return out


def render_base(n: Natural, base: int) -> str:
    """Positional representation of ``n`` in ``base``.

    Bases up to 10 give plain digit strings.  Larger bases write every digit
    as a bracketed decimal value, joined by colons: 60 in base 11 is
    ``"[5]:[5]"``.
    """
    ds = digits(n, base)
    if base <= 10:
        return "".join(str(x) for x in ds)
    return ":".join(f"[{x}]" for x in ds)


def parse_base(text: str, base: int) -> Natural:
    """Inverse of :func:`render_base`."""
    if base < 2:
        raise ConstraintError(f"base must be >= 2, got {base}")
    if base <= 10:
        ds = [int(ch) for ch in text]
    else:
        ds = []
        for part in text.split(":"):
            if not (part.startswith("[") and part.endswith("]")):
                raise ValueError(f"malformed digit {part!r}")
            ds.append(int(part[1:-1]))
    value = 0
    for x in ds:
        if not 0 <= x < base:
            raise ValueError(f"digit {x} out of range for base {base}")
        value = value * base + x
    return value
