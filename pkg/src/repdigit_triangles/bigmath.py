"""Exact integer primitives.

Python ints are already arbitrary precision, so ``Natural`` is just ``int``
with a non-negativity contract.
"""

from __future__ import annotations

import math
from functools import reduce

Natural = int

# quadratic residues for the fast non-square rejection
_SQUARES_MOD64 = frozenset(x * x % 64 for x in range(64))
_SQUARES_MOD63 = frozenset(x * x % 63 for x in range(63))


def _check_natural(n: int, name: str = "n") -> None:
    if n < 0:
        raise ValueError(f"{name} must be non-negative, got {n}")


def isqrt(n: Natural) -> Natural:
    """Floor of the square root of ``n``.

    Newton iteration started from a power of two above the root; the iterates
    decrease monotonically and stop at the floor.

    >>> [isqrt(x) for x in (0, 1, 24, 25, 396900)]
    [0, 1, 4, 5, 630]
    """
    _check_natural(n)
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + 1) // 2)
    while True:
        y = (x + n // x) >> 1
        if y >= x:
            break
        x = y
    while x * x > n:
        x -= 1
    return x


def could_be_square(n: Natural) -> bool:
    """Cheap residue test; False means ``n`` is certainly not a square."""
    return (n & 63) in _SQUARES_MOD64 and n % 63 in _SQUARES_MOD63


def exact_sqrt(n: Natural) -> Natural | None:
    """Return the square root of ``n`` if it is a perfect square, else None."""
    _check_natural(n)
    if not could_be_square(n):
        return None
    r = isqrt(n)
    return r if r * r == n else None


def is_perfect_square(n: Natural) -> bool:
    return exact_sqrt(n) is not None


def gcd(a: Natural, b: Natural) -> Natural:
    _check_natural(a, "a")
    _check_natural(b, "b")
    return math.gcd(a, b)


def gcd_many(*values: Natural) -> Natural:
    return reduce(gcd, values, 0)


def power(base: Natural, exp: int) -> Natural:
    """Exact ``base**exp``; ``power(0, 0) == 1``."""
    _check_natural(base, "base")
    if exp < 0:
        raise ValueError(f"exponent must be non-negative, got {exp}")
    return base**exp


def two_adic_valuation(n: Natural) -> int:
    """Exponent of the largest power of two dividing ``n`` (``n`` > 0)."""
    if n <= 0:
        raise ValueError("valuation needs a positive integer")
    return (n & -n).bit_length() - 1
