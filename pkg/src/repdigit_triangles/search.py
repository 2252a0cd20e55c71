"""Bounded exhaustive search over (k, b, d) and the five non-existence checks.

The prefilters are congruence obstructions that hold for every Pythagorean
triple (delta*(m^2-n^2), 2*delta*m*n, delta*(m^2+n^2)):

* the odd leg and the hypotenuse share the 2-adic valuation of delta, and the
  even leg has valuation at least two more;
* a leg that is a power of two can only be the even leg, which forces n = 1,
  m = 2^u, delta = 2^v, so the other sides are 2^v(4^u - 1) and 2^v(4^u + 1)
  with u, v determined by the valuations; those are then compared mod 3, 8, 7;
* H^2 -/+ L^2 must be a square modulo 64 and 63.

A rejection is therefore a proof that no triangle exists for that spec.
"""

from __future__ import annotations

import enum
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .bigmath import Natural, exact_sqrt, two_adic_valuation
from .errors import ConstraintError
from .repdigit import RepdigitSpec, digit_power, repdigit_value
from .triples import TriangleType, TriangleWitness, check

BOTH_TYPES = (TriangleType.T1, TriangleType.T2)
DEFAULT_K_MAX = 64
DEFAULT_B_MAX = 10_000

_SQ64 = frozenset(x * x % 64 for x in range(64))
_SQ63 = frozenset(x * x % 63 for x in range(63))


class Rejection(str, enum.Enum):
    BOTH_LEGS_ODD = "both-legs-odd"
    TWO_ADIC = "two-adic"
    POW2_LEG_ROLE = "pow2-leg-role"
    POW2_MOD3 = "pow2-mod3"
    POW2_MOD8 = "pow2-mod8"
    POW2_MOD7 = "pow2-mod7"
    SQUARE_MOD64 = "square-mod64"
    SQUARE_MOD63 = "square-mod63"


def _pow2_rule(exp: int, other: Natural, kind: TriangleType) -> Rejection | None:
    # the power-of-two leg 2^exp is delta*2mn with n = 1, m = 2^u, delta = 2^v
    v = two_adic_valuation(other)
    if v >= exp:
        return Rejection.POW2_LEG_ROLE
    u = exp - 1 - v
    if u < 1:
        return Rejection.POW2_LEG_ROLE
    odd = other >> v
    sign = 1 if kind is TriangleType.T1 else -1
    if odd % 3 != (pow(4, u, 3) + sign) % 3:
        return Rejection.POW2_MOD3
    if odd % 8 != (pow(4, u, 8) + sign) % 8:
        return Rejection.POW2_MOD8
    if odd % 7 != (pow(4, u, 7) + sign) % 7:
        return Rejection.POW2_MOD7
    return None


def _prefilter_values(d: int, k: int, rep: Natural, leg: Natural,
                      kind: TriangleType) -> Rejection | None:
    v_rep = two_adic_valuation(rep)
    v_leg = two_adic_valuation(leg)
    if kind is TriangleType.T2:
        if v_rep == 0 and v_leg == 0:
            return Rejection.BOTH_LEGS_ODD
        if abs(v_rep - v_leg) < 2:
            return Rejection.TWO_ADIC
    elif v_leg < v_rep or v_leg == v_rep + 1:
        return Rejection.TWO_ADIC

    if d & (d - 1) == 0:
        reason = _pow2_rule(k * (d.bit_length() - 1), rep, kind)
        if reason is not None:
            return reason

    r64, l64 = rep % 64, leg % 64
    r63, l63 = rep % 63, leg % 63
    if kind is TriangleType.T1:
        s64, s63 = (r64 * r64 - l64 * l64) % 64, (r63 * r63 - l63 * l63) % 63
    else:
        s64, s63 = (r64 * r64 + l64 * l64) % 64, (r63 * r63 + l63 * l63) % 63
    if s64 not in _SQ64:
        return Rejection.SQUARE_MOD64
    if s63 not in _SQ63:
        return Rejection.SQUARE_MOD63
    return None


def prefilter(spec: RepdigitSpec, kind: TriangleType) -> Rejection | None:
    """None means the spec may hold a triangle; a Rejection means it cannot."""
    return _prefilter_values(spec.d, spec.k, repdigit_value(spec), digit_power(spec), kind)


@dataclass(frozen=True)
class SearchRange:
    bases: tuple[int, int]
    k_max: int
    digits: tuple[int, ...] | None = None
    types: tuple[TriangleType, ...] = BOTH_TYPES

    def __post_init__(self) -> None:
        lo, hi = self.bases
        if lo < 3:
            raise ConstraintError(f"base range must start at b >= 3 (got {lo})")
        if hi < lo:
            raise ConstraintError(f"empty base range {lo}..{hi}")
        if self.k_max < 2:
            raise ConstraintError(f"k_max must be >= 2 (got {self.k_max})")
        if self.digits is not None:
            if any(x < 2 for x in self.digits):
                raise ConstraintError("digits must all be >= 2")
            object.__setattr__(self, "digits", tuple(sorted(set(self.digits))))
        if not self.types:
            raise ConstraintError("at least one triangle type is required")
        object.__setattr__(self, "types", tuple(sorted(set(self.types), key=lambda t: t.value)))

    def digits_for(self, b: int) -> list[int]:
        if self.digits is None:
            return list(range(2, b))
        return [x for x in self.digits if x <= b - 1]

    def describe(self) -> dict:
        return {
            "bases": f"{self.bases[0]}..{self.bases[1]}",
            "digits": "all" if self.digits is None else ",".join(map(str, self.digits)),
            "k_max": self.k_max,
            "types": ",".join(t.value for t in self.types),
        }


@dataclass
class _Partial:
    hits: list[TriangleWitness] = field(default_factory=list)
    tested: int = 0
    full_checks: int = 0
    rejections: Counter = field(default_factory=Counter)

    def merge(self, other: "_Partial") -> "_Partial":
        return _Partial(self.hits + other.hits, self.tested + other.tested,
                        self.full_checks + other.full_checks,
                        self.rejections + other.rejections)


@dataclass(frozen=True)
class SearchReport:
    range: SearchRange
    hits: tuple[TriangleWitness, ...]
    specs_tested: int
    prefilter_rejections: int
    full_checks: int
    rejections_by_reason: dict[str, int]
    elapsed: float
    workers: int = 1
    prefilters: bool = True


def _scan(rng: SearchRange, lo: int, hi: int, use_prefilters: bool) -> _Partial:
    part = _Partial()
    kinds = rng.types
    for b in range(lo, hi + 1):
        for d in rng.digits_for(b):
            rep = leg = d
            for k in range(2, rng.k_max + 1):
                rep = rep * b + d
                leg *= d
                for kind in kinds:
                    part.tested += 1
                    if use_prefilters:
                        reason = _prefilter_values(d, k, rep, leg, kind)
                        if reason is not None:
                            part.rejections[reason.value] += 1
                            continue
                    part.full_checks += 1
                    if kind is TriangleType.T1:
                        root = exact_sqrt(rep * rep - leg * leg)
                    else:
                        root = exact_sqrt(rep * rep + leg * leg)
                    if root is not None:
                        witness = check(RepdigitSpec(k, b, d), kind)
                        if witness is None:
                            raise ArithmeticError(f"hit at {(k, b, d)} failed re-validation")
                        part.hits.append(witness)
    return part


def _scan_task(args: tuple) -> _Partial:
    return _scan(*args)


def _chunks(rng: SearchRange, pieces: int) -> list[tuple[int, int]]:
    lo, hi = rng.bases
    # weight each base by its number of digits so chunks carry similar work
    weights = [max(len(rng.digits_for(b)), 1) for b in range(lo, hi + 1)]
    target = sum(weights) / pieces
    out, start, acc = [], lo, 0.0
    for b, w in zip(range(lo, hi + 1), weights):
        acc += w
        if acc >= target and b < hi:
            out.append((start, b))
            start, acc = b + 1, 0.0
    out.append((start, hi))
    return out


def search(rng: SearchRange, use_prefilters: bool = True, workers: int = 1) -> SearchReport:
    """Test every (k, b, d, type) in ``rng``; hits come back sorted by (b, d, k, type).

    With ``workers > 1`` the base range is split into chunks scanned in
    separate processes; the merged result does not depend on the split.
    """
    start = time.perf_counter()
    workers = max(1, int(workers))
    if workers == 1:
        total = _scan(rng, rng.bases[0], rng.bases[1], use_prefilters)
    else:
        tasks = [(rng, lo, hi, use_prefilters) for lo, hi in _chunks(rng, workers * 4)]
        total = _Partial()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_scan_task, tasks):
                total = total.merge(part)
    hits = tuple(sorted(total.hits, key=TriangleWitness.sort_key))
    rejected = sum(total.rejections.values())
    return SearchReport(
        range=rng,
        hits=hits,
        specs_tested=total.tested,
        prefilter_rejections=rejected,
        full_checks=total.full_checks,
        rejections_by_reason=dict(sorted(total.rejections.items())),
        elapsed=time.perf_counter() - start,
        workers=workers,
        prefilters=use_prefilters,
    )


# ---------------------------------------------------------------------------
# theorem checks

@dataclass(frozen=True)
class Theorem:
    id: int
    statement: str
    expected: frozenset[tuple[int, int, int, str]]

    def search_range(self, k_max: int, b_max: int) -> SearchRange:
        if self.id == 1:
            return SearchRange((4, 4), k_max, None, (TriangleType.T2,))
        if self.id == 2:
            return SearchRange((4, 4), k_max, None, (TriangleType.T1,))
        if self.id == 3:
            return SearchRange((3, 3), k_max, None, (TriangleType.T2,))
        if self.id == 4:
            return SearchRange((3, 3), k_max, None, (TriangleType.T1,))
        return SearchRange((3, b_max), 2, (2, 3, 4), (TriangleType.T2,))


THEOREMS = {
    1: Theorem(1, "no Type 2 triangle T2(k,4,d) exists", frozenset()),
    2: Theorem(2, "the only Type 1 triangle T1(k,4,d) is T1(2,4,3) with sides 9, 12, 15",
               frozenset({(2, 4, 3, TriangleType.T1.value)})),
    3: Theorem(3, "no Type 2 triangle T2(k,3,d) exists", frozenset()),
    4: Theorem(4, "no Type 1 triangle T1(k,3,d) exists", frozenset()),
    5: Theorem(5, "no Type 2 triangle T2(2,b,d) exists for d in {2, 3, 4}", frozenset()),
}

CONSISTENT = "CONSISTENT"
VIOLATION = "VIOLATION"


@dataclass(frozen=True)
class TheoremReport:
    theorem: Theorem
    k_max: int | None
    b_max: int | None
    report: SearchReport
    verdict: str
    offending: tuple[TriangleWitness, ...]
    missing: tuple[tuple[int, int, int, str], ...]


def _witness_key(w: TriangleWitness) -> tuple[int, int, int, str]:
    return (*w.spec.as_tuple(), w.type_tag.value)


def verify_theorem(theorem_id: int, k_max: int = DEFAULT_K_MAX, b_max: int = DEFAULT_B_MAX,
                   use_prefilters: bool = True, workers: int = 1) -> TheoremReport:
    """Search the theorem's finite prefix and compare the hits to its prediction.

    Theorems 1-4 run over 2 <= k <= ``k_max``; theorem 5 over 3 <= b <= ``b_max``.
    """
    if theorem_id not in THEOREMS:
        raise ConstraintError(f"theorem id must be one of 1..5 (got {theorem_id})")
    theorem = THEOREMS[theorem_id]
    if theorem_id == 5:
        if b_max < 5:
            raise ConstraintError(f"b_max must be >= 5 (got {b_max})")
        used_k, used_b = None, b_max
    else:
        if k_max < 2:
            raise ConstraintError(f"k_max must be >= 2 (got {k_max})")
        used_k, used_b = k_max, None
    report = search(theorem.search_range(k_max, b_max), use_prefilters, workers)
    found = {_witness_key(w) for w in report.hits}
    offending = tuple(w for w in report.hits if _witness_key(w) not in theorem.expected)
    missing = tuple(sorted(theorem.expected - found))
    verdict = CONSISTENT if not offending and not missing else VIOLATION
    return TheoremReport(theorem, used_k, used_b, report, verdict, offending, missing)


def mod7_residue_table() -> list[tuple[int, int, int, int]]:
    """Rows (p, v, 2^p(2^(2v)+1) mod 7, 3^(p+v+1)-1 mod 7) for even p, odd v mod 6.

    Powers of 2 and 3 mod 7 repeat with period 6, so these nine classes cover
    every exponent pair with p even and v odd.
    """
    rows = []
    for p in (0, 2, 4):
        for v in (1, 3, 5):
            lhs = pow(2, p, 7) * (pow(2, 2 * v, 7) + 1) % 7
            rhs = (pow(3, p + v + 1, 7) - 1) % 7
            rows.append((p, v, lhs, rhs))
    return rows
