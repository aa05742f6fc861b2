"""The reference identity suite around the number 1318.

Eight bit-exact checks tying together the balanced decomposition of 1318
over {6, 16, 26, 41}, the quintic period polynomial for p = 11 and its
discriminant 11^4, the two-squares obstruction for 1318 = 2*659, and the
internal consistency of the (p=11, e=5) resolvent.  Everything is computed
from scratch on every run; nothing external is consulted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import IntPoly
from .periods import (
    period_polynomial,
    period_system,
    polynomial_discriminant,
    resolvent_power,
)
from .search import classify_structure, make_instance
from .squares import next_prime, perfect_cube_test, two_squares_representable

BASE_SET = (6, 16, 26, 41)
BLOCK_A = ((0, 3), (1, 2), (1, 3))  # 6*41 + 16*26 + 16*41
BLOCK_B = ((0, 1), (0, 2), (2, 3))  # 6*16 + 6*26 + 26*41
TARGET = 1318
SUM_SQUARES = 2649
CUBE_GAP = 1331
QUINTIC = IntPoly.of([-1, 3, 3, -4, -1, 1])  # x^5 - x^4 - 4x^3 + 3x^2 + 3x - 1


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    expected: str
    actual: str


def _result(name: str, expected, actual) -> CheckResult:
    return CheckResult(name, expected == actual, repr(expected), repr(actual))


def run_checks(corrupt: str | None = None) -> list[CheckResult]:
    """Run all eight checks; `corrupt` perturbs one named check (test hook)."""
    results: list[CheckResult] = []

    def bend(name: str, value: int) -> int:
        return value + 1 if corrupt == name else value

    # 1. both decompositions of 1318
    inst = make_instance(BASE_SET, [BLOCK_A, BLOCK_B])
    sums = tuple(sum(BASE_SET[i] * BASE_SET[j] for i, j in blk) for blk in (BLOCK_A, BLOCK_B))
    results.append(_result(
        "decomposition-blocks",
        (bend("decomposition-blocks", TARGET),) * 2 + (TARGET,),
        sums + (inst.block_sum,),
    ))

    # 2. the four cyclicity rewrites: 96+1222, 246+1072, 416+902, 1066+252
    rewrites = set()
    for block in classify_structure(inst):
        for rw in block.rewrites:
            rewrites.add((rw.edge_product, rw.grouped))
    expected_rewrites = ((96, 1222), (246, 1072), (416, 902), (1066, bend("cyclicity-rewrites", 252)))
    all_sum = all(a + b == TARGET for a, b in rewrites)
    results.append(_result(
        "cyclicity-rewrites",
        (tuple(sorted(expected_rewrites)), True),
        (tuple(sorted(rewrites)), all_sum),
    ))

    # 3. sum of squares
    results.append(_result(
        "sum-of-squares-2649",
        bend("sum-of-squares-2649", SUM_SQUARES),
        sum(v * v for v in BASE_SET),
    ))

    # 4. cube gap: 2649 - 1318 = 1331 = 11^3
    gap = sum(v * v for v in BASE_SET) - TARGET
    results.append(_result(
        "cube-gap-1331",
        (bend("cube-gap-1331", CUBE_GAP), 11),
        (gap, perfect_cube_test(gap)),
    ))

    # 5. prime gap: 2649 - 2*1318 = 13 = next prime after 11
    results.append(_result(
        "prime-gap-13",
        (bend("prime-gap-13", 13), 13),
        (SUM_SQUARES - 2 * TARGET, next_prime(11)),
    ))

    # 6. period polynomial for (11,5), its reflection, and the discriminant
    sys = period_system(11, 5)
    w = period_polynomial(sys)
    reflected = -w.neg_x()
    results.append(_result(
        "quintic-discriminant",
        (tuple(QUINTIC.coeffs), bend("quintic-discriminant", 14641), 14641),
        (tuple(reflected.coeffs), polynomial_discriminant(QUINTIC), polynomial_discriminant(w)),
    ))

    # 7. 659 = 3 (mod 4); 1318 = 2*659 is not a sum of two squares
    rep = two_squares_representable(1318)
    results.append(_result(
        "two-squares-659",
        (3, False, bend("two-squares-659", 659)),
        (659 % 4, rep.representable, rep.offending_prime),
    ))

    # 8. resolvent consistency for (p=11, e=5, t=1)
    report = resolvent_power(sys, 1)
    tup = report.coeff_tuple
    padded = list(tup) + [0]
    class_sums = tuple(
        sum(padded[i] * padded[(i + d) % 5] for i in range(5)) for d in (1, 2)
    )
    results.append(_result(
        "resolvent-consistency",
        (bend("resolvent-consistency", CUBE_GAP), (6, 16, 26, 41), (TARGET, TARGET)),
        (report.conj_product, tuple(sorted(abs(v) for v in tup)), class_sums),
    ))

    return results
