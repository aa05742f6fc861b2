"""Two-squares machinery and the small integer utilities the filters need.

Primality is a deterministic strong-probable-prime test with a base set
valid for all n < 2^64; factorize rejects larger inputs.  The root of -1
step in the prime decomposition is randomized but seeded, so runs are
reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, isqrt

# first twelve primes: deterministic Miller-Rabin witnesses below 2^64
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_FACTOR_LIMIT = 1 << 64
_TRIAL_LIMIT = 10**4  # crossover to rho; correctness is carried by certification


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    if n < 2:
        return 2
    c = n + 1
    if c % 2 == 0:
        c += 1
    while not is_prime(c):
        c += 2
    return c


def _rho_brent(n: int, rng: random.Random) -> int:
    """One nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> list[int]:
    """Complete prime factorization as a sorted list with multiplicity.

    Trial division up to 10^4, then Brent rho on what remains, certifying
    every reported factor with the deterministic primality test.  Inputs
    at or above 2^64 are out of scope and rejected.
    """
    if n < 2:
        raise ValueError("factorize needs n >= 2")
    if n >= _FACTOR_LIMIT:
        raise ValueError("inputs >= 2^64 are out of scope")
    factors: list[int] = []
    for p in (2, 3, 5):
        while n % p == 0:
            factors.append(p)
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)  # increments around multiples of 2,3,5
    w = 0
    limit = min(_TRIAL_LIMIT, isqrt(n))
    while n > 1 and d <= limit:
        if n % d == 0:
            while n % d == 0:
                factors.append(d)
                n //= d
            if n > 1 and is_prime(n):  # certify the cofactor early
                factors.append(n)
                n = 1
                break
            limit = min(_TRIAL_LIMIT, isqrt(n))
        d += wheel[w]
        w = (w + 1) % 8
    if n > 1:
        if is_prime(n):
            factors.append(n)
        else:
            rng = random.Random(0xC0FFEE)
            stack = [n]
            while stack:
                m = stack.pop()
                if is_prime(m):
                    factors.append(m)
                    continue
                g = _rho_brent(m, rng)
                stack.append(g)
                stack.append(m // g)
    factors.sort()
    return factors


def perfect_cube_test(n: int) -> int | None:
    """Integer r with r^3 == n, if one exists (negatives allowed)."""
    if n < 0:
        r = perfect_cube_test(-n)
        return None if r is None else -r
    lo, hi = 0, 1
    while hi**3 < n:
        hi <<= 1
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**3 < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**3 == n else None


# ---------------------------------------------------------------------------
# sums of two squares


@dataclass(frozen=True)
class TwoSquares:
    """A verified representation n = x^2 + y^2 with 0 <= x <= y."""

    n: int
    x: int
    y: int

    def __post_init__(self):
        if not (0 <= self.x <= self.y) or self.x**2 + self.y**2 != self.n:
            raise ValueError(f"{self.x}^2 + {self.y}^2 != {self.n}")


def _two_squares(n: int, x: int, y: int) -> TwoSquares:
    x, y = abs(x), abs(y)
    if x > y:
        x, y = y, x
    return TwoSquares(n, x, y)


def brahmagupta_compose(a: int, b: int, c: int, d: int) -> tuple[TwoSquares, TwoSquares]:
    """Both composed representations of (a^2+b^2)(c^2+d^2)."""
    n = (a * a + b * b) * (c * c + d * d)
    return (
        _two_squares(n, a * c + b * d, a * d - b * c),
        _two_squares(n, a * c - b * d, a * d + b * c),
    )


def prime_two_square_decomposition(p: int, seed: int = 0) -> TwoSquares:
    """The unique x^2 + y^2 = p for a prime p = 1 (mod 4).

    Finds r with r^2 = -1 (mod p) by seeded random exponentiation, then
    runs the Euclidean descent on (p, r) and takes the first two remainders
    below sqrt(p).
    """
    if p == 2:
        return TwoSquares(2, 1, 1)
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"{p} is not a prime congruent to 1 mod 4")
    rng = random.Random(seed)
    while True:
        b = rng.randrange(2, p)
        r = pow(b, (p - 1) // 4, p)
        if r * r % p == p - 1:
            break
    bound = isqrt(p)
    a1, a2 = p, r
    while a2 > bound:
        a1, a2 = a2, a1 % a2
    x, y = a2, a1 % a2
    result = _two_squares(p, x, y)
    assert result.x**2 + result.y**2 == p
    return result


@dataclass(frozen=True)
class TwoSquaresReport:
    n: int
    representable: bool
    witness: TwoSquares | None = None
    offending_prime: int | None = None


def two_squares_representable(n: int, seed: int = 0) -> TwoSquaresReport:
    """Classify n and certify the answer.

    n is a sum of two squares iff every prime = 3 (mod 4) divides n to an
    even power.  The certificate is a witness (x, y) or the first offending
    prime.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return TwoSquaresReport(0, True, TwoSquares(0, 0, 0))
    if n == 1:
        return TwoSquaresReport(1, True, TwoSquares(1, 0, 1))
    counts: dict[int, int] = {}
    for p in factorize(n):
        counts[p] = counts.get(p, 0) + 1
    for p in sorted(counts):
        if p % 4 == 3 and counts[p] % 2 == 1:
            return TwoSquaresReport(n, False, offending_prime=p)
    x, y = 1, 0
    for p in sorted(counts):
        e = counts[p]
        if p % 4 == 3:
            s = p ** (e // 2)
            x, y = x * s, y * s
            continue
        part = TwoSquares(2, 1, 1) if p == 2 else prime_two_square_decomposition(p, seed)
        for _ in range(e):
            comp = brahmagupta_compose(x, y, part.x, part.y)[0]
            x, y = comp.x, comp.y
    witness = _two_squares(n, x, y)
    return TwoSquaresReport(n, True, witness=witness)
