"""Exact arithmetic in cyclotomic rings Z[zeta_m].

Elements are stored as length-m integer coefficient vectors modulo x^m - 1
(group-ring style).  Multiplication is plain cyclic convolution; reduction
into the degree-phi(m) power basis modulo Phi_m is deferred to equality
tests, canonical output and subfield extraction, where it is done by exact
polynomial remainder.  All coefficients are arbitrary-precision integers,
so nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import mpmath


# ---------------------------------------------------------------------------
# integer polynomials


@dataclass(frozen=True)
class IntPoly:
    """Integer-coefficient univariate polynomial, lowest degree first.

    Canonical form: no trailing zero coefficients; the zero polynomial is
    the empty tuple.
    """

    coeffs: tuple[int, ...] = ()

    @staticmethod
    def of(seq) -> IntPoly:
        cs = list(seq)
        while cs and cs[-1] == 0:
            cs.pop()
        return IntPoly(tuple(int(c) for c in cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: IntPoly) -> IntPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPoly.of(x + y for x, y in zip(a, b))

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: IntPoly) -> IntPoly:
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly.of(out)

    def __divmod__(self, den: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Polynomial division; den must have leading coefficient +-1."""
        if den.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if den.leading not in (1, -1):
            raise ValueError("divisor must be monic up to sign")
        lead = den.leading
        num = list(self.coeffs)
        dd = den.degree
        q = [0] * max(0, len(num) - dd)
        for i in range(len(num) - 1, dd - 1, -1):
            c = num[i]
            if c:
                c *= lead  # lead is +-1
                q[i - dd] = c
                for k, dk in enumerate(den.coeffs):
                    num[i - dd + k] -= c * dk
        return IntPoly.of(q), IntPoly.of(num)

    def __floordiv__(self, den: IntPoly) -> IntPoly:
        return divmod(self, den)[0]

    def __mod__(self, den: IntPoly) -> IntPoly:
        return divmod(self, den)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly.of(i * c for i, c in enumerate(self.coeffs) if i)

    def neg_x(self) -> IntPoly:
        """The polynomial f(-x)."""
        return IntPoly(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                term = str(mag)
            elif i == 1:
                term = "x" if mag == 1 else f"{mag}*x"
            else:
                term = f"x^{i}" if mag == 1 else f"{mag}*x^{i}"
            parts.append((sign, term))
        first_sign, first_term = parts[0]
        s = ("-" if first_sign == "-" else "") + first_term
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    result = m
    n, d = m, 2
    while d * d <= n:
        if n % d == 0:
            result -= result // d
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> IntPoly:
    """Phi_m, computed by iterated exact division of x^m - 1 by the Phi_d
    for proper divisors d.  Monic of degree phi(m)."""
    if m < 1:
        raise ValueError("m must be positive")
    poly = IntPoly.of([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            q, r = divmod(poly, cyclotomic_polynomial(d))
            if not r.is_zero():
                raise ArithmeticError(f"x^{m}-1 not divisible by Phi_{d}")
            poly = q
    return poly


# ---------------------------------------------------------------------------
# cyclotomic ring elements


@lru_cache(maxsize=8192)
def _reduced(order: int, coeffs: tuple[int, ...]) -> tuple[int, ...]:
    """Remainder of the coefficient polynomial modulo Phi_order, padded back
    to a length-`order` vector (support on degrees < phi(order))."""
    rem = IntPoly.of(coeffs) % cyclotomic_polynomial(order)
    out = list(rem.coeffs) + [0] * (order - len(rem.coeffs))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class CycElem:
    """Element of Z[zeta_m]: coefficient i multiplies zeta_m^i, 0 <= i < m.

    Equality is tested in the Phi_m basis, so two different raw vectors can
    represent the same ring element.  Instances are immutable.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if len(self.coeffs) != self.order:
            raise ValueError(f"need exactly {self.order} coefficients, got {len(self.coeffs)}")

    @staticmethod
    def from_coeffs(order: int, seq) -> CycElem:
        cs = [int(c) for c in seq]
        if len(cs) > order:
            raise ValueError("too many coefficients")
        cs += [0] * (order - len(cs))
        return CycElem(order, tuple(cs))

    @staticmethod
    def integer(order: int, value: int) -> CycElem:
        return CycElem.from_coeffs(order, [value])

    @staticmethod
    def zeta(order: int, exponent: int = 1) -> CycElem:
        cs = [0] * order
        cs[exponent % order] = 1
        return CycElem(order, tuple(cs))

    # -- ring operations ----------------------------------------------------

    def _check_order(self, other: CycElem) -> None:
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: CycElem) -> CycElem:
        self._check_order(other)
        return CycElem(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: CycElem) -> CycElem:
        self._check_order(other)
        return CycElem(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> CycElem:
        return CycElem(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other: CycElem) -> CycElem:
        self._check_order(other)
        m = self.order
        # convolve from the side with fewer nonzero entries
        a, b = self.coeffs, other.coeffs
        if sum(1 for c in a if c) > sum(1 for c in b if c):
            a, b = b, a
        out = [0] * m
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        k = i + j
                        if k >= m:
                            k -= m
                        out[k] += ai * bj
        return CycElem(m, tuple(out))

    def scale(self, c: int) -> CycElem:
        return CycElem(self.order, tuple(c * a for a in self.coeffs))

    def __pow__(self, n: int) -> CycElem:
        if n < 0:
            raise ValueError("negative powers not supported")
        result = CycElem.integer(self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- canonical form and equality -----------------------------------------

    def reduce(self) -> CycElem:
        """Canonical representative with support on degrees < phi(m); idempotent."""
        return CycElem(self.order, _reduced(self.order, self.coeffs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycElem):
            return NotImplemented
        if self.order != other.order:
            return False
        return _reduced(self.order, self.coeffs) == _reduced(other.order, other.coeffs)

    def __hash__(self):
        return hash((self.order, _reduced(self.order, self.coeffs)))

    def is_zero(self) -> bool:
        return all(c == 0 for c in _reduced(self.order, self.coeffs))

    def is_rational(self) -> bool:
        red = _reduced(self.order, self.coeffs)
        return all(c == 0 for c in red[1:])

    def as_int(self) -> int:
        red = _reduced(self.order, self.coeffs)
        if any(c != 0 for c in red[1:]):
            raise ArithmeticError(f"element of order {self.order} is not rational: {red}")
        return red[0]

    # -- Galois action --------------------------------------------------------

    def galois(self, k: int) -> CycElem:
        """sigma_k: zeta_m -> zeta_m^k, a ring automorphism for gcd(k, m) = 1."""
        m = self.order
        k %= m
        if gcd(k, m) != 1:
            raise ValueError(f"k={k} not coprime to order {m}")
        out = [0] * m
        for i, c in enumerate(self.coeffs):
            if c:
                out[(i * k) % m] += c
        return CycElem(m, tuple(out))

    def conjugate(self) -> CycElem:
        return self.galois(self.order - 1)

    # -- numeric embedding -----------------------------------------------------

    def embed(self, digits: int = 30) -> mpmath.mpc:
        """Evaluate at zeta_m = exp(2*pi*i/m) with `digits` working digits."""
        with mpmath.workdps(digits):
            z = mpmath.e ** (2j * mpmath.pi / self.order)
            acc = mpmath.mpc(0)
            # Horner on the cyclic coefficient vector
            for c in reversed(self.coeffs):
                acc = acc * z + c
            return acc

    # -- serialization -----------------------------------------------------------

    def to_text(self) -> str:
        """Canonical textual form `m:[c0,...,c_{phi(m)-1}]` in the Phi_m basis."""
        red = _reduced(self.order, self.coeffs)
        k = euler_phi(self.order)
        return f"{self.order}:[{','.join(str(c) for c in red[:k])}]"

    @staticmethod
    def from_text(text: str) -> CycElem:
        head, _, body = text.partition(":")
        m = int(head)
        body = body.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"malformed element text: {text!r}")
        inner = body[1:-1].strip()
        cs = [int(t) for t in inner.split(",")] if inner else []
        if len(cs) != euler_phi(m):
            raise ValueError(f"expected {euler_phi(m)} coefficients for order {m}")
        return CycElem.from_coeffs(m, cs)


# ---------------------------------------------------------------------------
# named operations over CycElem


def canonical_reduce(a: CycElem) -> CycElem:
    return a.reduce()


def galois_apply(a: CycElem, k: int) -> CycElem:
    return a.galois(k)


def numeric_embed(a: CycElem, digits: int = 30) -> mpmath.mpc:
    return a.embed(digits)


def _subgroup_generators(m: int, d: int) -> list[int]:
    """Generators of {k mod m : k coprime to m, k = 1 (mod d)}.

    Greedy closure; the subgroup has order phi(m/d) here, small enough that
    the quadratic closure cost never matters.
    """
    elems = [k for k in range(1, m) if gcd(k, m) == 1 and k % d == 1 % d]
    gens: list[int] = []
    seen = {1 % m}
    for k in elems:
        if k in seen:
            continue
        gens.append(k)
        pw = k
        while pw not in seen:
            for s in list(seen):
                seen.add(s * pw % m)
            pw = pw * k % m
    return gens


def subfield_project(a: CycElem, d: int) -> CycElem:
    """Rewrite a as an element of Z[zeta_d], for order m = d*n with gcd(d,n)=1.

    Uses the correspondence zeta_d = zeta_m^n, zeta_n = zeta_m^d, so that
    zeta_m^i pairs with (u, v) where i = n*u + d*v (mod m).  Membership is
    certified mechanically: after reducing the zeta_n direction mod Phi_n,
    every component along a nontrivial power of zeta_n must vanish.
    """
    m = a.order
    if d < 1 or m % d != 0:
        raise ValueError(f"{d} does not divide order {m}")
    n = m // d
    if gcd(d, n) != 1:
        raise ValueError(f"order {m} does not split as coprime {d}*{n}")
    if n == 1:
        return a.reduce()

    # precondition: invariance under every sigma_k with k = 1 (mod d);
    # checking a generating set of that subgroup is equivalent
    for k in _subgroup_generators(m, d):
        if a.galois(k) != a:
            raise ValueError(f"not in subfield: element moves under sigma_{k}")

    ninv = pow(n, -1, d) if d > 1 else 0
    dinv = pow(d, -1, n)
    grid = [[0] * n for _ in range(d)]
    for i, c in enumerate(a.coeffs):
        if c:
            u = (i * ninv) % d
            v = (i * dinv) % n
            grid[u][v] += c

    phi_n = cyclotomic_polynomial(n)
    k_n = euler_phi(n)
    reduced_rows = []
    for u in range(d):
        rem = IntPoly.of(grid[u]) % phi_n
        row = list(rem.coeffs) + [0] * (k_n - len(rem.coeffs))
        reduced_rows.append(row)

    for v in range(1, k_n):
        comp = CycElem(d, tuple(reduced_rows[u][v] for u in range(d)))
        if not comp.is_zero():
            raise ValueError(f"not in subfield: nonzero component along zeta_{n}^{v}")
    return CycElem(d, tuple(reduced_rows[u][0] for u in range(d)))


def subfield_embed(a: CycElem, m: int) -> CycElem:
    """Inverse of subfield_project: re-express an order-d element in order m,
    via zeta_d = zeta_m^(m/d)."""
    d = a.order
    if m % d != 0:
        raise ValueError(f"{d} does not divide {m}")
    n = m // d
    out = [0] * m
    for u, c in enumerate(a.coeffs):
        if c:
            out[(n * u) % m] += c
    return CycElem(m, tuple(out))


def field_norm(a: CycElem) -> int:
    """Product of all Galois conjugates sigma_k(a), k in (Z/m)^*.

    The product of a full set of conjugates is rational; a non-rational
    result indicates an arithmetic bug, not bad input.
    """
    m = a.order
    prod = CycElem.integer(m, 1)
    for k in range(1, m + 1):
        kk = k % m
        if gcd(kk, m) == 1:
            prod = (prod * a.galois(kk)).reduce()
    return prod.as_int()
