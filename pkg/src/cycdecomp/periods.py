"""Gaussian periods, period polynomials, Gauss/Jacobi sums and the
cyclotomic generator of balanced decomposition tuples.

For an odd prime p and a divisor e of p-1, the e Gaussian periods eta_j
(each a sum of f = (p-1)/e roots of unity) are the roots of a monic integer
polynomial of degree e.  The Lagrange resolvents R_t = sum_j zeta_e^{tj}
eta_j live in Z[zeta_{ep}]; their e-th powers drop into Z[zeta_e] and for
prime e factor as R_t^e = p * a with a*conj(a) = p^{e-2}.  The coefficient
vector of a, read over the basis zeta_e, ..., zeta_e^{e-1}, is the tuple
whose pairwise products split into equal-sum cyclic distance classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .cyclotomic import (
    CycElem,
    IntPoly,
    cyclotomic_polynomial,
    euler_phi,
    subfield_embed,
    subfield_project,
    field_norm,
)
from .search import DecompInstance, distance_class_blocks, make_instance
from .squares import factorize, is_prime

MAX_P = 200
MAX_E = 13


@dataclass(frozen=True)
class PeriodSystem:
    """The data (p, e, f, g) defining the e Gaussian periods for prime p."""

    p: int
    e: int
    f: int
    g: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise ValueError(f"p = {self.p} is not an odd prime")
        if self.e < 2 or (self.p - 1) % self.e != 0:
            raise ValueError(f"e = {self.e} does not divide p-1 = {self.p - 1}")
        if self.e * self.f != self.p - 1:
            raise ValueError("e*f must equal p-1")
        # g must generate (Z/p)^*
        for q in set(factorize(self.p - 1)):
            if pow(self.g, (self.p - 1) // q, self.p) == 1:
                raise ValueError(f"g = {self.g} does not generate mod {self.p}")


def primitive_root(p: int) -> int:
    """Smallest generator of (Z/p)^*, verified via the factorization of p-1."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    qs = set(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ArithmeticError(f"no primitive root found for {p}")  # unreachable


def period_system(p: int, e: int, *, enforce_limits: bool = True) -> PeriodSystem:
    if enforce_limits and (p > MAX_P or e > MAX_E):
        raise ValueError(
            f"(p={p}, e={e}) outside the default ranges p <= {MAX_P}, e <= {MAX_E}"
        )
    if not is_prime(p) or p == 2:
        raise ValueError(f"p = {p} is not an odd prime")
    if e < 2 or (p - 1) % e != 0:
        raise ValueError(f"e = {e} does not divide p-1 = {p - 1}")
    return PeriodSystem(p=p, e=e, f=(p - 1) // e, g=primitive_root(p))


def gaussian_periods(sys: PeriodSystem) -> list[CycElem]:
    """eta_j = sum_{i<f} zeta_p^{g^{j+e*i}} for j = 0..e-1; they sum to -1."""
    out = []
    for j in range(sys.e):
        coeffs = [0] * sys.p
        for i in range(sys.f):
            coeffs[pow(sys.g, j + sys.e * i, sys.p)] += 1
        out.append(CycElem(sys.p, tuple(coeffs)))
    return out


def period_polynomial(sys: PeriodSystem) -> IntPoly:
    """Monic degree-e product of (x - eta_j), expanded exactly over Z[zeta_p].

    Every coefficient of the product must reduce to a rational integer; a
    non-rational coefficient signals an arithmetic bug.
    """
    one = CycElem.integer(sys.p, 1)
    coeffs: list[CycElem] = [one]
    for eta in gaussian_periods(sys):
        neg = -eta
        new = [CycElem.integer(sys.p, 0) for _ in range(len(coeffs) + 1)]
        for i, c in enumerate(coeffs):
            new[i + 1] = new[i + 1] + c
            new[i] = new[i] + (c * neg).reduce()
        coeffs = new
    return IntPoly.of([c.as_int() for c in coeffs])


# ---------------------------------------------------------------------------
# resultants and discriminants


def _bareiss_det(rows: list[list[int]]) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(rows)
    if n == 0:
        return 1
    a = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def polynomial_resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) via the Sylvester matrix and a fraction-free determinant."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined")
    n, m = f.degree, g.degree
    if n == 0:
        return f.coeffs[0] ** m
    if m == 0:
        return g.coeffs[0] ** n
    size = n + m
    rows = []
    fc = list(reversed(f.coeffs))  # highest first
    gc = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([0] * i + fc + [0] * (size - i - len(fc)))
    for i in range(n):
        rows.append([0] * i + gc + [0] * (size - i - len(gc)))
    return _bareiss_det(rows)


def polynomial_discriminant(f: IntPoly) -> int:
    """disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f)."""
    if f.is_zero():
        raise ValueError("discriminant of the zero polynomial is undefined")
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    res = polynomial_resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    value, rem = divmod(sign * res, f.leading)
    if rem:
        raise ArithmeticError("resultant not divisible by leading coefficient")
    return value


# ---------------------------------------------------------------------------
# Gauss and Jacobi sums


def gauss_sum(sys: PeriodSystem, t: int) -> CycElem:
    """R_t = sum_i zeta_e^{t*i} zeta_p^{g^i} in Z[zeta_{e*p}].

    Convention: zeta_e = zeta_m^p and zeta_p = zeta_m^e for m = e*p.
    """
    m = sys.e * sys.p
    coeffs = [0] * m
    x = 1
    for i in range(sys.p - 1):
        exp = (sys.p * ((t * i) % sys.e) + sys.e * x) % m
        coeffs[exp] += 1
        x = x * sys.g % sys.p
    return CycElem(m, tuple(coeffs))


def _dlog_table(sys: PeriodSystem) -> dict[int, int]:
    table = {}
    x = 1
    for i in range(sys.p - 1):
        table[x] = i
        x = x * sys.g % sys.p
    return table


def jacobi_sum(sys: PeriodSystem, i: int, j: int) -> CycElem:
    """J(chi^i, chi^j) = sum over x != 0, 1 of chi^i(x) chi^j(1-x), where
    chi(g^n) = zeta_e^n.  Computed by direct summation over the field."""
    dlog = _dlog_table(sys)
    coeffs = [0] * sys.e
    for x in range(2, sys.p):
        coeffs[(i * dlog[x] + j * dlog[(1 - x) % sys.p]) % sys.e] += 1
    return CycElem(sys.e, tuple(coeffs))


# ---------------------------------------------------------------------------
# resolvent powers and the decomposition generator


def zeta_basis_tuple(a: CycElem) -> tuple[int, ...]:
    """Coefficients of a prime-order element over the basis zeta, ..., zeta^{e-1}.

    This is the representative of the coefficient vector modulo the all-ones
    relation with zero in the constant slot; it is the normalization in which
    the resolvent tuples have balanced pairwise products.
    """
    e = a.order
    if e < 2 or not is_prime(e):
        raise ValueError("zeta-basis tuples need prime order")
    red = a.reduce().coeffs  # support on degrees < e-1
    c0 = red[0]
    return tuple(red[i] - c0 for i in range(1, e))


def from_zeta_basis(e: int, tup) -> CycElem:
    return CycElem.from_coeffs(e, [0] + [int(v) for v in tup])


def _associates(a: CycElem) -> list[tuple[tuple[int, int], tuple[int, ...]]]:
    """All 2e associates sign * zeta^k * a with their zeta-basis tuples."""
    e = a.order
    out = []
    for sign in (1, -1):
        signed = a.scale(sign)
        for k in range(e):
            rotated = [0] * e
            for i, c in enumerate(signed.coeffs):
                rotated[(i + k) % e] += c
            out.append(((sign, k), zeta_basis_tuple(CycElem(e, tuple(rotated)))))
    return out


@dataclass(frozen=True)
class ResolventReport:
    """Everything the e-th power of one resolvent pins down.

    power_element is the exact a with R_t^e = p * a; coeff_tuple is its
    zeta-basis coefficient vector (the balanced tuple); canonical_tuple is
    the lexicographically maximal tuple over the 2e associates, recorded in
    canonical_signs as (sign, rotation) with
    canonical = sign * zeta^rotation * a.
    """

    system: PeriodSystem
    t: int
    power_element: CycElem
    coeff_tuple: tuple[int, ...]
    conj_product: int
    norm: int
    canonical_tuple: tuple[int, ...]
    canonical_signs: tuple[int, int]


def resolvent_power(sys: PeriodSystem, t: int) -> ResolventReport:
    """Compute R_t^e exactly, project into Z[zeta_e], factor out p.

    Requires prime e and gcd(t, e) = 1.  Asserts, exactly: invariance of
    R_t^e under every sigma_k with k = 1 (mod e); divisibility by p after
    projection; the recomposition R_t^e = p * a in order e*p; and
    a * conj(a) = p^(e-2).
    """
    e, p = sys.e, sys.p
    if not is_prime(e):
        raise ValueError(f"e = {e} must be prime for the p*a factorization")
    if gcd(t, e) != 1:
        raise ValueError(f"t = {t} must be coprime to e = {e}")
    m = e * p
    r = gauss_sum(sys, t)
    r_pow = r**e
    projected = subfield_project(r_pow, e)  # checks invariance and membership
    red = projected.reduce()
    if any(c % p for c in red.coeffs):
        raise ArithmeticError(f"R^e not divisible by p = {p}: {red.coeffs}")
    a = CycElem(e, tuple(c // p for c in red.coeffs))
    if subfield_embed(a, m).scale(p) != r_pow:
        raise ArithmeticError("recomposition p * a != R^e")

    conj_product = (a * a.conjugate()).as_int()
    expected = p ** (e - 2)
    if conj_product != expected:
        raise ArithmeticError(f"a*conj(a) = {conj_product} != p^(e-2) = {expected}")
    norm = field_norm(a)

    tup = zeta_basis_tuple(a)
    assoc = _associates(a)
    (sign, rot), canon = max(assoc, key=lambda kv: kv[1])
    return ResolventReport(
        system=sys,
        t=t,
        power_element=a,
        coeff_tuple=tup,
        conj_product=conj_product,
        norm=norm,
        canonical_tuple=canon,
        canonical_signs=(sign, rot),
    )


def _dilations(tup: tuple[int, ...], e: int) -> list[tuple[int, ...]]:
    """Galois reorderings of a zeta-basis tuple: slot s -> slot u*s, u in (Z/e)^*."""
    base = (0,) + tup
    out = []
    for u in range(1, e):
        uinv = pow(u, -1, e)
        out.append(tuple(base[(uinv * s) % e] for s in range(1, e)))
    return out


def decomposition_tuple(sys: PeriodSystem, t: int) -> DecompInstance:
    """Package the resolvent coefficient tuple as a balanced decomposition.

    The cyclic distance classes of the tuple (padded with the zero constant
    slot) each sum to the same value gamma, forced by a*conj(a) being
    rational; the instance has m = (e-1)/2 blocks and gap p^(e-2).  The
    arrangement is canonicalized over Galois reorderings so every t yields
    the same instance.
    """
    e = sys.e
    if e < 5 or not is_prime(e):
        raise ValueError("decomposition tuples need an odd prime e >= 5")
    report = resolvent_power(sys, t)
    tup = min(_dilations(report.coeff_tuple, e))
    k = e - 1
    padded = list(tup) + [0]
    class_sums = [
        sum(padded[i] * padded[(i + d) % e] for i in range(e))
        for d in range(1, (e - 1) // 2 + 1)
    ]
    if len(set(class_sums)) != 1:
        raise ArithmeticError(f"distance classes not balanced: {class_sums}")
    instance = make_instance(
        tup,
        distance_class_blocks(k, e),
        provenance=f"cyclotomic({sys.p},{e},{t})",
    )
    if instance.gap != sys.p ** (e - 2):
        raise ArithmeticError(f"gap {instance.gap} != p^(e-2)")
    return instance
