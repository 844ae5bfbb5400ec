"""Exact arithmetic in cyclotomic fields Q(zeta_m), power basis modulo the m-th cyclotomic polynomial."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, constant term first."""
    if m < 1:
        raise ValueError("m must be positive")
    # x^m - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def _exact_div(a, b):
    """Quotient of integer polynomials when b is monic and divides a."""
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    if any(a[: len(b) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return q


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_rem(a, b):
    """Remainder of a by b over Q (b nonzero, any leading coefficient)."""
    a = [Fraction(x) for x in _trim(a)]
    b = _trim(b)
    lead = Fraction(b[-1])
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] / lead
        shift = len(a) - 1 - db
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        a = _trim(a)
    return a


def reduce_mod_cyclotomic(coeffs, m: int) -> tuple[Fraction, ...]:
    """Reduce a polynomial in zeta_m to the power basis of length phi(m)."""
    phi = cyclotomic_polynomial(m)
    n = len(phi) - 1
    a = [Fraction(c) for c in coeffs]
    # Phi_m is monic: eliminate top coefficients one by one
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i]
        if c:
            base = i - n
            for j in range(n):
                a[base + j] -= c * phi[j]
        a[i] = Fraction(0)
    a = a[:n] + [Fraction(0)] * (n - len(a))
    return tuple(a)


def resultant(f, g) -> Fraction:
    """Resultant of two polynomials over Q (coefficient lists, constant first).

    Uses the Euclidean recursion Res(A, B) = (-1)^(ab) lc(B)^(a - deg R) Res(B, R),
    where R = A mod B.
    """
    A = _trim([Fraction(x) for x in f])
    B = _trim([Fraction(x) for x in g])
    if not A or not B:
        return Fraction(0)
    result = Fraction(1)
    while True:
        a, b = len(A) - 1, len(B) - 1
        if b == 0:
            return result * B[0] ** a
        R = poly_rem(A, B)
        if not R:
            return Fraction(0)
        r = len(R) - 1
        if (a * b) % 2:
            result = -result
        result *= B[-1] ** (a - r)
        A, B = B, R


class CyclotomicNumber:
    """An element sum c_i zeta_m^i of Q(zeta_m), stored reduced (length phi(m)).

    Equality compares values, lifting to a common order when the orders differ.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != euler_phi(order):
            coeffs = reduce_mod_cyclotomic(coeffs, order)
        self.order = order
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_poly(cls, order: int, coeffs) -> CyclotomicNumber:
        return cls(order, reduce_mod_cyclotomic(coeffs, order))

    @classmethod
    def rational(cls, order: int, r) -> CyclotomicNumber:
        n = euler_phi(order)
        return cls(order, [Fraction(r)] + [Fraction(0)] * (n - 1))

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> CyclotomicNumber:
        k %= order
        return cls.from_poly(order, [0] * k + [1])

    @classmethod
    def from_exponent_sums(cls, order: int, buckets) -> CyclotomicNumber:
        """Sum of ``buckets[k] * zeta^k`` for ``k < order``."""
        return cls.from_poly(order, buckets)

    # -- structure ----------------------------------------------------------

    def lift(self, order: int) -> CyclotomicNumber:
        """The same value written in Q(zeta_order); ``self.order`` must divide ``order``."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        poly = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            poly[i * step] = c
        return CyclotomicNumber.from_poly(order, poly)

    def _common(self, other):
        if isinstance(other, (int, Fraction)):
            return self, CyclotomicNumber.rational(self.order, other)
        if not isinstance(other, CyclotomicNumber):
            return None, None
        if other.order == self.order:
            return self, other
        m = lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return CyclotomicNumber(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return CyclotomicNumber(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.order, [x * other for x in self.coeffs])
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return CyclotomicNumber.from_poly(a.order, poly_mul(a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.order, [x / other for x in self.coeffs])
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = CyclotomicNumber.rational(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    __hash__ = None

    def galois_conjugate(self, k: int) -> CyclotomicNumber:
        """Image under zeta -> zeta^k (k prime to the order)."""
        if gcd(k, self.order) != 1:
            raise ValueError("k must be prime to the order")
        poly = [Fraction(0)] * self.order
        for i, c in enumerate(self.coeffs):
            poly[i * k % self.order] += c
        return CyclotomicNumber.from_poly(self.order, poly)

    def norm(self) -> Fraction:
        return cyclotomic_norm(self)

    def __repr__(self):
        terms = [f"{c}*z{self.order}^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"

    def to_json(self):
        return {"order": self.order,
                "coeffs": [[c.numerator, c.denominator] for c in self.coeffs]}

    @classmethod
    def from_json(cls, d):
        return cls(d["order"], [Fraction(n, q) for n, q in d["coeffs"]])


def cyclotomic_norm(x: CyclotomicNumber) -> Fraction:
    """Product of all Galois conjugates of x: Res(Phi_m, x(t))."""
    return resultant(cyclotomic_polynomial(x.order), list(x.coeffs))
