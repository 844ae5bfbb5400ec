"""Teichmuller embedding of prime-to-ell roots of unity into an unramified ell-adic ring.

The ring is W = (Z/ell^M)[x]/(g) for a monic lift g of an irreducible polynomial
of degree d over F_ell, d being the order of ell modulo e.  Roots of unity of
order e are Teichmuller lifts, so the embedding zeta_e -> W is fixed once the
generator is fixed; the choice below is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

from sympy import factorint, primitive_root
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from .cyclotomic import CyclotomicNumber
from .errors import PreconditionError
from .padic import PadicNumber, teichmuller_int, valuation


def multiplicative_order(a: int, n: int) -> int:
    if n == 1:
        return 1
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


@lru_cache(maxsize=None)
def _irreducible(ell: int, d: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree d over F_ell (constant first)."""
    if d == 1:
        return (0, 1)
    for tail in product(range(ell), repeat=d):
        # sympy wants dense lists with the leading coefficient first
        dense = [1] + list(tail)
        if dense[-1] and gf_irreducible_p([ZZ(c) for c in dense], ell, ZZ):
            return tuple(reversed(dense))
    raise ArithmeticError("no irreducible polynomial found")


class TeichmullerEmbedding:
    """Embedding of mu_e into W(F_{ell^d}) modulo ell^M, with ell not dividing e.

    For e dividing ell - 1 (d = 1) the target is Z_ell and zeta_e goes to
    omega(g)^((ell-1)/e) with g the smallest primitive root mod ell, so that the
    character omega with omega(g) = zeta_{ell-1} embeds as the Teichmuller character.
    """

    def __init__(self, ell: int, e: int, M: int):
        if e % ell == 0:
            raise PreconditionError("ell must not divide the root-of-unity order")
        self.ell, self.e, self.M = ell, e, M
        self.mod = ell**M
        self.d = multiplicative_order(ell, e)
        self.modulus = _irreducible(ell, self.d)
        self.zeta = self._find_zeta()
        self._powers = [self.one()]
        for _ in range(1, e):
            self._powers.append(self.mul(self._powers[-1], self.zeta))

    # -- ring arithmetic (tuples of d integers mod ell^M) -------------------

    def one(self):
        return (1,) + (0,) * (self.d - 1)

    def scalar(self, c: int):
        return (c % self.mod,) + (0,) * (self.d - 1)

    def add(self, a, b):
        return tuple((x + y) % self.mod for x, y in zip(a, b))

    def mul(self, a, b):
        d, mod = self.d, self.mod
        if d == 1:
            return (a[0] * b[0] % mod,)
        prod_ = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod_[i + j] += x * y
        g = self.modulus
        for i in range(2 * d - 2, d - 1, -1):
            c = prod_[i]
            if c:
                for j in range(d):
                    prod_[i - d + j] -= c * g[j]
        return tuple(c % mod for c in prod_[:d])

    def power(self, a, k: int):
        result, base = self.one(), a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def _teichmuller(self, a):
        q = self.ell**self.d
        x = a
        while True:
            y = self.power(x, q)
            if y == x:
                return x
            x = y

    def _find_zeta(self):
        ell, e, d = self.ell, self.e, self.d
        q = ell**d
        if d == 1:
            g = primitive_root(ell)
            w = teichmuller_int(g, ell, self.M)
            return (pow(w, (ell - 1) // e, self.mod),)
        primes = list(factorint(e))
        for tail in product(range(ell), repeat=d):
            a = tuple(reversed(tail))
            if not any(a):
                continue
            t = self.power(self._teichmuller(a), (q - 1) // e)
            if not any(self._is_one_mod_ell(self.power(t, e // p)) for p in primes):
                return t
        raise ArithmeticError("no primitive root of unity found")

    def _is_one_mod_ell(self, a) -> bool:
        return a[0] % self.ell == 1 and not any(c % self.ell for c in a[1:])

    # -- embedding ----------------------------------------------------------

    def zeta_power(self, k: int):
        return self._powers[k % self.e]

    def trace(self, a) -> int:
        """Trace from W to Z/ell^M, as the sum of Frobenius conjugates."""
        q = self.ell
        total = self.scalar(0)
        x = a
        for _ in range(self.d):
            total = self.add(total, x)
            x = self.power(x, q) if self.d > 1 else x
        if any(total[1:]):
            raise ArithmeticError("trace did not land in Z_ell")
        return total[0]

    def embed(self, x: CyclotomicNumber):
        """Image of x as (element of W, ell-exponent shift): x -> ell^shift * element."""
        if self.e % x.order:
            raise PreconditionError(f"order {x.order} does not divide {self.e}")
        step = self.e // x.order
        den = 1
        for c in x.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        s = valuation(den, self.ell)
        unit_den = den // self.ell**s
        inv = pow(unit_den, -1, self.mod)
        acc = self.scalar(0)
        for i, c in enumerate(x.coeffs):
            if c:
                n = (c * den).numerator * inv
                acc = self.add(acc, tuple(n * z % self.mod for z in self.zeta_power(i * step)))
        return acc, -s

    def embed_padic(self, x: CyclotomicNumber) -> PadicNumber:
        """Image of x in Q_ell when it lands there (always when d = 1)."""
        elem, shift = self.embed(x)
        if any(elem[1:]):
            raise PreconditionError("value does not lie in Q_ell under this embedding")
        val = Fraction(elem[0]) * Fraction(self.ell) ** shift
        return PadicNumber.from_rational(val, self.ell, self.M + shift)

    def valuation(self, x: CyclotomicNumber):
        """ell-adic valuation of x at the prime fixed by the embedding (inf if zero mod ell^M)."""
        elem, shift = self.embed(x)
        v = min(valuation(c, self.ell) for c in elem)
        return v + shift

    def precision_of(self, x: CyclotomicNumber) -> int:
        """Absolute precision of the image of x."""
        return self.M + self.embed(x)[1]

