"""ell-adic numbers at explicit precision, the Teichmuller lift and the Iwasawa logarithm.

A :class:`PadicNumber` stores ``ell**val * unit`` where ``unit`` is known modulo
``ell**prec``.  The absolute precision of a nonzero value is therefore
``val + prec``.  A value that is zero to the available precision has
``val = inf``, ``unit = 0`` and carries its absolute precision in ``prec``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, PrecisionError

INF = math.inf


def valuation(n, ell: int):
    """ell-adic valuation of a nonzero integer or Fraction (inf for 0)."""
    if n == 0:
        return INF
    if isinstance(n, Fraction):
        return valuation(n.numerator, ell) - valuation(n.denominator, ell)
    n = abs(int(n))
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def _check_prime(ell):
    if ell < 3 or ell % 2 == 0:
        raise PreconditionError(f"ell must be an odd prime, got {ell}")


@dataclass(frozen=True)
class PadicNumber:
    ell: int
    val: float | int
    unit: int
    prec: float | int

    def __post_init__(self):
        if self.val == INF:
            if self.unit != 0:
                raise ValueError("zero must have unit part 0")
        elif self.unit % self.ell == 0:
            raise ValueError("unit part must be prime to ell")

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, ell, absprec=INF):
        return cls(ell, INF, 0, absprec)

    @classmethod
    def from_rational(cls, x, ell: int, absprec) -> PadicNumber:
        """The rational ``x`` known modulo ``ell**absprec``."""
        x = Fraction(x)
        if x == 0:
            return cls.zero(ell, absprec)
        v = valuation(x, ell)
        if v >= absprec:
            return cls.zero(ell, absprec)
        rel = absprec - v
        num = x.numerator // ell ** max(v, 0)
        den = x.denominator // ell ** max(-v, 0)
        if rel == INF:
            raise PrecisionError("an exact nonzero rational needs a finite precision")
        mod = ell**rel
        return cls(ell, v, num * pow(den, -1, mod) % mod, rel)

    # -- accessors ------------------------------------------------------------

    @property
    def absprec(self):
        return self.prec if self.val == INF else self.val + self.prec

    def is_zero(self) -> bool:
        return self.val == INF

    def is_unit(self) -> bool:
        return self.val == 0

    def lift(self) -> Fraction:
        """Smallest non-negative representative (times ell**val)."""
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.ell) ** self.val

    def residue(self, M: int | None = None) -> int:
        """Integer representative modulo ``ell**M`` (requires an integral value)."""
        M = self.absprec if M is None else M
        if M > self.absprec:
            raise PrecisionError(f"value is only known modulo {self.ell}^{self.absprec}")
        if self.is_zero():
            return 0
        if self.val < 0:
            raise PreconditionError("value is not ell-integral")
        return self.unit * self.ell**self.val % self.ell**M

    def with_absprec(self, M) -> PadicNumber:
        if M > self.absprec:
            raise PrecisionError("cannot raise precision")
        if self.is_zero():
            return PadicNumber.zero(self.ell, M)
        if self.val >= M:
            return PadicNumber.zero(self.ell, M)
        rel = M - self.val
        return PadicNumber(self.ell, self.val, self.unit % self.ell**rel, rel)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            if other.ell != self.ell:
                raise ValueError("mixed primes")
            return other
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            return PadicNumber.zero(self.ell)
        if self.absprec == INF:
            raise PrecisionError("cannot infer a precision for a rational operand")
        v = valuation(other, self.ell)
        if self.is_zero():
            ap = max(self.prec, v + 1)
        else:
            ap = max(self.absprec, v + self.prec)
        return PadicNumber.from_rational(other, self.ell, ap)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero() and other.prec == INF:
            return self
        if self.is_zero() and self.prec == INF:
            return other
        absprec = min(self.absprec, other.absprec)
        return PadicNumber.from_rational(self.lift() + other.lift(), self.ell, absprec)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        mod = self.ell**self.prec
        return PadicNumber(self.ell, self.val, (-self.unit) % mod, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            # zero to precision a times something of valuation v is zero to precision a + v
            cands = []
            for z, w in ((self, other), (other, self)):
                if z.is_zero():
                    cands.append(z.prec + (w.val if not w.is_zero() else w.prec))
            return PadicNumber.zero(self.ell, min(cands))
        rel = min(self.prec, other.prec)
        mod = self.ell**rel
        return PadicNumber(self.ell, self.val + other.val, self.unit * other.unit % mod, rel)

    __rmul__ = __mul__

    def inverse(self) -> PadicNumber:
        if self.is_zero():
            raise ZeroDivisionError("p-adic zero has no inverse")
        mod = self.ell**self.prec
        return PadicNumber(self.ell, -self.val, pow(self.unit, -1, mod), self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.is_zero():
            if k == 0:
                raise ZeroDivisionError("0**0 is undefined at finite precision")
            return PadicNumber.zero(self.ell, self.prec * k)
        mod = self.ell**self.prec
        return PadicNumber(self.ell, self.val * k, pow(self.unit, k, mod), self.prec)

    def equals_mod(self, other, M) -> bool:
        """True when both values agree modulo ``ell**M``."""
        diff = self - other
        if diff.absprec < M:
            raise PrecisionError(f"difference only known modulo {self.ell}^{diff.absprec}")
        return diff.val >= M

    def __repr__(self):
        if self.is_zero():
            return f"O({self.ell}^{self.prec})"
        return f"{self.unit}*{self.ell}^{self.val} + O({self.ell}^{self.absprec})"

    def to_json(self):
        return {"ell": self.ell, "val": None if self.is_zero() else self.val,
                "unit": self.unit, "prec": None if self.prec == INF else self.prec}

    @classmethod
    def from_json(cls, d):
        val = INF if d["val"] is None else d["val"]
        prec = INF if d["prec"] is None else d["prec"]
        return cls(d["ell"], val, d["unit"], prec)


def as_padic(x, ell, M) -> PadicNumber:
    if isinstance(x, PadicNumber):
        return x
    return PadicNumber.from_rational(x, ell, M)


def teichmuller(u, M: int, ell: int | None = None) -> PadicNumber:
    """Teichmuller representative of a unit, i.e. the root of unity congruent to it mod ell.

    Computed as the fixpoint of ``x -> x**ell`` modulo ``ell**M``.
    """
    if not isinstance(u, PadicNumber):
        if ell is None:
            raise PreconditionError("ell is required for plain integers")
        u = PadicNumber.from_rational(u, ell, M)
    ell = u.ell
    _check_prime(ell)
    if u.val != 0:
        raise PreconditionError("teichmuller needs a unit")
    mod = ell**M
    x = u.unit % ell
    while True:
        y = pow(x, ell, mod)
        if y == x:
            return PadicNumber(ell, 0, x, M)
        x = y


def teichmuller_int(a: int, ell: int, M: int) -> int:
    """Teichmuller lift of ``a mod ell`` as an integer modulo ell**M."""
    return teichmuller(a % ell, M, ell).unit


def _log_one_plus(z: int, ell: int, M: int) -> int:
    """log(1 + z) modulo ell**M for an integer z divisible by ell."""
    if z % ell:
        raise PreconditionError("series needs z = 0 mod ell")
    mod = ell**M
    if z % mod == 0:
        return 0
    vz = valuation(z, ell)
    total = 0
    k = 1
    zk = 1
    # k*vz - floor(log_ell k) is a non-decreasing lower bound for v(z^k/k)
    while k * vz - (len(_digits(k, ell)) - 1) < M:
        zk *= z
        a = valuation(k, ell)
        kp = k // ell**a
        term = (zk // ell**a) * pow(kp, -1, mod)
        total += term if k % 2 else -term
        k += 1
    return total % mod


def _digits(k, ell):
    out = []
    while k:
        out.append(k % ell)
        k //= ell
    return out


def iwasawa_log(x, M: int | None = None, ell: int | None = None) -> PadicNumber:
    """Iwasawa logarithm, normalized by Log(ell) = 0 and Log(root of unity) = 0.

    ``x = ell**v * omega * u`` with ``u = 1 mod ell``; the result is the
    logarithm series at ``u``, correct modulo ``ell**M`` (and never more precise
    than the relative precision of ``x``).
    """
    if not isinstance(x, PadicNumber):
        if ell is None or M is None:
            raise PreconditionError("ell and M are required for plain rationals")
        if x == 0:
            raise PreconditionError("Log of zero")
        x = PadicNumber.from_rational(x, ell, valuation(x, ell) + M)
    ell = x.ell
    _check_prime(ell)
    if x.is_zero():
        raise PreconditionError("Log of zero")
    P = x.prec if M is None else min(M, x.prec)
    if P == INF:
        raise PrecisionError("no finite precision given")
    mod = ell**P
    unit = x.unit % mod
    omega = teichmuller(unit, P, ell).unit
    principal = unit * pow(omega, -1, mod) % mod
    return PadicNumber.from_rational(_log_one_plus(principal - 1, ell, P), ell, P)
