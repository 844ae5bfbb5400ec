"""Logarithmic valuations: ordinary valuations away from ell, -Log_ell(norm)/deg at ell.

Degrees are calibrated as deg(p) = Log_ell(p) for p != ell and
deg = phi(ell^k) Log_ell(1 + ell) for the ell-adic place of Q_ell(zeta_{ell^k}),
so that the logarithmic valuation of 1 + ell is exactly -1 and the image of
the ell-adic place is Z_ell.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from sympy import factorint

from .cyclotomic import CyclotomicNumber, cyclotomic_norm, euler_phi
from .errors import PrecisionError, PreconditionError
from .padic import INF, PadicNumber, iwasawa_log, valuation

ELL_PLACE = "ell"

CALIBRATION = "deg(p) = Log(p) for p != ell; deg(ell-place of Q_ell(zeta_ell^k)) = phi(ell^k) Log(1 + ell)"


class LocalCyclotomicField:
    """Q_ell(zeta_{ell^k}), totally ramified of degree phi(ell^k)."""

    def __init__(self, ell: int, k: int):
        if ell < 3 or ell % 2 == 0:
            raise PreconditionError("ell must be an odd prime")
        if k < 0:
            raise PreconditionError("level must be non-negative")
        self.ell, self.k = ell, k
        self.order = ell**k
        self.degree = euler_phi(self.order)

    def __eq__(self, other):
        return isinstance(other, LocalCyclotomicField) and (self.ell, self.k) == (other.ell, other.k)

    def __hash__(self):
        return hash((self.ell, self.k))

    def __repr__(self):
        return f"Q_{self.ell}(zeta_{self.order})"

    def element(self, coeffs, absprec=INF) -> LocalElement:
        return LocalElement(self, coeffs, absprec)

    def zeta(self, j: int = 1) -> LocalElement:
        return LocalElement(self, CyclotomicNumber.zeta(self.order, j).coeffs)

    def rational(self, r) -> LocalElement:
        return LocalElement(self, CyclotomicNumber.rational(self.order, r).coeffs)


class LocalElement:
    """sum c_i zeta^i with c_i known modulo ell^absprec (INF for exact rationals)."""

    __slots__ = ("field", "value", "absprec")

    def __init__(self, field: LocalCyclotomicField, coeffs, absprec=INF):
        cs = []
        for c in coeffs:
            if isinstance(c, PadicNumber):
                absprec = min(absprec, c.absprec)
                cs.append(c.lift())
            else:
                cs.append(Fraction(c))
        self.field = field
        self.value = CyclotomicNumber(field.order, cs)
        self.absprec = absprec

    def __mul__(self, other):
        if not isinstance(other, LocalElement) or other.field != self.field:
            return NotImplemented
        # multiplication by an element of valuation v keeps absprec + v; take the safe minimum
        ap = min(self.absprec + max(0, _vmin(other)), other.absprec + max(0, _vmin(self)))
        out = LocalElement(self.field, [])
        out.value = self.value * other.value
        out.absprec = ap
        return out

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def valuation(self) -> Fraction:
        """Normalized valuation v(ell) = 1, read off the norm."""
        N = cyclotomic_norm(self.value)
        if N == 0:
            raise PreconditionError("zero has no valuation")
        return Fraction(valuation(N, self.field.ell), self.field.degree)

    def __repr__(self):
        return f"LocalElement({self.field!r}, {self.value!r}, absprec={self.absprec})"


def _vmin(x: LocalElement) -> int:
    vals = [valuation(c, x.field.ell) for c in x.value.coeffs if c]
    return min(vals) if vals else 0


@dataclass(frozen=True)
class PlaceDegree:
    place: object
    degree: PadicNumber

    def __post_init__(self):
        if self.degree.is_zero():
            raise PreconditionError("a place degree must be nonzero")

    def to_json(self):
        return {"place": self.place, "deg": self.degree.to_json()}


def local_norm(x: LocalElement, M: int = 20) -> PadicNumber:
    """N_{Q_ell(zeta)/Q_ell}(x) as the resultant with the cyclotomic polynomial.

    Exact inputs give the norm to ``M`` digits of relative precision; inputs
    known modulo ell^A give relative precision floor(A - v(x)).
    """
    if x.is_zero():
        raise PreconditionError("norm of zero")
    ell = x.field.ell
    N = cyclotomic_norm(x.value)
    if N == 0:
        raise PrecisionError("element is zero to working precision")
    if x.absprec == INF:
        rel = M
    else:
        rel = floor(x.absprec - Fraction(valuation(N, ell), x.field.degree))
        if rel < 1:
            raise PrecisionError("input precision exhausted")
        rel = min(rel, M)
    return PadicNumber.from_rational(N, ell, valuation(N, ell) + rel)


def place_degree(ell: int, place, M: int, k: int = 0) -> PlaceDegree:
    """Calibrated degree, known modulo ell^M."""
    if place == ELL_PLACE:
        d = iwasawa_log(1 + ell, M + 1, ell) * euler_phi(ell**k)
        return PlaceDegree(ELL_PLACE, d)
    p = int(place)
    if p == ell:
        raise PreconditionError("use the ell-adic place descriptor for ell")
    return PlaceDegree(p, iwasawa_log(p, M, ell))


def logval(x, place, ell: int | None = None, M: int = 20):
    """Logarithmic valuation of x at ``place``.

    ``x`` is a nonzero rational (any place) or a LocalElement (ell-adic place
    of its field).  Away from ell the result is the ordinary valuation (an int);
    at ell it is -Log_ell(N(x))/deg, a PadicNumber.
    """
    if isinstance(x, LocalElement):
        if place != ELL_PLACE:
            raise PreconditionError("local elements only have the ell-adic place")
        ell, k = x.field.ell, x.field.k
        # Log(N(x)) and deg both carry a factor of valuation 1 + v(phi(ell^k))
        W = M + 1 + valuation(x.field.degree, ell)
        norm = local_norm(x, W)
    else:
        x = Fraction(x)
        if x == 0:
            raise PreconditionError("logarithmic valuation of zero")
        if ell is None:
            raise PreconditionError("ell is required")
        if place != ELL_PLACE:
            p = int(place)
            if p == ell:
                raise PreconditionError("use the ell-adic place descriptor for ell")
            return valuation(x, p)
        k, W = 0, M + 1
        norm = PadicNumber.from_rational(x, ell, valuation(x, ell) + W)
    deg = place_degree(ell, ELL_PLACE, W - 1, k).degree
    return -(iwasawa_log(norm, W) / deg)


def degree_zero_check(x, ell: int, M: int = 12) -> dict:
    """sum_p nu_p(x) deg(p) = 0 mod ell^M over the primes of x and the ell-adic place."""
    x = Fraction(x)
    if x == 0:
        raise PreconditionError("x must be nonzero")
    if ell < 3 or ell % 2 == 0:
        raise PreconditionError("ell must be an odd prime")
    W = M + 2
    terms = []
    total = PadicNumber.zero(ell, W)
    primes = set(factorint(abs(x.numerator))) | set(factorint(x.denominator))
    for p in sorted(primes - {ell}):
        nu = valuation(x, p)
        d = place_degree(ell, p, W).degree
        total = total + d * nu
        terms.append({"place": p, "nu": nu, "deg": d.to_json()})
    nu_ell = logval(x, ELL_PLACE, ell, W)
    d = place_degree(ell, ELL_PLACE, W).degree
    total = total + nu_ell * d
    terms.append({"place": ELL_PLACE, "nu": nu_ell.to_json(), "deg": d.to_json()})
    if total.absprec < M:
        raise PrecisionError("working precision fell below M")
    ok = total.is_zero() or total.val >= M
    return {
        "x": [x.numerator, x.denominator],
        "ell": ell,
        "terms": terms,
        "sum_valuation_ge": M,
        "holds": bool(ok),
        "calibration": CALIBRATION,
    }


__all__ = [
    "ELL_PLACE",
    "CALIBRATION",
    "LocalCyclotomicField",
    "LocalElement",
    "PlaceDegree",
    "local_norm",
    "place_degree",
    "logval",
    "degree_zero_check",
]
