"""Elements of the group rings Q[G_F] and (Z/ell^M)[G_F]."""

from __future__ import annotations

from fractions import Fraction

from .errors import IntegralityError, PreconditionError
from .fields import AbelianField, GaloisElement, make_field, restrict
from .padic import PadicNumber


class GroupRingElement:
    """A finitely supported map G_F -> coefficients.

    Coefficients are Fractions (``ell is None``) or integers modulo ``ell**M``.
    Keys are canonical coset representatives; zero entries are never stored.
    """

    __slots__ = ("field", "coeffs", "ell", "M")

    def __init__(self, field: AbelianField, coeffs=None, ell: int | None = None, M: int | None = None):
        self.field = field
        self.ell = ell
        self.M = M
        clean = {}
        if coeffs:
            mod = ell**M if ell is not None else None
            for g, c in coeffs.items():
                g = field.rep(g.rep if isinstance(g, GaloisElement) else g)
                if mod is None:
                    c = Fraction(c)
                else:
                    c = _to_residue(c, mod, ell)
                total = clean.get(g, 0) + c
                if mod is not None:
                    total %= mod
                if total:
                    clean[g] = total
                else:
                    clean.pop(g, None)
        self.coeffs = clean

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field, ell=None, M=None):
        return cls(field, {}, ell, M)

    @classmethod
    def one(cls, field, ell=None, M=None):
        return cls(field, {field.identity: 1}, ell, M)

    @classmethod
    def group_element(cls, field, g, c=1, ell=None, M=None):
        return cls(field, {g: c}, ell, M)

    @classmethod
    def norm_element(cls, field, ell=None, M=None):
        return cls(field, {g: 1 for g in field.elements}, ell, M)

    # -- kind ----------------------------------------------------------------

    @property
    def is_ladic(self) -> bool:
        return self.ell is not None

    def _like(self, coeffs):
        return GroupRingElement(self.field, coeffs, self.ell, self.M)

    def _check(self, other):
        if not isinstance(other, GroupRingElement):
            raise TypeError("expected a GroupRingElement")
        if other.field != self.field:
            raise PreconditionError("group ring elements over different fields")
        if (self.ell, self.M) != (other.ell, other.M):
            raise PreconditionError("coefficient kinds differ")

    def to_ladic(self, ell: int, M: int) -> GroupRingElement:
        """Reduce a rational element with ell-integral coefficients modulo ell^M."""
        if self.is_ladic:
            if self.ell != ell or self.M < M:
                raise PreconditionError("cannot change prime or raise precision")
            return GroupRingElement(self.field, self.coeffs, ell, M)
        return GroupRingElement(self.field, self.coeffs, ell, M)

    def is_integral(self) -> bool:
        return self.is_ladic or all(c.denominator == 1 for c in self.coeffs.values())

    def require_integral(self) -> GroupRingElement:
        if not self.is_integral():
            bad = {g: c for g, c in self.coeffs.items() if c.denominator != 1}
            raise IntegralityError(f"non-integral coefficients: {bad}")
        return self

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return self._like(out)

    def __neg__(self):
        return self._like({g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._like({g: c * other for g, c in self.coeffs.items()})
        self._check(other)
        F = self.field
        out = {}
        for g, a in self.coeffs.items():
            for h, b in other.coeffs.items():
                k = F.mul(g, h)
                out[k] = out.get(k, 0) + a * b
        return self._like(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return (self.field == other.field and (self.ell, self.M) == (other.ell, other.M)
                and self.coeffs == other.coeffs)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, g):
        g = self.field.rep(g.rep if isinstance(g, GaloisElement) else g)
        c = self.coeffs.get(g, 0)
        if self.is_ladic:
            return PadicNumber.from_rational(c, self.ell, self.M)
        return Fraction(c)

    def augmentation(self):
        return sum(self.coeffs.values(), Fraction(0) if not self.is_ladic else 0)

    def involution(self) -> GroupRingElement:
        """sigma -> sigma^{-1} extended linearly."""
        return self._like({self.field.inv(g): c for g, c in self.coeffs.items()})

    def restrict_to(self, K: AbelianField) -> GroupRingElement:
        return restrict_ring(self.field, K, self)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        items = sorted(self.coeffs.items())
        body = " + ".join(f"({c})*[{g}]" for g, c in items)
        suffix = f" mod {self.ell}^{self.M}" if self.is_ladic else ""
        return body + suffix

    # -- serialization ------------------------------------------------------

    def to_json(self):
        d = {"f": self.field.f, "H": list(self.field.subgroup_generators)}
        if self.is_ladic:
            d["ell"], d["M"] = self.ell, self.M
            d["coeffs"] = [[g, c, 1] for g, c in sorted(self.coeffs.items())]
        else:
            d["coeffs"] = [[g, c.numerator, c.denominator] for g, c in sorted(self.coeffs.items())]
        return d

    @classmethod
    def from_json(cls, d, field: AbelianField | None = None):
        F = field if field is not None else make_field(d["f"], d["H"])
        ell, M = d.get("ell"), d.get("M")
        return cls(F, {g: Fraction(n, q) for g, n, q in d["coeffs"]}, ell, M)


def _to_residue(c, mod, ell):
    if isinstance(c, PadicNumber):
        return c.residue() % mod
    c = Fraction(c)
    if c.denominator % ell == 0:
        raise IntegralityError(f"{c} is not {ell}-integral")
    return c.numerator * pow(c.denominator, -1, mod) % mod


def restrict_ring(F: AbelianField, K: AbelianField, x: GroupRingElement) -> GroupRingElement:
    """Linear extension of the restriction G_F -> G_K (the map written N_{F/K})."""
    if x.field != F:
        raise PreconditionError("element does not live over F")
    out = {}
    for g, c in x.coeffs.items():
        k = restrict(F, K, g).rep if F is not K else g
        out[k] = out.get(k, 0) + c
    return GroupRingElement(K, out, x.ell, x.M)
