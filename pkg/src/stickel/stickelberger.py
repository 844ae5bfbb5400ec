"""Stickelberger elements, their twists, and the restriction identities between them."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

from .errors import PreconditionError
from .fields import (
    AbelianField,
    field_from_subgroup,
    is_imaginary,
    is_subfield,
    prime_factors,
    units,
)
from .grouprings import GroupRingElement, restrict_ring

__all__ = [
    "stickelberger",
    "imaginary_factor",
    "twist_factor",
    "twisted_stickelberger",
    "restrict_ring",
    "euler_factor",
    "check_restriction",
    "decomposition_field",
    "ramified_annihilation_check",
    "RestrictionReport",
]


def stickelberger(F: AbelianField) -> GroupRingElement:
    """sigma_F = -sum_{0<a<f, (a,f)=1} (1/2 - a/f) (F/a)^{-1}."""
    f = F.f
    if f == 1:
        raise PreconditionError("the Stickelberger element needs a conductor f > 1")
    coeffs = {}
    for a in units(f):
        g = F.inv(a)
        coeffs[g] = coeffs.get(g, 0) - (Fraction(1, 2) - Fraction(a, f))
    return GroupRingElement(F, coeffs)


def imaginary_factor(F: AbelianField):
    """sigma'_F = sum_{0<a<f/2} (1/2 - a/f) (F/a)^{-1} and the sign s with sigma_F = s (1 - tau) sigma'_F.

    The sign is found by expanding both sides, never assumed.  It is -1 for
    every field (the a and f-a terms pair up with a minus sign).
    """
    if not is_imaginary(F):
        raise PreconditionError("F is real")
    f = F.f
    coeffs = {}
    for a in units(f):
        if 2 * a < f:
            g = F.inv(a)
            coeffs[g] = coeffs.get(g, 0) + (Fraction(1, 2) - Fraction(a, f))
    sp = GroupRingElement(F, coeffs)
    one = GroupRingElement.one(F)
    tau = GroupRingElement.group_element(F, F.conjugation)
    product = (one - tau) * sp
    sigma = stickelberger(F)
    if product == sigma:
        sign = 1
    elif -product == sigma:
        sign = -1
    else:
        raise ArithmeticError("sigma_F is not a multiple of (1 - tau) sigma'_F")
    return sp, sign


def _check_twist(F: AbelianField, c: int):
    if c % 2 == 0:
        raise PreconditionError(f"twist c={c} must be odd")
    if gcd(c, F.f) != 1:
        raise PreconditionError(f"twist c={c} must be prime to f={F.f}")


def twist_factor(F: AbelianField, c: int) -> GroupRingElement:
    """delta_F^c = 1 - c (F/c)^{-1}."""
    _check_twist(F, c)
    g = F.inv(F.rep(c)) if F.f > 1 else F.identity
    return GroupRingElement(F, {F.identity: 1}) - GroupRingElement(F, {g: c})


def twisted_stickelberger(F: AbelianField, c: int) -> GroupRingElement:
    """sigma_F^c = delta_F^c sigma_F, checked to be integral."""
    return (twist_factor(F, c) * stickelberger(F)).require_integral()


def euler_factor(F: AbelianField, K: AbelianField) -> GroupRingElement:
    """prod_{p | f_F, p not dividing f_K} (1 - (K/p)^{-1}) in Q[G_K]."""
    out = GroupRingElement.one(K)
    for p in prime_factors(F.f):
        if K.f % p:
            g = K.inv(K.rep(p)) if K.f > 1 else K.identity
            out = out * (GroupRingElement.one(K) - GroupRingElement.group_element(K, g))
    return out


@dataclass
class RestrictionReport:
    F: AbelianField
    K: AbelianField
    c: int | None
    lhs: GroupRingElement
    rhs: GroupRingElement
    factor: GroupRingElement
    equal: bool
    empty_product: bool
    notes: list[str] = dc_field(default_factory=list)

    def to_json(self):
        return {
            "F": self.F.to_json(),
            "K": self.K.to_json(),
            "c": self.c,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "factor": self.factor.to_json(),
            "equal": self.equal,
            "empty_product": self.empty_product,
        }


def check_restriction(F: AbelianField, K: AbelianField, c: int | None = None) -> RestrictionReport:
    """Compare N_{F/K}(sigma_F^(c)) with prod (1 - (K/p)^{-1}) sigma_K^(c)."""
    if not is_subfield(K, F):
        raise PreconditionError("K is not a subfield of F")
    if K.f == 1:
        raise PreconditionError("K = Q is excluded from the restriction identity")
    if c is None:
        sF, sK = stickelberger(F), stickelberger(K)
    else:
        _check_twist(F, c)
        sF, sK = twisted_stickelberger(F, c), twisted_stickelberger(K, c)
    lhs = restrict_ring(F, K, sF)
    factor = euler_factor(F, K)
    rhs = factor * sK
    empty = all(K.f % p == 0 for p in prime_factors(F.f))
    return RestrictionReport(F, K, c, lhs, rhs, factor, lhs == rhs, empty)


def decomposition_field(F: AbelianField, p: int) -> AbelianField:
    """Largest subfield of F in which p splits completely.

    Inside Q(zeta_f), with f = p^a f', it is the fixed field of the group
    generated by H_F, the inertia group (units that are 1 mod f') and a
    Frobenius lift (p mod f', 1 mod p^a).
    """
    f = F.f
    if f % p:
        raise PreconditionError(f"{p} does not divide the conductor {f}")
    a = 0
    while f % p ** (a + 1) == 0:
        a += 1
    q = p**a
    fp = f // q
    gens = list(F.subgroup_generators)
    gens += [u for u in units(f) if u % fp == 1 % fp]
    if fp > 1:
        frob = next(x for x in range(1, f) if x % q == 1 and x % fp == p % fp)
        gens.append(frob)
    return field_from_subgroup(f, gens)


def ramified_annihilation_check(F: AbelianField, p: int) -> dict:
    """Check N_{F/K}(sigma_F) = 0 for K the decomposition field of p in F.

    When K = Q the identity in question is excluded; the restriction is still
    computed (it is the augmentation, always 0 for f > 2) and the report marks
    the check as vacuous.
    """
    K = decomposition_field(F, p)
    image = restrict_ring(F, K, stickelberger(F))
    return {
        "F": F.to_json(),
        "p": p,
        "K": K.to_json(),
        "degree_K": K.degree,
        "vacuous": K.f == 1,
        "restriction": image.to_json(),
        "zero": image.is_zero(),
    }
