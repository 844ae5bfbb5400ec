"""Abelian number fields presented as (conductor f, kernel H <= (Z/fZ)^x).

All field-theoretic questions reduce to integer computations inside the fixed
cyclotomic field Q(zeta_f): the Galois group is (Z/fZ)^x / H, the Artin symbol
of a is the class of a, and K is a subfield of F when f_K | f_F and H_F maps
into H_K.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd

from sympy import factorint

from .errors import ConductorError, PreconditionError


@lru_cache(maxsize=None)
def units(f: int) -> tuple[int, ...]:
    if f == 1:
        return (0,)
    return tuple(a for a in range(1, f) if gcd(a, f) == 1)


def prime_factors(n: int) -> list[int]:
    return sorted(factorint(n))


def close_subgroup(f: int, gens) -> frozenset[int]:
    """Subgroup of (Z/fZ)^x generated by ``gens``."""
    if f == 1:
        return frozenset({0})
    group = {1 % f}
    frontier = [1 % f]
    gens = [g % f for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g % f
                if y not in group:
                    group.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(group)


def reduction_kernel(f: int, d: int) -> frozenset[int]:
    """Kernel of (Z/fZ)^x -> (Z/dZ)^x for d | f."""
    return frozenset(a for a in units(f) if a % d == 1 % d)


def true_conductor(f: int, H: frozenset[int]) -> int:
    """Conductor of the fixed field of H inside Q(zeta_f)."""
    changed = True
    while changed and f > 1:
        changed = False
        for p in prime_factors(f):
            d = f // p
            if reduction_kernel(f, d) <= H:
                H = frozenset(h % d for h in H) if d > 1 else frozenset({0})
                f = d
                changed = True
                break
    if f % 4 == 2:
        f //= 2
    return f


class AbelianField:
    """The fixed field of H inside Q(zeta_f), with f its exact conductor.

    Use :func:`make_field` (or :func:`field_from_subgroup`) to build one; the
    constructor trusts its arguments.
    """

    def __init__(self, f: int, H: frozenset[int]):
        self.f = f
        self.H = frozenset(H)
        rep = {}
        for a in units(f):
            if a in rep:
                continue
            coset = sorted(a * h % f for h in self.H)
            for b in coset:
                rep[b] = coset[0]
        self._rep = rep
        self.elements = tuple(sorted(set(rep.values())))

    def __eq__(self, other):
        return isinstance(other, AbelianField) and self.f == other.f and self.H == other.H

    def __hash__(self):
        return hash((self.f, self.H))

    def __repr__(self):
        if len(self.H) == 1:
            return f"Q(zeta_{self.f})"
        return f"AbelianField(f={self.f}, |H|={len(self.H)}, degree={self.degree})"

    @property
    def degree(self) -> int:
        return len(self.elements)

    def rep(self, a: int) -> int:
        """Canonical coset representative (smallest non-negative integer) of a."""
        try:
            return self._rep[a % self.f]
        except KeyError:
            raise PreconditionError(f"{a} is not prime to the conductor {self.f}") from None

    def mul(self, a: int, b: int) -> int:
        return self._rep[a * b % self.f]

    def inv(self, a: int) -> int:
        if self.f == 1:
            return 0
        return self._rep[pow(a, -1, self.f)]

    def power(self, a: int, k: int) -> int:
        if self.f == 1:
            return 0
        if k < 0:
            a, k = pow(a, -1, self.f), -k
        return self._rep[pow(a, k, self.f)]

    @cached_property
    def conjugation(self) -> int:
        return self.rep(-1)

    @cached_property
    def identity(self) -> int:
        return self.rep(1)

    @cached_property
    def subgroup_generators(self) -> tuple[int, ...]:
        """A small generating set of H."""
        return tuple(_gens_of(self.f, self.H))

    @cached_property
    def exponent(self) -> int:
        e = 1
        for a in self.elements:
            o = self.element_order(a)
            e = e * o // gcd(e, o)
        return e

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def to_json(self):
        return {"f": self.f, "H": list(self.subgroup_generators)}

    @classmethod
    def from_json(cls, d):
        return make_field(d["f"], d["H"])


@dataclass(frozen=True)
class GaloisElement:
    field: AbelianField
    rep: int

    def __mul__(self, other):
        if other.field != self.field:
            raise PreconditionError("elements of different Galois groups")
        return GaloisElement(self.field, self.field.mul(self.rep, other.rep))

    def inverse(self):
        return GaloisElement(self.field, self.field.inv(self.rep))

    def __pow__(self, k):
        return GaloisElement(self.field, self.field.power(self.rep, k))

    def order(self) -> int:
        return self.field.element_order(self.rep)

    def is_identity(self) -> bool:
        return self.rep == self.field.identity


def make_field(f: int, H_gens=()) -> AbelianField:
    """Fixed field of <H_gens> in Q(zeta_f); f must be its exact conductor."""
    if f < 1 or f % 4 == 2:
        raise PreconditionError(f"conductor must be >= 1 and not 2 mod 4, got {f}")
    for h in H_gens:
        if gcd(h, f) != 1:
            raise PreconditionError(f"generator {h} is not prime to {f}")
    H = close_subgroup(f, H_gens)
    c = true_conductor(f, H)
    if c != f:
        raise ConductorError(f, c)
    return AbelianField(f, H)


def field_from_subgroup(f: int, H) -> AbelianField:
    """Fixed field of the subgroup H of (Z/fZ)^x, presented at its true conductor."""
    H = close_subgroup(f, H) if not isinstance(H, frozenset) else H
    c = true_conductor(f, H)
    Hc = frozenset(h % c for h in H) if c > 1 else frozenset({0})
    return AbelianField(c, Hc)


def artin_symbol(F: AbelianField, a: int) -> GaloisElement:
    if gcd(a, F.f) != 1:
        raise PreconditionError(f"{a} is not prime to the conductor {F.f}")
    return GaloisElement(F, F.rep(a))


def is_imaginary(F: AbelianField) -> bool:
    return F.conjugation != F.identity


def is_subfield(K: AbelianField, F: AbelianField) -> bool:
    if F.f % K.f:
        return False
    return all(K.rep(h) == K.identity for h in F.subgroup_generators)


def restrict(F: AbelianField, K: AbelianField, g) -> GaloisElement:
    """Image of g under the surjection G_F -> G_K."""
    if not is_subfield(K, F):
        raise PreconditionError("K is not a subfield of F")
    rep = g.rep if isinstance(g, GaloisElement) else g
    return GaloisElement(K, K.rep(rep))


def rational_field() -> AbelianField:
    return AbelianField(1, frozenset({0}))


def subgroups(f: int) -> list[frozenset[int]]:
    """All subgroups of (Z/fZ)^x, by repeatedly adjoining one more generator."""
    U = units(f)
    cyclic = {}
    for a in U:
        cyclic.setdefault(close_subgroup(f, [a]), a)
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for A in frontier:
            gens = _gens_of(f, A)
            for C, a in cyclic.items():
                if not C <= A:
                    J = close_subgroup(f, gens + [a])
                    if J not in found:
                        new.add(J)
        found |= new
        frontier = new
    return sorted(found, key=lambda S: (len(S), sorted(S)))


def _gens_of(f, S):
    gens, span = [], frozenset({1 % f})
    for h in sorted(S):
        if h not in span:
            gens.append(h)
            span = close_subgroup(f, gens)
    return gens


def subfields_of_cyclotomic(f: int, exact: bool = False) -> list[AbelianField]:
    """Distinct subfields of Q(zeta_f); with ``exact`` only those of conductor f."""
    out = []
    seen = set()
    for H in subgroups(f):
        K = field_from_subgroup(f, H)
        if exact and K.f != f:
            continue
        if K not in seen:
            seen.add(K)
            out.append(K)
    return out


def subfields(F: AbelianField) -> list[AbelianField]:
    """All subfields of F (including Q and F itself)."""
    return [K for K in subfields_of_cyclotomic(F.f) if is_subfield(K, F)]
