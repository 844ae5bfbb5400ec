"""Dirichlet characters of abelian fields and ell-adic class idempotents.

A character of (Z/fZ)^x is stored by its values on a fixed generator set
``gens`` (one generator per cyclic factor of the CRT decomposition): the value
on ``gens[i]`` is exp(2 pi i * exps[i] / orders[i]).  Characters of a field
(f, H) are those trivial on H.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from itertools import product
from math import gcd

from sympy import factorint, primitive_root

from .cyclotomic import CyclotomicNumber, lcm
from .errors import PreconditionError, SemisimplicityError
from .fields import AbelianField, make_field, prime_factors, units
from .grouprings import GroupRingElement
from .unramified import TeichmullerEmbedding, multiplicative_order


def _is_primitive_root(g: int, q: int, phi: int) -> bool:
    return all(pow(g, phi // p, q) != 1 for p in factorint(phi))


@lru_cache(maxsize=None)
def unit_group_generators(f: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Generators of (Z/fZ)^x and their orders, one per cyclic CRT factor.

    Odd prime powers use the smallest primitive root; 2^e uses -1 and 5.
    """
    gens, orders = [], []
    for p, e in sorted(factorint(f).items()):
        q = p**e
        rest = f // q
        local = []
        if p == 2:
            if e >= 2:
                local.append((q - 1, 2))
            if e >= 3:
                local.append((5, 2 ** (e - 2)))
        else:
            phi = q - q // p
            g = primitive_root(p) if e == 1 else next(
                a for a in range(2, q) if a % p and _is_primitive_root(a, q, phi))
            local.append((g, phi))
        for g, o in local:
            # CRT: g mod q, 1 mod the rest
            x = g if rest == 1 else (g * rest * pow(rest, -1, q) + q * pow(q, -1, rest)) % f
            gens.append(x)
            orders.append(o)
    return tuple(gens), tuple(orders)


@lru_cache(maxsize=None)
def discrete_logs(f: int) -> dict[int, tuple[int, ...]]:
    """Exponent vector of every unit mod f with respect to :func:`unit_group_generators`."""
    gens, orders = unit_group_generators(f)
    table = {}
    for exps in product(*(range(o) for o in orders)):
        x = 1 % f
        for g, k in zip(gens, exps):
            x = x * pow(g, k, f) % f
        table[x] = exps
    if len(table) != len(units(f)):
        raise ArithmeticError(f"generator set of (Z/{f})^x is wrong")
    return table


class DirichletCharacter:
    """A character of G_F = (Z/fZ)^x / H, i.e. a Dirichlet character mod f trivial on H."""

    def __init__(self, field: AbelianField, exps):
        self.field = field
        self.modulus = field.f
        self.gens, self.orders = unit_group_generators(field.f)
        self.exps = tuple(k % o for k, o in zip(exps, self.orders))
        self.E = 1
        for o in self.orders:
            self.E = lcm(self.E, o)
        self._logs = discrete_logs(field.f)

    def __eq__(self, other):
        return (isinstance(other, DirichletCharacter) and self.modulus == other.modulus
                and self.exps == other.exps)

    def __hash__(self):
        return hash((self.modulus, self.exps))

    def __repr__(self):
        return f"DirichletCharacter(f={self.modulus}, exps={self.exps}, order={self.order})"

    @cached_property
    def order(self) -> int:
        e = 1
        for k, o in zip(self.exps, self.orders):
            e = lcm(e, o // gcd(o, k))
        return e

    def exponent(self, a: int) -> int:
        """k with chi(a) = zeta_order^k."""
        if self.modulus == 1:
            return 0
        logs = self._logs.get(a % self.modulus)
        if logs is None:
            raise PreconditionError(f"{a} is not prime to {self.modulus}")
        t = sum(k * d * (self.E // o) for k, d, o in zip(self.exps, logs, self.orders))
        return (t % self.E) // (self.E // self.order)

    def __call__(self, a: int) -> CyclotomicNumber:
        return CyclotomicNumber.zeta(self.order, self.exponent(a))

    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def parity(self) -> str:
        return "odd" if self.is_odd() else "even"

    def is_odd(self) -> bool:
        return self.modulus > 2 and self.exponent(-1) != 0

    def conj(self) -> DirichletCharacter:
        return DirichletCharacter(self.field, [-k for k in self.exps])

    def __mul__(self, other):
        if other.modulus != self.modulus:
            raise PreconditionError("characters with different moduli")
        field = self.field if self.field == other.field else make_field(self.modulus)
        return DirichletCharacter(field, [a + b for a, b in zip(self.exps, other.exps)])

    def __pow__(self, k: int):
        return DirichletCharacter(self.field, [a * k for a in self.exps])

    @cached_property
    def conductor(self) -> int:
        f = self.modulus
        changed = True
        while changed and f > 1:
            changed = False
            for p in prime_factors(f):
                d = f // p
                if all(self.exponent(a) == 0 for a in units(self.modulus) if a % d == 1 % d):
                    f = d
                    changed = True
                    break
        return f

    def primitive(self) -> DirichletCharacter:
        """The primitive character inducing this one, as a character of Q(zeta_cond)."""
        c = self.conductor
        if c == self.modulus:
            return DirichletCharacter(make_field(c), self.exps) if len(self.field.H) > 1 else self
        field = make_field(c)
        if c == 1:
            return DirichletCharacter(field, ())
        gens, _ = unit_group_generators(c)
        exps = []
        for g, o in zip(gens, unit_group_generators(c)[1]):
            lift = next(b for b in range(g, g + c * self.modulus, c) if gcd(b, self.modulus) == 1)
            # chi(lift) = zeta_order^k; as a value on a generator of order o it is zeta_o^(k*o/order)
            k = self.exponent(lift)
            exps.append(k * o // self.order)
        return DirichletCharacter(field, exps)

    def values_table(self) -> dict[int, int]:
        """Exponent of chi at every canonical element of G_F."""
        return {a: self.exponent(a) for a in self.field.elements}

    def to_json(self):
        return {"f": self.modulus, "H": list(self.field.subgroup_generators),
                "gens": list(self.gens), "orders": list(self.orders), "exps": list(self.exps)}

    @classmethod
    def from_json(cls, d):
        F = make_field(d["f"], d["H"])
        gens, orders = unit_group_generators(d["f"])
        if list(gens) != list(d["gens"]) or list(orders) != list(d["orders"]):
            raise PreconditionError("generator set does not match this implementation")
        return cls(F, d["exps"])


def characters(F: AbelianField) -> list[DirichletCharacter]:
    """The dual group of G_F, as characters mod f trivial on H."""
    if F.f == 1:
        return [DirichletCharacter(F, ())]
    gens, orders = unit_group_generators(F.f)
    logs = discrete_logs(F.f)
    Hlogs = [logs[h] for h in F.subgroup_generators]
    E = 1
    for o in orders:
        E = lcm(E, o)
    out = []
    for exps in product(*(range(o) for o in orders)):
        if all(sum(k * d * (E // o) for k, d, o in zip(exps, hl, orders)) % E == 0 for hl in Hlogs):
            out.append(DirichletCharacter(F, exps))
    if len(out) != F.degree:
        raise ArithmeticError("character count does not match the group order")
    return out


def frobenius_classes(F: AbelianField, ell: int) -> list[list[DirichletCharacter]]:
    """Orbits of chi -> chi^ell on the characters of F (the ell-adic irreducible characters)."""
    if F.degree % ell == 0:
        raise SemisimplicityError(f"{ell} divides |G| = {F.degree}")
    seen = set()
    classes = []
    for chi in characters(F):
        if chi in seen:
            continue
        orbit = [chi]
        psi = chi ** ell
        while psi != chi:
            orbit.append(psi)
            psi = psi ** ell
        seen.update(orbit)
        classes.append(orbit)
    return classes


def idempotent(F: AbelianField, chi: DirichletCharacter, ell: int, M: int) -> GroupRingElement:
    """Idempotent of Z_ell[G_F] for the Frobenius class of chi, modulo ell^M.

    e = (1/|G|) sum_sigma Tr(chi(sigma)) sigma^{-1}, the trace running over the
    class {chi^(ell^j)}; under the Teichmuller embedding of mu_exp(G) the traces
    land in Z_ell.
    """
    n = F.degree
    if ell % 2 == 0 or ell < 3:
        raise PreconditionError("ell must be an odd prime")
    if n % ell == 0:
        raise SemisimplicityError(f"{ell} divides |G| = {n}")
    emb = teichmuller_embedding(ell, F.exponent, M)
    mod = ell**M
    d = multiplicative_order(ell, chi.order)
    step = F.exponent // chi.order
    inv_n = pow(n, -1, mod)
    coeffs = {}
    for a in F.elements:
        k = chi.exponent(a) * step
        tr = emb.scalar(0)
        for j in range(d):
            tr = emb.add(tr, emb.zeta_power(k * ell**j))
        if any(tr[1:]):
            raise ArithmeticError("class trace is not in Z_ell")
        c = tr[0] * inv_n % mod
        if c:
            coeffs[F.inv(a)] = c
    return GroupRingElement(F, coeffs, ell=ell, M=M)


@lru_cache(maxsize=None)
def teichmuller_embedding(ell: int, e: int, M: int) -> TeichmullerEmbedding:
    return TeichmullerEmbedding(ell, e, M)


def class_idempotents(F: AbelianField, ell: int, M: int):
    """(class, idempotent) for every ell-adic irreducible character of G_F."""
    return [(cls, idempotent(F, cls[0], ell, M)) for cls in frobenius_classes(F, ell)]
