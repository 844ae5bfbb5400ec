"""Generalized Bernoulli numbers and the character-side checks built on them.

Conventions: B_1 = -1/2, and for a primitive character chi of conductor f,
B_{1,chi} = (1/f) sum_{a=1}^{f} chi(a) a.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from sympy import primitive_root

from .characters import DirichletCharacter, characters, teichmuller_embedding
from .cyclotomic import CyclotomicNumber
from .errors import PreconditionError
from .fields import AbelianField, is_imaginary, make_field, prime_factors, units
from .grouprings import GroupRingElement
from .stickelberger import stickelberger, twist_factor


def gen_bernoulli_B1(chi: DirichletCharacter) -> CyclotomicNumber:
    """B_{1,chi} of the primitive character attached to chi."""
    if chi.is_trivial():
        raise PreconditionError("B_{1,chi} is only used for nontrivial chi")
    chi = chi.primitive()
    f = chi.modulus
    buckets = [Fraction(0)] * chi.order
    for a in units(f):
        buckets[chi.exponent(a)] += a
    return CyclotomicNumber.from_exponent_sums(chi.order, buckets) / f


def char_eval(phi: GroupRingElement, chi: DirichletCharacter) -> CyclotomicNumber:
    """chi extended linearly: sum_sigma coeff(sigma) chi(sigma)."""
    if phi.field != chi.field:
        raise PreconditionError("element and character live over different fields")
    if phi.is_ladic:
        raise PreconditionError("char_eval works on rational group-ring elements")
    buckets = [Fraction(0)] * chi.order
    for g, c in phi.coeffs.items():
        buckets[chi.exponent(g)] += c
    return CyclotomicNumber.from_exponent_sums(chi.order, buckets)


def euler_correction(chi: DirichletCharacter) -> CyclotomicNumber:
    """prod over p | modulus, p not dividing cond(chi), of (1 - chi_prim(p))."""
    prim = chi.primitive()
    out = CyclotomicNumber.rational(chi.order, 1)
    for p in prime_factors(chi.modulus):
        if prim.modulus % p:
            out = out * (1 - prim(p))
    return out


def stick_eval_identity_check(F: AbelianField) -> dict:
    """chi(sigma_F) = s * E(chi_bar) * B_{1, chi_bar} for every nontrivial chi of F.

    E is the Euler correction for characters whose conductor is smaller than f
    (empty for primitive characters); s is one global sign, determined by the
    first nonzero value and then required everywhere.
    """
    if not is_imaginary(F):
        raise PreconditionError("F is real")
    sigma = stickelberger(F)
    sign = None
    rows = []
    ok = True
    for chi in characters(F):
        lhs = char_eval(sigma, chi)
        if chi.is_trivial():
            good = lhs.is_zero()
            rows.append({"chi": chi.to_json(), "trivial": True, "holds": good})
            ok &= good
            continue
        cb = chi.conj()
        rhs = euler_correction(cb) * gen_bernoulli_B1(cb)
        if sign is None and not rhs.is_zero():
            sign = 1 if lhs == rhs else -1 if lhs == -rhs else 0
        s = sign if sign is not None else 1
        good = s != 0 and lhs == rhs * s
        ok &= good
        rows.append({"chi": chi.to_json(), "odd": chi.is_odd(), "primitive": chi.conductor == F.f,
                     "value": lhs.to_json(), "holds": good})
    return {"F": F.to_json(), "sign": sign, "holds": ok, "rows": rows}


# -- ordinary Bernoulli numbers ---------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return tuple(B)


_CACHE = None


def set_cache(cache: BernoulliCache | None):
    """Install a persistent cache used by :func:`ordinary_bernoulli` (None to disable)."""
    global _CACHE
    _CACHE = cache


def ordinary_bernoulli(k: int, cache: BernoulliCache | None = None) -> Fraction:
    """B_k from sum_{j<=m} C(m+1, j) B_j = 0 (so B_1 = -1/2)."""
    if k < 0:
        raise PreconditionError("k must be non-negative")
    cache = cache if cache is not None else _CACHE
    if cache is not None:
        hit = cache.get(k)
        if hit is not None:
            return hit
    val = _bernoulli_table(k)[k]
    if cache is not None:
        cache.put(k, val)
    return val


class BernoulliCache:
    """JSON file {k: [num, den]}; readers never lock, writers serialize on a file lock."""

    def __init__(self, directory: str):
        from filelock import FileLock

        os.makedirs(directory, exist_ok=True)
        self.path = os.path.join(directory, "bernoulli.json")
        self._lock = FileLock(self.path + ".lock")

    def load(self) -> dict[int, Fraction]:
        try:
            with open(self.path) as fh:
                raw = json.load(fh)
        except (FileNotFoundError, json.JSONDecodeError):
            return {}
        return {int(k): Fraction(n, d) for k, (n, d) in raw.items()}

    def get(self, k: int):
        return self.load().get(k)

    def put(self, k: int, value: Fraction):
        with self._lock:
            data = self.load()
            data[k] = Fraction(value)
            raw = {str(i): [v.numerator, v.denominator] for i, v in sorted(data.items())}
            fd, tmp = tempfile.mkstemp(dir=os.path.dirname(self.path))
            with os.fdopen(fd, "w") as fh:
                json.dump(raw, fh, sort_keys=True)
            os.replace(tmp, self.path)


# -- Teichmuller characters and Kummer congruences ---------------------------


def omega_power(ell: int, j: int) -> DirichletCharacter:
    """omega^j on Q(zeta_ell), omega the Teichmuller character."""
    F = make_field(ell)
    return DirichletCharacter(F, [j])


def _padic_B1(chi: DirichletCharacter, ell: int, M: int):
    emb = teichmuller_embedding(ell, ell - 1, M)
    return emb.embed_padic(gen_bernoulli_B1(chi).lift(ell - 1))


def kummer_check(ell: int, k: int, M: int = 4) -> dict:
    """B_{1, omega^(k-1)} = B_k / k modulo ell, both sides computed ell-adically."""
    if ell < 5 or ell % 2 == 0:
        raise PreconditionError("ell must be an odd prime >= 5")
    if k % 2 or not 2 <= k <= ell - 3:
        raise PreconditionError(f"k must be even with 2 <= k <= {ell - 3}")
    left = _padic_B1(omega_power(ell, k - 1), ell, M)
    Bk = ordinary_bernoulli(k)
    right = Bk / k
    diff = left - right
    holds = diff.val >= 1
    return {
        "ell": ell,
        "k": k,
        "B1_residue": left.residue(1),
        "Bk_over_k_residue": (right.numerator * pow(right.denominator, -1, ell)) % ell,
        "holds": bool(holds),
        "irregular": right.numerator % ell == 0,
    }


def irregular_indices(ell: int) -> list[int]:
    """Even k in [2, ell-3] with ell dividing the numerator of B_k."""
    return [k for k in range(2, ell - 2, 2) if ordinary_bernoulli(k).numerator % ell == 0]


def minus_class_number(p: int) -> int:
    """h^- of Q(zeta_p) = 2p prod_{chi odd} (-1/2 B_{1,chi})."""
    if p < 3 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise PreconditionError("p must be an odd prime")
    F = make_field(p)
    prod = CyclotomicNumber.rational(p - 1, 2 * p)
    for chi in characters(F):
        if chi.is_odd():
            prod = prod * (gen_bernoulli_B1(chi).lift(p - 1) * Fraction(-1, 2))
    if not prod.is_rational():
        raise ArithmeticError("relative class number is not rational")
    h = prod.to_rational()
    if h.denominator != 1 or h <= 0:
        raise ArithmeticError(f"relative class number {h} is not a positive integer")
    return int(h)


def smallest_primitive_odd(ell: int) -> int:
    """Smallest odd primitive root modulo ell (a twist c that adds no valuation)."""
    g = primitive_root(ell)
    c = g
    while c % 2 == 0 or not _is_primitive(c, ell):
        c += 1
    return c


def _is_primitive(c, ell):
    from sympy import n_order

    return gcd(c, ell) == 1 and n_order(c, ell) == ell - 1


def annihilation_consistency(ell: int, c: int, M: int = 10) -> dict:
    """Valuations of chi(sigma_F^c) for the odd characters omega^k of Q(zeta_ell), k != 1.

    chi(sigma^c) = chi(delta^c) chi(sigma) = (1 - c omega^{-k}(c)) B_{1, omega^{-k}};
    both factors are read in Z_ell via the Teichmuller embedding.  The character
    omega^k pairs with the Bernoulli index ell - k, and ell | B_{ell-k} is the
    independent irregularity flag.
    """
    if ell < 3 or ell % 2 == 0:
        raise PreconditionError("ell must be an odd prime")
    if c % 2 == 0 or c % ell == 0:
        raise PreconditionError("c must be odd and prime to ell")
    F = make_field(ell)
    emb = teichmuller_embedding(ell, ell - 1, M)
    irregular = set(irregular_indices(ell)) if ell >= 5 else set()
    sigma = stickelberger(F)
    delta = twist_factor(F, c)
    rows = []
    for k in range(3, ell - 1, 2):
        chi = omega_power(ell, k)
        tv = emb.valuation(char_eval(delta, chi).lift(ell - 1))
        bv = emb.valuation(char_eval(sigma, chi).lift(ell - 1))
        index = ell - k
        rows.append({
            "chi": chi.to_json(),
            "k": k,
            "index": index,
            "twist_valuation": tv,
            "bernoulli_valuation": bv,
            "valuation": tv + bv,
            "irregular": index in irregular,
        })
    positive = {r["index"] for r in rows if r["bernoulli_valuation"] > 0}
    total = {r["index"] for r in rows if r["valuation"] > 0}
    return {
        "ell": ell,
        "c": c,
        "M": M,
        "excluded": "omega (k = 1)",
        "rows": rows,
        "irregular_indices": sorted(irregular),
        "consistent": positive == irregular,
        "twist_clean": total == positive,
    }


__all__ = [
    "gen_bernoulli_B1",
    "char_eval",
    "euler_correction",
    "stick_eval_identity_check",
    "ordinary_bernoulli",
    "BernoulliCache",
    "set_cache",
    "omega_power",
    "kummer_check",
    "irregular_indices",
    "minus_class_number",
    "smallest_primitive_odd",
    "annihilation_consistency",
]
