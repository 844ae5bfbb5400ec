"""The cyclotomic Z_ell-tower of an abelian field and its truncated Iwasawa algebra.

Fix an odd prime ell and a field F containing mu_ell, in the semisimple case
(ell does not divide |Delta|, Delta = Gal(F_infty/Q_infty)).  Then
G_{F_infty} = Delta x Gamma and Z_ell[[G_{F_infty}]] = Z_ell[Delta][[T]] with
T = gamma - 1, where gamma is normalized by kappa(gamma) = 1 + ell.

Elements are stored as N coefficients in (Z/ell^M)[Delta].  Two kinds exist:

* exact elements are genuine polynomials of degree < N with coefficients mod ell^M;
* truncated elements live in the quotient by J = (ell, T)^N + ell^M, so the
  coefficient of T^t is only known modulo ell^min(M, N - t).

J is stable under every substitution T -> a + bT + ... with a divisible by
ell, which is what makes the mirror an exact involution and the Tate twists
exact automorphisms of the truncated algebra.

Levels are counted from F: level n is F_n = F Q_{m+n}, of conductor f ell^n,
where F = F_0' Q_m with F_0' the prime-to-ell part (``delta_field``).
"""

from __future__ import annotations

import random as _random
from functools import cached_property, lru_cache
from math import comb, gcd

from .errors import PrecisionError, PreconditionError, SemisimplicityError
from .fields import AbelianField, field_from_subgroup, make_field, units
from .grouprings import GroupRingElement, restrict_ring
from .lattice import index_valuation
from .padic import teichmuller_int, valuation
from .stickelberger import twisted_stickelberger


def _is_torsion_mod(x: int, ell: int, e: int) -> bool:
    """x^(ell-1) = 1 mod ell^e, i.e. x is a Teichmuller residue."""
    return pow(x, ell - 1, ell**e) == 1 % ell**e


class TowerContext:
    """Semisimple tower data for (ell, F) at precision (M, N)."""

    def __init__(self, ell: int, F: AbelianField, M: int, N: int):
        if ell < 3 or ell % 2 == 0 or any(ell % q == 0 for q in range(2, int(ell**0.5) + 1)):
            raise PreconditionError("ell must be an odd prime")
        if F.f % ell:
            raise PreconditionError(f"{ell} does not divide the conductor {F.f}")
        if any(h % ell != 1 for h in F.H):
            raise PreconditionError(f"F does not contain the {ell}-th roots of unity")
        if M < 1 or N < 1:
            raise PreconditionError("precisions must be positive")
        self.ell, self.F, self.M, self.N = ell, F, M, N
        self.mod = ell**M
        f = F.f
        a = valuation(f, ell)
        # largest j with Q_j inside F
        j = 0
        while j + 1 < a and all(_is_torsion_mod(h, ell, j + 2) for h in F.H):
            j += 1
        if (F.degree // ell**j) % ell == 0:
            raise SemisimplicityError(f"{ell} divides |Delta| = {F.degree // ell**j}")
        self.m = j
        # the ell-Sylow subgroup of G_F is cyclic of order ell^m; F_0 is its fixed field
        sylow = [x for x in F.elements if F.element_order(x) % ell == 0 or F.element_order(x) == 1]
        sylow = [x for x in sylow if ell ** valuation(F.element_order(x), ell) == F.element_order(x)]
        if len(sylow) != ell**j:
            raise ArithmeticError("unexpected ell-Sylow subgroup")
        F0 = field_from_subgroup(f, list(F.subgroup_generators) + sylow)
        if valuation(F0.f, ell) != 1:
            raise ArithmeticError("prime-to-ell part is wildly ramified")
        self.delta_field = F0
        self.f0 = F0.f
        self.fprime = F0.f // ell
        self.delta = F0.elements
        self.D = len(self.delta)
        self.index = {d: i for i, d in enumerate(self.delta)}
        self.mul_table = [[self.index[F0.mul(x, y)] for y in self.delta] for x in self.delta]
        self.inv_table = [self.index[F0.inv(x)] for x in self.delta]
        self.identity_index = self.index[F0.identity]
        self.conj_index = self.index[F0.conjugation]
        self.kappa_gamma = 1 + ell
        self.kappa_delta = [teichmuller_int(d % ell, ell, M) for d in self.delta]

    def __repr__(self):
        return f"TowerContext(ell={self.ell}, F={self.F!r}, m={self.m}, |Delta|={self.D}, M={self.M}, N={self.N})"

    def __eq__(self, other):
        return (isinstance(other, TowerContext) and (self.ell, self.F, self.M, self.N)
                == (other.ell, other.F, other.M, other.N))

    def __hash__(self):
        return hash((self.ell, self.F, self.M, self.N))

    def with_precision(self, M: int | None = None, N: int | None = None) -> TowerContext:
        return make_tower(self.ell, self.F, self.M if M is None else M, self.N if N is None else N)

    # -- levels -----------------------------------------------------------

    def conductor(self, n: int) -> int:
        return self.F.f * self.ell**n

    def level_field(self, n: int) -> AbelianField:
        return _level_field(self.ell, self.F, self.f0, self.delta_field.H, self.m, n)

    def absolute_level(self, n: int) -> int:
        return n + self.m

    def split(self, n: int, a: int) -> tuple[int, int]:
        """(Delta index, j) with sigma_a = delta * gamma^j at level n."""
        return _splitting(self, n)[0][self.level_field(n).rep(a)]

    def unsplit(self, n: int, i: int, j: int) -> int:
        return _splitting(self, n)[1][(i, j % self.ell ** (n + self.m))]

    def kappa(self, n: int, a: int) -> int:
        """kappa of the level-n element (i, j) in Z/ell^M, using the chosen splitting lift."""
        i, j = self.split(n, a)
        return self.kappa_delta[i] * pow(self.kappa_gamma, j, self.mod) % self.mod

    # -- special elements -------------------------------------------------

    def constant(self, x) -> IwasawaElement:
        """Embed a Delta-group-ring element (GroupRingElement over F_0 or dict) as a constant."""
        vec = [0] * self.D
        items = x.coeffs.items() if isinstance(x, GroupRingElement) else x.items()
        for g, c in items:
            if isinstance(x, GroupRingElement) and x.field != self.delta_field:
                raise PreconditionError("constant must live over the Delta field")
            vec[self.index[self.delta_field.rep(g)]] += _residue(c, self.mod, self.ell)
        return IwasawaElement(self, [vec] + [[0] * self.D for _ in range(self.N - 1)], exact=True)

    def one(self) -> IwasawaElement:
        return self.constant({self.delta_field.identity: 1})

    def zero(self) -> IwasawaElement:
        return IwasawaElement(self, None, exact=True)

    def T(self) -> IwasawaElement:
        """gamma - 1."""
        coeffs = [[0] * self.D for _ in range(self.N)]
        if self.N > 1:
            coeffs[1][self.identity_index] = 1
            return IwasawaElement(self, coeffs, exact=True)
        return IwasawaElement(self, coeffs, exact=False)

    def gamma(self) -> IwasawaElement:
        return self.one() + self.T()

    def e_plus(self) -> IwasawaElement:
        inv2 = pow(2, -1, self.mod)
        return self.constant({self.delta_field.identity: inv2, self.delta_field.conjugation: inv2})

    def e_minus(self) -> IwasawaElement:
        inv2 = pow(2, -1, self.mod)
        return self.constant({self.delta_field.identity: inv2, self.delta_field.conjugation: -inv2})

    def random_element(self, rng: _random.Random, exact: bool = False) -> IwasawaElement:
        coeffs = [[rng.randrange(self.mod) for _ in range(self.D)] for _ in range(self.N)]
        return IwasawaElement(self, coeffs, exact=exact)

    def to_json(self):
        return {"ell": self.ell, "F": self.F.to_json(), "M": self.M, "N": self.N}

    @classmethod
    def from_json(cls, d):
        return make_tower(d["ell"], AbelianField.from_json(d["F"]), d["M"], d["N"])


@lru_cache(maxsize=None)
def make_tower(ell: int, F: AbelianField, M: int, N: int) -> TowerContext:
    return TowerContext(ell, F, M, N)


@lru_cache(maxsize=None)
def _level_field(ell, F, f0, H0, m, n) -> AbelianField:
    k = n + m
    fn = F.f * ell**n
    e = k + 1
    H = frozenset(x for x in units(fn) if x % f0 in H0 and _is_torsion_mod(x, ell, e))
    Fn = field_from_subgroup(fn, H)
    if Fn.f != fn:
        raise ArithmeticError(f"level {n} field has conductor {Fn.f}, expected {fn}")
    if n == 0 and Fn != F:
        raise ArithmeticError("level 0 does not reproduce F")
    return Fn


_SPLIT_CACHE: dict = {}


def _splitting(ctx: TowerContext, n: int):
    key = (ctx.ell, ctx.F, n)
    hit = _SPLIT_CACHE.get(key)
    if hit is not None:
        return hit
    ell = ctx.ell
    k = n + ctx.m
    q = ell ** (k + 1)
    dlog = {}
    x = 1
    for j in range(ell**k):
        dlog[x] = j
        x = x * ctx.kappa_gamma % q
    Fn = ctx.level_field(n)
    F0 = ctx.delta_field
    fwd, back = {}, {}
    for a in Fn.elements:
        w = teichmuller_int(a % ell, ell, k + 1)
        principal = a * pow(w, -1, q) % q
        i = ctx.index[F0.rep(a % ctx.f0)]
        j = dlog[principal]
        fwd[a] = (i, j)
        back[(i, j)] = a
    if len(back) != Fn.degree or len(back) != ctx.D * ell**k:
        raise ArithmeticError("level splitting is not a bijection")
    _SPLIT_CACHE[key] = (fwd, back)
    return fwd, back


def _residue(c, mod, ell):
    from fractions import Fraction

    c = Fraction(c)
    if c.denominator % ell == 0:
        raise PreconditionError(f"{c} is not {ell}-integral")
    return c.numerator * pow(c.denominator, -1, mod) % mod


# -- scalar series in Z/ell^M[[T]] / J ---------------------------------------


def _series_mul(a, b, N, mod):
    out = [0] * N
    for i, x in enumerate(a):
        if x:
            for j in range(N - i):
                y = b[j]
                if y:
                    out[i + j] += x * y
    return [c % mod for c in out]


class IwasawaElement:
    """sum_t a_t (gamma - 1)^t with a_t in (Z/ell^M)[Delta], t < N."""

    __slots__ = ("ctx", "coeffs", "exact")

    def __init__(self, ctx: TowerContext, coeffs=None, exact: bool = False):
        self.ctx = ctx
        N, D = ctx.N, ctx.D
        if coeffs is None:
            coeffs = [[0] * D for _ in range(N)]
        if len(coeffs) != N or any(len(v) != D for v in coeffs):
            raise PreconditionError(f"expected {N} coefficient vectors of length {D}")
        self.exact = exact
        ell, M = ctx.ell, ctx.M
        if exact:
            self.coeffs = [[x % ctx.mod for x in v] for v in coeffs]
        else:
            self.coeffs = [[x % ell ** min(M, N - t) for x in v] for t, v in enumerate(coeffs)]

    # -- precision --------------------------------------------------------

    def precision(self, t: int) -> int:
        """ell-adic precision of the coefficient of T^t."""
        return self.ctx.M if self.exact else min(self.ctx.M, self.ctx.N - t)

    def truncated(self) -> IwasawaElement:
        return self if not self.exact else IwasawaElement(self.ctx, self.coeffs, exact=False)

    def degree(self) -> int:
        for t in range(self.ctx.N - 1, -1, -1):
            if any(self.coeffs[t]):
                return t
        return -1

    def coefficient(self, t: int) -> GroupRingElement:
        ctx = self.ctx
        return GroupRingElement(ctx.delta_field, {d: c for d, c in zip(ctx.delta, self.coeffs[t])},
                                ell=ctx.ell, M=self.precision(t))

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, IwasawaElement) or other.ctx != self.ctx:
            raise PreconditionError("Iwasawa elements from different contexts")

    def __add__(self, other):
        self._check(other)
        return IwasawaElement(self.ctx, [[x + y for x, y in zip(u, v)] for u, v in zip(self.coeffs, other.coeffs)],
                              exact=self.exact and other.exact)

    def __neg__(self):
        return IwasawaElement(self.ctx, [[-x for x in v] for v in self.coeffs], exact=self.exact)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ctx = self.ctx
        if isinstance(other, int):
            return IwasawaElement(ctx, [[x * other for x in v] for v in self.coeffs], exact=self.exact)
        self._check(other)
        N, D, table = ctx.N, ctx.D, ctx.mul_table
        da, db = self.degree(), other.degree()
        exact = self.exact and other.exact and da + db < N
        out = [[0] * D for _ in range(N)]
        for s in range(da + 1):
            u = self.coeffs[s]
            if not any(u):
                continue
            for t in range(min(db, N - 1 - s) + 1):
                v = other.coeffs[t]
                w = out[s + t]
                for i, x in enumerate(u):
                    if x:
                        row = table[i]
                        for j, y in enumerate(v):
                            if y:
                                w[row[j]] += x * y
        return IwasawaElement(ctx, out, exact=exact)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, IwasawaElement):
            return NotImplemented
        if other.ctx != self.ctx:
            return False
        if self.exact and other.exact:
            return self.coeffs == other.coeffs
        return self.truncated().coeffs == other.truncated().coeffs

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.coeffs)

    def _scalar_substitute(self, series, coeff_map, exact):
        """sum_t coeff_map(a_t) * series^t."""
        ctx = self.ctx
        N, D, mod = ctx.N, ctx.D, ctx.mod
        out = [[0] * D for _ in range(N)]
        power = [1] + [0] * (N - 1)
        for t in range(N):
            a = coeff_map(self.coeffs[t])
            if any(a):
                for s, p in enumerate(power):
                    if p:
                        w = out[s]
                        for i, x in enumerate(a):
                            if x:
                                w[i] += x * p
            if t + 1 < N:
                power = _series_mul(power, series, N, mod)
        return IwasawaElement(ctx, out, exact=exact)

    def __repr__(self):
        kind = "exact" if self.exact else "truncated"
        terms = []
        for t, v in enumerate(self.coeffs):
            if any(v):
                terms.append(f"{v}*T^{t}")
        return f"IwasawaElement({kind}, " + (" + ".join(terms) if terms else "0") + ")"

    def to_json(self):
        ctx = self.ctx
        return {
            "ell": ctx.ell,
            "M": ctx.M,
            "N": ctx.N,
            "F": ctx.F.to_json(),
            "delta": ctx.delta_field.to_json(),
            "exact": self.exact,
            "coeffs": [self.coefficient(t).to_json() for t in range(ctx.N)],
        }

    @classmethod
    def from_json(cls, d):
        ctx = make_tower(d["ell"], AbelianField.from_json(d["F"]), d["M"], d["N"])
        coeffs = []
        for g in d["coeffs"]:
            vec = [0] * ctx.D
            for rep, num, den in g["coeffs"]:
                vec[ctx.index[ctx.delta_field.rep(rep)]] = num * pow(den, -1, ctx.mod) % ctx.mod
            coeffs.append(vec)
        return cls(ctx, coeffs, exact=d["exact"])


# -- mirror and twists ---------------------------------------------------------


def _mirror_series(ctx):
    """kappa(gamma) gamma^{-1} - 1 = (1 + ell)(1 + T)^{-1} - 1."""
    N, mod = ctx.N, ctx.mod
    s = [ctx.kappa_gamma * (-1) ** t % mod for t in range(N)]
    s[0] = (s[0] - 1) % mod
    return s


def _twist_series(ctx, i):
    """kappa(gamma)^i gamma - 1 = (k^i - 1) + k^i T."""
    k = pow(ctx.kappa_gamma, i, ctx.mod)
    s = [0] * ctx.N
    s[0] = (k - 1) % ctx.mod
    if ctx.N > 1:
        s[1] = k
    return s


def mirror(phi: IwasawaElement) -> IwasawaElement:
    """sum alpha_sigma sigma -> sum alpha_sigma kappa(sigma) sigma^{-1}."""
    ctx = phi.ctx
    kd, inv = ctx.kappa_delta, ctx.inv_table

    def star(v):
        out = [0] * ctx.D
        for i, x in enumerate(v):
            if x:
                out[inv[i]] += x * kd[i]
        return out

    return phi._scalar_substitute(_mirror_series(ctx), star, exact=False)


def tate_twist(phi: IwasawaElement, i: int) -> IwasawaElement:
    """sum alpha_sigma sigma -> sum alpha_sigma kappa(sigma)^i sigma."""
    ctx = phi.ctx
    if i == 0:
        return phi
    kd = [pow(k, i, ctx.mod) for k in ctx.kappa_delta]

    def tw(v):
        return [x * k for x, k in zip(v, kd)]

    return phi._scalar_substitute(_twist_series(ctx, i), tw, exact=phi.exact)


def symmetrize(phi: IwasawaElement) -> IwasawaElement:
    return phi + mirror(phi)


# -- levels ------------------------------------------------------------------


def from_level(ctx: TowerContext, x: GroupRingElement, n: int) -> IwasawaElement:
    """The polynomial representative (degree < ell^k) of a level-n group-ring element."""
    ell, k = ctx.ell, n + ctx.m
    Fn = ctx.level_field(n)
    if x.field != Fn:
        raise PreconditionError(f"element does not live at level {n}")
    size = ell**k
    poly = [[0] * ctx.D for _ in range(size)]
    for g, c in x.coeffs.items():
        i, j = ctx.split(n, g)
        poly[j][i] += _residue(c, ctx.mod, ell)
    exact = size <= ctx.N
    N, D, mod = ctx.N, ctx.D, ctx.mod
    out = [[0] * D for _ in range(N)]
    # gamma^j = sum_t C(j, t) T^t
    for j, v in enumerate(poly):
        if any(v):
            for t in range(min(j, N - 1) + 1):
                b = comb(j, t) % mod
                if b:
                    w = out[t]
                    for i, y in enumerate(v):
                        if y:
                            w[i] += b * y
    return IwasawaElement(ctx, out, exact=exact)


def reduction_precision(phi: IwasawaElement, n: int) -> int:
    """ell-adic precision at which phi mod (gamma^(ell^k) - 1) is determined."""
    ctx = phi.ctx
    if phi.exact:
        return ctx.M
    return min(ctx.M, ctx.N // ctx.ell ** (n + ctx.m))


def reduce_mod_level(phi: IwasawaElement, n: int) -> GroupRingElement:
    """Image of phi in (Z/ell^P)[G_{F_n}], P = :func:`reduction_precision`."""
    ctx = phi.ctx
    P = reduction_precision(phi, n)
    if P < 1:
        raise PrecisionError(f"T-adic truncation N={ctx.N} is too coarse for level {n}")
    ell, k = ctx.ell, n + ctx.m
    size = ell**k
    mod = ell**P
    acc = {}
    for t, v in enumerate(phi.coeffs):
        if not any(v):
            continue
        # (gamma - 1)^t = sum_j C(t, j) (-1)^(t-j) gamma^j, gamma^(ell^k) = 1
        for j in range(t + 1):
            b = comb(t, j) * (-1) ** (t - j) % mod
            if b:
                jj = j % size
                for i, y in enumerate(v):
                    if y:
                        acc[(i, jj)] = acc.get((i, jj), 0) + b * y
    Fn = ctx.level_field(n)
    coeffs = {ctx.unsplit(n, i, j): c % mod for (i, j), c in acc.items()}
    return GroupRingElement(Fn, coeffs, ell=ell, M=P)


def level_mirror(ctx: TowerContext, x: GroupRingElement, n: int) -> GroupRingElement:
    """sum alpha_g kappa(g) g^{-1} at level n, kappa taken through the chosen lift."""
    Fn = ctx.level_field(n)
    P = x.M if x.is_ladic else ctx.M
    mod = ctx.ell**P
    coeffs = {Fn.inv(g): c * ctx.kappa(n, g) % mod for g, c in x.coeffs.items()}
    return GroupRingElement(Fn, coeffs, ell=ctx.ell, M=P)


def mirror_reduction_defect(phi: IwasawaElement, n: int) -> dict:
    """reduce(mirror(phi)) - mirror_n(reduce(phi)) at level n, reported, not asserted."""
    ctx = phi.ctx
    a = reduce_mod_level(mirror(phi), n)
    b = level_mirror(ctx, reduce_mod_level(phi, n), n).to_ladic(ctx.ell, a.M) if a.M <= ctx.M else None
    P = min(a.M, b.M)
    a, b = a.to_ladic(ctx.ell, P), b.to_ladic(ctx.ell, P)
    diff = a - b
    vals = [valuation(c, ctx.ell) for c in diff.coeffs.values()]
    return {
        "level": n,
        "precision": P,
        "defect": diff,
        "defect_valuation": min(vals) if vals else P,
    }


# -- Stickelberger elements in the tower --------------------------------------


def coherent_stickelberger(ctx: TowerContext, c: int, n: int, check: bool = True) -> IwasawaElement:
    """sigma^c at level n written in Z_ell[Delta][[gamma - 1]].

    The result is the polynomial representative of the coherent element modulo
    gamma^(ell^(n+m)) - 1; it is exact when ell^(n+m) <= N.  Norm coherence with
    level n - 1 is verified on the way.
    """
    if c % 2 == 0 or gcd(c, ctx.F.f * ctx.ell) != 1:
        raise PreconditionError(f"twist c={c} must be odd and prime to {ctx.F.f}")
    if n < 0:
        raise PreconditionError("level must be non-negative")
    Fn = ctx.level_field(n)
    s = twisted_stickelberger(Fn, c)
    if check and n > 0:
        below = twisted_stickelberger(ctx.level_field(n - 1), c)
        if restrict_ring(Fn, ctx.level_field(n - 1), s) != below:
            raise ArithmeticError(f"norm coherence fails between levels {n - 1} and {n}")
    return from_level(ctx, s, n)


def level_stickelberger(ctx: TowerContext, c: int, n: int) -> GroupRingElement:
    """sigma^c at level n as an ell-adic group-ring element mod ell^M."""
    return twisted_stickelberger(ctx.level_field(n), c).to_ladic(ctx.ell, ctx.M)


def ideal_index(ctx: TowerContext, n: int, C, i: int = 0, lift: int | None = None) -> dict:
    """v_ell of the index of the ideal generated by reduce(twist(symmetrize(sigma^c), i), n), c in C.

    The coherent elements are taken at level n + ``lift`` (default 4).  Reduction
    precision is capped by the T-adic truncation and by ell^(k+1) with k the
    lift's absolute level, since mirror and twist only preserve the kernel of
    the level-k projection modulo ell^(k+1).
    """
    C = list(C)
    if not C:
        return {"valuation": None, "certified": False, "reason": "empty twist set"}
    lift = 4 if lift is None else lift
    nc = n + lift
    kc = nc + ctx.m
    rows = []
    Fn = ctx.level_field(n)
    P = ctx.M
    gens = []
    for c in C:
        phi = tate_twist(symmetrize(coherent_stickelberger(ctx, c, nc)), i)
        x = reduce_mod_level(phi, n)
        P = min(P, x.M, kc + 1)
        gens.append(x)
    basis = Fn.elements
    mod = ctx.ell**P
    for x in gens:
        x = x.to_ladic(ctx.ell, P)
        for g in basis:
            y = GroupRingElement.group_element(Fn, g, ell=ctx.ell, M=P) * x
            rows.append([y.coeffs.get(b, 0) % mod for b in basis])
    report = index_valuation(rows, ctx.ell, P)
    report.update({"precision": P, "level": n, "lift_level": nc, "twists": C, "tate_index": i})
    return report


def kappa_data(ctx: TowerContext) -> dict:
    """kappa on Delta (Teichmuller values) and on gamma."""
    return {
        "gamma": ctx.kappa_gamma,
        "delta": {d: k for d, k in zip(ctx.delta, ctx.kappa_delta)},
        "conjugation": ctx.kappa_delta[ctx.conj_index],
        "modulus": ctx.mod,
    }


__all__ = [
    "TowerContext",
    "make_tower",
    "IwasawaElement",
    "mirror",
    "tate_twist",
    "symmetrize",
    "from_level",
    "reduce_mod_level",
    "reduction_precision",
    "level_mirror",
    "mirror_reduction_defect",
    "coherent_stickelberger",
    "level_stickelberger",
    "ideal_index",
    "kappa_data",
    "make_field",
]
