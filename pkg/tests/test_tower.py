from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from stickel.errors import PrecisionError, PreconditionError, SemisimplicityError
from stickel.fields import make_field
from stickel.grouprings import GroupRingElement
from stickel.tower import (
    IwasawaElement,
    TowerContext,
    coherent_stickelberger,
    from_level,
    ideal_index,
    kappa_data,
    level_stickelberger,
    make_tower,
    mirror,
    mirror_reduction_defect,
    reduce_mod_level,
    symmetrize,
    tate_twist,
)

CTX3 = make_tower(3, make_field(3), 8, 7)
CTX5 = make_tower(5, make_field(5), 6, 6)
CTXS = st.sampled_from([CTX3, CTX5])


def rand(ctx, seed, exact=False):
    return ctx.random_element(random.Random(seed), exact=exact)


def test_make_tower_examples():
    assert CTX3.D == 2 and CTX3.m == 0 and CTX3.conductor(2) == 27
    assert CTX5.D == 4 and CTX5.conductor(1) == 25
    c9 = make_tower(3, make_field(9), 8, 7)
    assert c9.m == 1 and c9.delta_field == make_field(3)
    assert c9.level_field(1) == make_field(27)
    assert make_tower(3, make_field(21, [4]), 6, 6).D == 4  # degree 4: Q(zeta_3, sqrt(-7))
    with pytest.raises(SemisimplicityError):
        make_tower(3, make_field(21), 6, 6)
    with pytest.raises(PreconditionError):
        make_tower(3, make_field(5), 6, 6)
    with pytest.raises(PreconditionError):
        make_tower(5, make_field(15, [11]), 6, 6)


def test_kappa():
    for ctx in (CTX3, CTX5, make_tower(7, make_field(7), 5, 4)):
        data = kappa_data(ctx)
        assert data["conjugation"] == ctx.mod - 1
        assert data["gamma"] == 1 + ctx.ell
        F0 = ctx.delta_field
        for x in ctx.delta:
            for y in ctx.delta:
                kx, ky = data["delta"][x], data["delta"][y]
                assert data["delta"][F0.mul(x, y)] == kx * ky % ctx.mod


def test_level_kappa_is_cyclotomic_character():
    # kappa(sigma_a) = a modulo ell^(k+1) at level n, k = n + m
    ctx = make_tower(3, make_field(3), 8, 7)
    for n in range(3):
        q = 3 ** (n + 1)
        for a in ctx.level_field(n).elements:
            assert ctx.kappa(n, a) % q == a % q


@given(CTXS, st.integers(0, 10**6), st.integers(0, 10**6))
def test_mirror_involution_and_multiplicativity(ctx, s1, s2):
    a, b = rand(ctx, s1), rand(ctx, s2)
    assert mirror(mirror(a)) == a
    assert mirror(a * b) == mirror(a) * mirror(b)
    assert mirror(a + b) == mirror(a) + mirror(b)


def test_mirror_constants():
    for ctx in (CTX3, CTX5):
        assert mirror(ctx.one()) == ctx.one()
        assert mirror(ctx.e_plus()) == ctx.e_minus()
        assert mirror(ctx.e_minus()) == ctx.e_plus()


def test_mirror_of_T_against_series_oracle():
    ctx = make_tower(3, make_field(3), 4, 5)
    T = sympy.Symbol("T")
    ser = sympy.series(4 / (1 + T) - 1, T, 0, 5).removeO()
    coeffs = sympy.Poly(ser, T).all_coeffs()[::-1]
    got = mirror(ctx.T())
    for t in range(5):
        P = min(4, 5 - t)
        assert got.coeffs[t][ctx.identity_index] == int(coeffs[t]) % 3**P
        assert got.coeffs[t][ctx.conj_index] == 0


@given(CTXS, st.integers(0, 10**6), st.integers(-3, 3), st.integers(-3, 3))
def test_twist_properties(ctx, seed, i, j):
    a, b = rand(ctx, seed), rand(ctx, seed + 1)
    assert tate_twist(a, 0) == a
    assert tate_twist(tate_twist(a, i), j) == tate_twist(a, i + j)
    assert tate_twist(a * b, i) == tate_twist(a, i) * tate_twist(b, i)
    assert mirror(tate_twist(a, i)) == tate_twist(mirror(a), -i)


def test_twist_of_T():
    for ctx in (CTX3, CTX5):
        k = ctx.kappa_gamma
        expected = ctx.T() * k + ctx.one() * (k - 1)
        got = tate_twist(ctx.T(), 1)
        assert got == expected and got.exact


def test_symmetrize_components():
    ctx = CTX5
    phi = coherent_stickelberger(ctx, 3, 1)
    s = symmetrize(phi)
    em, ep = ctx.e_minus(), ctx.e_plus()
    assert em * s == em * phi + em * mirror(phi)
    assert ep * s == ep * phi + ep * mirror(phi)
    # sigma^c is imaginary: e_+ kills it, so e_- s is its own part and e_+ s is the mirror part
    assert (ep * phi).is_zero()
    assert em * s == phi.truncated() and ep * s == mirror(phi)
    assert symmetrize(ctx.zero()).is_zero()


@pytest.mark.parametrize("ell", [3, 5])
def test_tower_coherence(ell):
    ctx = make_tower(ell, make_field(ell), 16, ell**3)
    for c in (7, 11, 13):
        phi = coherent_stickelberger(ctx, c, 3)
        assert phi.exact
        for n in range(4):
            assert reduce_mod_level(phi, n) == level_stickelberger(ctx, c, n)


def test_coherent_base_example():
    ctx = make_tower(3, make_field(3), 8, 9)
    phi = coherent_stickelberger(ctx, 5, 2)
    F3 = make_field(3)
    assert reduce_mod_level(phi, 0) == GroupRingElement(F3, {1: -1, 2: 1}, ell=3, M=8)
    with pytest.raises(PreconditionError):
        coherent_stickelberger(ctx, 6, 1)


def test_reduce_basics():
    ctx = make_tower(3, make_field(3), 8, 9)
    Fn = ctx.level_field(1)
    assert reduce_mod_level(ctx.one(), 1) == GroupRingElement.one(Fn, 3, 8)
    g = ctx.gamma()
    g3 = g * g * g
    assert reduce_mod_level(g3 - ctx.one(), 1).is_zero()
    assert g3.exact


def test_reduce_precision_of_truncated():
    ctx = make_tower(3, make_field(3), 8, 7)
    a = rand(ctx, 1)
    assert reduce_mod_level(a, 0).M == 7
    assert reduce_mod_level(a, 1).M == 2
    with pytest.raises(PrecisionError):
        reduce_mod_level(a, 2)


def test_truncated_reduction_is_well_defined():
    # adding an element of J = (ell, T)^N + ell^M does not change the reduction
    ctx = make_tower(3, make_field(3), 8, 7)
    a = rand(ctx, 5, exact=True)
    bump = [[0] * ctx.D for _ in range(ctx.N)]
    for t in range(ctx.N):
        bump[t][0] = 3 ** min(8, 7 - t)
    b = a + IwasawaElement(ctx, bump, exact=True)
    for n in (0, 1):
        P = reduce_mod_level(a.truncated(), n).M
        assert reduce_mod_level(a, n).to_ladic(3, P) == reduce_mod_level(b, n).to_ladic(3, P)


def test_from_level_roundtrip():
    ctx = make_tower(5, make_field(5), 6, 25)
    x = level_stickelberger(ctx, 3, 1)
    assert reduce_mod_level(from_level(ctx, x, 1), 1) == x


def test_ideal_index_examples():
    ctx = make_tower(3, make_field(3), 16, 9)
    r = ideal_index(ctx, 0, [5, 7])
    assert r["certified"] and r["valuation"] is not None
    assert ideal_index(ctx, 0, []) == {"valuation": None, "certified": False, "reason": "empty twist set"}
    ctx5 = make_tower(5, make_field(5), 16, 9)
    assert ideal_index(ctx5, 0, [3, 7, 11])["certified"]


def _sympy_index_valuation(rows, ell, P):
    A = sympy.Matrix(rows).col_join(sympy.eye(len(rows[0])) * ell**P)
    from sympy.matrices.normalforms import smith_normal_form
    S = smith_normal_form(A, domain=sympy.ZZ)
    vals = []
    for i in range(S.cols):
        d = abs(int(S[i, i]))
        v = 0
        while d % ell == 0 and v < P:
            d //= ell
            v += 1
        vals.append(v)
    return sorted(vals)


def test_index_against_sympy_snf():
    from stickel.lattice import smith_valuations
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 5)
        rows = [[rng.choice([0, 1, 3, 9, 27, 5, 2]) * rng.randint(-5, 5) for _ in range(n)] for _ in range(rng.randint(1, 7))]
        assert sorted(smith_valuations(rows, 3, 4)) == _sympy_index_valuation(rows, 3, 4)


def test_mirror_reduction_defect_is_reported():
    ctx = make_tower(3, make_field(3), 8, 9)
    phi = coherent_stickelberger(ctx, 5, 2)
    for n in (0, 1):
        rep = mirror_reduction_defect(phi, n)
        assert rep["defect_valuation"] >= n + 1


@given(CTXS, st.integers(0, 10**6), st.booleans())
def test_json_roundtrip(ctx, seed, exact):
    a = rand(ctx, seed, exact)
    assert IwasawaElement.from_json(a.to_json()) == a
    assert TowerContext.from_json(ctx.to_json()) == ctx
