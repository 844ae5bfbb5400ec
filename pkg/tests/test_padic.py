from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stickel.errors import PrecisionError, PreconditionError
from stickel.padic import INF, PadicNumber, iwasawa_log, teichmuller, teichmuller_int, valuation

ELLS = st.sampled_from([3, 5, 7, 11])


def brute_log(x: int, ell: int, M: int) -> int:
    """log(x^(ell-1)) / (ell-1) by the plain series at generous precision (independent route)."""
    W = M + 10
    mod = ell**W
    u = pow(x, ell - 1, mod)
    z = Fraction(u - 1)
    total = Fraction(0)
    zk = Fraction(1)
    for k in range(1, 8 * W):
        zk *= z
        total += (-1) ** (k + 1) * zk / k
    total /= ell - 1
    return total.numerator * pow(total.denominator, -1, ell**M) % ell**M


def test_valuation():
    assert valuation(75, 5) == 2
    assert valuation(Fraction(3, 25), 5) == -2
    assert valuation(0, 3) == INF


def test_from_rational_and_residue():
    x = PadicNumber.from_rational(Fraction(1, 2), 3, 4)
    assert x.residue() == 41  # 2 * 41 = 82 = 1 mod 81
    assert PadicNumber.from_rational(27, 3, 3).is_zero()


@given(ELLS, st.integers(1, 10**6), st.integers(1, 10**6))
def test_field_ops_match_rationals(ell, a, b):
    M = 10
    x, y = Fraction(a, b), Fraction(b, a + 1)
    px = PadicNumber.from_rational(x, ell, valuation(x, ell) + M)
    py = PadicNumber.from_rational(y, ell, valuation(y, ell) + M)
    prod = px * py
    assert prod.equals_mod(PadicNumber.from_rational(x * y, ell, 50), prod.absprec)
    q = px / py
    assert q.equals_mod(PadicNumber.from_rational(x / y, ell, 50), q.absprec)
    s = px + py
    assert s.equals_mod(PadicNumber.from_rational(x + y, ell, 50), s.absprec)


def test_precision_tracking():
    x = PadicNumber.from_rational(3, 3, 5)
    y = PadicNumber.from_rational(3 + 3**5, 3, 8)
    d = x - y
    assert d.is_zero() and d.absprec == 5
    with pytest.raises(PrecisionError):
        d.residue(6)


@given(ELLS, st.integers(1, 10**6))
def test_teichmuller(ell, a):
    if a % ell == 0:
        a += 1
    M = 8
    w = teichmuller(a, M, ell)
    assert pow(w.unit, ell - 1, ell**M) == 1
    assert w.unit % ell == a % ell
    assert teichmuller_int(a, ell, M) == w.unit


def test_teichmuller_rejects_nonunit():
    with pytest.raises(PreconditionError):
        teichmuller(3, 5, 3)


@given(ELLS, st.integers(1, 10**6))
def test_iwasawa_log_oracle(ell, x):
    if x % ell == 0:
        x += 1
    M = 8
    assert iwasawa_log(x, M, ell).residue(M) == brute_log(x, ell, M)


@given(ELLS, st.integers(1, 10**4), st.integers(1, 10**4))
def test_log_homomorphism(ell, a, b):
    M = 10
    la, lb, lab = (iwasawa_log(v, M, ell) for v in (a, b, a * b))
    assert (la + lb).equals_mod(lab, M)


def test_log_conventions():
    assert iwasawa_log(7, 8, 7).is_zero()  # Log(ell) = 0
    assert iwasawa_log(-1, 8, 5).is_zero()
    assert iwasawa_log(teichmuller_int(2, 5, 8), 8, 5).is_zero()
    assert valuation(iwasawa_log(4, 10, 3).residue(10), 3) == 1


def test_json_roundtrip():
    for x in (PadicNumber.from_rational(Fraction(7, 9), 3, 6), PadicNumber.zero(5, 4)):
        assert PadicNumber.from_json(x.to_json()) == x
