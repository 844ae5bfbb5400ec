from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stickel.errors import IntegralityError, PreconditionError
from stickel.fields import make_field
from stickel.grouprings import GroupRingElement, restrict_ring

F12 = make_field(12)
F15 = make_field(15)


def elements(F, ladic=None):
    coeff = st.fractions(min_value=-9, max_value=9, max_denominator=4) if ladic is None else st.integers(0, 10**6)
    return st.dictionaries(st.sampled_from(F.elements), coeff, max_size=len(F.elements)).map(
        lambda d: GroupRingElement(F, d) if ladic is None else GroupRingElement(F, d, ell=ladic[0], M=ladic[1]))


@given(elements(F15), elements(F15), elements(F15))
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * GroupRingElement.one(F15) == a
    assert a - a == GroupRingElement.zero(F15)


@given(elements(F12, (5, 4)), elements(F12, (5, 4)))
def test_ladic_ring(a, b):
    assert (a * b).involution() == a.involution() * b.involution()
    assert all(0 < c < 5**4 for c in (a + b).coeffs.values())


def test_reduction_commutes_with_product():
    a = GroupRingElement(F15, {1: Fraction(1, 2), 2: 3})
    b = GroupRingElement(F15, {4: Fraction(2, 7), 7: -1})
    assert (a * b).to_ladic(3, 5) == a.to_ladic(3, 5) * b.to_ladic(3, 5)
    with pytest.raises(IntegralityError):
        GroupRingElement(F15, {1: Fraction(1, 3)}).to_ladic(3, 4)


def test_restriction_of_norm_element():
    F, K = make_field(15), make_field(5)
    assert restrict_ring(F, K, GroupRingElement.norm_element(F)) == GroupRingElement.norm_element(K) * 2
    assert restrict_ring(F, K, GroupRingElement.one(F)) == GroupRingElement.one(K)
    with pytest.raises(PreconditionError):
        restrict_ring(K, F, GroupRingElement.one(K))


def test_mixed_fields_rejected():
    with pytest.raises(PreconditionError):
        GroupRingElement.one(F12) + GroupRingElement.one(F15)


@given(elements(F15))
def test_json_roundtrip(a):
    assert GroupRingElement.from_json(a.to_json()) == a


@given(elements(F12, (3, 5)))
def test_json_roundtrip_ladic(a):
    assert GroupRingElement.from_json(a.to_json()) == a
