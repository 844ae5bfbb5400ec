from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stickel.errors import ConductorError, PreconditionError
from stickel.fields import (
    AbelianField,
    artin_symbol,
    field_from_subgroup,
    is_imaginary,
    is_subfield,
    make_field,
    restrict,
    subfields,
    subfields_of_cyclotomic,
    subgroups,
    units,
)

CONDUCTORS = st.sampled_from([3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 21, 24, 28])


def test_make_field_basics():
    F = make_field(5, [-1])
    assert F.degree == 2 and not is_imaginary(F)
    assert is_imaginary(make_field(3))
    assert make_field(1).degree == 1


def test_conductor_is_checked():
    with pytest.raises(ConductorError) as err:
        make_field(9, [4])
    assert err.value.true_conductor == 3
    with pytest.raises(PreconditionError):
        make_field(6)
    with pytest.raises(PreconditionError):
        make_field(15, [3])


def test_artin_symbol():
    F = make_field(5)
    assert artin_symbol(F, 7).rep == 2
    with pytest.raises(PreconditionError):
        artin_symbol(F, 10)


def test_subfield_counts_match_subgroup_counts():
    # Galois correspondence: subfields of Q(zeta_f) <-> subgroups of (Z/f)^x
    for f in (5, 7, 8, 12, 15, 16, 21):
        assert len(subfields_of_cyclotomic(f)) == len(subgroups(f))


@given(CONDUCTORS)
def test_degrees_multiply(f):
    for K in subfields_of_cyclotomic(f):
        assert (len(units(f)) // K.degree) * K.degree == len(units(f))
        assert field_from_subgroup(K.f, K.H) == K


@given(CONDUCTORS, st.data())
def test_restrict_is_homomorphism(f, data):
    F = make_field(f)
    Ks = [K for K in subfields(F)]
    K = data.draw(st.sampled_from(Ks))
    a, b = data.draw(st.sampled_from(F.elements)), data.draw(st.sampled_from(F.elements))
    ga, gb = artin_symbol(F, a), artin_symbol(F, b)
    assert restrict(F, K, ga * gb) == restrict(F, K, ga) * restrict(F, K, gb)


def test_restrict_rejects_non_subfield():
    with pytest.raises(PreconditionError):
        restrict(make_field(5), make_field(3), 1)


def test_subfield_relation():
    assert is_subfield(make_field(3), make_field(15))
    assert not is_subfield(make_field(5), make_field(15, [4]))
    assert is_subfield(make_field(5, [-1]), make_field(5))


def test_json_roundtrip():
    for F in subfields_of_cyclotomic(24):
        assert AbelianField.from_json(F.to_json()) == F
