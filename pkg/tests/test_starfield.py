"""Scalar backends: exact arithmetic, the involution, automorphisms."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from opgraphs.starfield import (
    QI,
    StarFieldError,
    field_from_descriptor,
    galois_field,
)

F9 = galois_field(3, 1)
F16 = galois_field(2, 2)

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=8)
qi_scalars = st.tuples(rationals, rationals)
f9_scalars = st.sampled_from(list(F9.elements()))
f16_scalars = st.sampled_from(list(F16.elements()))


def field_and_scalars(name):
    return {"qi": (QI, qi_scalars), "f9": (F9, f9_scalars), "f16": (F16, f16_scalars)}[name]


@pytest.mark.parametrize("name", ["qi", "f9", "f16"])
def test_field_axioms(name):
    field, scalars = field_and_scalars(name)

    @given(scalars, scalars, scalars)
    def run(x, y, z):
        assert field.add(x, y) == field.add(y, x)
        assert field.mul(x, y) == field.mul(y, x)
        assert field.add(field.add(x, y), z) == field.add(x, field.add(y, z))
        assert field.mul(field.mul(x, y), z) == field.mul(x, field.mul(y, z))
        assert field.mul(x, field.add(y, z)) == field.add(field.mul(x, y), field.mul(x, z))
        assert field.add(x, field.neg(x)) == field.zero
        assert field.sub(x, y) == field.add(x, field.neg(y))
        if x != field.zero:
            assert field.mul(x, field.inv(x)) == field.one
            assert field.div(y, x) == field.mul(y, field.inv(x))

    run()


@pytest.mark.parametrize("name", ["qi", "f9", "f16"])
def test_involution(name):
    field, scalars = field_and_scalars(name)

    @given(scalars, scalars)
    def run(x, y):
        assert field.conj(field.conj(x)) == x
        assert field.conj(field.add(x, y)) == field.add(field.conj(x), field.conj(y))
        assert field.conj(field.mul(x, y)) == field.mul(field.conj(x), field.conj(y))
        # the norm lands in the fixed subfield
        assert field.is_fixed(field.mul(x, field.conj(x)))
        assert field.is_fixed(x) == (field.conj(x) == x)

    run()


def test_qi_scalar_layout():
    x = QI.scalar(Fraction(3, 2), Fraction(-1, 4))
    assert x == (Fraction(3, 2), Fraction(-1, 4))
    assert QI.conj(x) == (Fraction(3, 2), Fraction(1, 4))
    i = QI.scalar(0, 1)
    assert QI.mul(i, i) == QI.neg(QI.one)
    assert not QI.is_fixed(i)
    assert QI.parse_fixed("3/2") == QI.scalar(Fraction(3, 2))
    with pytest.raises(StarFieldError):
        QI.parse_fixed("nonsense")


def test_fixed_subfield_sizes():
    # GF(9) over GF(3), GF(16) over GF(4)
    assert len(list(F9.elements())) == 9
    assert len(F9.fixed_elements()) == 3
    assert len(list(F16.elements())) == 16
    assert len(F16.fixed_elements()) == 4
    for x in F9.fixed_elements():
        assert F9.is_fixed(x)
    fixed = set(F9.fixed_elements())
    assert sum(1 for x in F9.elements() if F9.is_fixed(x)) == len(fixed)


def test_galois_conjugation_is_frobenius_power():
    # conj(x) = x^(p^e): x^3 on GF(9), x^4 on GF(16)
    for x in F9.elements():
        assert F9.conj(x) == F9.pow(x, 3)
    for x in F16.elements():
        assert F16.conj(x) == F16.pow(x, 4)


def test_parse_fixed_galois_indexing():
    fixed = F9.fixed_elements()
    for idx, want in enumerate(fixed):
        assert F9.parse_fixed(str(idx)) == want
    with pytest.raises(StarFieldError):
        F9.parse_fixed("3")
    with pytest.raises(StarFieldError):
        F9.parse_fixed("-1")


def test_from_int_is_a_ring_map():
    for field in (QI, F9, F16):
        for a in range(-4, 5):
            for b in range(-4, 5):
                x, y = field.from_int(a), field.from_int(b)
                assert field.add(x, y) == field.from_int(a + b)
                assert field.mul(x, y) == field.from_int(a * b)


def test_automorphism_groups():
    qi_autos = QI.automorphisms()
    assert sorted(a.name for a in qi_autos) == ["conj", "id"]
    f9_autos = F9.automorphisms()
    assert len(f9_autos) == 2  # Gal(GF(9)/GF(3))
    f16_autos = F16.automorphisms()
    assert len(f16_autos) == 4  # Gal(GF(16)/GF(2))
    for field, autos in ((F9, f9_autos), (F16, f16_autos), (QI, qi_autos)):
        sample = F9.elements() if field is F9 else (
            F16.elements() if field is F16 else
            [QI.scalar(Fraction(2, 3), Fraction(-1, 5)), QI.one, QI.scalar(0, 1)])
        for phi in autos:
            for x in sample:
                for y in sample:
                    assert phi(field.mul(x, y)) == field.mul(phi(x), phi(y))
                    assert phi(field.add(x, y)) == field.add(phi(x), phi(y))
                    # compatibility with the involution
                    assert phi(field.conj(x)) == field.conj(phi(x))


@pytest.mark.parametrize("name", ["qi", "f9", "f16"])
def test_scalar_json_roundtrip(name):
    field, scalars = field_and_scalars(name)

    @given(scalars)
    def run(x):
        blob = field.scalar_to_json(x)
        assert field.scalar_from_json(blob) == x

    run()


def test_descriptor_roundtrip():
    for field in (QI, F9, F16):
        assert field_from_descriptor(field.descriptor()) is field
    d = F16.descriptor()
    assert d["kind"] == "gf"
    assert (d["p"], d["e"], d["order"]) == (2, 2, 16)
    assert QI.descriptor() == {"kind": "qi"}


def test_galois_field_cache_and_validation():
    assert galois_field(3, 1) is F9
    assert galois_field(3, 1).order == 9
    with pytest.raises(StarFieldError):
        galois_field(4, 1)  # not prime
    with pytest.raises(StarFieldError):
        galois_field(3, 0)
