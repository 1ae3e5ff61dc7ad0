from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from commaps.errors import InvalidModulus, NotAField, RingParseError, TwoTorsion
from commaps.ring import RingSpec, is_field, make_ring

from oracles import two_torsion_residues


def test_modular_5_is_field():
    r = make_ring(RingSpec("modular", 5))
    assert is_field(r)


def test_modular_6_rejected():
    assert two_torsion_residues(6) == [3]
    with pytest.raises(TwoTorsion):
        make_ring(RingSpec("modular", 6))


@pytest.mark.parametrize("m", [0, 1])
def test_tiny_modulus(m):
    with pytest.raises(InvalidModulus):
        make_ring(RingSpec("modular", m))


@pytest.mark.parametrize("name,field", [("Z", False), ("Q", True), ("Z/9", False), ("Z/7", True), ("Z/3", True), ("Z/15", False)])
def test_is_field(name, field):
    assert is_field(make_ring(name)) is field


@pytest.mark.parametrize("text", ["R", "Z/", "Z/x", "Q/3", ""])
def test_parse_rejects(text):
    with pytest.raises(RingParseError):
        RingSpec.parse(text)


def test_canonical_values():
    q = make_ring("Q")
    assert q.parse("2/4") == Fraction(1, 2)
    assert q.parse("-3/6") == Fraction(-1, 2)
    assert q.format(q.parse("-6/4")) == "-3/2"
    z7 = make_ring("Z/7")
    assert z7(-1) == 6
    assert z7.parse("1/2") == 4
    assert z7.inv(3) == 5
    with pytest.raises(RingParseError):
        make_ring("Z").parse("1/2")
    with pytest.raises(NotAField):
        make_ring("Z").inv(3)
    with pytest.raises(NotAField):
        make_ring("Z/9").inv(2)


@pytest.mark.parametrize("m", [3, 5, 7, 9, 15, 21])
def test_no_two_torsion_exhaustive(m):
    r = make_ring(f"Z/{m}")
    assert [x for x in r.elements() if r.add(x, x) == 0] == [0]


values = st.integers(-10**6, 10**6) | st.fractions(max_denominator=50)


@pytest.mark.parametrize("name", ["Z", "Q", "Z/7", "Z/9"])
@given(a=values, b=values, c=values)
def test_ring_axioms(name, a, b, c):
    r = make_ring(name)
    if name == "Z":
        a, b, c = (int(Fraction(v)) for v in (a, b, c))
    if name.startswith("Z/"):
        m = r.spec.modulus
        a, b, c = (Fraction(v).numerator % m for v in (a, b, c))
    a, b, c = r(a), r(b), r(c)
    add, mul = r.add, r.mul
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert add(a, b) == add(b, a)
    assert mul(a, b) == mul(b, a)
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert add(a, r.neg(a)) == r.zero
    assert mul(a, r.one) == a
    if add(a, a) == 0:
        assert a == 0
