"""Field arithmetic and the wire format for Q(i)."""

import pytest
from hypothesis import given

from fhodge.errors import MalformedInput
from fhodge.scalars import Scalar, format_scalar, parse_scalar, rat

from conftest import nonzero_scalars, sc, scalars


def test_basic_arithmetic():
    a = sc(1, 2)
    b = sc(3, 4)
    assert a * b == sc(-5, 10)
    assert a + b == sc(4, 6)
    assert a - b == sc(-2, -2)
    assert (a * b) / b == a


def test_division_exact():
    assert sc(1) / sc(0, 1) == sc(0, -1)
    assert sc(1, 1) / sc(1, -1) == sc(0, 1)
    with pytest.raises(ZeroDivisionError):
        sc(1) / sc(0)


def test_conj_and_predicates():
    z = sc(2, -3, 5)
    assert z.conj() == sc(2, 3, 5)
    assert not z.is_rational()
    assert sc(7, 0).is_rational()
    assert sc(0).is_zero() and not z.is_zero()


def test_int_interop():
    assert sc(3) == 3
    assert 2 * sc(1, 1) == sc(2, 2)
    assert 1 - sc(0, 1) == sc(1, -1)


def test_wire_format_examples():
    assert format_scalar(sc(3, -2, 4)) == "3/4-1/2*i"
    assert format_scalar(sc(0)) == "0/1"
    assert format_scalar(sc(0, 1)) == "0/1+1/1*i"
    assert format_scalar(sc(0, -1)) == "0/1-1/1*i"
    assert format_scalar(sc(5)) == "5/1"
    assert parse_scalar("3/4-1/2*i") == sc(3, -2, 4)
    assert parse_scalar("0/1-1/1*i") == sc(0, -1)
    assert parse_scalar("2") == sc(2)
    assert parse_scalar("-7/3") == sc(-7, 0, 3)


@pytest.mark.parametrize("bad", ["", "1 + j", "3/0", "i", "1//2", "+-1"])
def test_wire_format_rejects(bad):
    with pytest.raises(MalformedInput):
        parse_scalar(bad)


@given(scalars)
def test_print_parse_roundtrip(z):
    assert parse_scalar(format_scalar(z)) == z


@given(scalars, scalars, scalars)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


@given(scalars, nonzero_scalars)
def test_division_inverts_multiplication(a, b):
    assert (a * b) / b == a
    assert (a / b) * b == a


@given(scalars, scalars)
def test_conj_is_multiplicative(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    norm = a * a.conj()
    assert norm.is_rational() and norm.re >= 0
