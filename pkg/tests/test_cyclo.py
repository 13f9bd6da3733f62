import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mfkit.cyclo import CycloScalar, arith, cyclotomic_polynomial, euler_phi, root_of_unity

ORDERS = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 20])
RATS = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def scalars(draw, order=None):
    n = draw(ORDERS) if order is None else order
    return CycloScalar(n, draw(st.lists(RATS, min_size=0, max_size=2 * n)))


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert [euler_phi(n) for n in (1, 7, 9, 20)] == [1, 6, 6, 8]


@pytest.mark.parametrize("n", [1, 3, 5, 8, 12, 20])
def test_root_of_unity_has_order_n(n):
    z = root_of_unity(1, n)
    assert z ** n == 1
    for d in range(1, n):
        if n % d == 0 and d < n:
            assert z ** d != 1


def test_lift_across_orders():
    i = root_of_unity(1, 4)
    w = root_of_unity(1, 3)
    assert (i * w) ** 12 == 1
    assert i * i == -1
    assert root_of_unity(2, 10) == root_of_unity(1, 5)
    assert root_of_unity(5, 10) == -1


def test_norm_trace_golden_ratio():
    z = root_of_unity(1, 5)
    phi = 1 + z + z ** 4  # golden ratio
    assert phi * phi == phi + 1
    assert z.trace() == -1
    assert z.norm() == 1
    assert CycloScalar.rational(3, 5).norm() == 81


def test_complex_embedding():
    z = root_of_unity(1, 8)
    assert abs(z.to_complex() - cmath.exp(2j * math.pi / 8)) < 1e-12
    assert abs(z.to_complex(3) - cmath.exp(6j * math.pi / 8)) < 1e-12
    with pytest.raises(ValueError):
        z.to_complex(2)


def test_json_roundtrip_and_errors():
    x = CycloScalar(12, [Fraction(1, 3), -2, 0, Fraction(5, 7)])
    assert CycloScalar.from_json(x.to_json()) == x
    with pytest.raises(ValueError):
        CycloScalar.from_json({"order": 5, "coeffs": [["1", "1"]]})


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        CycloScalar.zero(5).inv()


def test_arith_dispatch():
    a, b = root_of_unity(1, 5), CycloScalar.rational(2)
    assert arith("add", a, b) == a + 2
    assert arith("mul", a, b) == 2 * a
    assert arith("neg", a) == -a
    assert arith("inv", a) == a ** 4
    with pytest.raises(ValueError):
        arith("pow", a, b)


def test_str_rendering():
    assert str(CycloScalar.zero()) == "0"
    assert str(root_of_unity(1, 5)) == "z5"


@given(scalars(), scalars())
def test_hash_consistent_with_eq(a, b):
    if a == b:
        assert hash(a) == hash(b)
    assert a == a.lift(a.order * 3)


@settings(max_examples=60)
@given(scalars())
def test_inverse_and_conjugate(a):
    if not a.is_zero():
        assert a * a.inv() == 1
        assert (a / a) == 1
    # conjugation is a field automorphism fixing rationals
    assert (a * a.conjugate()).conjugate() == a * a.conjugate()
    assert abs(a.conjugate().to_complex() - a.to_complex().conjugate()) < 1e-9


@given(scalars(), scalars())
def test_complex_embedding_is_a_homomorphism(a, b):
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-6
    assert abs((a - b).to_complex() - (a.to_complex() - b.to_complex())) < 1e-9
