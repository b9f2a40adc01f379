import cmath
import math

import pytest
from hypothesis import assume, given, strategies as st

from frevival.cyclotomic import (
    CyclotomicValue,
    cyc_add,
    cyc_mul,
    cyclotomic_polynomial,
    is_rational_integer,
    numeric_eval,
)


def z(m, j=1):
    return CyclotomicValue.root(m, j)


@st.composite
def values(draw, max_m=24, max_coeff=5):
    m = draw(st.integers(1, max_m))
    coeffs = draw(st.lists(st.integers(-max_coeff, max_coeff), min_size=m, max_size=m))
    return CyclotomicValue(m, tuple(coeffs))


def test_add_examples():
    s = cyc_add(z(4, 1), z(4, 3))
    assert s.coeffs == (0, 1, 0, 1)
    assert abs(numeric_eval(s)) < 1e-15
    assert cyc_add(CyclotomicValue.integer(1), CyclotomicValue.integer(1)).coeffs == (2,)
    assert numeric_eval(cyc_add(z(6, 1), z(6, 5))) == pytest.approx(1.0)


def test_mul_examples():
    assert cyc_mul(z(4), z(4)).coeffs == (0, 0, 1, 0)
    assert numeric_eval(cyc_mul(z(4), z(4))) == pytest.approx(-1)
    assert cyc_mul(z(6, 2), z(6, 4)).coeffs == (1, 0, 0, 0, 0, 0)
    w = z(3, 1) + z(3, 2)
    sq = cyc_mul(w, w)
    assert sq.coeffs == (2, 1, 1)
    assert numeric_eval(sq) == pytest.approx(1)
    assert is_rational_integer(sq) == 1


def test_rationality_examples():
    assert is_rational_integer(z(6, 1) + z(6, 5)) == 1
    assert is_rational_integer(CyclotomicValue.integer(3)) == 3
    assert is_rational_integer(z(5, 1)) is None
    # ζ3 + ζ3² = -1 is Galois invariant
    assert is_rational_integer(z(3, 1) + z(3, 2)) == -1
    # i + 1 is not rational
    assert is_rational_integer(z(4, 1) + 1) is None


def test_non_invariant_representative_of_an_integer():
    # 1 + ζ3 + ζ3² = 0, written without Galois symmetry in the ζ6 basis
    v = CyclotomicValue(6, (1, 0, 1, 0, 1, 0)) + z(6, 3) - z(6, 3)
    assert v.is_zero()
    assert is_rational_integer(CyclotomicValue(6, (2, 0, 1, 0, 1, 0))) == 1


def test_numeric_examples():
    assert numeric_eval(z(2)) == pytest.approx(-1)
    assert numeric_eval(z(6)) == pytest.approx(complex(0.5, math.sqrt(3) / 2), abs=1e-15)
    assert numeric_eval(CyclotomicValue.zero(7)) == 0


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert len(cyclotomic_polynomial(15)) - 1 == 8


def test_equality_across_bases():
    assert z(4, 2) == -1
    assert z(3) == z(6, 2)
    assert z(6, 1) + z(6, 5) == 1
    assert z(5) != z(5, 2)


@given(values(max_m=120, max_coeff=3))
def test_numeric_matches_definition(v):
    direct = sum(c * cmath.exp(2j * math.pi * j / v.m) for j, c in enumerate(v.coeffs))
    assert abs(numeric_eval(v) - direct) <= 1e-12 * max(1.0, sum(abs(c) for c in v.coeffs))


@given(values(), values())
def test_mul_is_homomorphic(a, b):
    assert abs(numeric_eval(cyc_mul(a, b)) - numeric_eval(a) * numeric_eval(b)) < 1e-9


@given(values(), values())
def test_add_is_homomorphic(a, b):
    assert abs(numeric_eval(cyc_add(a, b)) - (numeric_eval(a) + numeric_eval(b))) < 1e-12


@given(values())
def test_conjugation(v):
    c = v.conjugate()
    assert c.conjugate().coeffs == v.coeffs
    assert c.coeffs == tuple(v.coeffs[(v.m - j) % v.m] for j in range(v.m))
    assert abs(numeric_eval(c) - numeric_eval(v).conjugate()) < 1e-12


@given(values(), st.integers(-4, 4))
def test_integer_scaling_and_negation(v, k):
    assert abs(numeric_eval(v * k) - k * numeric_eval(v)) < 1e-12
    assert (v + (-v)).is_zero()


@given(values(max_m=30))
def test_rationality_never_lies(v):
    r = is_rational_integer(v)
    x = numeric_eval(v)
    if r is not None:
        assert abs(x - r) < 1e-6
    nearest = round(x.real)
    if abs(x - nearest) > 1e-6:
        assert r is None


@given(values(max_m=30))
def test_equality_agrees_with_numeric(v):
    w = v + CyclotomicValue(v.m, tuple(1 for _ in range(v.m))) * (1 if v.m > 1 else 0)
    same = v == w
    assert same == (abs(numeric_eval(v) - numeric_eval(w)) < 1e-9)


@given(values(max_m=12), st.sampled_from([1, 2, 3]))
def test_rescale_preserves_value(v, factor):
    r = v.rescale(v.m * factor)
    assert r == v
    assert abs(numeric_eval(r) - numeric_eval(v)) < 1e-12


@given(values(max_m=20))
def test_galois_orbit_sum_is_rational(v):
    units = [k for k in range(1, v.m + 1) if math.gcd(k, v.m) == 1]
    total = CyclotomicValue.zero(v.m)
    for k in units:
        total = total + v.galois(k)
    assert is_rational_integer(total) is not None
