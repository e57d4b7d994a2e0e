"""Exact scalars in Q(v) and truncated series."""

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qzalg.scalar import (QRat, ScalarDomainError, TruncatedSeries, TruncationError, q_binomial, q_factorial,
                          q_int, q_pochhammer, qk_power_series, qpow, ratio_power_series, series_coeff, series_mul)

coef = st.integers(min_value=-9, max_value=9)
poly = st.lists(coef, min_size=1, max_size=4)


@st.composite
def qrats(draw, nonzero=False):
    num = draw(poly)
    den = draw(poly.filter(any))
    x = QRat(tuple(num), tuple(den), draw(st.integers(-3, 3)), 1)
    if nonzero:
        assume(x)
    return x


def q(e, D=1):
    return qpow(e, D)


def _sym(x: QRat):
    v = sympy.Symbol("v")
    n = sum((c * v ** i for i, c in enumerate(x.num)), sympy.Integer(0))
    d = sum((c * v ** i for i, c in enumerate(x.den)), sympy.Integer(0))
    return n * v ** x.val / d, v


# ---------------------------------------------------------------------------
# q-numbers

def test_q_int_examples():
    assert q_int(2, 1) == q(1) + q(-1)
    assert q_int(0, 1) == 0
    assert q_int(3, 1) == q(2) + 1 + q(-2)


@pytest.mark.parametrize("n", range(-6, 7))
def test_q_int_is_the_geometric_sum(n):
    want = sum((q(n - 1 - 2 * j) for j in range(abs(n))), QRat.from_int(0))
    assert q_int(n, 1) == (want if n >= 0 else -sum((q(-n - 1 - 2 * j) for j in range(-n)), QRat.from_int(0)))


@pytest.mark.parametrize("n", range(-10, 11))
def test_q_int_classical_limit(n):
    assert q_int(n, 1).classical() == n
    assert q_int(n, 2, 1).classical() == n


def test_q_int_rational_argument():
    # [2/3] at root order 3 is (v^2 - v^-2) / (v^3 - v^-3)
    x = q_int(Fraction(2, 3), 1, 3)
    v = sympy.Symbol("v")
    want = (v ** 2 - v ** -2) / (v ** 3 - v ** -3)
    assert sympy.cancel(_sym(x)[0] - want) == 0


def test_q_int_rejects_unrepresentable_exponent():
    with pytest.raises(ScalarDomainError):
        q_int(Fraction(1, 2), 1, 1)
    with pytest.raises(ScalarDomainError):
        qpow(Fraction(1, 3), 2)


def test_q_binomial_examples():
    assert q_binomial(2, 1) == q(1) + q(-1)
    assert q_binomial(3, 0) == 1
    # [4; 2] by the q-Pascal recurrence, an independent route
    pascal = q(2) * q_binomial(3, 2) + q(-2) * q_binomial(3, 1)
    assert q_binomial(4, 2) == pascal
    assert q_binomial(4, 2) == q(4) + q(2) + 2 + q(-2) + q(-4)


def test_q_binomial_domain():
    with pytest.raises(ScalarDomainError):
        q_binomial(2, 3)


@pytest.mark.parametrize("d", [1, 2, Fraction(1, 2)])
@pytest.mark.parametrize("m", range(1, 7))
def test_q_binomial_pascal_symmetry_laurent(m, d):
    D = 2
    qd = lambda e: qpow(d * e, D)
    for n in range(0, m + 1):
        b = q_binomial(m, n, d, D)
        assert b.is_laurent()
        assert b == q_binomial(m, m - n, d, D)
        if 0 < n < m:
            rhs = qd(n) * q_binomial(m - 1, n, d, D) + qd(n - m) * q_binomial(m - 1, n - 1, d, D)
            assert b == rhs


def test_q_factorial_classical():
    assert q_factorial(5).classical() == 120


# ---------------------------------------------------------------------------
# field axioms

@settings(max_examples=80, deadline=None)
@given(a=qrats(nonzero=True))
def test_inverse(a):
    assert a * a.inverse() == 1


@settings(max_examples=60, deadline=None)
@given(a=qrats(), b=qrats(), c=qrats())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * b == b * a


@settings(max_examples=60, deadline=None)
@given(a=qrats(), b=qrats(nonzero=True))
def test_arithmetic_against_sympy(a, b):
    sa, v = _sym(a)
    sb, _ = _sym(b)
    assert sympy.cancel(_sym(a + b)[0] - (sa + sb)) == 0
    assert sympy.cancel(_sym(a * b)[0] - sa * sb) == 0
    assert sympy.cancel(_sym(a / b)[0] - sa / sb) == 0


@given(a=qrats())
def test_normal_form_is_canonical(a):
    # equal values give equal representations and hashes
    b = (a * 3 + a) / 4
    assert b == a and hash(b) == hash(a)


def test_root_order_mismatch_is_rejected():
    with pytest.raises(ScalarDomainError):
        qpow(1, 2) + qpow(1, 4)


# ---------------------------------------------------------------------------
# series

def test_series_coefficients():
    s = TruncatedSeries({0: 1, 1: -1}, 5)
    assert series_coeff(s, 0) == 1
    assert series_coeff(s, 2) == 0
    p = series_mul(s, TruncatedSeries({0: 1, 1: 1}, 5), 5)
    assert p.coeff(2) == -1


def test_series_unknown_beyond_order():
    s = TruncatedSeries({0: 1, 1: -1}, 3)
    with pytest.raises(TruncationError):
        s.coeff(4)


def test_pochhammer_finite():
    z = QRat.from_int(1)
    assert q_pochhammer(z, 1, q(2), 2) == series_mul(TruncatedSeries({0: 1, 1: -1}),
                                                        TruncatedSeries({0: 1, 1: -q(2)}))
    assert q_pochhammer(z, 1, q(2), 0) == TruncatedSeries.one()


def test_pochhammer_infinite_against_long_finite_product():
    # (qz; q^2)_inf through z^3; a product of 12 factors agrees with it up to q^24
    inf = q_pochhammer(q(1), 1, q(2), None, 3)
    fin = q_pochhammer(q(1), 1, q(2), 12, 3)
    for j in range(4):
        a = inf.coeff(j).laurent_expand(20)
        b = fin.coeff(j).laurent_expand(20)
        assert a == b
    assert inf.coeff(1).laurent_expand(5) == {1: -1, 3: -1, 5: -1}


def test_qk_examples():
    for k in (Fraction(1, 2), 1, 2, 3):
        assert qk_power_series(0, k, 6) == TruncatedSeries.one(order=6, D=qk_power_series(0, k, 6).D)
        s = qk_power_series(k, k, 10)
        assert all(s.coeff(n) == {0: 1, 1: -1}.get(n, 0) for n in range(11))
    s = qk_power_series(2, 1, 4)
    want = series_mul(TruncatedSeries({0: 1, 1: -q(1)}), TruncatedSeries({0: 1, 1: -q(-1)}))
    assert all(s.coeff(n) == want.coeff(n) for n in range(5))


def test_qk_rejects_zero_level():
    with pytest.raises(ScalarDomainError):
        qk_power_series(1, 0, 3)


@settings(max_examples=25, deadline=None)
@given(a=st.fractions(min_value=-4, max_value=4, max_denominator=2),
       k=st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)]))
def test_qk_exponential_equals_product(a, k):
    e = qk_power_series(a, k, 6, method="exp")
    p = qk_power_series(a, k, 6, method="product")
    assert e.agrees_with(p, 6)


@settings(max_examples=25, deadline=None)
@given(a=st.integers(-3, 3), b=st.integers(-3, 3), k=st.sampled_from([1, 2]))
def test_qk_exponents_combine(a, b, k):
    # the product formula telescopes: (1 - z)^{a/k} (1 - q^{a+b} z)^{b/k} = (1 - q^b z)^{(a+b)/k}
    lhs = ratio_power_series(a, k, 0, 5, 2) * ratio_power_series(b, k, a + b, 5, 2)
    assert lhs.agrees_with(ratio_power_series(a + b, k, b, 5, 2), 5)


def test_classical_limit_of_binomial_series():
    # at q = 1 the coefficients become the ordinary binomial series of (1 - z)^{a/k}
    a, k = 3, 2
    s = qk_power_series(a, k, 5)
    x = Fraction(a, k)
    for n in range(6):
        want = Fraction((-1) ** n) * math.prod(x - j for j in range(n)) / math.factorial(n)
        assert s.coeff(n).classical() == want
