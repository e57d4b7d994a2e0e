"""The compiled kernels agree with the pure-Python fallback."""

import importlib

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qzalg import _polykern as pure
from qzalg import kernels

compiled = pytest.importorskip("qzalg._polykern_c")

coef = st.integers(min_value=-50, max_value=50)
poly = st.lists(coef, max_size=8).map(pure.trim)
nonzero = st.lists(coef, min_size=1, max_size=6).map(pure.trim).filter(bool)
den = st.integers(min_value=1, max_value=30)
val = st.integers(min_value=-5, max_value=5)

UNARY = ["trim", "pneg", "pcontent", "strip_low"]
BINARY = ["padd", "psub", "pmul", "pgcd", "ptrydiv"]


def _normal(a, av, B):
    """Normalized (num, val, den) argument triple for the Laurent kernels."""
    num, d, lo = pure.ladd(a, av, B, (), 0, 1)
    return num, lo, d


def _sym(p):
    v = sympy.Symbol("v")
    return sum((c * v ** i for i, c in enumerate(p)), sympy.Integer(0)), v


@pytest.mark.parametrize("name", UNARY)
@given(a=poly)
def test_unary_parity(name, a):
    if name == "strip_low" and not a:
        return
    assert getattr(pure, name)(a) == getattr(compiled, name)(a)


@pytest.mark.parametrize("name", BINARY)
@given(a=poly, b=nonzero)
def test_binary_parity(name, a, b):
    assert getattr(pure, name)(a, b) == getattr(compiled, name)(a, b)


@given(a=poly, c=coef, k=st.integers(min_value=0, max_value=4))
def test_scale_shift_parity(a, c, k):
    assert pure.pscale(a, c) == compiled.pscale(a, c)
    assert pure.pshift(a, k) == compiled.pshift(a, k)


@given(a=nonzero, b=nonzero, x=st.integers(min_value=-3, max_value=3))
def test_eval_and_exact_division(a, b, x):
    assert pure.peval(a, x) == compiled.peval(a, x)
    prod = pure.pmul(a, b)
    assert pure.pdivexact(prod, b) == compiled.pdivexact(prod, b) == a


@settings(max_examples=200)
@given(a=nonzero, av=val, B=den, c=nonzero, cv=val, E=den)
def test_laurent_kernels_parity(a, av, B, c, cv, E):
    x, y = _normal(a, av, B), _normal(c, cv, E)
    assert pure.ladd(*x, *y) == compiled.ladd(*x, *y)
    assert pure.lmul(*x, *y) == compiled.lmul(*x, *y)


@settings(max_examples=60, deadline=None)
@given(a=nonzero, b=nonzero)
def test_gcd_against_sympy(a, b):
    g = pure.pgcd(a, b)
    sa, v = _sym(a)
    sb, _ = _sym(b)
    want = sympy.Poly(sympy.gcd(sa, sb), v)
    if want.LC() < 0:
        want = -want
    assert list(reversed(want.all_coeffs())) == list(g)


@settings(max_examples=60, deadline=None)
@given(a=nonzero, av=val, B=den, c=nonzero, cv=val, E=den)
def test_laurent_kernels_against_sympy(a, av, B, c, cv, E):
    x, y = _normal(a, av, B), _normal(c, cv, E)
    sx, v = _sym(x[0])
    sy, _ = _sym(y[0])
    fx = sx * v ** x[1] / x[2]
    fy = sy * v ** y[1] / y[2]
    for op, want in ((pure.ladd, fx + fy), (pure.lmul, fx * fy)):
        num, d, lo = op(*x, *y)
        got = _sym(num)[0] * v ** lo / d
        assert sympy.expand(want - got) == 0


def test_backend_selection(monkeypatch):
    assert kernels.BACKEND == "compiled"
    monkeypatch.setenv("QZALG_PURE", "1")
    try:
        mod = importlib.reload(kernels)
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("QZALG_PURE")
        importlib.reload(kernels)
