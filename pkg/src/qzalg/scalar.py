"""Exact scalars in Q(v) with q = v**D, q-numbers and truncated series.

Every coefficient in the package is a :class:`QRat`.  A value is stored as
``v**val * num(v) / den(v)`` with ``num``, ``den`` integer polynomials that
are coprime, not divisible by ``v``, and ``den`` having a positive leading
coefficient; this makes ``==`` a structural comparison.
"""

from __future__ import annotations

import math
from math import gcd
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from qzalg import kernels as K

__all__ = [
    "QRat", "ScalarDomainError", "TruncationError", "TruncatedSeries",
    "as_fraction", "qpow", "qconst", "q_int", "q_factorial", "q_binomial",
    "q_pochhammer", "qk_power_series", "ratio_power_series", "series_mul",
    "series_coeff", "root_order_for",
]


class ScalarDomainError(ValueError):
    """An exponent or argument is not representable at the chosen root order."""


class TruncationError(LookupError):
    """A coefficient beyond the known truncation order was requested."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"expected an exact rational, got {x!r}")


def root_order_for(*exponents) -> int:
    """Smallest D with every q-exponent an integer multiple of 1/D."""
    d = 1
    for e in exponents:
        d = math.lcm(d, as_fraction(e).denominator)
    return d


class QRat:
    """Element of Q(v), q = v**D."""

    __slots__ = ("num", "den", "val", "D", "_hash")

    def __init__(self, num=(), den=(1,), val=0, D=1, _normal=False):
        if _normal:
            self.num, self.den, self.val, self.D = num, den, val, D
        else:
            self.num, self.den, self.val = _normalize(tuple(num), tuple(den), val)
            self.D = D
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_int(cls, n: int, D: int = 1) -> "QRat":
        if not n:
            return cls((), (1,), 0, D, _normal=True)
        return cls((n,), (1,), 0, D, _normal=True)

    @classmethod
    def from_fraction(cls, x, D: int = 1) -> "QRat":
        x = as_fraction(x)
        if not x:
            return cls.from_int(0, D)
        return cls((x.numerator,), (x.denominator,), 0, D, _normal=True)

    @classmethod
    def monomial(cls, coeff, vexp: int, D: int = 1) -> "QRat":
        r = cls.from_fraction(coeff, D)
        if r.num:
            r.val = vexp
        return r

    def coerce(self, other) -> "QRat":
        if isinstance(other, QRat):
            if other.D != self.D:
                raise ScalarDomainError(
                    f"root order mismatch: {self.D} vs {other.D}; rescale first")
            return other
        if isinstance(other, int):
            return QRat.from_int(other, self.D)
        if isinstance(other, (Fraction, Rational)):
            return QRat.from_fraction(other, self.D)
        return NotImplemented

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_one(self) -> bool:
        return self.num == (1,) and self.den == (1,) and not self.val

    def is_laurent(self) -> bool:
        """True when the denominator is a constant."""
        return len(self.den) == 1

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if type(other) is not QRat or other.D != self.D:
            other = self.coerce(other)
            if other is NotImplemented:
                return other
        if not other.num:
            return self
        if not self.num:
            return other
        return _add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return QRat(K.pneg(self.num), self.den, self.val, self.D, _normal=True)

    def __sub__(self, other):
        other = self.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is not QRat:
            if isinstance(other, int):
                if not other or not self.num:
                    return QRat.from_int(0, self.D)
                if other == 1:
                    return self
                if len(self.den) == 1:
                    return QRat(K.pscale(self.num, other), self.den, self.val, self.D)
            other = self.coerce(other)
            if other is NotImplemented:
                return other
        elif other.D != self.D:
            self.coerce(other)
        if not self.num or not other.num:
            return QRat.from_int(0, self.D)
        return _mul(self, other)

    __rmul__ = __mul__

    def inverse(self) -> "QRat":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(v)")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = K.pneg(num), K.pneg(den)
        return QRat(num, den, -self.val, self.D, _normal=True)

    def __truediv__(self, other):
        other = self.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = QRat.from_int(1, self.D)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, QRat):
            return (self.D == other.D and self.val == other.val
                    and self.num == other.num and self.den == other.den)
        if isinstance(other, (int, Fraction)):
            return self == QRat.from_fraction(other, self.D)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den, self.val, self.D))
        return self._hash

    # -- evaluation and transforms -----------------------------------------
    def evaluate(self, v) -> Fraction:
        """Value at a rational point v (v must not be a pole)."""
        v = as_fraction(v)
        n = sum((Fraction(c) * v ** i for i, c in enumerate(self.num)), Fraction(0))
        d = sum((Fraction(c) * v ** i for i, c in enumerate(self.den)), Fraction(0))
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return n / d * v ** self.val

    def classical(self) -> Fraction:
        """Specialization q -> 1 (v -> 1)."""
        return self.evaluate(1)

    def rescale(self, D2: int) -> "QRat":
        """Same element viewed at root order D2 (a multiple of D)."""
        if D2 % self.D:
            raise ScalarDomainError(f"cannot rescale root order {self.D} to {D2}")
        f = D2 // self.D
        if f == 1:
            return self
        return QRat(_spread(self.num, f), _spread(self.den, f), self.val * f, D2,
                    _normal=True)

    def laurent_expand(self, order: int) -> dict:
        """Expansion at v = 0 as {exponent: Fraction} for exponents <= order."""
        if not self.num:
            return {}
        top = order - self.val
        if top < 0:
            return {}
        den = [Fraction(c) for c in self.den]
        inv0 = 1 / den[0]
        out = []
        for i in range(top + 1):
            acc = Fraction(self.num[i]) if i < len(self.num) else Fraction(0)
            for j in range(1, min(i, len(den) - 1) + 1):
                acc -= den[j] * out[i - j]
            out.append(acc * inv0)
        return {i + self.val: c for i, c in enumerate(out) if c}

    def __repr__(self):
        return f"QRat({format_qrat(self)})"

    def __str__(self):
        return format_qrat(self)


def _spread(p, f):
    out = [0] * ((len(p) - 1) * f + 1) if p else []
    for i, c in enumerate(p):
        out[i * f] = c
    return tuple(out)


def _normalize(num, den, val):
    num = K.trim(num)
    den = K.trim(den)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), (1,), 0
    num, kn = K.strip_low(num)
    den, kd = K.strip_low(den)
    val += kn - kd
    if den != (1,):
        g = K.pgcd(num, den)
        if g != (1,):
            num = K.pdivexact(num, g)
            den = K.pdivexact(den, g)
        if den[-1] < 0:
            num, den = K.pneg(num), K.pneg(den)
    return num, den, val


def _finish(num, den, val, D):
    num, k = K.strip_low(num)
    if not num:
        return QRat.from_int(0, D)
    if den[-1] < 0:
        num, den = K.pneg(num), K.pneg(den)
    return QRat(num, den, val + k, D, _normal=True)


def _add(x: QRat, y: QRat) -> QRat:
    b, e = x.den, y.den
    if len(b) == 1 and len(e) == 1:
        num, den, val = K.ladd(x.num, x.val, b[0], y.num, y.val, e[0])
        return QRat(num, (den,), val, x.D, _normal=True)
    s = min(x.val, y.val)
    a = K.pshift(x.num, x.val - s)
    c = K.pshift(y.num, y.val - s)
    if b == e:
        num = K.padd(a, c)
        if not num:
            return QRat.from_int(0, x.D)
        if b == (1,):
            return _finish(num, b, s, x.D)
        num, k = K.strip_low(num)
        g = K.pgcd(num, b)
        if g != (1,):
            num = K.pdivexact(num, g)
            b = K.pdivexact(b, g)
        return _finish(num, b, s + k, x.D)
    g = K.pgcd(b, e)
    if g == (1,):
        num = K.padd(K.pmul(a, e), K.pmul(c, b))
        if not num:
            return QRat.from_int(0, x.D)
        return _finish(num, K.pmul(b, e), s, x.D)
    b1 = K.pdivexact(b, g)
    e1 = K.pdivexact(e, g)
    num = K.padd(K.pmul(a, e1), K.pmul(c, b1))
    if not num:
        return QRat.from_int(0, x.D)
    num, k = K.strip_low(num)
    t = K.pgcd(num, g)
    if t != (1,):
        num = K.pdivexact(num, t)
        g = K.pdivexact(g, t)
    return _finish(num, K.pmul(K.pmul(b1, e1), g), s + k, x.D)


def _mul(x: QRat, y: QRat) -> QRat:
    a, b, c, e = x.num, x.den, y.num, y.den
    if len(b) == 1 and len(e) == 1:
        num, den, val = K.lmul(a, x.val, b[0], c, y.val, e[0])
        return QRat(num, (den,), val, x.D, _normal=True)
    if e != (1,):
        g1 = K.pgcd(a, e)
        if g1 != (1,):
            a = K.pdivexact(a, g1)
            e = K.pdivexact(e, g1)
    if b != (1,):
        g2 = K.pgcd(c, b)
        if g2 != (1,):
            c = K.pdivexact(c, g2)
            b = K.pdivexact(b, g2)
    den = K.pmul(b, e)
    num = K.pmul(a, c)
    if den[-1] < 0:
        num, den = K.pneg(num), K.pneg(den)
    return QRat(num, den, x.val + y.val, x.D, _normal=True)


def _poly_str(p, D, val):
    terms = []
    for i, c in enumerate(p):
        if not c:
            continue
        e = Fraction(i + val, D)
        if e == 0:
            mono = ""
        elif e == 1:
            mono = "q"
        else:
            mono = f"q^({e})" if e.denominator != 1 or e < 0 else f"q^{e}"
        if mono and c == 1:
            t = mono
        elif mono and c == -1:
            t = "-" + mono
        elif mono:
            t = f"{c}*{mono}"
        else:
            t = str(c)
        terms.append(t)
    s = " + ".join(reversed(terms)).replace("+ -", "- ")
    return s or "0"


def format_qrat(x: QRat) -> str:
    if not x.num:
        return "0"
    num = _poly_str(x.num, x.D, x.val)
    if x.den == (1,):
        return num
    return f"({num})/({_poly_str(x.den, x.D, 0)})"


# ---------------------------------------------------------------------------
# q-numbers

def qpow(e, D: int) -> QRat:
    """q**e for an exact rational e, as an element at root order D."""
    ve = as_fraction(e) * D
    if ve.denominator != 1:
        raise ScalarDomainError(f"q^{e} is not representable at root order {D}")
    return QRat((1,), (1,), int(ve), D, _normal=True)


def qconst(c, D: int) -> QRat:
    return QRat.from_fraction(c, D)


@lru_cache(maxsize=None)
def q_int(n, d=1, D: int = 1) -> QRat:
    """[n] in base q**d: (q^{dn} - q^{-dn}) / (q^d - q^{-d}); n may be rational."""
    n, d = as_fraction(n), as_fraction(d)
    if not d:
        raise ScalarDomainError("q-integer scale must be nonzero")
    step = d * D
    if step.denominator != 1 or (n * step).denominator != 1:
        raise ScalarDomainError(f"[{n}] with scale {d} not representable at root order {D}")
    if not n:
        return QRat.from_int(0, D)
    if n.denominator == 1:
        m = abs(int(n))
        s = int(step)
        sign = 1 if n > 0 else -1
        # q^{d(m-1)} + q^{d(m-3)} + ... + q^{-d(m-1)}
        lo = -s * (m - 1)
        width = 2 * s * (m - 1) + 1
        coeffs = [0] * width
        for j in range(m):
            coeffs[2 * s * j] = sign
        return QRat(tuple(coeffs), (1,), lo, D, _normal=True)
    top = qpow(d * n, D) - qpow(-d * n, D)
    return top / (qpow(d, D) - qpow(-d, D))


@lru_cache(maxsize=None)
def q_factorial(n: int, d=1, D: int = 1) -> QRat:
    if n < 0:
        raise ScalarDomainError("q-factorial of a negative integer")
    out = QRat.from_int(1, D)
    for j in range(1, n + 1):
        out = out * q_int(j, d, D)
    return out


@lru_cache(maxsize=None)
def q_binomial(m: int, n: int, d=1, D: int = 1) -> QRat:
    """Gaussian binomial [m; n] in base q**d via the factorial quotient."""
    if not (0 <= n <= m):
        raise ScalarDomainError(f"q-binomial needs 0 <= n <= m, got m={m}, n={n}")
    return q_factorial(m, d, D) / (q_factorial(n, d, D) * q_factorial(m - n, d, D))


# ---------------------------------------------------------------------------
# truncated series

class TruncatedSeries:
    """Sparse series sum_e c_e t^e, exact for exponents <= order.

    ``order`` is an exact rational or ``math.inf`` for a finite (exact)
    expansion; coefficients above it are unknown, never zero.
    """

    __slots__ = ("var", "D", "coeffs", "order")

    def __init__(self, coeffs=None, order=math.inf, D: int = 1, var: str = "z"):
        self.var = var
        self.D = D
        self.order = order if order == math.inf else as_fraction(order)
        clean = {}
        for e, c in (coeffs or {}).items():
            e = as_fraction(e)
            if e > self.order:
                continue
            if not isinstance(c, QRat):
                c = QRat.from_fraction(c, D)
            if c:
                clean[e] = c
        self.coeffs = clean

    @classmethod
    def one(cls, D=1, var="z", order=math.inf):
        return cls({0: 1}, order, D, var)

    def exponent_denominator(self) -> int:
        return root_order_for(*self.coeffs) if self.coeffs else 1

    def _same(self, other):
        if self.var != other.var or self.D != other.D:
            raise ScalarDomainError("series with different variables or root orders")

    def coeff(self, e) -> QRat:
        e = as_fraction(e)
        if e > self.order:
            raise TruncationError(f"coefficient of {self.var}^{e} unknown beyond order {self.order}")
        return self.coeffs.get(e, QRat.from_int(0, self.D))

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return TruncatedSeries(out, min(self.order, other.order), self.D, self.var)

    def __neg__(self):
        return TruncatedSeries({e: -c for e, c in self.coeffs.items()}, self.order, self.D, self.var)

    def __sub__(self, other):
        return self + (-other)

    def low(self):
        return min(self.coeffs) if self.coeffs else None

    def __mul__(self, other):
        if isinstance(other, (QRat, int, Fraction)):
            return self.scale(other)
        self._same(other)
        la, lb = self.low(), other.low()
        if la is None or lb is None:
            order = min(self.order + (lb or 0), other.order + (la or 0))
            return TruncatedSeries({}, order, self.D, self.var)
        order = min(self.order + lb, other.order + la)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e > order:
                    continue
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return TruncatedSeries(out, order, self.D, self.var)

    def scale(self, c):
        if not isinstance(c, QRat):
            c = QRat.from_fraction(c, self.D)
        return TruncatedSeries({e: x * c for e, x in self.coeffs.items()}, self.order, self.D, self.var)

    def truncate(self, order):
        order = as_fraction(order)
        if order > self.order:
            raise TruncationError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs, order, self.D, self.var)

    def substitute_qscale(self, s) -> "TruncatedSeries":
        """t -> q^s t."""
        s = as_fraction(s)
        return TruncatedSeries({e: c * qpow(s * e, self.D) for e, c in self.coeffs.items()},
                               self.order, self.D, self.var)

    def exp(self) -> "TruncatedSeries":
        """exp of a series with integer exponents >= 1 and finite order."""
        if any(e.denominator != 1 or e < 1 for e in self.coeffs):
            raise ScalarDomainError("exp needs integer exponents >= 1")
        if self.order == math.inf:
            raise TruncationError("exp of an untruncated series needs an order")
        N = math.floor(self.order)
        g = [self.coeffs.get(Fraction(n), None) for n in range(N + 1)]
        f = [QRat.from_int(1, self.D)]
        for n in range(1, N + 1):
            acc = QRat.from_int(0, self.D)
            for k in range(1, n + 1):
                if g[k] is not None and f[n - k]:
                    acc = acc + g[k] * f[n - k] * k
            f.append(acc / n)
        return TruncatedSeries({n: c for n, c in enumerate(f)}, self.order, self.D, self.var)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.var == other.var and self.D == other.D
                and self.order == other.order and self.coeffs == other.coeffs)

    def agrees_with(self, other, order=None) -> bool:
        """Coefficient-exact agreement up to ``order`` (default: common order)."""
        top = min(self.order, other.order) if order is None else as_fraction(order)
        keys = {e for e in self.coeffs if e <= top} | {e for e in other.coeffs if e <= top}
        return all(self.coeff(e) == other.coeff(e) for e in keys)

    def __repr__(self):
        items = ", ".join(f"{e}: {c}" for e, c in sorted(self.coeffs.items()))
        return f"TruncatedSeries({self.var}; {{{items}}}; order={self.order})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries, order=None) -> TruncatedSeries:
    out = a * b
    return out if order is None else out.truncate(min(as_fraction(order), out.order))


def series_coeff(s: TruncatedSeries, e) -> QRat:
    return s.coeff(e)


def q_pochhammer(coeff: QRat, exp_, step: QRat, n=None, order=None, var="z") -> TruncatedSeries:
    """(a; step)_n with a = coeff * var**exp_.

    ``n=None`` is the infinite product, expanded exactly in powers of ``var``
    (Euler's identity) and truncated at ``order``.
    """
    D = coeff.D
    exp_ = as_fraction(exp_)
    if exp_ <= 0:
        raise ScalarDomainError("q-Pochhammer needs a positive power of the series variable")
    if n is not None:
        if n < 0:
            raise ScalarDomainError("negative Pochhammer length")
        out = TruncatedSeries.one(D, var, order if order is not None else math.inf)
        for j in range(n):
            factor = TruncatedSeries({0: 1, exp_: -(coeff * step ** j)}, math.inf, D, var)
            out = out * factor
        return out
    if order is None:
        raise TruncationError("infinite q-Pochhammer needs a truncation order")
    order = as_fraction(order)
    out = {Fraction(0): QRat.from_int(1, D)}
    denom = QRat.from_int(1, D)
    j = 1
    while j * exp_ <= order:
        denom = denom * (1 - step ** j)
        out[j * exp_] = ((-1) ** j) * step ** (j * (j - 1) // 2) * coeff ** j / denom
        j += 1
    return TruncatedSeries(out, order, D, var)


def q_pochhammer_inverse(coeff: QRat, exp_, step: QRat, order, var="z") -> TruncatedSeries:
    """1 / (a; step)_infinity, exact to ``order``."""
    D = coeff.D
    exp_, order = as_fraction(exp_), as_fraction(order)
    out = {Fraction(0): QRat.from_int(1, D)}
    denom = QRat.from_int(1, D)
    j = 1
    while j * exp_ <= order:
        denom = denom * (1 - step ** j)
        out[j * exp_] = coeff ** j / denom
        j += 1
    return TruncatedSeries(out, order, D, var)


@lru_cache(maxsize=None)
def _qk_cached(a, k, N, D, method, var):
    if method == "exp":
        terms = {n: -(q_int(a * n, 1, D) / (q_int(k * n, 1, D) * n)) for n in range(1, N + 1)}
        return TruncatedSeries(terms, N, D, var).exp()
    if method == "product":
        step = qpow(2 * k, D)
        top = q_pochhammer(qpow(-a + k, D), 1, step, None, N, var)
        bottom = q_pochhammer_inverse(qpow(a + k, D), 1, step, N, var)
        return top * bottom
    raise ValueError(f"unknown method {method!r}")


def qk_power_series(a, k, N: int, D: int | None = None, method: str = "exp",
                    var: str = "z") -> TruncatedSeries:
    """(1 - z)^{a/k} deformed in base q^{2k}, exact through z^N.

    ``method="exp"`` uses exp(-sum [an] z^n / (n [kn])); ``method="product"``
    uses the ratio of infinite q-Pochhammer symbols.  Both must agree.
    """
    a, k = as_fraction(a), as_fraction(k)
    if not k:
        raise ScalarDomainError("level k must be nonzero")
    need = root_order_for(a, k)
    if D is None:
        D = need
    elif D % need:
        raise ScalarDomainError(f"root order {D} cannot represent q^{a}, q^{k}")
    return _qk_cached(a, k, int(N), D, method, var)


def ratio_power_series(a, k, shift, N: int, D: int, var: str = "t") -> TruncatedSeries:
    """(1 - q^shift * t)^{a/k}_{q^{2k}} as a series in t through t^N."""
    base = qk_power_series(a, k, N, D, "exp", var)
    return base.substitute_qscale(shift) if shift else base
