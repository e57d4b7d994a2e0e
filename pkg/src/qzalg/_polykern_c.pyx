# cython: language_level=3
"""Dense integer polynomial kernels (compiled).

Polynomials are tuples of Python ints, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  Mirrors ``_polykern``
function for function; see that module for the contracts.
"""

from math import gcd, isqrt

ZERO = ()
ONE = (1,)


def trim(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return tuple(a[:n])


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    if len(a) == len(b):
        return trim(out)
    return tuple(out)


def psub(a, b):
    n = max(len(a), len(b))
    out = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return trim(out)


def pneg(a):
    return tuple(-c for c in a)


def pscale(a, c):
    if not c:
        return ZERO
    return tuple(x * c for x in a)


def pshift(a, k):
    """Multiply by v**k (k >= 0)."""
    if not a or not k:
        return a
    return (0,) * k + a


def pmul(a, b):
    if not a or not b:
        return ZERO
    if len(a) == 1:
        return pscale(b, a[0])
    if len(b) == 1:
        return pscale(a, b[0])
    cdef Py_ssize_t i, j, na = len(a), nb = len(b)
    cdef list out = [0] * (na + nb - 1)
    cdef object x
    for i in range(na):
        x = a[i]
        if x:
            for j in range(nb):
                out[i + j] += x * b[j]
    return tuple(out)


def strip_low(a):
    """Return (a / v**k, k) with k the v-adic valuation of a."""
    k = 0
    while k < len(a) and not a[k]:
        k += 1
    if not k:
        return a, 0
    return a[k:], k


def pcontent(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def ptrydiv(a, b):
    """Exact quotient a / b in Z[v], or None when b does not divide a."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ZERO
    cdef Py_ssize_t i, j, base, db = len(b) - 1
    cdef list r, q
    cdef object lc, c, qc, rem
    if len(a) - 1 < db:
        return None
    lc = b[-1]
    r = list(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            qc, rem = divmod(c, lc)
            if rem:
                return None
            q[i - db] = qc
            base = i - db
            for j in range(db + 1):
                r[base + j] -= qc * b[j]
    for i in range(db):
        if r[i]:
            return None
    return tuple(q)


def pdivexact(a, b):
    q = ptrydiv(a, b)
    if q is None:
        raise ArithmeticError("inexact polynomial division")
    return q


def peval(a, x):
    cdef object acc = 0, c
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _interpolate(h, x):
    half = x // 2
    out = []
    while h:
        g = h % x
        if g > half:
            g -= x
        out.append(g)
        h = (h - g) // x
    return tuple(out)


def _primitive(a):
    c = pcontent(a)
    if a and a[-1] < 0:
        c = -c
    if c == 1:
        return a
    return tuple(x // c for x in a)


def _euclid_gcd(a, b):
    # primitive remainder sequence; only reached when the heuristic gives up
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = list(a)
        lc = b[-1]
        db = len(b) - 1
        while len(r) - 1 >= db and any(r):
            c = r[-1]
            r = [x * lc for x in r]
            shift = len(r) - 1 - db
            for j in range(db + 1):
                r[shift + j] -= c * b[j]
            r = list(trim(r))
            if not r:
                break
        a, b = b, _primitive(tuple(r)) if r else ZERO
    return a


def pgcd(a, b):
    """Greatest common divisor in Z[v] with positive leading coefficient."""
    if not a:
        return _primitive(b) if b else ZERO
    if not b:
        return _primitive(a)
    ca, cb = pcontent(a), pcontent(b)
    cg = gcd(ca, cb)
    if len(a) == 1 or len(b) == 1:
        return (cg,)
    fa = tuple(x // ca for x in a)
    fb = tuple(x // cb for x in b)
    if fa == fb or fa == pneg(fb):
        return pscale(_primitive(fa), cg)
    na = max(abs(x) for x in fa)
    nb = max(abs(x) for x in fb)
    bound = 2 * min(na, nb) + 29
    x = max(min(bound, 99 * isqrt(bound)),
            2 * min(na // abs(fa[-1]), nb // abs(fb[-1])) + 2)
    for _ in range(6):
        ea, eb = peval(fa, x), peval(fb, x)
        if ea and eb:
            h = _primitive(_interpolate(gcd(ea, eb), x))
            if h and ptrydiv(fa, h) is not None and ptrydiv(fb, h) is not None:
                return pscale(h, cg)
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return pscale(_euclid_gcd(fa, fb), cg)


def ladd(tuple a, long av, B, tuple c, long cv, E):
    cdef Py_ssize_t na, nc, n, i, k, lo
    cdef list out
    if B != E:
        g = gcd(B, E)
        fb = E // g
        fe = B // g
        if fb != 1:
            a = tuple([x * fb for x in a])
        if fe != 1:
            c = tuple([x * fe for x in c])
        B = B * fb
    if av > cv:
        a, c, av, cv = c, a, cv, av
    k = cv - av
    na = len(a)
    nc = len(c)
    n = na if na > nc + k else nc + k
    out = [0] * n
    for i in range(na):
        out[i] = a[i]
    for i in range(nc):
        out[i + k] = out[i + k] + c[i]
    while n and not out[n - 1]:
        n -= 1
    if not n:
        return (), 1, 0
    lo = 0
    while not out[lo]:
        lo += 1
    if B != 1:
        g = B
        for i in range(lo, n):
            if g == 1:
                break
            g = gcd(g, out[i])
        if g != 1:
            B = B // g
            return tuple([x // g for x in out[lo:n]]), B, av + lo
    return tuple(out[lo:n]), B, av + lo


def lmul(tuple a, long av, B, tuple c, long cv, E):
    num = pmul(a, c)
    den = B * E
    if den != 1:
        g = den
        for x in num:
            if g == 1:
                break
            g = gcd(g, x)
        if g != 1:
            den = den // g
            num = tuple([x // g for x in num])
    return num, den, av + cv
