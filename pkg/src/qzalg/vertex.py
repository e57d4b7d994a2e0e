"""Symbolic vertex operators and their exact evaluation on basis vectors.

A :class:`Term` is a normal-ordered monomial

    coeff * z^offset * C(z) * A(z) * e^shift * z^{(u|.)} q^{(w|.)} (-1)^{(p|.)} * K(z)

applied right to left: the fermion series ``K``, the label-dependent
scalars (read on the incoming label), the lattice shift with its cocycle
sign, the annihilation exponential ``A`` and the creation exponential ``C``.
An :class:`Operator` is a finite sum of terms.  Products, rescalings
``z -> q^r z``, normal products and q-differences stay inside this form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from qzalg.scalar import QRat, ScalarDomainError, as_fraction, qpow
from qzalg.spaces import SpaceSpec, State, merge_bosons, _wedge_insert

__all__ = [
    "ExpPart", "Term", "Operator", "ModeSeries", "StarvationError",
    "VertexError", "apply_term", "apply_expr", "apply_key", "mode_extract",
    "compose_apply", "q_difference", "q_difference_series", "normal_product",
    "vec_add", "vec_scale", "SeriesCache",
]

F0 = Fraction(0)


class VertexError(ValueError):
    """An expression cannot be formed or evaluated."""


class StarvationError(LookupError):
    """The requested coefficient needs data beyond the computed window."""


def vec_add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(a, c):
    if a is None:
        return None
    return tuple(x * c for x in a)


class ExpPart:
    """One summand family of an exponent: sum_n sign * c(n) q^{t n} g_idx(-/+n) z^{+/-n}."""

    __slots__ = ("family", "idx", "coef", "t", "sign", "_cache")

    def __init__(self, family: str, idx: int, coef: Callable, t=F0, sign: int = 1):
        self.family = family
        self.idx = idx
        self.coef = coef
        self.t = as_fraction(t)
        self.sign = sign
        self._cache = {}

    def value(self, n: int, D: int) -> QRat:
        v = self._cache.get(n)
        if v is None:
            v = self.coef(n)
            if self.t:
                v = v * qpow(self.t * n, D)
            if self.sign < 0:
                v = -v
            self._cache[n] = v
        return v

    def moved(self, dt) -> "ExpPart":
        return ExpPart(self.family, self.idx, self.coef, self.t + dt, self.sign)

    def negated(self) -> "ExpPart":
        return ExpPart(self.family, self.idx, self.coef, self.t, -self.sign)

    def __repr__(self):
        return f"ExpPart({self.family}{self.idx}, t={self.t}, sign={self.sign})"


class Term:
    """A normal-ordered vertex-operator monomial (see module docstring)."""

    __slots__ = ("coeff", "z_off", "create", "annih", "shift", "zpow", "qpow",
                 "parity", "fermion", "_ctab", "_atab")

    def __init__(self, coeff, z_off=F0, create=(), annih=(), shift=None, zpow=None,
                 qpow=None, parity=None, fermion=None):
        self.coeff = coeff
        self.z_off = as_fraction(z_off)
        self.create = tuple(create)
        self.annih = tuple(annih)
        self.shift = None if shift is None else tuple(int(x) for x in shift)
        self.zpow = None if zpow is None else tuple(as_fraction(x) for x in zpow)
        self.qpow = None if qpow is None else tuple(as_fraction(x) for x in qpow)
        self.parity = None if parity is None else tuple(as_fraction(x) for x in parity)
        self.fermion = None if fermion is None else as_fraction(fermion)
        self._ctab = {}
        self._atab = {}

    def replace(self, **kw):
        vals = {s: getattr(self, s) for s in ("coeff", "z_off", "create", "annih", "shift",
                                              "zpow", "qpow", "parity", "fermion")}
        vals.update(kw)
        return Term(**vals)

    @property
    def D(self):
        return self.coeff.D

    def scaled(self, c) -> "Term":
        return self.replace(coeff=self.coeff * c)

    def rescale(self, r) -> "Term":
        """The term with z replaced by q^r z."""
        r = as_fraction(r)
        if not r:
            return self
        D = self.D
        qp = self.qpow
        if self.zpow is not None:
            qp = vec_add(qp, vec_scale(self.zpow, r))
        return self.replace(
            coeff=self.coeff * qpow(r * self.z_off, D),
            create=tuple(p.moved(r) for p in self.create),
            annih=tuple(p.moved(-r) for p in self.annih),
            qpow=qp,
            fermion=None if self.fermion is None else self.fermion + r,
        )

    def __repr__(self):
        return (f"Term(coeff={self.coeff}, z^{self.z_off}, create={len(self.create)}, "
                f"annih={len(self.annih)}, shift={self.shift}, zpow={self.zpow}, "
                f"qpow={self.qpow}, parity={self.parity}, fermion={self.fermion})")


def _lattice_pair(space: SpaceSpec, u, gamma) -> Fraction:
    if u is None or gamma is None:
        return F0
    return space.lattice.form(u, gamma)


def _families(parts):
    return {p.family for p in parts}


def term_product(space: SpaceSpec, t1: Term, t2: Term, normal: bool = False) -> Term:
    """t1(z) t2(z) as one normal-ordered term.

    Without ``normal`` the product must not need any boson contraction
    (t1's annihilators commute with t2's creators).  With ``normal`` the
    factors are normal ordered by definition: creators left, annihilators
    right, shifts left of zero-mode factors.
    """
    if t1.fermion is not None and t2.fermion is not None:
        raise VertexError("products of two fermion series at one variable are not supported")
    if not normal and t1.annih and t2.create:
        for a in t1.annih:
            for c in t2.create:
                if a.family == c.family and space.family(a.family).coefficient(a.idx, c.idx, 1):
                    raise VertexError("product needs a boson contraction; use a normal product")
    coeff = t1.coeff * t2.coeff
    z_off = t1.z_off + t2.z_off
    if t1.shift is not None and t2.shift is not None:
        if space.lattice.eps(t1.shift, t2.shift) < 0:
            coeff = -coeff
    if not normal and t2.shift is not None:
        z_off += _lattice_pair(space, t1.zpow, t2.shift)
        if t1.qpow is not None:
            coeff = coeff * qpow(_lattice_pair(space, t1.qpow, t2.shift), space.D)
        if t1.parity is not None:
            par = _lattice_pair(space, t1.parity, t2.shift)
            if par.denominator != 1:
                raise VertexError("parity factor pairs to a non-integer")
            if par % 2:
                coeff = -coeff
    shift = t1.shift if t2.shift is None else (t2.shift if t1.shift is None else vec_add(t1.shift, t2.shift))
    fermion = t1.fermion if t1.fermion is not None else t2.fermion
    if t1.fermion is not None and t2.shift is not None:
        pass  # lattice and fermion factors commute
    return Term(coeff, z_off, t1.create + t2.create, t1.annih + t2.annih, shift,
                vec_add(t1.zpow, t2.zpow), vec_add(t1.qpow, t2.qpow),
                vec_add(t1.parity, t2.parity), fermion)


class Operator:
    """Finite sum of terms in one variable, with a mode convention.

    Mode ``n`` is read off the coefficient of ``z^(-n - h)``.
    """

    __slots__ = ("terms", "h", "name")

    def __init__(self, terms, h=1, name=""):
        self.terms = tuple(terms)
        self.h = as_fraction(h)
        self.name = name

    def __add__(self, other):
        return Operator(self.terms + other.terms, self.h, self.name)

    def scaled(self, c):
        return Operator(tuple(t.scaled(c) for t in self.terms), self.h, self.name)

    def rescale(self, r):
        return Operator(tuple(t.rescale(r) for t in self.terms), self.h, self.name)

    def times(self, space, other, normal=False, h=None, name=""):
        terms = [term_product(space, a, b, normal) for a in self.terms for b in other.terms]
        return Operator(terms, self.h if h is None else h, name or self.name)

    def with_h(self, h, name=None):
        return Operator(self.terms, h, self.name if name is None else name)

    def shifted(self, dz):
        """Multiply by z^dz."""
        return Operator(tuple(t.replace(z_off=t.z_off + dz) for t in self.terms), self.h, self.name)

    def __repr__(self):
        return f"Operator({self.name!r}, {len(self.terms)} terms, h={self.h})"


def normal_product(space, ops, h=None, name=""):
    """:op1(z) op2(z) ...: with creators left and annihilators right."""
    out = ops[0]
    for op in ops[1:]:
        out = out.times(space, op, normal=True)
    return out if h is None else out.with_h(h, name)


def q_difference(op: Operator, D: int) -> Operator:
    """(op(q^{1/2} z) - op(q^{-1/2} z)) / ((q^{1/2} - q^{-1/2}) z)."""
    if D % 2:
        raise ScalarDomainError("the q-difference needs q^(1/2): root order must be even")
    c = (qpow(Fraction(1, 2), D) - qpow(Fraction(-1, 2), D)).inverse()
    up = op.rescale(Fraction(1, 2)).scaled(c)
    down = op.rescale(Fraction(-1, 2)).scaled(-c)
    return (up + down).shifted(-1)


def q_difference_series(coeffs: dict, D: int) -> dict:
    """Termwise q-difference of a series {exponent: coefficient}."""
    if D % 2:
        raise ScalarDomainError("the q-difference needs q^(1/2): root order must be even")
    den = qpow(Fraction(1, 2), D) - qpow(Fraction(-1, 2), D)
    out = {}
    for e, c in coeffs.items():
        e = as_fraction(e)
        num = qpow(e / 2, D) - qpow(-e / 2, D)
        if num:
            out[e - 1] = c * num / den
    return out


# ---------------------------------------------------------------------------
# evaluation

class ModeSeries(dict):
    """{z exponent: State}, exact for exponents <= ``top``."""

    __slots__ = ("top",)

    def __init__(self, data=None, top=math.inf):
        super().__init__(data or {})
        self.top = top

    def coeff(self, e):
        e = as_fraction(e)
        if e > self.top:
            raise StarvationError(f"exponent {e} beyond computed window {self.top}")
        return self.get(e, State())


def _annih_translations(space: SpaceSpec, term: Term, fam, j, n):
    key = (fam, j, n)
    v = term._atab.get(key)
    if v is None:
        D = space.D
        v = QRat.from_int(0, D)
        famobj = space.family(fam)
        for p in term.annih:
            if p.family == fam:
                b = famobj.contraction(p.idx, j, n)
                if b:
                    v = v + p.value(n, D) * b
        term._atab[key] = v
    return v


def _creation_table(space: SpaceSpec, term: Term, p: int):
    """Monomials of the creation exponential at z^p: list of (bosons, coeff)."""
    tab = term._ctab.get(p)
    if tab is not None:
        return tab
    D = space.D
    if p == 0:
        tab = [((), QRat.from_int(1, D))]
        term._ctab[0] = tab
        return tab
    colors = []
    for part in term.create:
        c = (part.family, part.idx)
        if c not in colors:
            colors.append(c)
    coef = {}

    def cval(color, n):
        k = color + (n,)
        v = coef.get(k)
        if v is None:
            v = QRat.from_int(0, D)
            for part in term.create:
                if (part.family, part.idx) == color:
                    v = v + part.value(n, D)
            nu = space.family(color[0]).nu(color[1], n)
            if nu is not None and v:
                v = v / nu
            coef[k] = v
        return v

    from qzalg.spaces import colored_partitions
    tab = []
    for mono in colored_partitions(colors, p):
        c = QRat.from_int(1, D)
        ok = True
        i = 0
        while i < len(mono):
            j = i
            while j < len(mono) and mono[j] == mono[i]:
                j += 1
            v = cval(mono[i][:2], mono[i][2])
            if not v:
                ok = False
                break
            k = j - i
            c = c * (v ** k if k > 1 else v)
            if k > 1:
                c = c / factorial(k)
            i = j
        if ok:
            tab.append((mono, c))
    term._ctab[p] = tab
    return tab


def _fermion_items(space, term, w, tag, cap):
    """Expansion of the fermion series on (wedge, tag): (z exponent, coeff, wedge, tag)."""
    fs = space.fermion
    D = space.D
    r = term.fermion
    out = []
    for pos, m in enumerate(w):
        c = fs.anticommutator(m, D) * qpow(-r * m, D)
        out.append((-m, -c if pos % 2 else c, w[:pos] + w[pos + 1:], tag))
    if fs.s == 0 and fs.zero_mode is not None:
        sign = -1 if len(w) % 2 else 1
        nt = 1 - tag if fs.zero_mode == "tag_swap" else tag
        out.append((F0, QRat.from_int(sign, D), w, nt))
    n = fs.s if fs.s > 0 else Fraction(1)
    while n <= cap:
        res = _wedge_insert(w, n)
        if res is not None:
            c = qpow(r * n, D)
            out.append((n, c if res[0] > 0 else -c, res[1], tag))
        n += 1
    return out


def apply_term(space: SpaceSpec, term: Term, key, emax, out: dict, scale=None):
    """Accumulate term(z).key into out {exponent: State} for exponents <= emax."""
    bos, lab, w, tag = key
    D = space.D
    lat = space.lattice
    depth = sum(n for _, _, n in bos)
    base = term.z_off
    c0 = term.coeff if scale is None else term.coeff * scale
    if lab is not None:
        if term.zpow is not None:
            base += lat.pair_label(term.zpow, lab)
        if term.qpow is not None:
            c0 = c0 * qpow(lat.pair_label(term.qpow, lab), D)
        if term.parity is not None:
            par = lat.pair_label(term.parity, lab)
            if par.denominator != 1:
                raise VertexError(f"parity exponent {par} is not an integer")
            if par % 2:
                c0 = -c0
    if term.fermion is not None:
        cap = emax - base + depth
        items = _fermion_items(space, term, w, tag, cap)
    else:
        items = [(F0, None, w, tag)]
    newlab = lab
    if term.shift is not None:
        if lab is None:
            raise VertexError("lattice shift on a space without lattice")
        if lat.eps(term.shift, lab[1]) < 0:
            c0 = -c0
        newlab = lat.shift(lab, term.shift)
    # annihilation: translate each creation variable
    ann = [((), F0, c0)]
    if term.annih and bos:
        groups = []
        i = 0
        while i < len(bos):
            j = i
            while j < len(bos) and bos[j] == bos[i]:
                j += 1
            groups.append((bos[i], j - i))
            i = j
        ann = [((), F0, c0)]
        for (fam, jdx, n), mult in groups:
            s = _annih_translations(space, term, fam, jdx, n)
            nxt = []
            for rest, e, c in ann:
                for k in range(0, mult + 1):
                    if k and not s:
                        break
                    ck = c if k == 0 else c * (s ** k) * comb(mult, k)
                    if not ck:
                        continue
                    keep = ((fam, jdx, n),) * (mult - k)
                    nxt.append((rest + keep, e - n * k, ck))
            ann = nxt
        ann = [(tuple(sorted(r)), e, c) for r, e, c in ann]
    else:
        ann = [(bos, F0, c0)]
    for fe, fc, nw, nt in items:
        for rest, ea, ca in ann:
            e0 = base + fe + ea
            if e0 > emax:
                continue
            cc = ca if fc is None else ca * fc
            budget = emax - e0
            if not term.create:
                tgt = out.setdefault(e0, State())
                tgt.add_term((rest, newlab, nw, nt), cc)
                continue
            for p in range(0, math.floor(budget) + 1):
                for mono, cm in _creation_table(space, term, p):
                    tgt = out.setdefault(e0 + p, State())
                    tgt.add_term((merge_bosons(rest, mono), newlab, nw, nt), cc * cm)
    return out


def apply_key(space: SpaceSpec, op: Operator, key, emax) -> ModeSeries:
    out = {}
    for t in op.terms:
        apply_term(space, t, key, emax, out)
    return ModeSeries({e: s for e, s in out.items() if s}, emax)


def apply_expr(space: SpaceSpec, op: Operator, st: State, emax) -> ModeSeries:
    """op(z).st as a z-series of states, exact for exponents <= emax."""
    out = ModeSeries(top=emax)
    for key, c in st.items():
        for e, s in apply_key(space, op, key, emax).items():
            tgt = out.setdefault(e, State())
            tgt.add_state(s, c)
    for e in [e for e, s in out.items() if not s]:
        del out[e]
    return out


class SeriesCache:
    """Memoized op(z).key series, extended on demand."""

    def __init__(self, space: SpaceSpec):
        self.space = space
        self.data = {}

    def series(self, op: Operator, key, emax) -> ModeSeries:
        k = (id(op), key)
        got = self.data.get(k)
        if got is not None and got[1].top >= emax:
            return got[1]
        s = apply_key(self.space, op, key, emax)
        self.data[k] = (op, s)
        return s

    def coeff(self, op: Operator, key, e) -> State:
        return self.series(op, key, e).coeff(e)

    def mode(self, op: Operator, n, st: State) -> State:
        e = -as_fraction(n) - op.h
        out = State()
        for key, c in st.items():
            s = self.coeff(op, key, e)
            if s:
                out.add_state(s, c)
        return out


def mode_extract(space: SpaceSpec, op: Operator, n, st: State) -> State:
    """The mode op(n).st, read from z^(-n - h)."""
    e = -as_fraction(n) - op.h
    return apply_expr(space, op, st, e).coeff(e)


def compose_apply(space: SpaceSpec, ops, st: State, tops) -> dict:
    """ops[0](z_1) ... ops[-1](z_s).st as {(e_1, ..., e_s): State}.

    ``tops`` gives the largest exponent kept for each variable.
    """
    cur = {(): st}
    for op, top in zip(reversed(ops), reversed(tops)):
        nxt = {}
        for idx, s in cur.items():
            for e, v in apply_expr(space, op, s, top).items():
                nxt[(e,) + idx] = v
        cur = nxt
    return {k: v for k, v in cur.items() if v}
