"""Construction catalog: vertex-operator representations ready for checking.

Every builder returns a :class:`Representation` holding the state space, the
operators x_i^{+-}(z), the dressed operators Z_i^{+-}(z), the Cartan
generating functions phi_i(z), psi_i(z), the level and the mode conventions.
Unless a construction gives x_i^{+-}(z) directly, it is assembled from Z as
E_-^{+-}(-alpha_i, z) E_+^{+-}(-alpha_i, z) Z_i^{+-}(z).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from qzalg.algebra import AlgebraData, AlgebraError, algebra_data, minuscule_weights, symbol_degree
from qzalg.scalar import QRat, as_fraction, q_int, qpow, ratio_power_series, root_order_for
from qzalg.spaces import (BosonFamily, FermionSpec, LatticeSpec, SpaceSpec, State,
                          boson_apply, heisenberg_bracket, key_degree, level_norm, vacuum_key)
from qzalg.vertex import ExpPart, Operator, SeriesCache, Term, VertexError, term_product

__all__ = [
    "Representation", "ConstructionError", "build", "CONSTRUCTIONS",
    "list_constructions", "E_minus", "E_plus", "dress",
    "CoproductModule", "coproduct_apply", "tensor_basis", "multi_Z", "XPLUS_READINGS",
]


class ConstructionError(ValueError):
    """Invalid construction id or parameters."""


@lru_cache(maxsize=None)
def _inv_qint(k, D):
    k = as_fraction(k)
    return lambda n: q_int(k * n, 1, D).inverse()


def E_minus(i, sign, root_sign, level, D, dq=Fraction(0)):
    """E_-^{sign}(root_sign * alpha_i, z) as a list of creation parts.

    ``dq`` perturbs the q-power (used only for mutation tests).
    """
    k = as_fraction(level)
    return [ExpPart("a", i, _inv_qint(k, D), -sign * k / 2 + dq, -sign * root_sign)]


def E_plus(i, sign, root_sign, level, D, dq=Fraction(0)):
    """E_+^{sign}(root_sign * alpha_i, z) as a list of annihilation parts."""
    k = as_fraction(level)
    return [ExpPart("a", i, _inv_qint(k, D), -sign * k / 2 + dq, sign * root_sign)]


def dress(Z: Operator, i, sign, level, D, dq=Fraction(0)) -> Operator:
    """x_i^{sign}(z) = E_-^{sign}(-alpha_i, z) E_+^{sign}(-alpha_i, z) Z_i^{sign}(z)."""
    cre = tuple(E_minus(i, sign, -1, level, D, dq))
    ann = tuple(E_plus(i, sign, -1, level, D, dq))
    terms = [t.replace(create=cre + t.create, annih=t.annih + ann) for t in Z.terms]
    return Operator(terms, Z.h, f"x{'+' if sign > 0 else '-'}{i}")


def _unit(n, i, c=1):
    v = [0] * n
    v[i] = c
    return tuple(v)


@dataclass(eq=False)
class Representation:
    cid: str
    params: dict
    alg: AlgebraData
    level: Fraction
    D: int
    space: SpaceSpec
    x: dict                      # (i, sign) -> Operator
    Z: dict                      # (i, sign) -> Operator
    kvec: dict                   # i -> vector; k_i = q^{(kvec | label)}
    highest: list = field(default_factory=list)
    variants: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    afamily: str = "a"
    aux_families: tuple = ()

    def __post_init__(self):
        self.cache = SeriesCache(self.space)
        self.phi = {}
        self.psi = {}
        g = qpow(1, self.D) - qpow(-1, self.D)
        for i in self.alg.indices:
            kv = self.kvec[i]
            self.psi[i] = Operator([Term(QRat.from_int(1, self.D), annih=[ExpPart(self.afamily, i, lambda n, g=g: g)],
                                         qpow=kv)], h=0, name=f"psi{i}")
            self.phi[i] = Operator([Term(QRat.from_int(1, self.D), create=[ExpPart(self.afamily, i, lambda n, g=g: -g)],
                                         qpow=tuple(-x for x in kv))], h=0, name=f"phi{i}")
        self._mode_cache = {}
        self._deg = {}
        self.emax_hint = 0

    def clear_caches(self):
        self.cache = SeriesCache(self.space)
        self._mode_cache = {}

    # -- scalars ---------------------------------------------------------
    @property
    def gamma(self) -> QRat:
        return qpow(self.level, self.D)

    def one(self):
        return QRat.from_int(1, self.D)

    def k_eigen(self, i, key) -> QRat:
        lab = key[1]
        return qpow(self.space.lattice.pair_label(self.kvec[i], lab), self.D)

    def degree_of(self, key) -> Fraction:
        d = self._deg.get(key)
        if d is None:
            d = self._deg[key] = key_degree(self.space, key)
        return d

    # -- mode actions ------------------------------------------------------
    def _key_action(self, sym, key) -> State:
        got = self._mode_cache.get((sym, key))
        if got is not None:
            return got
        kind = sym[0]
        top = self.space.top_degree
        if top is not None and self.degree_of(key) + symbol_degree(sym) > top:
            res = State()
        elif kind == "x" or kind == "Z":
            _, i, e, n = sym
            op = (self.x if kind == "x" else self.Z)[(i, e)]
            e0 = -as_fraction(n) - op.h
            res = self.cache.series(op, key, max(e0, self.emax_hint - op.h)).coeff(e0)
        elif kind == "psi":
            _, i, m = sym
            res = self.cache.coeff(self.psi[i], key, -as_fraction(m))
        elif kind == "phi":
            _, i, m = sym
            res = self.cache.coeff(self.phi[i], key, as_fraction(m))
        elif kind == "a":
            _, i, m = sym
            res = boson_apply(self.space, State({key: self.one()}), self.afamily, i, m)
        elif kind == "g":
            _, fam, i, m = sym
            res = boson_apply(self.space, State({key: self.one()}), fam, i, m)
        else:
            raise ConstructionError(f"unknown mode symbol {sym!r}")
        self._mode_cache[(sym, key)] = res
        return res

    def act(self, sym, st: State) -> State:
        out = State()
        for key, c in st.items():
            r = self._key_action(sym, key)
            if r:
                out.add_state(r, c)
        return out

    def apply_word(self, word, st: State) -> State:
        for sym in reversed(word):
            st = self.act(sym, st)
            if not st:
                break
        return st

    def vector(self, key) -> State:
        return State({key: self.one()})

    def describe(self) -> str:
        v = ", ".join(f"{k}={val}" for k, val in sorted(self.variants.items()))
        return f"{self.cid}[{self.alg}, k={self.level}, D={self.D}{', ' + v if v else ''}]"


# ---------------------------------------------------------------------------
# lattice helpers

def _root_lattice(alg: AlgebraData, commutator, reps, diagonal=()):
    """Lattice spec on the root basis with eps(e_i, e_j) = commutator for i < j.

    ``diagonal`` lists the nodes with eps(e_i, e_i) = -1.
    """
    n = alg.rank
    coc = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            coc[i][j] = commutator(i + 1, j + 1) % 2
    for i in diagonal:
        coc[i - 1][i - 1] = 1
    rep_pair, rep_norm = {}, {}
    for r in reps:
        name = f"l{r}"
        rep_pair[name] = tuple(alg.weight_pairing(i, r) for i in alg.indices) if r else None
        rep_norm[name] = alg.weight_norm(r) if r else 0
    return LatticeSpec(alg.gram, coc, rep_pair, rep_norm, names=tuple(f"alpha{i}" for i in alg.indices))


def _a_family(alg: AlgebraData, level, D):
    return BosonFamily("a", alg.indices, heisenberg_bracket(alg.gram, level, D),
                       "[a_i(m), a_j(-m)] = [(a_i|a_j)m][mk]/m", level_norm(level, D))


def _lattice_term(D, n, i, sign, extra_zpow=None, coeff=1):
    v = _unit(n, i, sign)
    return Term(QRat.from_int(coeff, D), shift=v, zpow=v if extra_zpow is None else extra_zpow)


# ---------------------------------------------------------------------------
# builders

def build_fj(type_="A", rank=1, r=0, mutate=None, **_):
    """Level-one lattice construction for simply-laced types."""
    alg = algebra_data(type_, rank)
    if any(x != 1 for x in alg.d):
        raise ConstructionError("the fj construction needs a simply-laced type")
    if r not in minuscule_weights(alg):
        raise ConstructionError(f"lambda_{r} is not minuscule for {alg}")
    mutate = mutate or {}
    D = 2
    level = Fraction(1)
    if mutate.get("cocycle"):
        comm = lambda i, j: 0
    else:
        comm = lambda i, j: int(alg.form(i, j))
    lat = _root_lattice(alg, comm, [r])
    fam = _a_family(alg, level, D)
    if mutate.get("bracket"):
        base = fam.bracket
        fam = BosonFamily("a", alg.indices, lambda i, j, m: base(i, j, m) * qpow(1, D) if m == 1 else base(i, j, m),
                          norm=fam.norm)
    space = SpaceSpec(D=D, bosons=(fam,), lattice=lat, reps=(f"l{r}",), name=f"V(Lambda_{r})")
    n = alg.rank
    h = 1 if not mutate.get("mode") else 0
    dq = Fraction(1) if mutate.get("epower") else Fraction(0)
    Z, X = {}, {}
    for i in alg.indices:
        for s in (1, -1):
            z = Operator([_lattice_term(D, n, i - 1, s)], h=h, name=f"Z{'+' if s > 0 else '-'}{i}")
            Z[(i, s)] = z
            X[(i, s)] = dress(z, i, s, level, D, dq)
    kvec = {i: _unit(n, i - 1) for i in alg.indices}
    hw = vacuum_key((f"l{r}", (0,) * n))
    return Representation("fj", {"type": alg.type, "rank": n, "r": r}, alg, level, D, space, X, Z, kvec,
                          highest=[hw], variants={k: v for k, v in mutate.items() if v})


SIGN_READINGS = ("cocycle", "as_written")


def _b_lattice(alg: AlgebraData, reps, sign_reading):
    def comm(i, j):
        a = alg.gram[i - 1][j - 1]
        return int(a + alg.gram[i - 1][i - 1] * alg.gram[j - 1][j - 1])
    diag = (alg.rank,) if sign_reading == "cocycle" else ()
    return _root_lattice(alg, comm, reps, diag)


def _check_sign_reading(sign_reading):
    if sign_reading not in SIGN_READINGS:
        raise ConstructionError(f"sign_reading must be one of {SIGN_READINGS}")


def build_b(rank=2, r=0, sign_reading="cocycle", **_):
    """Level-one B_l modules W_0, W_1 (half-integer fermions) and W_l.

    The fermionic factor +-kappa(z) makes [x_l^+(m), x_l^-(n)] come out with
    the opposite overall sign unless e^{alpha_l} e^{-alpha_l} = -1.
    ``sign_reading="cocycle"`` puts eps(alpha_l, alpha_l) = -1 in the twisted
    group algebra; ``"as_written"`` keeps eps(alpha_l, alpha_l) = 1.
    """
    _check_sign_reading(sign_reading)
    alg = algebra_data("B", rank)
    l = alg.rank
    if r not in (0, 1, l):
        raise ConstructionError("B_l level-one modules are W_0, W_1, W_l")
    D = 2
    level = Fraction(1)
    fam = _a_family(alg, level, D)
    if r == l:
        lat = _b_lattice(alg, [l], sign_reading)
        fs = FermionSpec(Fraction(0), 1, "parity")
        space = SpaceSpec(D=D, bosons=(fam,), lattice=lat, fermion=fs, reps=(f"l{l}",), name=f"W_{l}")
        hw = vacuum_key((f"l{l}", (0,) * l))
    else:
        lat = _b_lattice(alg, [0], sign_reading)
        fs = FermionSpec(Fraction(1, 2), 1, None)
        shift = r

        def sector(key, shift=shift):
            return (len(key[2]) + key[1][1][l - 1] + shift) % 2 == 0

        top = Fraction(alg.weight_norm(1), 2) if r == 1 else Fraction(0)

        def ldeg(lab, lat=lat, top=top):
            return top - lat.label_norm(lab) / 2

        space = SpaceSpec(D=D, bosons=(fam,), lattice=lat, fermion=fs, reps=("l0",), sector=sector,
                          lattice_degree=ldeg, name=f"W_{r}")
        beta = (0,) * l if r == 0 else tuple(int(c) for c in alg.weight_coords(1))
        hw = vacuum_key(("l0", beta))
    Z, X = {}, {}
    for i in alg.indices:
        for s in (1, -1):
            if i < l:
                z = Operator([_lattice_term(D, l, i - 1, s)], h=1, name=f"Z{'+' if s > 0 else '-'}{i}")
            else:
                v = _unit(l, l - 1, s)
                z = Operator([Term(QRat.from_int(s, D), shift=v, zpow=v, fermion=0)],
                             h=Fraction(1, 2), name=f"Z{'+' if s > 0 else '-'}{l}")
            Z[(i, s)] = z
            X[(i, s)] = dress(z, i, s, level, D)
    kvec = {i: _unit(l, i - 1) for i in alg.indices}
    return Representation("b", {"rank": l, "r": r}, alg, level, D, space, X, Z, kvec, highest=[hw],
                          variants={"sign_reading": sign_reading})


def build_sl2_level2(r=0, sign_reading="cocycle", **_):
    """Level-two sl2 modules from a q^2-Clifford algebra.

    ``r = 0``: half-integer fermions on all of C[Q]; the space holds the
    highest weights 2Lambda_0 and 2Lambda_1.  ``r = 1``: integer fermions with
    kappa(0) swapping a two-dimensional tag, on C[Q]e^{alpha/2}.
    The z-power z^{+-alpha/2 + 1/2} reads as z^{+-(alpha|beta)/2 + 1/2} on e^beta.
    ``sign_reading`` as for :func:`build_b`: with ``"cocycle"``
    e^{alpha} e^{-alpha} = -1 on C[Q].
    """
    _check_sign_reading(sign_reading)
    if r not in (0, 1):
        raise ConstructionError("sl2 level two takes r in {0, 1}")
    alg = algebra_data("A", 1)
    D = 2
    level = Fraction(2)
    fam = _a_family(alg, level, D)
    lat = _root_lattice(alg, lambda i, j: 0, [r], (1,) if sign_reading == "cocycle" else ())
    rep = f"l{r}"

    def ldeg(lab, lat=lat):
        return -lat.label_norm(lab) / 4

    if r == 0:
        fs = FermionSpec(Fraction(1, 2), 2, None)
        tags = (None,)
    else:
        fs = FermionSpec(Fraction(0), 2, "tag_swap")
        tags = (0, 1)
    space = SpaceSpec(D=D, bosons=(fam,), lattice=lat, fermion=fs, tags=tags, reps=(rep,),
                      lattice_level=Fraction(2), lattice_degree=ldeg,
                      name="K(2) x Gamma(C_{q^2}) x C[Q]" + (" x C^2" if r else ""))
    Z, X = {}, {}
    for s_ in (1, -1):
        z = Operator([Term(QRat.from_int(s_, D), z_off=Fraction(1, 2), shift=(s_,),
                           zpow=(Fraction(s_, 2),), fermion=0)], h=0, name=f"Z{'+' if s_ > 0 else '-'}1")
        Z[(1, s_)] = z
        X[(1, s_)] = dress(z, 1, s_, level, D)
    if r == 0:
        highest = [vacuum_key((rep, (0,))), vacuum_key((rep, (1,)))]
    else:
        highest = [((), (rep, (0,)), (), 0), ((), (rep, (0,)), (), 1)]
    return Representation("sl2-2", {"r": r}, alg, level, D, space, X, Z, {1: (1,)}, highest=highest,
                          variants={"sign_reading": sign_reading})


C_COCYCLES = ("none", "form", "double_form")
SIGN_ADJUST = ("none", "table", "offdiag")
MINUS_READINGS = ("as_written", "swap_parity")


def _short_root_lattice(alg: AlgebraData, short, reps, c_cocycle, sign_adjust):
    """C[P] on the root basis joined orthogonally with the auxiliary lattice.

    The auxiliary lattice is spanned by copies of the short simple roots
    with norm one.  ``sign_adjust="table"`` gives it the cocycle
    eps(i, i) = -1, eps(i, j) = 1 for i > j, (-1)^{a_ij} for i < j;
    ``"offdiag"`` keeps eps(i, i) = 1; ``"none"`` is the trivial cocycle.
    ``c_cocycle`` picks the cocycle on the root part: ``"none"``, ``"form"``
    (eps(i, j) = (-1)^{(a_i|a_j)} for i < j, on integral pairings) or
    ``"double_form"`` ((-1)^{2(a_i|a_j)} for i < j).
    """
    n = alg.rank
    s = len(short)
    size = n + s
    gram = [[Fraction(0)] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            gram[i][j] = alg.gram[i][j]
    for a, i in enumerate(short):
        for b, j in enumerate(short):
            gram[n + a][n + b] = alg.gram[i - 1][j - 1]
    coc = [[0] * size for _ in range(size)]
    for i in range(n):
        for j in range(i + 1, n):
            f = alg.gram[i][j]
            if c_cocycle == "form":
                coc[i][j] = int(f) % 2 if f.denominator == 1 else 0
            elif c_cocycle == "double_form":
                coc[i][j] = int(2 * f) % 2
    if sign_adjust not in SIGN_ADJUST:
        raise ConstructionError(f"sign_adjust must be one of {SIGN_ADJUST}")
    if sign_adjust != "none":
        for a, i in enumerate(short):
            if sign_adjust == "table":
                coc[n + a][n + a] = 1
            for b, j in enumerate(short):
                if a < b:
                    coc[n + a][n + b] = alg.A(i, j) % 2
    rep_pair, rep_norm = {}, {}
    for r in reps:
        name = f"l{r}"
        if not r:
            rep_pair[name], rep_norm[name] = None, 0
            continue
        # pair e^{lambda_r} with the first fundamental weight of the auxiliary
        # lattice so that the z-powers of every Z_i stay integral
        aux = tuple(Fraction(1, 2) if a == 0 else Fraction(0) for a in range(s))
        rep_pair[name] = tuple(alg.weight_pairing(i, r) for i in alg.indices) + aux
        rep_norm[name] = alg.weight_norm(r) + Fraction(s, 2 * (s + 1))
    names = tuple(f"alpha{i}" for i in alg.indices) + tuple(f"aux{i}" for i in short)
    return LatticeSpec(gram, coc, rep_pair, rep_norm, names=names)


def _u_term(D, size, pos, sign, idx, r):
    """U^{sign}(z q^r): the auxiliary vertex operator on the b family."""
    inv = _inv_qint(Fraction(1), D)
    v = _unit(size, pos, sign)
    t = Term(QRat.from_int(1, D), create=[ExpPart("b", idx, inv, 0, sign)],
             annih=[ExpPart("b", idx, inv, 0, -sign)], shift=v, zpow=v)
    return t.rescale(r)


def _build_short_aux(type_, rank, r, c_cocycle, sign_adjust, minus_reading, parity, **_):
    alg = algebra_data(type_, rank)
    if c_cocycle not in C_COCYCLES:
        raise ConstructionError(f"c_cocycle must be one of {C_COCYCLES}")
    if minus_reading not in MINUS_READINGS:
        raise ConstructionError(f"minus_reading must be one of {MINUS_READINGS}")
    if parity not in ("label", "none"):
        raise ConstructionError("parity must be 'label' or 'none'")
    short = tuple(i for i in alg.indices if alg.d[i - 1] == Fraction(1, 2))
    n = alg.rank
    D = 4
    level = Fraction(1)
    reps = [0] if r == 0 else [r]
    lat = _short_root_lattice(alg, short, reps, c_cocycle, sign_adjust)
    afam = _a_family(alg, level, D)
    sgram = [[alg.gram[i - 1][j - 1] for j in short] for i in short]
    bfam = BosonFamily("b", short, lambda i, j, m, g=sgram, sh=short:
                       heisenberg_bracket(g, level, D)(sh.index(i) + 1, sh.index(j) + 1, m),
                       "[b_i(m), b_j(-m)] = [(a_i|a_j)m][m]/m on short roots", level_norm(level, D))
    size = n + len(short)
    probes = [(_unit(size, i - 1), _unit(size, n + a)) for a, i in enumerate(short)]

    def sector(key, lat=lat, probes=probes):
        # keep labels on which every Z_i has integral z-powers
        lab = key[1]
        for u, v in probes:
            if (lat.pair_label(u, lab) - lat.pair_label(v, lab)).denominator != 1:
                return False
        return True

    space = SpaceSpec(D=D, bosons=(afam, bfam), lattice=lat, reps=(f"l{r}",), sector=sector,
                      name=f"Sym(a, b) x C[P] x C[Q~] ({alg})")
    Z, X = {}, {}
    for i in alg.indices:
        for s_ in (1, -1):
            L = _lattice_term(D, size, i - 1, s_)
            if i in short:
                pos = n + short.index(i)
                up = term_product(space, _u_term(D, size, pos, 1, i, Fraction(-1, 2)), L)
                um = _u_term(D, size, pos, -1, i, Fraction(1, 2))
                pv = _unit(size, i - 1, 2) if parity == "label" else None
                if s_ < 0 and minus_reading == "swap_parity":
                    up = term_product(space, _u_term(D, size, pos, 1, i, Fraction(-1, 2)).replace(parity=pv), L)
                else:
                    um = um.replace(parity=pv)
                terms = [up, term_product(space, um, L)]
            else:
                terms = [L]
            z = Operator(terms, h=1, name=f"Z{'+' if s_ > 0 else '-'}{i}")
            Z[(i, s_)] = z
            X[(i, s_)] = dress(z, i, s_, level, D)
    kvec = {i: _unit(size, i - 1) for i in alg.indices}
    hw = vacuum_key((f"l{r}", (0,) * size))
    variants = {"c_cocycle": c_cocycle, "sign_adjust": sign_adjust, "minus_reading": minus_reading,
                "parity": parity}
    return alg, level, D, space, X, Z, kvec, hw, variants


def build_c(rank=2, r=0, c_cocycle="form", sign_adjust="offdiag", minus_reading="swap_parity", parity="label", **_):
    """C_l level one: a short-root auxiliary boson and lattice dress Z_i, i < l.

    Variants: ``c_cocycle`` (cocycle on C[P]), ``sign_adjust`` (the eps table
    on the auxiliary lattice), ``minus_reading`` (``"swap_parity"`` puts the
    parity (-1)^{2 d_i} on the U^+ summand of Z_i^-, which is Z_i^- times the
    parity), ``parity`` (``"label"``: (-1)^{2 d_i} read on lattice labels,
    ``"none"`` drops it).
    """
    if r not in (0, 1):
        raise ConstructionError("C_l level one uses r in {0, 1} (C[Q] and C[Q]e^{lambda_1})")
    alg, level, D, space, X, Z, kvec, hw, variants = _build_short_aux(
        "C", rank, r, c_cocycle, sign_adjust, minus_reading, parity)
    return Representation("c", {"rank": alg.rank, "r": r}, alg, level, D, space, X, Z, kvec,
                          highest=[hw], variants=variants, aux_families=("b",))


def build_f4(c_cocycle="form", sign_adjust="none", minus_reading="swap_parity", parity="label", **_):
    """F4 level one on Sym(a, b) x C[P] x C[A_2]; short roots 1, 2.

    The sign adjustment on the auxiliary lattice defaults off for F4.
    """
    alg, level, D, space, X, Z, kvec, hw, variants = _build_short_aux(
        "F", 4, 0, c_cocycle, sign_adjust, minus_reading, parity)
    return Representation("f4", {}, alg, level, D, space, X, Z, kvec,
                          highest=[hw], variants=variants, aux_families=("b",))


CONSTRUCTIONS = {
    "fj": (build_fj, "level-one lattice construction, simply-laced types (type, rank, r)"),
    "b": (build_b, "B_l level one with q-Clifford fermions (rank, r in {0, 1, l})"),
    "c": (build_c, "C_l level one with auxiliary short-root bosons (rank, r in {0, 1})"),
    "f4": (build_f4, "F4 level one with auxiliary A_2 bosons and lattice"),
    "sl2-2": (build_sl2_level2, "sl2 level two with q^2-Clifford fermions (r=0 half-integer, r=1 with C^2)"),
}


def list_constructions():
    return [(cid, doc) for cid, (_, doc) in CONSTRUCTIONS.items()]


def build(cid: str, **params) -> Representation:
    try:
        builder = CONSTRUCTIONS[cid][0]
    except KeyError:
        raise ConstructionError(f"unknown construction {cid!r}") from None
    return builder(**params)


# ---------------------------------------------------------------------------
# Drinfeld coproduct in component form

XPLUS_READINGS = ("derived", "as_written")


@dataclass(frozen=True)
class _TensorSpace:
    top_degree: Fraction


class CoproductModule:
    """The tensor product of two representations of the same algebra.

    Basis keys are pairs (key1, key2).  Generators act through the component
    form of the Drinfeld coproduct; the sums over m are finite because every
    factor has bounded degree.  The factors of psi and phi are derived from
    the Heisenberg coproduct, so psi(z) maps to psi(z q^{k2/2}) (x) psi(z q^{-k1/2})
    and phi(z) to phi(z q^{-k2/2}) (x) phi(z q^{k1/2}).  The same requirement
    fixes the x^+ coefficient to q^{(2n-m)k1/2}; the x^- coefficient is
    q^{(m+2n)k2/2}.  ``xplus_reading="as_written"`` uses q^{(m+2n)k1/2} for x^+
    instead, for comparison.
    """

    def __init__(self, left: Representation, right: Representation, xplus_reading="derived"):
        if xplus_reading not in XPLUS_READINGS:
            raise ConstructionError(f"xplus_reading must be one of {XPLUS_READINGS}")
        self.xplus_reading = xplus_reading
        if left.alg != right.alg:
            raise ConstructionError("tensor factors must share the algebra")
        if left.D != right.D:
            raise ConstructionError("tensor factors must share the root order")
        self.left, self.right = left, right
        self.alg = left.alg
        self.D = left.D
        self.k1, self.k2 = left.level, right.level
        self.level = self.k1 + self.k2
        tops = (left.space.top_degree, right.space.top_degree)
        self.space = _TensorSpace(None if None in tops else tops[0] + tops[1])
        self._cache = {}

    @property
    def gamma(self) -> QRat:
        return self.left.gamma * self.right.gamma

    def one(self):
        return QRat.from_int(1, self.D)

    def degree_of(self, key) -> Fraction:
        return self.left.degree_of(key[0]) + self.right.degree_of(key[1])

    def vector(self, key) -> State:
        return State({key: self.one()})

    def describe(self) -> str:
        return f"{self.left.describe()} (x) {self.right.describe()}"

    @staticmethod
    def _tensor(out: State, s1: State, s2: State, c: QRat):
        for a, ca in s1.items():
            cc = ca * c
            for b, cb in s2.items():
                out.add_term((a, b), cc * cb)

    def _pieces(self, sym, key):
        """[(coefficient, left symbol or None, right symbol or None)] for Delta(sym)."""
        k1, k2, D = self.k1, self.k2, self.D
        kind = sym[0]
        d1 = self.left.degree_of(key[0])
        if kind == "a":
            _, i, n = sym
            return [(qpow(abs(n) * k1 / 2, D), None, sym),
                     (qpow(-abs(n) * k2 / 2, D), sym, None)]
        if kind == "x":
            _, i, e, n = sym
            out = []
            if e > 0:
                out.append((self.one(), sym, None))
                m = 0
                sm = 1 if self.xplus_reading == "as_written" else -1
                while d1 + m <= 0:
                    out.append((qpow((2 * n + sm * m) * k1 / 2, D), ("psi", i, m), ("x", i, 1, n - m)))
                    m += 1
            else:
                out.append((self.one(), None, sym))
                m = 0
                while d1 + n + m <= 0:
                    out.append((qpow((m + 2 * n) * k2 / 2, D), ("x", i, -1, n + m), ("phi", i, m)))
                    m += 1
            return out
        if kind == "psi" or kind == "phi":
            _, i, N = sym
            return [(qpow(-m * k2 / 2 + (N - m) * k1 / 2, D), (kind, i, m), (kind, i, N - m))
                    for m in range(N + 1)]
        raise ConstructionError(f"coproduct of {sym!r} is not available")

    def _key_action(self, sym, key) -> State:
        got = self._cache.get((sym, key))
        if got is not None:
            return got
        out = State()
        top = self.space.top_degree
        if top is None or self.degree_of(key) + symbol_degree(sym) <= top:
            for c, s1, s2 in self._pieces(sym, key):
                v1 = self.left.vector(key[0]) if s1 is None else self.left._key_action(s1, key[0])
                if not v1:
                    continue
                v2 = self.right.vector(key[1]) if s2 is None else self.right._key_action(s2, key[1])
                if v2:
                    self._tensor(out, v1, v2, c)
        self._cache[(sym, key)] = out
        return out

    def act(self, sym, st: State) -> State:
        out = State()
        for key, c in st.items():
            r = self._key_action(sym, key)
            if r:
                out.add_state(r, c)
        return out

    def apply_word(self, word, st: State) -> State:
        for sym in reversed(word):
            st = self.act(sym, st)
            if not st:
                break
        return st

    def act_gamma(self, st: State) -> State:
        """Delta(gamma) = gamma (x) gamma acting as a scalar."""
        return st.scaled(self.gamma)


def coproduct_apply(cm: CoproductModule, generator, mode, st: State) -> State:
    """Apply Delta(generator(mode)) to a tensor state.

    ``generator`` is ("a", i), ("x", i, sign), ("psi", i), ("phi", i) or
    ("gamma",); phi modes are given by their nonnegative index m for phi(-m).
    """
    if generator[0] == "gamma":
        return cm.act_gamma(st)
    return cm.act(tuple(generator) + (mode,), st)


def tensor_basis(cm: CoproductModule, depth) -> list:
    """Tensor basis keys of total degree >= -depth, highest degree first."""
    from qzalg.spaces import enumerate_basis
    depth = as_fraction(depth)
    b1 = enumerate_basis(cm.left.space, depth)
    b2 = enumerate_basis(cm.right.space, depth)
    keys = []
    for d1, ks1 in b1.items():
        for d2, ks2 in b2.items():
            if d1 + d2 >= -depth:
                keys.extend((d1 + d2, a, b) for a in ks1 for b in ks2)
    keys.sort(key=lambda t: (-t[0], repr(t[1]), repr(t[2])))
    return [(a, b) for _, a, b in keys]


# ---------------------------------------------------------------------------
# multi-variable Z-operators

def multi_Z(rep: Representation, i, signs, modes, st: State) -> State:
    """The component Z(signs; modes) of the normalized product of Z-operators.

    The product Z^{e_1}(z_1) ... Z^{e_s}(z_s) is multiplied by the factors
    (1 - q^{-(e_a+e_b)k/2} z_b/z_a)^{-e_a e_b (alpha_i|alpha_i)/k}_{q^{2k}}
    for a < b, and the coefficient of prod z_a^{-n_a-h} is applied to ``st``.
    The expansion in z_b/z_a is finite on a state because every intermediate
    vector has degree at most the top degree.  The result is checked to be
    homogeneous of degree deg(st) + n_1 + ... + n_s.
    """
    signs, modes = tuple(signs), tuple(as_fraction(n) for n in modes)
    s = len(signs)
    if s == 0 or len(modes) != s:
        raise ConstructionError("multi_Z needs matching nonempty signs and modes")
    k, D = rep.level, rep.D
    top = rep.space.top_degree
    norm = rep.alg.form(i, i)
    pairs = [(a, b) for a in range(s) for b in range(a + 1, s)]
    out = State()
    for key, c0 in st.items():
        d0 = rep.degree_of(key)
        # t_ab <= -deg(v) - sum_{l >= b} n_l, from the degree bound on suffixes
        bound = {b: int(math.floor(top - d0 - sum(modes[b:]))) for b in range(1, s)}
        series = {}
        for a, b in pairs:
            N = max(bound[b], 0)
            series[(a, b)] = ratio_power_series(-signs[a] * signs[b] * norm, k,
                                                -(signs[a] + signs[b]) * k / 2, N, D)
        ranges = [range(0, bound[b] + 1) for a, b in pairs]
        for ts in itertools.product(*ranges):
            coeff = c0
            shifted = list(modes)
            for (a, b), t in zip(pairs, ts):
                coeff = coeff * series[(a, b)].coeff(t)
                shifted[a] -= t
                shifted[b] += t
            if not coeff:
                continue
            v = State({key: coeff})
            for a in reversed(range(s)):
                v = rep.act(("Z", i, signs[a], shifted[a]), v)
                if not v:
                    break
            if v:
                out.add_state(v)
    want = None
    for key, c in st.items():
        want = rep.degree_of(key) + sum(modes)
        break
    for key in out:
        if rep.degree_of(key) != want:
            raise VertexError(f"multi_Z component is not homogeneous: {key!r}")
    return out
