"""Cartan data of type-one affine algebras and the catalog of defining
relations in mode form.

A relation instance is a list of ``(coefficient, word)`` pairs whose sum
must vanish as an operator; a word is a tuple of mode symbols applied right
to left, e.g. ``(("x", 1, 1, 0), ("x", 1, -1, 2))`` is x_1^+(0) x_1^-(2).
Mode symbols:

* ``("a", i, m)``        Heisenberg generator a_i(m), m != 0
* ``("x", i, e, n)``     x_i^e(n), e = +1 / -1
* ``("psi", i, m)``      psi_i(m), m >= 0 (coefficient of z^{-m})
* ``("phi", i, m)``      phi_i(-m), m >= 0 (coefficient of z^{m})
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from qzalg.scalar import QRat, as_fraction, q_binomial, q_int, qpow
from qzalg.spaces import colored_partitions

__all__ = [
    "AlgebraData", "RelationInstance", "AlgebraError", "algebra_data",
    "minuscule_weights", "relation_instances", "phi_psi_modes",
    "RELATION_FAMILIES", "RELATION_VIEWS", "XX_FORMS", "symbol_degree",
]

RELATION_FAMILIES = ("d-a", "d-x", "a-a", "a-x", "xx", "x+x-", "serre", "phi-psi")


class AlgebraError(ValueError):
    """Unsupported type or invalid parameters."""


@dataclass(frozen=True)
class AlgebraData:
    type: str
    rank: int
    cartan: tuple
    gram: tuple           # (alpha_i | alpha_j)
    d: tuple              # d_i = (alpha_i|alpha_i)/2

    @property
    def indices(self):
        return tuple(range(1, self.rank + 1))

    def form(self, i, j) -> Fraction:
        return self.gram[i - 1][j - 1]

    def A(self, i, j) -> int:
        return self.cartan[i - 1][j - 1]

    def weight_pairing(self, i, r) -> Fraction:
        """(alpha_i | lambda_r) = d_i delta_{ir}."""
        return self.d[i - 1] if i == r else Fraction(0)

    def inverse_gram(self):
        from qzalg.spaces import _gauss_inverse
        return _gauss_inverse(self.gram)

    def weight_coords(self, r):
        """lambda_r in the root basis."""
        ginv = self.inverse_gram()
        p = [self.weight_pairing(i, r) for i in self.indices]
        return tuple(sum(ginv[a][b] * p[b] for b in range(self.rank)) for a in range(self.rank))

    def weight_norm(self, r) -> Fraction:
        c = self.weight_coords(r)
        return sum(c[a] * self.weight_pairing(a + 1, r) for a in range(self.rank))

    def __str__(self):
        return f"{self.type}{self.rank}"


def _chain(norms, links):
    """Gram matrix of a Dynkin diagram given norms and {(i, j): (alpha_i|alpha_j)}."""
    n = len(norms)
    g = [[Fraction(0)] * n for _ in range(n)]
    for i, v in enumerate(norms):
        g[i][i] = Fraction(v)
    for (i, j), v in links.items():
        g[i - 1][j - 1] = g[j - 1][i - 1] = Fraction(v)
    return g


def algebra_data(type_: str, rank: int | None = None) -> AlgebraData:
    """Cartan data with long roots of square length 2.

    Exceptional labelings: F4 has short roots 1, 2 and long roots 3, 4;
    G2 has the long root 1 and the short root 2.
    """
    t = type_.strip().upper()
    if rank is None and len(t) > 1 and t[1:].isdigit():
        t, rank = t[0], int(t[1:])
    if rank is None:
        raise AlgebraError("rank is required")
    l = int(rank)
    half = Fraction(1, 2)
    if t == "A" and l >= 1:
        g = _chain([2] * l, {(i, i + 1): -1 for i in range(1, l)})
    elif t == "B" and l >= 2:
        g = _chain([2] * (l - 1) + [1], {(i, i + 1): -1 for i in range(1, l)})
    elif t == "C" and l >= 2:
        links = {(i, i + 1): -half for i in range(1, l - 1)}
        links[(l - 1, l)] = -1
        g = _chain([1] * (l - 1) + [2], links)
    elif t == "D" and l >= 3:
        links = {(i, i + 1): -1 for i in range(1, l - 1)}
        links[(l - 2, l)] = -1
        g = _chain([2] * l, links)
    elif t == "E" and l in (6, 7, 8):
        # Bourbaki: 1-3-4-5-6(-7-8), 2 attached to 4
        links = {(1, 3): -1, (3, 4): -1, (4, 5): -1, (2, 4): -1}
        for i in range(5, l):
            links[(i, i + 1)] = -1
        g = _chain([2] * l, links)
    elif t == "F" and l == 4:
        g = _chain([1, 1, 2, 2], {(1, 2): -half, (2, 3): -1, (3, 4): -1})
    elif t == "G" and l == 2:
        g = _chain([2, Fraction(2, 3)], {(1, 2): -1})
    else:
        raise AlgebraError(f"unsupported type {type_}{rank}")
    d = tuple(g[i][i] / 2 for i in range(l))
    cartan = tuple(tuple(int(2 * g[i][j] / g[i][i]) for j in range(l)) for i in range(l))
    for i in range(l):
        for j in range(l):
            if d[i] * cartan[i][j] != g[i][j]:
                raise AlgebraError("inconsistent Cartan data")
    return AlgebraData(t, l, cartan, tuple(tuple(r) for r in g), d)


def minuscule_weights(alg: AlgebraData) -> tuple:
    """Indices r of the weights lambda_r labeling level-one modules (0 = lambda_0)."""
    t, l = alg.type, alg.rank
    if t == "A":
        return tuple(range(0, l + 1))
    if t == "B":
        return (0, 1, l)
    if t == "C":
        return (0, 1)
    if t == "D":
        return (0, 1, l - 1, l)
    if t == "E":
        return {6: (0, 1, 6), 7: (0, 7), 8: (0,)}[l]
    return (0,)


@dataclass
class RelationInstance:
    rid: str
    params: tuple
    terms: list = field(default_factory=list)   # [(QRat, word)]
    degree: Fraction | None = None

    @property
    def descriptor(self) -> str:
        return f"{self.rid}{self.params}"


def symbol_degree(sym) -> Fraction:
    """Degree change caused by one mode symbol."""
    kind = sym[0]
    if kind == "a" or kind == "psi":
        return as_fraction(sym[2])
    if kind == "x" or kind == "Z":
        return as_fraction(sym[3])
    if kind == "phi":
        return -as_fraction(sym[2])
    if kind == "g":
        return as_fraction(sym[3])
    raise AlgebraError(f"unknown mode symbol {sym!r}")


def _word_degree(word):
    return sum((symbol_degree(s) for s in word), Fraction(0))


def _finish(inst: RelationInstance) -> RelationInstance:
    degs = {_word_degree(w) for _, w in inst.terms}
    if len(degs) > 1:
        raise AlgebraError(f"relation {inst.descriptor} is not degree balanced: {degs}")
    inst.degree = degs.pop() if degs else None
    inst.terms = [(c, w) for c, w in inst.terms if c]
    return inst


RELATION_VIEWS = ("invariant", "rescaled")
XX_FORMS = ("form", "cartan")


def relation_instances(alg: AlgebraData, level, M: int, pairs=None, families=None,
                       D: int = 2, xx_form: str = "form", view: str = "invariant") -> list:
    """Every defining relation with modes bounded by M, in mode form.

    ``xx_form`` selects the q-power in the quadratic relation: ``"form"``
    uses q^{(alpha_i|alpha_j)}, ``"cartan"`` uses q^{A_ij}.
    ``view="rescaled"`` states the a-a and a-x relations for the generators
    a_i(n) / [d_i] with the textbook constants [m a_ij]_{q_i} / m and
    (gamma^m - gamma^{-m}) / (q_j - q_j^{-1}); the words still act through a_i(n).
    """
    if xx_form not in XX_FORMS:
        raise AlgebraError(f"xx_form must be one of {XX_FORMS}")
    if view not in RELATION_VIEWS:
        raise AlgebraError(f"view must be one of {RELATION_VIEWS}")
    rescaled = view == "rescaled"
    k = as_fraction(level)
    fams = RELATION_FAMILIES if families is None else tuple(families)
    idx = alg.indices
    if pairs is None:
        pairs = [(i, j) for i in idx for j in idx]
    pairs = [tuple(p) for p in pairs]
    one = QRat.from_int(1, D)
    out = []
    modes = range(-M, M + 1)
    nz = [m for m in modes if m]
    for i in sorted({p[0] for p in pairs} | {p[1] for p in pairs}):
        if "d-a" in fams:
            for m in nz:
                out.append(_finish(RelationInstance("d-a", (i, m), [(one, (("a", i, m),))])))
        if "d-x" in fams:
            for e in (1, -1):
                for n in modes:
                    out.append(_finish(RelationInstance("d-x", (i, e, n), [(one, (("x", i, e, n),))])))
    for (i, j) in pairs:
        A = alg.form(i, j)
        if "a-a" in fams:
            for m in nz:
                for n in nz:
                    s = one
                    if rescaled:
                        s = (q_int(alg.d[i - 1], 1, D) * q_int(alg.d[j - 1], 1, D)).inverse()
                    terms = [(s, (("a", i, m), ("a", j, n))), (-s, (("a", j, n), ("a", i, m)))]
                    if m == -n:
                        if rescaled:
                            dj = alg.d[j - 1]
                            val = q_int(alg.A(i, j) * m, alg.d[i - 1], D) / m \
                                * (qpow(k * m, D) - qpow(-k * m, D)) / (qpow(dj, D) - qpow(-dj, D))
                        else:
                            val = q_int(A * m, 1, D) / m * q_int(k * m, 1, D)
                        terms.append((-val, ()))
                    out.append(_finish(RelationInstance("a-a", (i, j, m, n), terms)))
        if "a-x" in fams:
            for e in (1, -1):
                for m in nz:
                    for n in modes:
                        if rescaled:
                            s = q_int(alg.d[i - 1], 1, D).inverse()
                            c = q_int(alg.A(i, j) * m, alg.d[i - 1], D) / m * qpow(-e * k * abs(m) / 2, D)
                        else:
                            s = one
                            c = q_int(A * m, 1, D) / m * qpow(-e * k * abs(m) / 2, D)
                        terms = [(s, (("a", i, m), ("x", j, e, n))),
                                 (-s, (("x", j, e, n), ("a", i, m))),
                                 (-c * e, (("x", j, e, m + n),))]
                        out.append(_finish(RelationInstance("a-x", (i, j, e, m, n), terms)))
        if "xx" in fams:
            p = A if xx_form == "form" else alg.A(i, j)
            for e in (1, -1):
                c = qpow(e * p, D)
                for m in range(-M, M):
                    for n in range(-M, M):
                        terms = [(one, (("x", i, e, m + 1), ("x", j, e, n))),
                                 (-c, (("x", i, e, m), ("x", j, e, n + 1))),
                                 (-c, (("x", j, e, n), ("x", i, e, m + 1))),
                                 (one, (("x", j, e, n + 1), ("x", i, e, m)))]
                        out.append(_finish(RelationInstance("xx", (i, j, e, m, n), terms)))
        if "x+x-" in fams:
            qi = qpow(alg.d[i - 1], D)
            den = (qi - qi.inverse()).inverse()
            for m in modes:
                for n in modes:
                    terms = [(one, (("x", i, 1, m), ("x", j, -1, n))),
                             (-one, (("x", j, -1, n), ("x", i, 1, m)))]
                    if i == j:
                        p = m + n
                        if p >= 0:
                            terms.append((-den * qpow(k * (m - n) / 2, D), (("psi", i, p),)))
                        if p <= 0:
                            terms.append((den * qpow(k * (n - m) / 2, D), (("phi", i, -p),)))
                    out.append(_finish(RelationInstance("x+x-", (i, j, m, n), terms)))
        if "serre" in fams and i != j and alg.A(i, j) != 0:
            N = 1 - alg.A(i, j)
            qd = alg.d[i - 1]
            for e in (1, -1):
                for ms in itertools.combinations_with_replacement(modes, N):
                    perms = sorted(set(itertools.permutations(ms)))
                    for n in modes:
                        terms = []
                        for s in range(N + 1):
                            c = q_binomial(N, s, qd, D) * (-1) ** s
                            for perm in perms:
                                word = tuple(("x", i, e, mm) for mm in perm[:s]) + (("x", j, e, n),) \
                                    + tuple(("x", i, e, mm) for mm in perm[s:])
                                terms.append((c, word))
                        out.append(_finish(RelationInstance("serre", (i, j, e, ms, n), terms)))
        if "phi-psi" in fams:
            # (1 - q^{A-k}x)(1 - q^{k-A}x) psi_i(z) phi_j(w) = (1 - q^{A+k}x)(1 - q^{-A-k}x) phi_j(w) psi_i(z)
            def poly(a, b):
                ca, cb = qpow(a, D), qpow(b, D)
                return [one, -(ca + cb), ca * cb]
            L = poly(A - k, k - A)
            R = poly(A + k, -A - k)
            for m in range(0, M + 1):
                for n in range(0, M + 1):
                    terms = []
                    for t in range(3):
                        if m - t >= 0 and n - t >= 0:
                            terms.append((L[t], (("psi", i, m - t), ("phi", j, n - t))))
                            terms.append((-R[t], (("phi", j, n - t), ("psi", i, m - t))))
                    out.append(_finish(RelationInstance("phi-psi", (i, j, m, n), terms)))
    return out


def phi_psi_modes(alg: AlgebraData, i: int, bound: int, D: int = 2) -> dict:
    """Explicit phi_i(-n), psi_i(n) for 0 <= n <= bound.

    Returns {("psi", n) | ("phi", n): [(coeff, a-modes tuple, k power)]} where
    psi_i(n) = k_i * (coefficient of z^{-n} in exp((q - q^{-1}) sum a_i(m) z^{-m}))
    and phi_i(-n) = k_i^{-1} * (coefficient of z^{n} in exp((q^{-1} - q) sum a_i(-m) z^m)).
    """
    g = qpow(1, D) - qpow(-1, D)
    out = {}
    for kind, c, sgn, kp in (("psi", g, 1, 1), ("phi", -g, -1, -1)):
        for n in range(0, bound + 1):
            terms = []
            for mono in colored_partitions([("a", i)], n):
                coeff = QRat.from_int(1, D)
                counts = {}
                for _, _, m in mono:
                    counts[m] = counts.get(m, 0) + 1
                for m, cnt in counts.items():
                    coeff = coeff * c ** cnt / factorial(cnt)
                modes_ = tuple(sgn * m for _, _, m in mono)
                terms.append((coeff, modes_, kp))
            out[(kind, n)] = terms
    return out
