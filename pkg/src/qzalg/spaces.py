"""Graded state spaces: boson Fock modules, twisted lattice group algebras,
q-Clifford exterior algebras and finite tags.

A basis vector is the tuple ``(bosons, label, wedge, tag)``:

* ``bosons`` -- sorted tuple of ``(family, index, n)`` with ``n > 0`` standing
  for the creation mode ``g_index(-n)``; repeats encode powers.
* ``label`` -- ``(rep, coords)`` where ``rep`` names an adjoined coset
  representative and ``coords`` are the integer coordinates of the lattice
  vector in the lattice basis, or ``None`` when there is no lattice.
* ``wedge`` -- strictly decreasing tuple of positive Fractions ``n`` standing
  for ``kappa(-n1) ^ kappa(-n2) ^ ...``.
* ``tag`` -- an element of a finite tag set, or ``None``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from qzalg.scalar import QRat, ScalarDomainError, as_fraction, q_int, qpow

__all__ = [
    "BosonFamily", "LatticeSpec", "FermionSpec", "SpaceSpec", "State",
    "SpaceError", "boson_apply", "lattice_apply", "z_power_apply",
    "fermion_apply", "degree", "graded_dim", "enumerate_basis",
    "heisenberg_bracket", "level_norm", "colored_partitions", "strict_partitions",
    "merge_bosons", "vacuum_key",
]

F0 = Fraction(0)


class SpaceError(ValueError):
    """Invalid operation on a state space."""


# ---------------------------------------------------------------------------
# states

class State(dict):
    """Sparse linear combination ``{basis key: QRat}`` without zero entries."""

    __slots__ = ()

    def add_term(self, key, c):
        if not c:
            return
        old = self.get(key)
        if old is None:
            self[key] = c
        else:
            s = old + c
            if s:
                self[key] = s
            else:
                del self[key]

    def add_state(self, other, c=None):
        if c is not None and c.is_one():
            c = None
        get = self.get
        for key, v in other.items():
            if c is not None:
                v = v * c
            old = get(key)
            if old is None:
                self[key] = v
            else:
                v = old + v
                if v:
                    self[key] = v
                else:
                    del self[key]
        return self

    def scaled(self, c):
        out = State()
        if not c:
            return out
        for key, v in self.items():
            out[key] = v * c
        return out

    def __sub__(self, other):
        out = State(self)
        for key, v in other.items():
            out.add_term(key, -v)
        return out

    def __add__(self, other):
        return State(self).add_state(other)

    def is_zero(self):
        return not self

    @classmethod
    def basis(cls, key, D=1):
        return cls({key: QRat.from_int(1, D)})


def merge_bosons(a, b):
    if not b:
        return a
    if not a:
        return b
    return tuple(sorted(a + b))


def vacuum_key(label=None, tag=None):
    return ((), label, (), tag)


# ---------------------------------------------------------------------------
# components

def heisenberg_bracket(gram, level, D):
    """[g_i(m), g_j(-m)] = [(a_i|a_j) m][m k] / m for the family a."""
    gram = [[as_fraction(x) for x in row] for row in gram]
    level = as_fraction(level)

    def bracket(i, j, m):
        a = gram[i - 1][j - 1]
        if not a:
            return QRat.from_int(0, D)
        return q_int(a * m, 1, D) * q_int(m * level, 1, D) / m
    return bracket


def level_norm(level, D):
    """Basis normalization 1/[kn] matching the level-k exponentials."""
    level = as_fraction(level)
    return lambda i, n: q_int(level * n, 1, D).inverse()


@dataclass(eq=False)
class BosonFamily:
    """Heisenberg generators g_i(n) with [g_i(m), g_j(-m)] = bracket(i, j, m).

    ``norm(i, n)`` rescales basis monomials: the basis factor stored as
    ``(family, i, n)`` is ``norm(i, n) * g_i(-n)``.  A good choice keeps the
    vertex-operator coefficients Laurent polynomials; states are vectors, so
    the choice never changes results.
    """

    name: str
    indices: tuple
    bracket: Callable
    description: str = ""
    norm: Callable | None = None

    def __post_init__(self):
        self._nu = {}
        self._br = {}

    def coefficient(self, i, j, m):
        k = (i, j, m)
        v = self._br.get(k)
        if v is None:
            v = self._br[k] = self.bracket(i, j, m)
        return v

    def nu(self, i, n):
        """Normalization of the basis factor (i, n), or None for 1."""
        if self.norm is None:
            return None
        k = (i, n)
        v = self._nu.get(k)
        if v is None:
            v = self._nu[k] = self.norm(i, n)
        return v

    def contraction(self, i, j, m):
        """g_i(m) applied to the basis factor (j, m): bracket times norm."""
        b = self.coefficient(i, j, m)
        nu = self.nu(j, m)
        return b if nu is None or not b else b * nu


def _gauss_inverse(g):
    n = len(g)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(g)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise SpaceError("singular Gram matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


@dataclass(eq=False)
class LatticeSpec:
    """Lattice with Gram matrix, bimultiplicative cocycle and coset reps.

    ``cocycle[i][j]`` in {0, 1} gives eps(e_i, e_j) = (-1)**cocycle[i][j] on
    the lattice basis.  ``reps`` maps a coset name to the vector of pairings
    ((e_i | lambda_r))_i and ``rep_norms`` to (lambda_r | lambda_r).
    """

    gram: tuple
    cocycle: tuple
    reps: dict = field(default_factory=lambda: {"0": None})
    rep_norms: dict = field(default_factory=dict)
    names: tuple = ()

    def __post_init__(self):
        self.gram = tuple(tuple(as_fraction(x) for x in row) for row in self.gram)
        self.cocycle = tuple(tuple(int(x) % 2 for x in row) for row in self.cocycle)
        n = len(self.gram)
        reps = {}
        for name, p in self.reps.items():
            reps[name] = tuple(F0 for _ in range(n)) if p is None else tuple(as_fraction(x) for x in p)
        self.reps = reps
        self.rep_norms = {name: as_fraction(self.rep_norms.get(name, 0)) for name in reps}

    @property
    def rank(self):
        return len(self.gram)

    def form(self, x, y):
        g = self.gram
        return sum((x[i] * g[i][j] * y[j] for i in range(len(x)) if x[i]
                    for j in range(len(y)) if y[j]), F0)

    def pair_label(self, u, label) -> Fraction:
        """(u | beta + lambda_r) for a label (r, beta)."""
        rep, beta = label
        p = self.reps[rep]
        return self.form(u, beta) + sum((ui * pi for ui, pi in zip(u, p) if ui), F0)

    def label_norm(self, label) -> Fraction:
        rep, beta = label
        p = self.reps[rep]
        return (self.form(beta, beta) + 2 * sum((b * x for b, x in zip(beta, p)), F0)
                + self.rep_norms[rep])

    def eps(self, x, y) -> int:
        e = 0
        c = self.cocycle
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj and c[i][j]:
                        e += xi * yj
        return -1 if e % 2 else 1

    def shift(self, label, gamma):
        rep, beta = label
        return (rep, tuple(b + g for b, g in zip(beta, gamma)))

    def inverse_gram(self):
        return _gauss_inverse(self.gram)


@dataclass(frozen=True)
class FermionSpec:
    """q-Clifford generators kappa(m), m in Z + s, {k(m), k(-m)} = q^{bm} + q^{-bm}.

    ``zero_mode`` (s = 0 only): ``"parity"`` makes kappa(0) act as (-1)^F;
    ``"tag_swap"`` makes it swap a two-element tag times (-1)^F.
    """

    s: Fraction = Fraction(1, 2)
    base: int = 1
    zero_mode: str | None = None

    def anticommutator(self, m, D):
        m = as_fraction(m)
        return qpow(self.base * m, D) + qpow(-self.base * m, D)


@dataclass(eq=False)
class SpaceSpec:
    """A graded space assembled from components.

    Degree of a basis vector: minus the boson depth, minus the fermion depth,
    minus ((label|label) - (rep|rep)) / (2 * lattice_level).  ``top_degree``
    bounds the degrees of all basis vectors from above (None: no bound); mode
    actions use it to skip results that must vanish.
    """

    D: int
    bosons: tuple = ()
    lattice: LatticeSpec | None = None
    fermion: FermionSpec | None = None
    tags: tuple = (None,)
    reps: tuple = ("0",)
    sector: Callable | None = None
    lattice_level: Fraction = Fraction(1)
    lattice_degree: Callable | None = None
    name: str = ""
    lattice_box: tuple | None = None
    top_degree: Fraction | None = Fraction(0)

    def family(self, name):
        for f in self.bosons:
            if f.name == name:
                return f
        raise SpaceError(f"unknown boson family {name!r}")

    def one(self):
        return QRat.from_int(1, self.D)

    def zero(self):
        return QRat.from_int(0, self.D)


# ---------------------------------------------------------------------------
# mode actions

def boson_apply(space: SpaceSpec, st: State, family: str, i: int, m: int) -> State:
    """g_i(m) on a state: creation for m < 0, contraction for m > 0."""
    if not m:
        raise SpaceError("boson zero modes are not Heisenberg modes")
    fam = space.family(family)
    if i not in fam.indices:
        raise SpaceError(f"unknown index {i} for family {family!r}")
    out = State()
    if m < 0:
        item = ((family, i, -m),)
        nu = fam.nu(i, -m)
        for (bos, lab, w, t), c in st.items():
            out.add_term((merge_bosons(bos, item), lab, w, t), c if nu is None else c / nu)
        return out
    for (bos, lab, w, t), c in st.items():
        seen = set()
        for pos, (f2, j, n) in enumerate(bos):
            if f2 != family or n != m or (f2, j, n) in seen:
                continue
            seen.add((f2, j, n))
            beta = fam.contraction(i, j, m)
            if not beta:
                continue
            mult = bos.count((f2, j, n))
            rest = bos[:pos] + bos[pos + 1:]
            out.add_term((rest, lab, w, t), c * beta * mult)
    return out


def lattice_apply(space: SpaceSpec, st: State, gamma) -> State:
    """e^gamma with the cocycle sign eps(gamma, beta)."""
    lat = space.lattice
    if lat is None:
        raise SpaceError("space has no lattice component")
    gamma = tuple(gamma)
    if any(Fraction(g).denominator != 1 for g in gamma):
        raise SpaceError("lattice shifts must be integral in the lattice basis")
    gamma = tuple(int(g) for g in gamma)
    out = State()
    for (bos, lab, w, t), c in st.items():
        sign = lat.eps(gamma, lab[1])
        out.add_term((bos, lat.shift(lab, gamma), w, t), c if sign > 0 else -c)
    return out


def z_power_apply(space: SpaceSpec, st: State, u) -> dict:
    """Exponent (u | beta + lambda_r) contributed by z^{d_u}, per basis vector."""
    lat = space.lattice
    u = tuple(as_fraction(x) for x in u)
    return {key: lat.pair_label(u, key[1]) for key in st}


def _wedge_insert(wedge, n):
    """kappa(-n) ^ wedge -> (sign, new wedge) or None for a repeat."""
    pos = 0
    for x in wedge:
        if x == n:
            return None
        if x > n:
            pos += 1
        else:
            break
    return (-1 if pos % 2 else 1), wedge[:pos] + (n,) + wedge[pos:]


def fermion_apply(space: SpaceSpec, st: State, m) -> State:
    """kappa(m) on a state."""
    fs = space.fermion
    if fs is None:
        raise SpaceError("space has no fermion component")
    m = as_fraction(m)
    if (m - fs.s).denominator != 1:
        raise SpaceError(f"mode {m} is not in Z + {fs.s}")
    out = State()
    if m < 0:
        n = -m
        for (bos, lab, w, t), c in st.items():
            r = _wedge_insert(w, n)
            if r is not None:
                out.add_term((bos, lab, r[1], t), c if r[0] > 0 else -c)
        return out
    if m > 0:
        ac = fs.anticommutator(m, space.D)
        for (bos, lab, w, t), c in st.items():
            for pos, x in enumerate(w):
                if x == m:
                    coeff = ac * c
                    out.add_term((bos, lab, w[:pos] + w[pos + 1:], t),
                                 -coeff if pos % 2 else coeff)
                    break
        return out
    if fs.s != 0 or fs.zero_mode is None:
        raise SpaceError("kappa(0) is not defined for this fermion space")
    for (bos, lab, w, t), c in st.items():
        sign = -1 if len(w) % 2 else 1
        nt = t
        if fs.zero_mode == "tag_swap":
            nt = 1 - t
        out.add_term((bos, lab, w, nt), c if sign > 0 else -c)
    return out


# ---------------------------------------------------------------------------
# grading

def key_degree(space: SpaceSpec, key) -> Fraction:
    bos, lab, w, _ = key
    d = -sum((Fraction(n) for _, _, n in bos), F0) - sum(w, F0)
    if lab is not None:
        if space.lattice_degree is not None:
            d += space.lattice_degree(lab)
        else:
            lat = space.lattice
            d -= (lat.label_norm(lab) - lat.rep_norms[lab[0]]) / (2 * space.lattice_level)
    return d


def degree(space: SpaceSpec, st: State) -> Fraction:
    degs = {key_degree(space, k) for k in st}
    if len(degs) > 1:
        raise SpaceError(f"state is not homogeneous: degrees {sorted(degs)}")
    if not degs:
        raise SpaceError("the zero state has no degree")
    return degs.pop()


def colored_partitions(colors, total, max_part=None):
    """Multisets of (color..., n) with sum of n equal to total, as sorted tuples."""
    if total == 0:
        yield ()
        return
    if max_part is None:
        max_part = total
    colors = list(colors)
    # parts are generated in non-increasing order of (n, color index)
    items = [(n, ci) for n in range(1, max_part + 1) for ci in range(len(colors))]
    items.sort(reverse=True)

    def rec(remaining, start):
        if remaining == 0:
            yield ()
            return
        for k in range(start, len(items)):
            n, ci = items[k]
            if n <= remaining:
                for rest in rec(remaining - n, k):
                    yield ((n, ci),) + rest
    for combo in rec(total, 0):
        yield tuple(sorted(colors[ci] + (n,) for n, ci in combo))


def strict_partitions(s, total):
    """Strictly decreasing tuples of positive modes in Z + s summing to total."""
    s = as_fraction(s)
    total = as_fraction(total)
    if total == 0:
        yield ()
        return
    first = s if s > 0 else Fraction(1)
    modes = []
    m = first
    while m <= total:
        modes.append(m)
        m += 1
    modes.reverse()

    def rec(remaining, start):
        if remaining == 0:
            yield ()
            return
        for k in range(start, len(modes)):
            n = modes[k]
            if n <= remaining:
                for rest in rec(remaining - n, k + 1):
                    yield (n,) + rest
    yield from rec(total, 0)


def _ellipsoid_points(gram, center, bound, slack=1e-7):
    """Integer vectors beta with (beta - c | beta - c) <= bound (plus float slack).

    Fincke-Pohst enumeration: the form is written as a sum of squares
    sum_i g_ii (y_i + sum_{j>i} g_ij y_j)^2 and coordinates are fixed from
    the last one down, each within the budget the earlier ones leave.
    """
    n = len(gram)
    g = [[float(x) for x in row] for row in gram]
    for i in range(n):
        if g[i][i] <= 0:
            raise SpaceError("lattice enumeration needs a positive definite form")
        for j in range(i + 1, n):
            g[j][i] = g[i][j]
            g[i][j] = g[i][j] / g[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                g[k][l] -= g[k][i] * g[i][l]
    c = [float(x) for x in center]
    y = [0.0] * n
    beta = [0] * n

    def rec(i, budget):
        if i < 0:
            yield tuple(beta)
            return
        t = sum(g[i][j] * y[j] for j in range(i + 1, n))
        r = math.sqrt(max(budget, 0.0) / g[i][i]) + slack
        lo = math.ceil(c[i] - t - r)
        hi = math.floor(c[i] - t + r)
        for b in range(lo, hi + 1):
            y[i] = b - c[i]
            beta[i] = b
            yield from rec(i - 1, budget - g[i][i] * (y[i] + t) ** 2)

    yield from rec(n - 1, float(bound) + slack)


def _lattice_points(space: SpaceSpec, rep, depth):
    """Lattice labels (rep, beta) with lattice degree >= -depth."""
    lat = space.lattice
    n = lat.rank
    if space.lattice_box is not None:
        candidates = itertools.product(*[range(lo, hi + 1) for lo, hi in space.lattice_box])
    else:
        ginv = lat.inverse_gram()
        p = lat.reps[rep]
        center = [-sum(ginv[i][j] * p[j] for j in range(n)) for i in range(n)]
        # (beta - c | beta - c) <= bound covers the window, with one unit of
        # slack for custom lattice degrees; the exact filter follows
        cnorm = lat.form(center, center)
        bound = 2 * space.lattice_level * (depth + 1) + cnorm
        candidates = _ellipsoid_points(lat.gram, center, bound)
    for beta in candidates:
        lab = (rep, tuple(beta))
        d = key_degree(space, ((), lab, (), None))
        if d >= -depth:
            yield lab, d


def enumerate_basis(space: SpaceSpec, depth, with_bosons=True):
    """All basis vectors of degree in [-depth, 0], grouped {degree: [keys]}.

    Lattice labels may have positive degree on their own (a sector rule then
    pairs them with fermions); a full basis vector of positive degree is an
    error in the space definition.
    """
    depth = as_fraction(depth)
    out = {}
    labels = []
    if space.lattice is not None:
        for rep in space.reps:
            labels.extend(_lattice_points(space, rep, depth))
    else:
        labels = [(None, F0)]
    colors = [(f.name, i) for f in space.bosons for i in f.indices] if with_bosons else []
    fs = space.fermion
    step = Fraction(1, 2) if (fs is not None and fs.s) else Fraction(1)
    wedges = [((), F0)]
    if fs is not None:
        wedges = []
        t = F0
        while t <= depth:
            for w in strict_partitions(fs.s, t):
                wedges.append((w, -t))
            t += step
    bos_by_depth = {}
    for lab, dl in labels:
        for w, dw in wedges:
            rest = depth + dl + dw
            if rest < 0:
                continue
            for tag in space.tags:
                for b in range(0, math.floor(rest) + 1):
                    if not colors and b:
                        break
                    if b not in bos_by_depth:
                        bos_by_depth[b] = list(colored_partitions(colors, b))
                    for bos in bos_by_depth[b]:
                        key = (bos, lab, w, tag)
                        if space.sector is not None and not space.sector(key):
                            continue
                        d = dl + dw - b
                        if d > 0:
                            raise SpaceError(f"basis vector {key!r} has positive degree {d}")
                        out.setdefault(d, []).append(key)
    for d in out:
        out[d].sort(key=repr)
    return out


def graded_dim(space: SpaceSpec, depth, with_bosons=True) -> dict:
    """{degree: number of basis vectors} for degrees in [-depth, 0]."""
    basis = enumerate_basis(space, depth, with_bosons)
    return {d: len(v) for d, v in sorted(basis.items(), reverse=True)}
