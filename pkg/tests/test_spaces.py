"""State spaces: Fock modules, twisted group algebras and q-Clifford wedges."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qzalg.algebra import algebra_data
from qzalg.reps import build
from qzalg.scalar import QRat, q_int, qpow
from qzalg.spaces import (FermionSpec, LatticeSpec, SpaceError, SpaceSpec, State, boson_apply, degree,
                          enumerate_basis, fermion_apply, graded_dim, key_degree, lattice_apply, vacuum_key,
                          z_power_apply)

H = Fraction(1, 2)


def fj(type_="A", rank=1, r=0):
    rep = build("fj", type_=type_, rank=rank, r=r)
    return rep, rep.vector(vacuum_key((rep.space.reps[0], (0,) * rank)))


def q2(e):
    return qpow(e, 2)


# ---------------------------------------------------------------------------
# bosons

def test_boson_examples_in_normalized_basis():
    rep, vac = fj()
    sp = rep.space
    s = boson_apply(sp, vac, "a", 1, -1)
    assert boson_apply(sp, s, "a", 1, 1) == vac.scaled(q2(1) + q2(-1))
    s2 = boson_apply(sp, s, "a", 1, -1)
    assert boson_apply(sp, s2, "a", 1, 1) == s.scaled((q2(1) + q2(-1)) * 2)
    assert boson_apply(sp, vac, "a", 1, 2) == State()


def test_boson_errors():
    rep, vac = fj()
    with pytest.raises(SpaceError):
        boson_apply(rep.space, vac, "a", 1, 0)
    with pytest.raises(SpaceError):
        boson_apply(rep.space, vac, "a", 2, -1)
    with pytest.raises(SpaceError):
        boson_apply(rep.space, vac, "b", 1, -1)


words = st.lists(st.tuples(st.sampled_from([1, 2]), st.integers(1, 3)), max_size=3)


@settings(max_examples=40, deadline=None)
@given(word=words, i=st.sampled_from([1, 2]), j=st.sampled_from([1, 2]), m=st.integers(1, 3),
       n=st.integers(-3, 3).filter(bool))
def test_heisenberg_commutator(word, i, j, m, n):
    # [a_i(m), a_j(n)] = delta_{m+n,0} [A_ij m][m] / m at level 1, on any Fock state
    rep, st_ = fj("A", 2)
    sp = rep.space
    for c, k in word:
        st_ = boson_apply(sp, st_, "a", c, -k)
    lhs = (boson_apply(sp, boson_apply(sp, st_, "a", j, n), "a", i, m)
           - boson_apply(sp, boson_apply(sp, st_, "a", i, m), "a", j, n))
    A = algebra_data("A", 2).A(i, j)
    want = st_.scaled(q_int(A * m, 1, 2) * q_int(m, 1, 2) / m) if m + n == 0 else State()
    assert lhs == want


# ---------------------------------------------------------------------------
# lattice

def test_lattice_shift_and_z_power():
    rep, vac = fj()
    sp = rep.space
    ea = lattice_apply(sp, vac, (1,))
    assert list(ea) == [((), ("l0", (1,)), (), None)]
    assert list(z_power_apply(sp, vac, (1,)).values()) == [0]
    assert list(z_power_apply(sp, ea, (1,)).values()) == [2]
    assert list(z_power_apply(sp, ea, (-1,)).values()) == [-2]
    with pytest.raises(SpaceError):
        lattice_apply(sp, vac, (H,))


def test_fundamental_coset_pairing():
    rep, vac = fj("A", 1, 1)
    assert list(z_power_apply(rep.space, vac, (1,)).values()) == [1]
    assert rep.space.lattice.label_norm(next(iter(vac))[1]) == H


vec3 = st.tuples(*[st.integers(-2, 2)] * 3)


@given(x=vec3, y=vec3, z=vec3)
def test_cocycle_is_bimultiplicative_with_the_right_commutator(x, y, z):
    rep, _ = fj("A", 3)
    lat = rep.space.lattice
    s = tuple(a + b for a, b in zip(y, z))
    assert lat.eps(x, s) == lat.eps(x, y) * lat.eps(x, z)
    assert lat.eps(s, x) == lat.eps(y, x) * lat.eps(z, x)
    assert lat.eps(x, y) * lat.eps(y, x) == (-1) ** int(lat.form(x, y))


@settings(max_examples=30, deadline=None)
@given(x=vec3, y=vec3, b=vec3)
def test_group_algebra_multiplication(x, y, b):
    # e^x e^y = eps(x, y) e^{x+y}
    rep, _ = fj("A", 3)
    sp = rep.space
    s = State.basis(((), ("l0", b), (), None), 2)
    lhs = lattice_apply(sp, lattice_apply(sp, s, y), x)
    rhs = lattice_apply(sp, s, tuple(a + c for a, c in zip(x, y)))
    assert lhs == rhs.scaled(QRat.from_int(rep.space.lattice.eps(x, y), 2))


# ---------------------------------------------------------------------------
# fermions

def test_fermion_example():
    sp = SpaceSpec(D=2, fermion=FermionSpec())
    vac = State.basis(vacuum_key(), 2)
    s = fermion_apply(sp, fermion_apply(sp, vac, -H), -3 * H)
    assert degree(sp, s) == -2
    got = fermion_apply(sp, s, H)
    want = fermion_apply(sp, vac, -3 * H).scaled(-(q2(H) + q2(-H)))
    assert got == want


halves = st.sampled_from([Fraction(2 * k + 1, 2) for k in range(-3, 3)])


@settings(max_examples=60, deadline=None)
@given(word=st.lists(st.sampled_from([-H, -3 * H, -5 * H]), max_size=3), m=halves, n=halves,
       base=st.sampled_from([1, 2]))
def test_clifford_anticommutator(word, m, n, base):
    fs = FermionSpec(base=base)
    sp = SpaceSpec(D=2, fermion=fs)
    s = State.basis(vacuum_key(), 2)
    for k in word:
        s = fermion_apply(sp, s, k)
    lhs = (fermion_apply(sp, fermion_apply(sp, s, n), m) + fermion_apply(sp, fermion_apply(sp, s, m), n))
    want = s.scaled(fs.anticommutator(m, 2)) if m + n == 0 else State()
    assert lhs == want


# ---------------------------------------------------------------------------
# grading

def _partition_counts(colors, depth):
    # coefficients of prod_n (1 - x^n)^(-colors)
    c = [1] + [0] * depth
    for n in range(1, depth + 1):
        for _ in range(colors):
            for d in range(n, depth + 1):
                c[d] += c[d - n]
    return c


def _lattice_counts(gram, depth, box=4):
    c = [0] * (depth + 1)
    n = len(gram)
    for b in itertools.product(range(-box, box + 1), repeat=n):
        norm = sum(b[i] * gram[i][j] * b[j] for i in range(n) for j in range(n)) / 2
        if norm <= depth:
            c[int(norm)] += 1
    return c


@pytest.mark.parametrize("rank", [1, 2])
def test_graded_dims_against_partition_count(rank):
    depth = 4
    rep, _ = fj("A", rank)
    got = graded_dim(rep.space, depth)
    p = _partition_counts(rank, depth)
    lat = _lattice_counts(algebra_data("A", rank).gram, depth)
    for d in range(depth + 1):
        assert got.get(Fraction(-d), 0) == sum(p[a] * lat[d - a] for a in range(d + 1))


def test_heisenberg_part_alone():
    sp = SpaceSpec(D=2, bosons=build("fj", type_="A", rank=1).space.bosons)
    assert list(graded_dim(sp, 4).values()) == [1, 1, 2, 3, 5]


def test_half_odd_strict_partitions():
    sp = SpaceSpec(D=2, fermion=FermionSpec())
    dims = graded_dim(sp, 3)
    modes = [Fraction(2 * k + 1, 2) for k in range(4)]
    want = {}
    for r in range(len(modes) + 1):
        for sub in itertools.combinations(modes, r):
            if sum(sub) <= 3:
                want[-sum(sub, Fraction(0))] = want.get(-sum(sub, Fraction(0)), 0) + 1
    assert dims == want
    assert [dims.get(-d, 0) for d in (0, H, 1, 3 * H, 2)] == [1, 1, 0, 1, 1]


@settings(max_examples=30, deadline=None)
@given(c=st.sampled_from([1, 2]), m=st.integers(1, 3), idx=st.integers(0, 30))
def test_boson_creation_lowers_degree(c, m, idx):
    rep, _ = fj("A", 2)
    keys = [k for v in enumerate_basis(rep.space, 2).values() for k in v]
    key = keys[idx % len(keys)]
    out = boson_apply(rep.space, State.basis(key, 2), "a", c, -m)
    assert all(key_degree(rep.space, k) == key_degree(rep.space, key) - m for k in out)


def test_inhomogeneous_state_has_no_degree():
    rep, vac = fj()
    s = vac + boson_apply(rep.space, vac, "a", 1, -1)
    with pytest.raises(SpaceError):
        degree(rep.space, s)
    with pytest.raises(SpaceError):
        degree(rep.space, State())


def test_state_cancellation():
    rep, vac = fj()
    assert (vac - vac).is_zero()
    s = State(vac)
    s.add_term(next(iter(vac)), QRat.from_int(-1, 2))
    assert not s


def test_custom_lattice_cocycle_table():
    lat = LatticeSpec(gram=((2, -1), (-1, 2)), cocycle=((0, 1), (0, 0)))
    assert lat.eps((1, 0), (0, 1)) == -1
    assert lat.eps((0, 1), (1, 0)) == 1
    assert lat.inverse_gram()[0][0] == Fraction(2, 3)


@settings(max_examples=40, deadline=None)
@given(t=st.sampled_from([("A", 2), ("B", 2), ("C", 2), ("A", 3), ("G", 2)]),
       c=st.tuples(*[st.fractions(-1, 1, max_denominator=3)] * 3), bound=st.fractions(0, 6, max_denominator=2))
def test_ellipsoid_enumeration_against_brute_force(t, c, bound):
    from qzalg.spaces import _ellipsoid_points
    gram = algebra_data(*t).gram
    n = len(gram)
    center = c[:n]
    lat = LatticeSpec(gram=gram, cocycle=[[0] * n] * n)

    def norm(b):
        y = [x - y for x, y in zip(b, center)]
        return lat.form(y, y)
    got = {b for b in _ellipsoid_points(gram, center, bound) if norm(b) <= bound}
    want = {b for b in itertools.product(range(-6, 7), repeat=n) if norm(b) <= bound}
    assert got == want
