"""Exponential identities, Z-algebra relations, vacuum space and factorization."""

from fractions import Fraction

import pytest

from qzalg.reps import build
from qzalg.spaces import State, enumerate_basis, lattice_apply
from qzalg.vertex import mode_extract
from qzalg.zfactor import (EXP_IDENTITIES, check_exp_identity, check_z_relations, check_z_commutation,
                           factorization_check, heisenberg_dims, vacuum_basis, z_operator)


@pytest.fixture(scope="module")
def a1():
    return build("fj", type_="A", rank=1, r=0)


@pytest.fixture(scope="module")
def a2():
    return build("fj", type_="A", rank=2, r=0)


@pytest.mark.parametrize("ident", range(1, len(EXP_IDENTITIES) + 1))
@pytest.mark.parametrize("sign", [1, -1])
def test_exponential_identities_rank_one(a1, ident, sign):
    assert check_exp_identity(a1, ident, 1, 1, 2, sign).verdict == "pass"


@pytest.mark.parametrize("ident", [1, 2, 3, 4, 6, 7, 8])
def test_exponential_identities_between_neighbours(a2, ident):
    for i, j in ((1, 2), (2, 1)):
        assert check_exp_identity(a2, ident, i, j, 1).verdict == "pass"


def test_identity_four_as_written_cannot_be_decided(a1):
    # E_- in place of E_+ on the right makes the product infinite on every state
    r = check_exp_identity(a1, 4, 1, 1, 1, reading="as_written")
    assert r.verdict == "starved"


@pytest.mark.parametrize("cid,params,pairs,window", [
    ("fj", {"type_": "A", "rank": 1}, [(1, 1)], 2),
    ("fj", {"type_": "A", "rank": 3}, [(1, 3), (1, 2)], 1),
    ("b", {"rank": 2, "r": 0}, [(1, 2), (2, 2)], 1),
])
def test_z_algebra_relations(cid, params, pairs, window):
    rep = build(cid, **params)
    for i, j in pairs:
        for r in check_z_relations(rep, i, j, window):
            assert r.verdict == "pass", r.instance


def test_z_algebra_relations_as_written_fail(a1):
    reports = check_z_relations(a1, 1, 1, 1, variant="as_written")
    assert any(r.verdict == "fail" for r in reports)


def test_rank_one_z_is_the_bare_lattice_operator(a1):
    # Z+(z) = e^a z^{d_a}: Z+(n) e^b is e^{a+b} for n = -(a|b) - 1 and zero otherwise
    sp = a1.space
    for keys in enumerate_basis(sp, 2).values():
        for key in keys:
            v = a1.vector(key)
            p = sp.lattice.pair_label((1,), key[1])
            for n in range(-4, 3):
                want = lattice_apply(sp, v, (1,)) if n == -p - 1 else State()
                assert mode_extract(sp, a1.Z[(1, 1)], n, v) == want


@pytest.mark.parametrize("cid,params", [("fj", {"type_": "A", "rank": 1}), ("fj", {"type_": "A", "rank": 2}),
                                        ("b", {"rank": 2, "r": 2})])
def test_z_from_x_and_commutation(cid, params):
    rep = build(cid, **params)
    for i in rep.alg.indices:
        for s in (1, -1):
            assert z_operator(rep, i, s, 1).verdict == "pass"
            assert check_z_commutation(rep, i, s, 1).verdict == "pass"


def test_vacuum_basis_of_the_lattice_construction(a1):
    vb = vacuum_basis(a1, 2)
    assert vb.dims() == {0: 1, -1: 2}
    assert all(not k[0] for k in vb.keys())
    assert heisenberg_dims(1, 4) == {0: 1, -1: 1, -2: 2, -3: 3, -4: 5}


def test_vacuum_basis_with_fermions():
    rep = build("b", rank=2, r=0)
    vb = vacuum_basis(rep, 2)
    assert any(k[2] for k in vb.keys())
    assert all(not k[0] for k in vb.keys())


@pytest.mark.parametrize("cid,params", [("fj", {"type_": "A", "rank": 1}), ("b", {"rank": 2, "r": 0})])
def test_z_modes_preserve_the_vacuum_space(cid, params):
    rep = build(cid, **params)
    vb = vacuum_basis(rep, 2, verify=False)
    for key in vb.keys():
        v = rep.vector(key)
        for (i, s), Z in rep.Z.items():
            for n in range(-2, 2):
                for k in mode_extract(rep.space, Z, n, v):
                    assert not k[0]


@pytest.mark.parametrize("cid,params,window", [("fj", {"type_": "A", "rank": 1}, 3),
                                               ("b", {"rank": 2, "r": 0}, 2),
                                               ("sl2-2", {"r": 0}, Fraction(3, 2))])
def test_factorization(cid, params, window):
    reports = factorization_check(build(cid, **params), window, mode_window=1)
    assert [r.verdict for r in reports] == ["pass"] * len(reports)


def test_factorization_trivial_window(a1):
    r = factorization_check(a1, 0, mode_window=0)[0]
    assert r.verdict == "pass" and r.timing["degrees"] == {"0": [1, 1]}
