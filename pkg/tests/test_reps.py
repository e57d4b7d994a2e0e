"""Constructions, relation checks on small windows, coproduct and multi-variable Z."""

from fractions import Fraction

import pytest

from qzalg.algebra import relation_instances
from qzalg.checking import check_instances
from qzalg.reps import (CONSTRUCTIONS, ConstructionError, CoproductModule, build, coproduct_apply, multi_Z,
                        tensor_basis)
from qzalg.scalar import QRat, qpow
from qzalg.spaces import State, enumerate_basis, key_degree, lattice_apply, vacuum_key
from qzalg.vertex import mode_extract


def q2(e):
    return qpow(e, 2)


def keys_of(rep, depth):
    basis = enumerate_basis(rep.space, Fraction(depth))
    return [k for d, v in sorted(basis.items(), reverse=True) for k in v]


def run(rep, M, depth, families=None, pairs=None, keys=None):
    rep.emax_hint = M
    insts = [i for i in relation_instances(rep.alg, rep.level, M, D=rep.D, families=families, pairs=pairs)
             if i.rid not in ("d-a", "d-x")]
    res = check_instances(rep, insts, keys if keys is not None else keys_of(rep, depth))
    return {d: v[0] for d, v in res.items()}


def failures(res):
    return sorted(d for d, v in res.items() if v != "pass")


def test_registry_and_errors():
    assert set(CONSTRUCTIONS) == {"fj", "b", "c", "f4", "sl2-2"}
    with pytest.raises(ConstructionError):
        build("nope")
    with pytest.raises(ConstructionError):
        build("b", rank=2, sign_reading="bogus")


def test_fj_a1_basics():
    rep = build("fj", type_="A", rank=1, r=0)
    vac = rep.vector(vacuum_key(("l0", (0,))))
    assert rep.gamma == q2(1)
    assert rep.act(("x", 1, 1, -1), vac) == lattice_apply(rep.space, vac, (1,))
    assert rep.k_eigen(1, next(iter(lattice_apply(rep.space, vac, (1,))))) == q2(2)


def test_sl2_level_two_gamma():
    assert build("sl2-2", r=0).gamma == q2(2)


@pytest.mark.parametrize("cid,params", [("fj", {"type_": "A", "rank": 2, "r": 1}),
                                        ("b", {"rank": 2, "r": 2}), ("b", {"rank": 2, "r": 0}),
                                        ("sl2-2", {"r": 0}), ("sl2-2", {"r": 1})])
def test_highest_weight_vectors_are_annihilated(cid, params):
    rep = build(cid, **params)
    for key in rep.highest:
        v = rep.vector(key)
        for i in rep.alg.indices:
            for n in range(0, 3):
                assert not rep.act(("x", i, 1, n), v)
            for n in range(1, 3):
                assert not rep.act(("a", i, n), v)


@pytest.mark.parametrize("cid,params,depth", [("fj", {"type_": "A", "rank": 1}, 2),
                                              ("fj", {"type_": "A", "rank": 2}, 1),
                                              ("b", {"rank": 2, "r": 0}, 1),
                                              ("sl2-2", {"r": 0}, 1)])
def test_all_relations_on_a_small_window(cid, params, depth):
    res = run(build(cid, **params), 1, depth)
    assert res and not failures(res)


def test_b_sign_reading_as_written_fails_only_somewhere():
    rep = build("b", rank=2, r=0, sign_reading="as_written")
    assert failures(run(rep, 1, 1, families=["xx", "x+x-"]))


def test_sl2_level_two_as_written_signs_fail():
    rep = build("sl2-2", r=0, sign_reading="as_written")
    assert failures(run(rep, 1, 1, families=["x+x-"]))


@pytest.mark.parametrize("mutation,families", [("cocycle", ["xx"]), ("bracket", ["a-a"]),
                                               ("epower", ["x+x-"]), ("mode", ["x+x-"])])
def test_mutations_are_detected(mutation, families):
    rep = build("fj", type_="A", rank=2, mutate={mutation: True})
    assert failures(run(rep, 1, 1, families=families))


def test_cocycle_mutation_is_invisible_in_rank_one():
    rep = build("fj", type_="A", rank=1, mutate={"cocycle": True})
    assert not failures(run(rep, 1, 1))


def test_f4_needs_a_sign_adjustment():
    fams, pairs = ["x+x-"], [(1, 2), (2, 1)]
    bad = failures(run(build("f4"), 1, 1, families=fams, pairs=pairs))
    assert bad
    assert not failures(run(build("f4", sign_adjust="table"), 1, 1, families=fams, pairs=pairs))


# ---------------------------------------------------------------------------
# coproduct

@pytest.fixture(scope="module")
def fj_pair():
    a = build("fj", type_="A", rank=1, r=0)
    return a, build("fj", type_="A", rank=1, r=0)


def test_coproduct_examples(fj_pair):
    left, right = fj_pair
    cm = CoproductModule(left, right)
    v = vacuum_key(("l0", (0,)))
    vv = cm.vector((v, v))
    for n in (1, 2):
        assert not coproduct_apply(cm, ("a", 1), n, vv)
    e = next(iter(lattice_apply(left.space, left.vector(v), (1,))))
    want = State({(e, v): QRat.from_int(1, 2), (v, e): q2(-1)})
    assert coproduct_apply(cm, ("x", 1, 1), -1, vv) == want
    assert coproduct_apply(cm, ("gamma",), None, vv) == vv.scaled(q2(2))


def _homomorphism_failures(cm, families, M=1, depth=1):
    insts = [i for i in relation_instances(cm.alg, cm.level, M, D=cm.D, families=families)]
    res = check_instances(cm, insts, tensor_basis(cm, depth))
    return failures({d: v[0] for d, v in res.items()})


def test_coproduct_is_a_homomorphism(fj_pair):
    cm = CoproductModule(*fj_pair)
    assert not _homomorphism_failures(cm, ["a-a", "a-x"])


def test_coproduct_as_written_x_plus_breaks_a_x(fj_pair):
    cm = CoproductModule(*fj_pair, xplus_reading="as_written")
    bad = _homomorphism_failures(cm, ["a-x"])
    assert bad and all(b.startswith("a-x") for b in bad)


def test_coproduct_rejects_mismatched_factors():
    with pytest.raises(ConstructionError):
        CoproductModule(build("fj", type_="A", rank=1), build("fj", type_="A", rank=2))
    with pytest.raises(ConstructionError):
        CoproductModule(build("fj", type_="A", rank=1), build("fj", type_="A", rank=1), xplus_reading="x")


# ---------------------------------------------------------------------------
# multi-variable Z

def test_multi_z_single_variable_is_z():
    rep = build("fj", type_="A", rank=1, r=0)
    for key in keys_of(rep, 2):
        v = rep.vector(key)
        for sign in (1, -1):
            for n in range(-2, 2):
                assert multi_Z(rep, 1, (sign,), (n,), v) == mode_extract(rep.space, rep.Z[(1, sign)], n, v)


@pytest.mark.parametrize("signs,modes", [((1, -1), (-1, 0)), ((1, 1), (-2, -1)), ((-1, 1, 1), (-1, 0, -1))])
def test_multi_z_components_shift_degree(signs, modes):
    rep = build("fj", type_="A", rank=1, r=0)
    for key in keys_of(rep, 1):
        out = multi_Z(rep, 1, signs, modes, rep.vector(key))
        for k in out:
            assert key_degree(rep.space, k) == key_degree(rep.space, key) + sum(modes)


def test_multi_z_requires_matching_arguments():
    rep = build("fj", type_="A", rank=1, r=0)
    with pytest.raises(ConstructionError):
        multi_Z(rep, 1, (1, -1), (0,), rep.vector(rep.highest[0]))
