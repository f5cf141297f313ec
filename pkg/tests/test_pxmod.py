import numpy as np
import pytest
from hypothesis import given, strategies as st

from higher_hopf import groups as gp
from higher_hopf import pxmod as px
from higher_hopf.corpus import _abelian, dihedral, pxmod_corpus, small_groups, swap_module
from higher_hopf.errors import NotAHomomorphism, NotAnAction, NotEquivariant, NotNormal
from checks import (
    crossed_iff_peiffer_trivial,
    join_lemma_module_cases,
    peiffer_reduces_to_commutator,
    pwh_failures,
)

CORPUS = pxmod_corpus()
corpus_st = st.sampled_from(CORPUS)


def test_corpus_mixes_crossed_and_precrossed():
    crossed = [px.is_crossed(P) for P in CORPUS]
    assert len(CORPUS) >= 50 and any(crossed) and not all(crossed)
    assert all(P.C.size <= 8 and P.G.size <= 8 for P in CORPUS)


def test_make_pxmod_rejects_non_action():
    C2 = gp.cyclic(2)
    with pytest.raises(NotAnAction):
        px.make_pxmod(C2, C2, [[1, 0], [0, 1]], [0, 0])
    # every element of C3 sent to 0 by the nontrivial element: not bijective
    with pytest.raises(NotAnAction):
        px.make_pxmod(gp.cyclic(3), C2, [[0, 1, 2], [0, 0, 0]], [0, 0, 0])


def test_make_pxmod_rejects_bad_boundary():
    C4, C2 = gp.cyclic(4), gp.cyclic(2)
    with pytest.raises(NotAHomomorphism):
        px.make_pxmod(C4, C2, np.tile(np.arange(4), (2, 1)), [0, 1, 1, 0])


def test_make_pxmod_rejects_non_equivariant():
    # C3 onto the rotations of S3 with trivial action: reflections do not commute with d
    C3 = gp.cyclic(3)
    S3 = dihedral(3)
    rot = next(int(x) for x in S3.elements if x and S3.power([x], 3)[0] == S3.identity)
    bd = [S3.identity, rot, int(S3.mul(rot, rot))]
    act = [[0, 1, 2] for _ in range(6)]
    with pytest.raises(NotEquivariant):
        px.make_pxmod(C3, S3, act, bd)


def test_swap_module_is_not_crossed():
    P = swap_module()
    assert not px.is_crossed(P)
    assert px.peiffer_commutator(P, px.whole(P), px.whole(P)).M.order > 1


@given(corpus_st)
def test_peiffer_witt_hall_identities(P):
    assert pwh_failures(P) == 0


@given(corpus_st)
def test_crossed_iff_peiffer_trivial(P):
    assert crossed_iff_peiffer_trivial(P)


@given(st.sampled_from(small_groups(8)))
def test_trivial_action_reduces_to_group_commutator(C):
    assert peiffer_reduces_to_commutator(C)


@given(corpus_st)
def test_peiffer_commutator_lies_in_product_and_is_normal_there(P):
    X = px.whole(P)
    normals = px.normal_submodules(X)
    for A in normals[:4]:
        for B in normals[-4:]:
            K = px.peiffer_commutator(X, A, B)
            MN = gp.join(A.M, B.M)
            assert gp.is_subgroup_of(K.M, MN)
            assert gp.is_normal_in(K.M, MN)
            assert K.S.order == 1


@given(corpus_st)
def test_crossed_reflection(P):
    Q, q = px.xmod_reflect(P)
    assert px.is_crossed(Q)
    assert px.px_is_surjective(q)
    assert gp.subgroups_equal(px.px_kernel(q).M, px.peiffer_commutator(P, px.whole(P), px.whole(P)).M)


def test_quotient_by_non_normal_raises():
    P = px.conjugation_module(dihedral(3))
    X = px.whole(P)
    H = gp.subgroup_generated(P.C, [next(x for x in P.C.elements if x and P.C.power([x], 2)[0] == 0)])
    with pytest.raises(NotNormal):
        px.px_quotient(X, px.PXSub(P, H, H))


def test_kernel_pair_components():
    P = px.conjugation_module(_abelian(2, 2))
    X = px.whole(P)
    N = px.normal_submodules(X)[1]
    _, q = px.px_quotient(X, N)
    R, p1, p2 = px.kernel_pair(q)
    assert R.M.order == P.C.size * N.M.order
    assert R.S.order == P.G.size * N.S.order


@given(st.sampled_from([P for P in CORPUS if not px.is_crossed(P) and P.C.size <= 4]))
def test_join_lemma_for_modules(P):
    for lhs, rhs in join_lemma_module_cases(P):
        assert gp.subgroups_equal(lhs, rhs)


def test_json_roundtrip():
    P = swap_module()
    Q = px.pxmod_from_json(px.pxmod_to_json(P))
    assert np.array_equal(Q.action, P.action) and np.array_equal(Q.bd, P.bd)
