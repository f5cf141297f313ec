"""Checks on the reductions used by the exhaustive identity sweeps."""

import numpy as np
from hypothesis import given, strategies as st

from higher_hopf import groups as gp
from higher_hopf import pxmod as px
from higher_hopf.corpus import pxmod_corpus, small_groups
from higher_hopf.errors import NotASubmodule
from checks import cyclic_representatives, join_lemma_group_cases, witt_hall_subgroup_cases

TINY = [G for G in small_groups(6)]


@given(st.sampled_from([G for G in small_groups(12)]), st.data())
def test_commutator_is_join_over_cyclic_subgroups(G, data):
    subs = gp.all_subgroups(G)
    A = data.draw(st.sampled_from(subs))
    B = data.draw(st.sampled_from(subs))
    full = gp.commutator_subgroup(G, A, B)
    acc = gp.trivial_subgroup(G)
    for b in B.elements.tolist():
        acc = gp.join(acc, gp.commutator_subgroup(G, A, gp.subgroup_generated(G, [b])))
    assert gp.subgroups_equal(full, acc)


def test_cyclic_representatives_cover_every_cyclic_subgroup():
    for G in small_groups(8):
        GG = gp.direct_product(G, G)
        root = GG.ambient
        diag = gp.pair_code(G, G, G.elements, G.elements)
        reps = cyclic_representatives(root, diag)
        seen = {gp.subgroup_generated(root, [int(b)]).elements.tobytes() for b in reps}
        for x in root.elements.tolist():
            C = gp.subgroup_generated(root, [x])
            conj = [gp.Subgroup(root, elements=np.unique(root.conj(np.full(C.order, int(d)), C.elements))) for d in diag]
            assert any(S.elements.tobytes() in seen for S in conj)


def test_join_lemma_over_every_subgroup_of_small_squares():
    for G in TINY:
        for lhs, rhs in join_lemma_group_cases(G, exhaustive_B=True):
            assert gp.subgroups_equal(lhs, rhs)


@given(st.sampled_from(small_groups(12)))
def test_witt_hall_subgroup_identities(G):
    for lhs, rhs in witt_hall_subgroup_cases(G):
        assert gp.subgroups_equal(lhs, rhs)


def _normal_submodules_bruteforce(P):
    X = px.whole(P)
    out = []
    for S in gp.all_normal_subgroups(X.S):
        for M in gp.all_normal_subgroups(X.M):
            Y = px.PXSub(P, M, S)
            try:
                Y.check()
            except NotASubmodule:
                continue
            if Y.is_normal_in(X):
                out.append((M.elements.tobytes(), S.elements.tobytes()))
    return sorted(out)


@given(st.sampled_from(pxmod_corpus(8)))
def test_normal_submodules_match_bruteforce(P):
    fast = sorted((Y.M.elements.tobytes(), Y.S.elements.tobytes()) for Y in px.normal_submodules(P))
    assert fast == _normal_submodules_bruteforce(P)
    reps = px.normal_submodules(P, one_per_M=True)
    assert len({Y.M.elements.tobytes() for Y in reps}) == len(reps) == len({m for m, _ in fast})
