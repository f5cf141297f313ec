import numpy as np
import pytest
from hypothesis import given, strategies as st

from higher_hopf import cubes
from higher_hopf import groups as gp
from higher_hopf import lie
from higher_hopf import pxmod as px
from higher_hopf.corpus import (
    _abelian,
    dihedral,
    double_extensions,
    heisenberg_group,
    pxmod_corpus,
    pxmod_extensions,
    pxmod_quotient_square,
    small_lie_algebras,
    surjection_corpus,
)
from higher_hopf.errors import (
    NotAPresentation,
    NotValidated,
    UnsupportedReflectorBackend,
)
from higher_hopf.hopf import (
    L_categorical,
    L_closed,
    J_operator,
    baer_check,
    covers,
    hopf_evaluate,
    hopf_homology,
    hopf_numerator,
    parse_reflector,
)
from oracles import TableOracle

SURJ = surjection_corpus(27, min_count=200)
DOUBLES = [c for _, c in double_extensions(16)]
surj_st = st.sampled_from(SURJ)
double_st = st.sampled_from(DOUBLES)


def as_set(S):
    return frozenset(int(x) for x in S.elements)


# --- reflectors ---------------------------------------------------------------


@pytest.mark.parametrize("text, arity", [("ab", 2), ("nil:1", 2), ("nil:2", 3), ("sol:1", 2), ("sol:2", 4), ("peiffer", 2)])
def test_reflector_arity(text, arity):
    R = parse_reflector(text)
    assert R.arity == arity and str(R) == text


@pytest.mark.parametrize("text", ["nil:0", "sol", "abelian", "nil:x"])
def test_bad_reflector_names(text):
    with pytest.raises(UnsupportedReflectorBackend):
        parse_reflector(text)


def test_reflector_backend_matrix():
    with pytest.raises(UnsupportedReflectorBackend):
        J_operator("peiffer", dihedral(3))
    with pytest.raises(UnsupportedReflectorBackend):
        J_operator("ab", pxmod_corpus()[0])


def test_covers_count():
    # m-tuples of subsets of a 2-set covering it: 4^m - 2*2^m + 1
    for m in (2, 3, 4):
        assert sum(1 for _ in covers(2, m)) == 4**m - 2 * 2**m + 1


# --- J ------------------------------------------------------------------------


def test_J_examples():
    S3 = dihedral(3)
    assert J_operator("ab", S3).order == 3
    H = heisenberg_group(3)
    assert J_operator("ab", H).order == 3
    assert J_operator("nil:2", H).order == 1
    assert J_operator("sol:2", gp.symmetric_group(4)).order == 4  # [[S4,S4],[S4,S4]] = V4
    for refl in ("nil:1", "sol:1"):
        assert gp.subgroups_equal(J_operator(refl, S3), J_operator("ab", S3))


# --- evaluators ---------------------------------------------------------------


@given(surj_st)
def test_L1_is_kernel_commutator(case):
    f = case.f
    cube = cubes.arrow_cube(f)
    L = L_closed("ab", cube)
    G = f.domain
    O = TableOracle(G.table, G.identity)
    K = frozenset(i for i in range(G.size) if f(i) == f.codomain.identity)
    assert as_set(L) == O.commutator(K, frozenset(range(G.size)))
    assert gp.subgroups_equal(L, L_categorical("ab", cube))


@given(double_st)
def test_L2_matches_introduction_formula(cube):
    # [K1 ∩ K2, B] [K1, K2] by brute force on the initial vertex
    B = cube.initial
    T, iso = gp.to_table_group(gp.whole(B))
    O = TableOracle(T.table, T.identity)
    code = {int(x): int(iso(x)) for x in B.elements}
    K1 = frozenset(code[int(x)] for x in gp.kernel(cube.arrows[(0, 1)]).elements)
    K2 = frozenset(code[int(x)] for x in gp.kernel(cube.arrows[(0, 2)]).elements)
    expected = O.closure(O.commutator(K1 & K2, frozenset(range(T.size))) | O.commutator(K1, K2))
    got = frozenset(code[int(x)] for x in L_closed("ab", cube).elements)
    assert got == expected


@pytest.mark.parametrize("refl", ["ab", "nil:2", "sol:1"])
@given(cube=double_st)
def test_closed_form_matches_kernel_pair_recursion(refl, cube):
    assert gp.subgroups_equal(L_closed(refl, cube), L_categorical(refl, cube))


@given(double_st)
def test_coherent_reflectors(cube):
    ab = L_closed("ab", cube)
    assert gp.subgroups_equal(ab, L_closed("nil:1", cube))
    assert gp.subgroups_equal(ab, L_closed("sol:1", cube))


@given(double_st)
def test_denominator_inside_numerator(cube):
    for refl in ("ab", "nil:2"):
        assert gp.is_subgroup_of(L_closed(refl, cube), hopf_numerator(refl, cube))


def test_invalid_cube_is_refused():
    S3 = dihedral(3)
    A3 = gp.all_normal_subgroups(S3)[1]
    q = gp.quotient(S3, A3)[1]
    inc = gp.extend_homomorphism(gp.cyclic(2), [3], gp.cyclic(6), gens=[1])
    with pytest.raises(NotValidated):
        L_closed("ab", cubes.arrow_cube(inc))
    # an extension whose domain is not free
    with pytest.raises(NotAPresentation):
        hopf_evaluate("ab", cubes.arrow_cube(q), variety="group:c2:p3")


# --- precrossed modules -------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2])
def test_pxmod_closed_form_matches_recursion(n):
    for _, cube in pxmod_extensions(4, n):
        assert gp.subgroups_equal(L_closed("peiffer", cube).M, L_categorical("peiffer", cube).M)


@given(st.sampled_from(double_extensions(8)))
def test_degenerate_action_reduces_to_groups(case):
    _, gcube = case
    T, iso = gp.to_table_group(gp.whole(gcube.initial))
    P = px.trivial_action_module(T)
    X = px.whole(P)
    ks = [gp.Subgroup(T, elements=np.sort(iso(gp.kernel(gcube.arrows[(0, i)]).elements))) for i in (1, 2)]
    N1, N2 = (px.PXSub(P, K, gp.whole(P.G)) for K in ks)
    pcube = pxmod_quotient_square(X, N1, N2)
    Lp = L_closed("peiffer", pcube).M
    Lg = L_closed("ab", gcube)
    assert Lp.order == Lg.order
    assert set(Lp.elements.tolist()) == set(iso(Lg.elements).tolist())


@given(st.sampled_from([P for P in pxmod_corpus() if px.is_crossed(P)]))
def test_crossed_modules_have_trivial_numerator(P):
    X = px.whole(P)
    N = px.normal_submodules(X)[-1]
    cube = cubes.arrow_cube(px.px_quotient(X, N)[1])
    res = hopf_evaluate("peiffer", cube)
    assert res.numerator_order == 1 and res.to_json()["projectivity"] == "trusted"


def test_peiffer_on_swap_module():
    from higher_hopf.corpus import swap_module

    X = px.whole(swap_module())
    cube = cubes.arrow_cube(px.px_quotient(X, X)[1])
    res = hopf_evaluate("peiffer", cube)
    assert res.numerator_order == 2 and res.denominator_order == 2


# --- homology -----------------------------------------------------------------


def test_schur_multiplier_of_c3c3():
    res = hopf_homology(_abelian(3, 3), 1, "ab", "group:c2:p3")
    assert res.numerator_order == 3 and res.denominator_order == 1
    assert res.invariants["abelian_invariants"] == [3]


def test_h2_against_bruteforce_hopf_formula():
    from higher_hopf.presentations import n_presentation

    res = hopf_homology(_abelian(3, 3), 1, "ab", "group:c2:p3")
    # recompute [F,F] ∩ K and [K,F] from the Cayley table of F
    pres = n_presentation(_abelian(3, 3), "group:c2:p3", 1)
    F = pres.initial
    T, iso = gp.to_table_group(gp.whole(F))
    O = TableOracle(T.table, T.identity)
    f = pres.arrows[(0, 1)]
    K = frozenset(int(iso(x)) for x in F.elements if f(x) == f.codomain.identity)
    allF = frozenset(range(T.size))
    assert len(O.commutator(allF, allF) & K) == res.numerator_order
    assert len(O.commutator(K, allF)) == res.denominator_order


@pytest.mark.parametrize("A", [heisenberg_group(3), gp.cyclic(3)], ids=["H27", "C3"])
def test_free_objects_have_trivial_homology(A):
    for n in (1, 2):
        if A.size == 27 and n == 2:
            continue
        assert hopf_homology(A, n, "ab", "group:c2:p3").invariants["order"] == 1


def test_baer_invariance_c3c3():
    rep = baer_check(_abelian(3, 3), 1, "ab", "group:c2:p3", trials=3)
    assert len(set(rep.fingerprints)) == 3
    assert rep.invariants["abelian_invariants"] == [3]


def test_lie_schur_multipliers():
    algs = {L.name: L for L in small_lie_algebras(3)}
    assert hopf_homology(lie.whole(algs["ab2"]), 1, "ab", "lie:c2:p3").invariants["dim"] == 1
    assert hopf_homology(lie.whole(algs["ab3"]), 1, "ab", "lie:c2:p3").invariants["dim"] == 3
    # the Heisenberg algebra has a 2-dimensional multiplier
    assert hopf_homology(lie.whole(algs["heis3"]), 1, "ab", "lie:c3:p3").invariants["dim"] == 2


def test_peiffer_has_no_presentation_builder():
    with pytest.raises(UnsupportedReflectorBackend):
        hopf_homology(_abelian(3, 3), 1, "peiffer", "group:c2:p3")
