import numpy as np
import pytest
from hypothesis import given, strategies as st

from higher_hopf import cubes
from higher_hopf import groups as gp
from higher_hopf.corpus import (
    _abelian,
    dihedral,
    double_extensions,
    quotient_square,
    square_corpus,
    surjection_corpus,
)
from higher_hopf.errors import NotCommuting, NotSurjectiveArrow, NotValidated

SQUARES = square_corpus(27, count=120, seed=3)
DOUBLES = double_extensions(12)
square_st = st.sampled_from(SQUARES)
double_st = st.sampled_from([c for _, c in DOUBLES])


def test_square_corpus_has_both_verdicts():
    verdicts = [exp for _, _, exp in SQUARES]
    assert any(verdicts) and not all(verdicts)


@given(square_st)
def test_regular_pushout_matches_construction(case):
    _, sq, expected = case
    v = cubes.is_regular_pushout(sq)
    assert v.regular == expected
    assert v.comparison_surjective == v.kernel_map_surjective
    assert (v.pullback_order == v.comparison_image_order) == expected


def test_non_commuting_square_is_rejected():
    C3 = gp.cyclic(3)
    ident = gp.identity_morphism(C3)
    inversion = gp.extend_homomorphism(C3, [2], C3, gens=[1])
    with pytest.raises(NotCommuting):
        cubes.square(ident, ident, ident, inversion)


def test_non_surjective_arrow_is_rejected():
    C2, C4 = gp.cyclic(2), gp.cyclic(4)
    inc = gp.extend_homomorphism(C2, [2], C4, gens=[1])
    one = gp.extend_homomorphism(C4, [0], gp.cyclic(1), gens=[1])
    sq = cubes.square(inc, one, inc, one)
    with pytest.raises(NotSurjectiveArrow):
        cubes.is_regular_pushout(sq)


@given(double_st)
def test_double_extensions_validate(cube):
    rep = cubes.validate_extension(cube)
    assert rep.is_extension, rep.failures


def test_non_regular_square_fails_validation():
    _, sq, _ = next(c for c in SQUARES if not c[2])
    rep = cubes.validate_extension(sq)
    assert not rep.is_extension and rep.failures
    with pytest.raises(NotValidated):
        cubes.require_validated(sq)


def test_arrow_cube_of_non_surjection_is_not_extension():
    inc = gp.extend_homomorphism(gp.cyclic(2), [2], gp.cyclic(4), gens=[1])
    assert not cubes.validate_extension(cubes.arrow_cube(inc)).is_extension


@given(double_st)
def test_kernel_pair_extension_shape(cube):
    kp = cubes.kernel_pair_extension(cube)
    be = cube.backend
    for A, R in kp.R.vertices.items():
        f = cube.arrows[(A, 2)]
        K = be.kernel(f)
        assert be.size(R) == be.size(cube.vertices[A]) * be.size(K)


@given(double_st)
def test_centralization_is_central_and_idempotent(cube):
    C = cubes.centralize_extension(cube)
    assert cubes.is_central_double(C)
    C2 = cubes.centralize_extension(C)
    assert C2.backend.size(C2.initial) == C.backend.size(C.initial)


def test_trivial_and_central_extensions_of_groups():
    S3 = dihedral(3)
    A3 = gp.all_normal_subgroups(S3)[1]
    _, q = gp.quotient(S3, A3)
    assert not cubes.is_trivial_extension(q)
    assert not cubes.is_central_extension(q)
    V = _abelian(2, 2)
    proj = gp.quotient(V, gp.all_normal_subgroups(V)[1])[1]
    assert cubes.is_central_extension(proj)


@given(st.sampled_from(surjection_corpus(12, min_count=40)))
def test_arrow_cube_json_roundtrip(case):
    cube = cubes.arrow_cube(case.f)
    back = cubes.cube_from_json(cubes.cube_to_json(cube))
    assert back.n == 1
    assert back.backend.size(back.initial) == case.f.domain.order
    assert cubes.validate_extension(back).is_extension


def test_square_json_roundtrip_keeps_verdict():
    _, sq, expected = SQUARES[0]
    back = cubes.cube_from_json(cubes.cube_to_json(sq), check=False)
    assert cubes.is_regular_pushout(back).regular == expected
