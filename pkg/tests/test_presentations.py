from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from higher_hopf import groups as gp
from higher_hopf import lie
from higher_hopf import presentations as pr
from higher_hopf.corpus import _abelian, heisenberg_group, small_lie_algebras
from higher_hopf.cubes import validate_extension
from higher_hopf.errors import NotInVariety, SizeLimitExceeded, UnsupportedClass, UnsupportedVariety
from oracles import TableOracle, witt_dimension


@pytest.mark.parametrize("text", ["group:c2:p3", "group:abelian:p5", "lie:c3:p3", "lie:c1:p2"])
def test_parse_variety_roundtrip(text):
    v = pr.parse_variety(text)
    assert pr.parse_variety(str(v)) == v


@pytest.mark.parametrize(
    "text, exc",
    [
        ("group:c3:p3", UnsupportedVariety),
        ("group:c2:p4", UnsupportedVariety),
        ("group:c2:p2", UnsupportedVariety),
        ("lie:c4:p3", UnsupportedClass),
        ("rings:c2:p3", UnsupportedVariety),
    ],
)
def test_parse_variety_rejects(text, exc):
    with pytest.raises(exc):
        pr.parse_variety(text)


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_free_group_order_and_structure(d):
    v = pr.parse_variety("group:c2:p3")
    F, xs = pr.free_object(v, d)
    assert F.size == 3 ** (d + comb(d, 2))
    assert len(xs) == d
    assert pr.is_free(gp.whole(F), v)


def test_free_group_matches_bruteforce_on_two_generators():
    F, xs = pr.free_object("group:c2:p3", 2)
    table = F._mul(np.repeat(F.elements, F.size), np.tile(F.elements, F.size)).reshape(F.size, F.size)
    O = TableOracle(table, F.identity)
    assert O.closure(xs) == frozenset(range(F.size))
    # class 2: every commutator is central
    comms = {O.comm(a, b) for a in range(F.size) for b in range(F.size)}
    assert all(O.comm(c, g) == O.e for c in comms for g in range(F.size))
    # exponent 3
    assert all(O.mul(O.mul(x, x), x) == O.e for x in range(F.size))


@pytest.mark.parametrize("d,c", [(1, 3), (2, 2), (2, 3), (3, 3)])
def test_free_lie_dimension_is_witt(d, c):
    assert pr.free_lie_dim(d, c) == sum(witt_dimension(d, k) for k in range(1, c + 1))


def test_is_free_distinguishes():
    v = pr.parse_variety("group:c2:p3")
    assert pr.is_free(heisenberg_group(3), v)
    assert not pr.is_free(_abelian(3, 3), v)
    assert pr.is_free(gp.cyclic(3), v)
    assert not pr.is_free(gp.cyclic(9), v)


def test_present_rejects_objects_outside_the_variety():
    with pytest.raises(NotInVariety):
        pr.present(gp.cyclic(9), "group:c2:p3")


@given(st.integers(0, 30))
def test_seeded_one_presentations_are_presentations(seed):
    v = pr.parse_variety("group:c2:p3")
    rec = pr.present(_abelian(3, 3), v, seed=seed)
    rep = validate_extension(rec.cube(), v)
    assert rep.is_extension and rep.is_presentation
    assert gp.is_surjective(rec.onto)


@pytest.mark.parametrize("n", [1, 2])
def test_n_presentation_of_c3c3(n):
    cube = pr.n_presentation(_abelian(3, 3), "group:c2:p3", n)
    rep = validate_extension(cube, "group:c2:p3")
    assert rep.is_extension and rep.is_presentation
    assert cube.n == n
    assert cube.backend.size(cube.vertices[cube.full]) == 9


@pytest.mark.parametrize("L", small_lie_algebras(3)[:4], ids=lambda L: getattr(L, "name", "lie"))
def test_lie_two_presentations(L):
    v = pr.parse_variety("lie:c3:p3")
    cube = pr.n_presentation(lie.whole(L), v, 2)
    rep = validate_extension(cube, v)
    assert rep.is_extension and rep.is_presentation


def test_canonical_presentation_hits_the_cap():
    with pytest.raises(SizeLimitExceeded):
        pr.canonical_presentation(_abelian(3, 3), "group:c2:p3")
    rec = pr.canonical_presentation(gp.cyclic(3), "group:c2:p3")
    assert gp.is_surjective(rec.onto)
