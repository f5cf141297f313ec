import numpy as np
import pytest
from hypothesis import given, strategies as st

from higher_hopf import lie
from higher_hopf.corpus import small_lie_algebras
from higher_hopf.errors import JacobiViolation, NotAHomomorphism, NotAnIdeal, NotAntisymmetric
from oracles import witt_dimension

P = 3
ALGS = small_lie_algebras(P)
alg_st = st.sampled_from(ALGS)


def vec_st(d):
    return st.lists(st.integers(0, P - 1), min_size=d, max_size=d)


def test_rejects_non_antisymmetric():
    c = np.zeros((2, 2, 2), dtype=int)
    c[0, 1] = [1, 0]
    with pytest.raises(NotAntisymmetric):
        lie.validate_lie(lie.LieAlgebra(P, c))


def test_rejects_jacobi_failure():
    # [e0,e1]=e1, [e0,e2]=e0, [e1,e2]=0 breaks Jacobi on (e0, e1, e2)
    with pytest.raises(JacobiViolation):
        lie.make_lie(P, 3, {(0, 1): [0, 1, 0], (0, 2): [1, 0, 0]})


@pytest.mark.parametrize("d,c", [(2, 2), (3, 1), (2, 3), (3, 3), (3, 2), (4, 3)])
def test_free_nilpotent_dimension_matches_witt(d, c):
    L, gens = lie.free_nilpotent(d, c, P)
    assert L.dim == sum(witt_dimension(d, k) for k in range(1, c + 1))
    assert lie.nilpotency_class(L) == min(c, 1 if d == 1 else c)
    lie.validate_lie(L)


def test_heisenberg_series():
    H = lie.whole(lie.heisenberg_lie(P))
    D = lie.bracket_ideal(H, H, H)
    assert D.dim == 1
    assert lie.bracket_ideal(H, D, H).dim == 0
    assert lie.nilpotency_class(H) == 2


@given(alg_st, st.data())
def test_bracket_is_bilinear_and_alternating(L, data):
    d = L.dim
    x, y, z = (np.array(data.draw(vec_st(d))) for _ in range(3))
    a = data.draw(st.integers(0, P - 1))
    assert not L.bracket(x, x).any()
    lhs = L.bracket((a * x + y) % P, z)
    rhs = (a * L.bracket(x, z) + L.bracket(y, z)) % P
    assert np.array_equal(lhs, rhs)
    bx = L.bracket_all(x, np.stack([y, z]))
    assert np.array_equal(bx[0], L.bracket(x, y)) and np.array_equal(bx[1], L.bracket(x, z))


@given(alg_st, st.data())
def test_ideal_closure_is_ideal_and_quotient_dims(L, data):
    W = lie.whole(L)
    v = np.array(data.draw(vec_st(L.dim)))
    I = lie.ideal_closure(W, v[None])
    assert I.is_ideal_in(W)
    Q, q = lie.quotient(W, I)
    q.check()
    assert Q.dim + I.dim == L.dim
    assert lie.kernel(q).equals(I)


def test_quotient_by_non_ideal_raises():
    H = lie.whole(lie.heisenberg_lie(P))
    with pytest.raises(NotAnIdeal):
        lie.quotient(H, lie.span(H, [[1, 0, 0]]))


@given(alg_st, alg_st, st.data())
def test_rank_nullity_for_extended_morphisms(L, M, data):
    # send a generating set of L into the centre-free part of M only when the map is well defined
    W, V = lie.whole(L), lie.whole(M)
    imgs = np.array([data.draw(vec_st(M.dim)) for _ in range(L.dim)])
    try:
        f = lie.extend_lie_morphism(W, imgs, V)
    except NotAHomomorphism:
        return
    assert lie.kernel(f).dim + lie.image(f).dim == L.dim


def test_extend_rejects_ill_defined_assignment():
    H = lie.whole(lie.heisenberg_lie(P))
    A = lie.whole(lie.abelian_lie(P, 3))
    # H is generated by e0, e1; sending e0,e1,e2 independently forgets [e0,e1] = e2
    with pytest.raises(NotAHomomorphism):
        lie.extend_lie_morphism(H, np.eye(3, dtype=int), A)


def test_kernel_pair_dimension():
    H = lie.whole(lie.heisenberg_lie(P))
    Q, q = lie.quotient(H, lie.bracket_ideal(H, H, H))
    R, p1, p2 = lie.kernel_pair(q)
    assert R.dim == H.dim + 1
    assert np.array_equal(q.apply(p1.apply(R.basis)), q.apply(p2.apply(R.basis)))


def test_json_roundtrip():
    L = ALGS[-1]
    M = lie.lie_from_json(lie.lie_to_json(L))
    assert np.array_equal(M.c, L.c)
